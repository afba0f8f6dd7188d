#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace slipstroke {

/// Malformed structured text (config file, plan, rating log). Carries the
/// source location so the CLI can report file:line.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string source, int line, const std::string& message)
      : std::runtime_error(source + ":" + std::to_string(line) + ": " + message),
        source_(std::move(source)),
        line_(line) {}

  const std::string& source() const { return source_; }
  int line() const { return line_; }

 private:
  std::string source_;
  int line_;
};

/// Filesystem failure with the offending path in the message.
class IoError : public std::runtime_error {
 public:
  IoError(std::string path, const std::string& message)
      : std::runtime_error(path + ": " + message), path_(std::move(path)) {}

  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

}  // namespace slipstroke
