#include "slipstroke/config.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "slipstroke/errors.hpp"

namespace slipstroke {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_double(const std::string& text, const std::string& source, int line,
                    const std::string& key) {
  const std::string t = trim(text);
  const char* begin = t.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0') {
    throw ParseError(source, line, "bad number for " + key + ": '" + t + "'");
  }
  return v;
}

long parse_long(const std::string& text, const std::string& source, int line,
                const std::string& key) {
  const std::string t = trim(text);
  const char* begin = t.c_str();
  char* end = nullptr;
  const long v = std::strtol(begin, &end, 10);
  if (end == begin || *end != '\0') {
    throw ParseError(source, line, "bad integer for " + key + ": '" + t + "'");
  }
  return v;
}

}  // namespace

std::string to_string(SweepDirection direction) {
  return direction == SweepDirection::forward ? "forward" : "reverse";
}

SweepDirection sweep_direction_from_string(const std::string& name) {
  if (name == "forward") return SweepDirection::forward;
  if (name == "reverse") return SweepDirection::reverse;
  throw std::invalid_argument("unknown sweep direction: " + name);
}

DeviceConfig default_device_config() { return DeviceConfig{}; }

DeviceConfig parse_device_config(std::istream& in, const std::string& source) {
  DeviceConfig cfg;
  // Geometry arrives as three independent numbers; the dependent fields are
  // derived once the whole file is read.
  double tip = cfg.geometry.tip_radius_mm;
  double traj = cfg.geometry.trajectory_radius_mm;
  double imax = cfg.geometry.max_indentation_mm;

  std::string section;
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ParseError(source, lineno, "unterminated section header");
      }
      section = trim(line.substr(1, line.size() - 2));
      if (section != "geometry" && section != "motor" && section != "pid" &&
          section != "stream") {
        throw ParseError(source, lineno, "unknown section [" + section + "]");
      }
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw ParseError(source, lineno, "expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ParseError(source, lineno, "empty key");

    auto num = [&] { return parse_double(value, source, lineno, key); };

    if (section.empty()) {
      if (key == "format_version") {
        const long v = parse_long(value, source, lineno, key);
        if (v != 1) {
          throw ParseError(source, lineno,
                           "unsupported format_version " + std::to_string(v));
        }
        cfg.format_version = static_cast<int>(v);
      } else {
        throw ParseError(source, lineno, "unknown key '" + key + "' before any section");
      }
    } else if (section == "geometry") {
      if (key == "tip_radius_mm") tip = num();
      else if (key == "trajectory_radius_mm") traj = num();
      else if (key == "max_indentation_mm") imax = num();
      else throw ParseError(source, lineno, "unknown key '" + key + "' in [geometry]");
    } else if (section == "motor") {
      if (key == "gear_ratio") cfg.motor.gear_ratio = num();
      else if (key == "speed_cap_rad_s") cfg.motor.speed_cap_rad_s = num();
      else if (key == "current_limit_a") cfg.motor.current_limit_a = num();
      else if (key == "torque_constant_nm_per_a") cfg.motor.torque_constant_nm_per_a = num();
      else if (key == "inertia_kg_m2") cfg.motor.inertia_kg_m2 = num();
      else if (key == "damping_nm_s_per_rad") cfg.motor.damping_nm_s_per_rad = num();
      else if (key == "encoder_counts_per_output_rev")
        cfg.motor.encoder_counts_per_output_rev = parse_long(value, source, lineno, key);
      else throw ParseError(source, lineno, "unknown key '" + key + "' in [motor]");
    } else if (section == "pid") {
      if (key == "kp") cfg.pid.kp = num();
      else if (key == "ki") cfg.pid.ki = num();
      else if (key == "kd") cfg.pid.kd = num();
      else if (key == "integral_clamp_a") cfg.pid.integral_clamp_a = num();
      else if (key == "derivative_filter_tau_s") cfg.pid.derivative_filter_tau_s = num();
      else throw ParseError(source, lineno, "unknown key '" + key + "' in [pid]");
    } else { // stream
      if (key == "tick_rate_hz") cfg.stream.tick_rate_hz = num();
      else if (key == "pre_roll_s") cfg.stream.pre_roll_s = num();
      else if (key == "post_roll_s") cfg.stream.post_roll_s = num();
      else if (key == "direction") {
        try {
          cfg.stream.direction = sweep_direction_from_string(value);
        } catch (const std::invalid_argument& e) {
          throw ParseError(source, lineno, e.what());
        }
      } else {
        throw ParseError(source, lineno, "unknown key '" + key + "' in [stream]");
      }
    }
  }

  try {
    cfg.geometry = derive_geometry(tip, traj, imax);
  } catch (const std::exception& e) {
    throw ParseError(source, lineno, std::string("invalid geometry: ") + e.what());
  }
  return cfg;
}

DeviceConfig load_device_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError(path, "cannot open config for reading");
  return parse_device_config(in, path);
}

std::string format_device_config(const DeviceConfig& config) {
  std::ostringstream out;
  out << "format_version = " << config.format_version << "\n\n";
  out << "[geometry]\n";
  out << "tip_radius_mm = " << fmt_double(config.geometry.tip_radius_mm) << "\n";
  out << "trajectory_radius_mm = " << fmt_double(config.geometry.trajectory_radius_mm)
      << "\n";
  out << "max_indentation_mm = " << fmt_double(config.geometry.max_indentation_mm)
      << "\n\n";
  out << "[motor]\n";
  out << "gear_ratio = " << fmt_double(config.motor.gear_ratio) << "\n";
  out << "speed_cap_rad_s = " << fmt_double(config.motor.speed_cap_rad_s) << "\n";
  out << "current_limit_a = " << fmt_double(config.motor.current_limit_a) << "\n";
  out << "torque_constant_nm_per_a = "
      << fmt_double(config.motor.torque_constant_nm_per_a) << "\n";
  out << "inertia_kg_m2 = " << fmt_double(config.motor.inertia_kg_m2) << "\n";
  out << "damping_nm_s_per_rad = " << fmt_double(config.motor.damping_nm_s_per_rad)
      << "\n";
  out << "encoder_counts_per_output_rev = " << config.motor.encoder_counts_per_output_rev
      << "\n\n";
  out << "[pid]\n";
  out << "kp = " << fmt_double(config.pid.kp) << "\n";
  out << "ki = " << fmt_double(config.pid.ki) << "\n";
  out << "kd = " << fmt_double(config.pid.kd) << "\n";
  out << "integral_clamp_a = " << fmt_double(config.pid.integral_clamp_a) << "\n";
  out << "derivative_filter_tau_s = "
      << fmt_double(config.pid.derivative_filter_tau_s) << "\n\n";
  out << "[stream]\n";
  out << "tick_rate_hz = " << fmt_double(config.stream.tick_rate_hz) << "\n";
  out << "pre_roll_s = " << fmt_double(config.stream.pre_roll_s) << "\n";
  out << "post_roll_s = " << fmt_double(config.stream.post_roll_s) << "\n";
  out << "direction = " << to_string(config.stream.direction) << "\n";
  return out.str();
}

void save_device_config(const DeviceConfig& config, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError(path, "cannot open config for writing");
  out << format_device_config(config);
  if (!out) throw IoError(path, "write failed");
}

std::uint64_t config_hash(const DeviceConfig& config) {
  const std::string text = format_device_config(config);
  std::uint64_t h = 1469598103934665603ull; // FNV-1a offset basis
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull; // FNV prime
  }
  return h;
}

std::string config_hash_hex(const DeviceConfig& config) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(config_hash(config)));
  return buf;
}

}  // namespace slipstroke
