#include "slipstroke/stream_io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "slipstroke/errors.hpp"
#include "slipstroke/version.hpp"

namespace slipstroke {

namespace {

constexpr int kStreamFormatVersion = 1;

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_num(const std::string& text, const std::string& source, int line) {
  const char* begin = text.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0') {
    throw ParseError(source, line, "bad number '" + text + "'");
  }
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t b = 0;
  while (true) {
    const std::size_t e = s.find(sep, b);
    if (e == std::string::npos) {
      out.push_back(s.substr(b));
      break;
    }
    out.push_back(s.substr(b, e - b));
    b = e + 1;
  }
  return out;
}

void write_provenance(std::ostream& out, const StreamProvenance& p) {
  out << "# tool_version: " << (p.tool_version.empty() ? kToolVersion : p.tool_version)
      << "\n";
  if (!p.config_hash_hex.empty()) out << "# config_hash: " << p.config_hash_hex << "\n";
  if (p.has_seed) out << "# seed: " << p.seed << "\n";
}

}  // namespace

void write_command_stream(std::ostream& out, const TrajectorySet& schedule,
                          const StreamProvenance& provenance) {
  out << "# slipstroke_command_stream_v" << kStreamFormatVersion << "\n";
  write_provenance(out, provenance);
  out << "# geometry_mm: tip=" << fmt(schedule.geometry.tip_radius_mm)
      << " trajectory=" << fmt(schedule.geometry.trajectory_radius_mm)
      << " max_indentation=" << fmt(schedule.geometry.max_indentation_mm) << "\n";
  out << "# actuation: omega_rad_s=" << fmt(schedule.params.angular_velocity_rad_s)
      << " delay=" << fmt(schedule.params.delay_fraction)
      << " tactors=" << schedule.motor_count
      << " spacing_mm=" << fmt(schedule.params.spacing_mm)
      << " rotates=" << (schedule.rotates ? 1 : 0) << "\n";
  out << "# sampling: tick_rate_hz=" << fmt(schedule.tick_rate_hz)
      << " pre_roll_s=" << fmt(schedule.pre_roll_s)
      << " post_roll_s=" << fmt(schedule.post_roll_s)
      << " direction=" << (schedule.direction == SweepDirection::forward ? "forward" : "reverse")
      << "\n";
  out << "# onsets_s:";
  for (double o : schedule.onsets_s) out << ' ' << fmt(o);
  out << "\n";

  out << "t_s";
  for (int m = 0; m < schedule.motor_count; ++m) out << ",motor_" << m << "_rad";
  for (int m = 0; m < schedule.motor_count; ++m) out << ",motor_" << m << "_indent_mm";
  out << "\n";

  const Eigen::MatrixXd indent = indentation_samples(schedule, schedule.geometry);
  const Eigen::Index n = schedule.tick_count();
  std::string row;
  for (Eigen::Index k = 0; k < n; ++k) {
    row.clear();
    row += fmt(schedule.time_s(k));
    for (int m = 0; m < schedule.motor_count; ++m) {
      row += ',';
      row += fmt(schedule.angle_rad(k, m));
    }
    for (int m = 0; m < schedule.motor_count; ++m) {
      row += ',';
      row += fmt(indent(k, m));
    }
    row += '\n';
    out << row;
  }
}

void export_command_stream(const std::string& path, const TrajectorySet& schedule,
                           const StreamProvenance& provenance) {
  std::ofstream out(path);
  if (!out) throw IoError(path, "cannot open stream for writing");
  write_command_stream(out, schedule, provenance);
  if (!out) throw IoError(path, "write failed");
}

namespace {

// Key=value tokens of one `#` header line, e.g. "tip=3 trajectory=9".
std::map<std::string, std::string> header_fields(const std::string& body,
                                                 const std::string& source, int line) {
  std::map<std::string, std::string> out;
  std::istringstream in(body);
  std::string token;
  while (in >> token) {
    const std::size_t eq = token.find('=');
    if (eq == std::string::npos) {
      throw ParseError(source, line, "expected key=value, got '" + token + "'");
    }
    out[token.substr(0, eq)] = token.substr(eq + 1);
  }
  return out;
}

std::string require(const std::map<std::string, std::string>& fields,
                    const std::string& key, const std::string& source, int line) {
  const auto it = fields.find(key);
  if (it == fields.end()) throw ParseError(source, line, "missing field '" + key + "'");
  return it->second;
}

}  // namespace

TrajectorySet read_command_stream(std::istream& in, const std::string& source) {
  TrajectorySet ts;
  std::string line;
  int lineno = 0;

  if (!std::getline(in, line)) throw ParseError(source, 1, "empty stream");
  ++lineno;
  const std::string magic = "# slipstroke_command_stream_v";
  if (line.rfind(magic, 0) != 0) {
    throw ParseError(source, lineno, "not a slipstroke command stream");
  }
  const int version = static_cast<int>(parse_num(line.substr(magic.size()), source, lineno));
  if (version != kStreamFormatVersion) {
    throw ParseError(source, lineno,
                     "unsupported stream format v" + std::to_string(version));
  }

  double tip = 0, traj = 0, imax = 0;
  bool have_geometry = false, have_actuation = false, have_sampling = false;
  std::vector<double> onsets;

  // Header comments up to the column row.
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (line[0] != '#') break;
    const std::size_t colon = line.find(':');
    if (colon == std::string::npos) continue; // freeform comment
    const std::string tag = line.substr(2, colon - 2);
    const std::string body = line.substr(colon + 1);
    if (tag == "geometry_mm") {
      const auto f = header_fields(body, source, lineno);
      tip = parse_num(require(f, "tip", source, lineno), source, lineno);
      traj = parse_num(require(f, "trajectory", source, lineno), source, lineno);
      imax = parse_num(require(f, "max_indentation", source, lineno), source, lineno);
      have_geometry = true;
    } else if (tag == "actuation") {
      const auto f = header_fields(body, source, lineno);
      ts.params.angular_velocity_rad_s =
          parse_num(require(f, "omega_rad_s", source, lineno), source, lineno);
      ts.params.delay_fraction =
          parse_num(require(f, "delay", source, lineno), source, lineno);
      ts.params.tactor_count = static_cast<int>(
          parse_num(require(f, "tactors", source, lineno), source, lineno));
      ts.params.spacing_mm =
          parse_num(require(f, "spacing_mm", source, lineno), source, lineno);
      ts.rotates =
          parse_num(require(f, "rotates", source, lineno), source, lineno) != 0.0;
      have_actuation = true;
    } else if (tag == "sampling") {
      const auto f = header_fields(body, source, lineno);
      ts.tick_rate_hz =
          parse_num(require(f, "tick_rate_hz", source, lineno), source, lineno);
      ts.pre_roll_s = parse_num(require(f, "pre_roll_s", source, lineno), source, lineno);
      ts.post_roll_s =
          parse_num(require(f, "post_roll_s", source, lineno), source, lineno);
      const std::string dir = require(f, "direction", source, lineno);
      if (dir == "forward") ts.direction = SweepDirection::forward;
      else if (dir == "reverse") ts.direction = SweepDirection::reverse;
      else throw ParseError(source, lineno, "unknown direction '" + dir + "'");
      have_sampling = true;
    } else if (tag == "onsets_s") {
      std::istringstream nums(body);
      std::string tok;
      while (nums >> tok) onsets.push_back(parse_num(tok, source, lineno));
    }
    // tool_version / config_hash / seed are provenance only; keep parsing.
  }
  if (!have_geometry || !have_actuation || !have_sampling) {
    throw ParseError(source, lineno, "incomplete stream header");
  }
  try {
    ts.geometry = derive_geometry(tip, traj, imax);
  } catch (const std::exception& e) {
    throw ParseError(source, lineno, std::string("invalid geometry: ") + e.what());
  }
  ts.onsets_s = onsets;

  // `line` now holds the column header.
  const std::vector<std::string> cols = split(line, ',');
  if (cols.empty() || cols[0] != "t_s" || (cols.size() - 1) % 2 != 0) {
    throw ParseError(source, lineno, "malformed column header");
  }
  const int motors = static_cast<int>((cols.size() - 1) / 2);
  if (motors != ts.params.tactor_count && ts.rotates) {
    throw ParseError(source, lineno, "column count disagrees with tactor count");
  }
  ts.motor_count = motors;

  std::vector<double> times;
  std::vector<double> angles; // row-major staging
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const std::vector<std::string> cells = split(line, ',');
    if (cells.size() != cols.size()) {
      throw ParseError(source, lineno, "expected " + std::to_string(cols.size()) +
                                           " columns, got " + std::to_string(cells.size()));
    }
    times.push_back(parse_num(cells[0], source, lineno));
    for (int m = 0; m < motors; ++m) {
      angles.push_back(parse_num(cells[1 + static_cast<std::size_t>(m)], source, lineno));
    }
    // Indentation columns are derived data; the importer recomputes them.
  }
  if (times.empty()) throw ParseError(source, lineno, "stream has no samples");

  const Eigen::Index n = static_cast<Eigen::Index>(times.size());
  ts.time_s.resize(n);
  ts.angle_rad.resize(n, motors);
  for (Eigen::Index k = 0; k < n; ++k) {
    ts.time_s(k) = times[static_cast<std::size_t>(k)];
    for (int m = 0; m < motors; ++m) {
      ts.angle_rad(k, m) = angles[static_cast<std::size_t>(k) * motors +
                                  static_cast<std::size_t>(m)];
    }
  }
  ts.actuation_time_s =
      ts.rotates ? (onsets.empty() ? 0.0 : onsets.back()) + ts.params.period_s() : 0.0;
  return ts;
}

TrajectorySet import_command_stream(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError(path, "cannot open stream for reading");
  return read_command_stream(in, path);
}

void write_tracking_log(std::ostream& out, const TrajectorySet& schedule,
                        const std::vector<TrackingResult>& results,
                        const StreamProvenance& provenance) {
  if (static_cast<int>(results.size()) != schedule.motor_count) {
    throw std::invalid_argument("tracking log needs one result per motor");
  }
  out << "# slipstroke_tracking_log_v" << kStreamFormatVersion << "\n";
  write_provenance(out, provenance);
  out << "# actuation: omega_rad_s=" << fmt(schedule.params.angular_velocity_rad_s)
      << " delay=" << fmt(schedule.params.delay_fraction)
      << " tactors=" << schedule.motor_count
      << " spacing_mm=" << fmt(schedule.params.spacing_mm) << "\n";
  for (int m = 0; m < schedule.motor_count; ++m) {
    const TrackingSummary& s = results[static_cast<std::size_t>(m)].summary;
    out << "# motor_" << m << ": max_abs_error_rad=" << fmt(s.max_abs_error_rad)
        << " rms_error_rad=" << fmt(s.rms_error_rad)
        << " saturation_fraction=" << fmt(s.saturation_fraction)
        << " unstable=" << (s.unstable ? 1 : 0) << "\n";
  }
  // Command-stream layout with the closed-loop columns appended.
  out << "t_s";
  for (int m = 0; m < schedule.motor_count; ++m) out << ",motor_" << m << "_rad";
  for (int m = 0; m < schedule.motor_count; ++m) out << ",motor_" << m << "_indent_mm";
  for (int m = 0; m < schedule.motor_count; ++m) out << ",motor_" << m << "_actual_rad";
  for (int m = 0; m < schedule.motor_count; ++m) out << ",motor_" << m << "_error_rad";
  out << "\n";
  const Eigen::MatrixXd indent = indentation_samples(schedule, schedule.geometry);
  const Eigen::Index n = schedule.tick_count();
  std::string row;
  for (Eigen::Index k = 0; k < n; ++k) {
    row.clear();
    row += fmt(schedule.time_s(k));
    for (int m = 0; m < schedule.motor_count; ++m) {
      row += ',';
      row += fmt(schedule.angle_rad(k, m));
    }
    for (int m = 0; m < schedule.motor_count; ++m) {
      row += ',';
      row += fmt(indent(k, m));
    }
    for (int m = 0; m < schedule.motor_count; ++m) {
      row += ',';
      row += fmt(results[static_cast<std::size_t>(m)].actual_rad(k));
    }
    for (int m = 0; m < schedule.motor_count; ++m) {
      row += ',';
      row += fmt(results[static_cast<std::size_t>(m)].error_rad(k));
    }
    row += '\n';
    out << row;
  }
}

void export_tracking_log(const std::string& path, const TrajectorySet& schedule,
                         const std::vector<TrackingResult>& results,
                         const StreamProvenance& provenance) {
  std::ofstream out(path);
  if (!out) throw IoError(path, "cannot open tracking log for writing");
  write_tracking_log(out, schedule, results, provenance);
  if (!out) throw IoError(path, "write failed");
}

void write_speed_grid_csv(std::ostream& out, const SpeedGrid& grid,
                          const std::vector<std::string>& omega_labels,
                          bool full_precision) {
  if (omega_labels.size() != grid.angular_velocities_rad_s.size()) {
    throw std::invalid_argument("need one label per angular velocity");
  }
  const bool sweep_spacing = grid.spacings_mm.size() > 1;
  if (sweep_spacing && grid.delay_fractions.size() > 1) {
    throw std::invalid_argument("grid sweeps both delay and spacing; table wants one");
  }

  out << "omega";
  if (sweep_spacing) {
    for (double s : grid.spacings_mm) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%gmm", s);
      out << ',' << buf;
    }
  } else {
    for (double d : grid.delay_fractions) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%g%%", d * 100.0);
      out << ',' << buf;
    }
  }
  out << "\n";

  const int cols = sweep_spacing ? static_cast<int>(grid.spacings_mm.size())
                                 : static_cast<int>(grid.delay_fractions.size());
  for (std::size_t w = 0; w < grid.angular_velocities_rad_s.size(); ++w) {
    out << omega_labels[w];
    for (int c = 0; c < cols; ++c) {
      const SpeedSummary& cell = sweep_spacing
                                     ? grid.at(static_cast<int>(w), 0, c)
                                     : grid.at(static_cast<int>(w), c, 0);
      if (full_precision) {
        out << ',' << fmt(cell.apparent_speed_mm_s);
      } else {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.1f", cell.apparent_speed_mm_s / 10.0);
        out << ',' << buf;
      }
    }
    out << "\n";
  }
}

}  // namespace slipstroke
