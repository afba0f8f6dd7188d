#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "slipstroke/motor_sim.hpp"
#include "slipstroke/schedule.hpp"

namespace slipstroke {

/// Provenance stamped into every exported file as `#` comment lines.
struct StreamProvenance {
  std::string tool_version;
  std::string config_hash_hex;
  std::uint64_t seed = 0;
  bool has_seed = false;
};

/// Writes a schedule as CSV: one row per tick, columns
/// t_s, motor_<i>_angle_rad..., motor_<i>_indent_mm.... Doubles use %.17g
/// so a subsequent import reproduces every sample bit for bit. The leading
/// `#` lines carry the format version, provenance, geometry, actuation
/// parameters and sampling settings needed to rebuild the TrajectorySet.
void write_command_stream(std::ostream& out, const TrajectorySet& schedule,
                          const StreamProvenance& provenance);
void export_command_stream(const std::string& path, const TrajectorySet& schedule,
                           const StreamProvenance& provenance);

/// Parses a stream written by write_command_stream. Malformed headers or
/// rows raise ParseError with the 1-based line number.
TrajectorySet read_command_stream(std::istream& in, const std::string& source);
TrajectorySet import_command_stream(const std::string& path);

/// Writes the closed-loop tracking log for a schedule: the command-stream
/// layout with motor_<i>_actual_rad and motor_<i>_error_rad columns appended,
/// plus per-motor summary comment lines. `results` is one TrackingResult per
/// motor, all simulated on the schedule's tick grid.
void write_tracking_log(std::ostream& out, const TrajectorySet& schedule,
                        const std::vector<TrackingResult>& results,
                        const StreamProvenance& provenance);
void export_tracking_log(const std::string& path, const TrajectorySet& schedule,
                         const std::vector<TrackingResult>& results,
                         const StreamProvenance& provenance);

/// Renders a speed grid the way the reference tables print it: one row per
/// angular velocity (labelled with its exact-fraction name), one column per
/// onset delay (as a percentage) or per spacing (in mm), whichever axis the
/// grid sweeps. Cells are apparent speeds in cm/s with one decimal, or
/// full-precision mm/s when full_precision is set.
void write_speed_grid_csv(std::ostream& out, const SpeedGrid& grid,
                          const std::vector<std::string>& omega_labels,
                          bool full_precision = false);

}  // namespace slipstroke
