#pragma once

#include <Eigen/Core>
#include <vector>

#include "slipstroke/kinematics.hpp"

namespace slipstroke {

/// Orientation of the contact sweep along the arm. Forward starts the shaft
/// at -pi/2 and rotates positively (wrist to elbow for the stock mounting);
/// reverse mirrors the motion.
enum class SweepDirection { forward, reverse };

struct ScheduleOptions {
  double tick_rate_hz = 10000.0;
  double pre_roll_s = 0.2;  // hold at rest before the first onset
  double post_roll_s = 0.2; // hold at rest after the last rotation ends
  SweepDirection direction = SweepDirection::forward;
};

/// Per-motor angle references sampled on a fixed tick grid.
///
/// Motor i holds the rest angle, starts rotating at onsets_s[i]
/// (i * delay * period, rounded to the nearest tick), completes exactly one
/// revolution at constant angular velocity, and holds again. Angles are
/// unwrapped: the reference is continuous and piecewise linear, ending one
/// full turn past the rest angle. Time 0 is the first motor's onset;
/// pre-roll samples carry negative times.
struct TrajectorySet {
  double tick_rate_hz = 0.0;
  int motor_count = 0;
  SweepDirection direction = SweepDirection::forward;
  TactorGeometry geometry;
  ActuationParams params;
  bool rotates = true; // false for hold-only streams (params then carry zeros)
  double actuation_time_s = 0.0; // rotation window, onset of first to end of last
  double pre_roll_s = 0.0;
  double post_roll_s = 0.0;
  std::vector<double> onsets_s;
  Eigen::VectorXd time_s;    // one entry per tick
  Eigen::MatrixXd angle_rad; // ticks x motors, unwrapped references

  Eigen::Index tick_count() const { return time_s.size(); }
  double rest_angle_rad() const;

  /// Shaft angle wrapped to (-pi, pi], 0 = perpendicular into the skin.
  double physical_angle_rad(Eigen::Index tick, int motor) const;
};

/// Builds the staggered one-revolution-per-motor schedule.
/// Throws std::invalid_argument for a non-positive tick rate, a tick rate
/// under 100 samples per half revolution, negative rolls, or invalid params.
TrajectorySet build_schedule(const TactorGeometry& geometry, const ActuationParams& params,
                             const ScheduleOptions& options = {});

/// All-rest stream of the given duration (no rotation pass). Useful as a
/// quiescent command file for hardware bring-up.
TrajectorySet hold_schedule(const TactorGeometry& geometry, int motor_count,
                            double duration_s, const ScheduleOptions& options = {});

/// One skin-contact pass of one motor.
struct ContactEvent {
  double start_s = 0.0;
  double end_s = 0.0;
  Eigen::VectorXd indentation_mm; // sampled at the ticks inside [start, end]
};

struct ContactProfile {
  std::vector<ContactEvent> events; // ordered by motor index; empty for hold streams
  bool overlapping = false;         // any two adjacent passes intersect in time
  double first_contact_s = 0.0;
  double last_release_s = 0.0;
};

/// Derives per-motor contact intervals and indentation curves from a
/// schedule. The geometry must be the one the schedule was built with.
ContactProfile contact_profile(const TrajectorySet& schedule, const TactorGeometry& geometry);

/// Indentation of every motor at every tick (ticks x motors), matching the
/// exported stream columns.
Eigen::MatrixXd indentation_samples(const TrajectorySet& schedule,
                                    const TactorGeometry& geometry);

/// Wraps an angle to (-pi, pi].
double wrap_angle(double angle_rad);

}  // namespace slipstroke
