#include "slipstroke/kinematics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace slipstroke {

namespace {
constexpr double kPi = std::numbers::pi;
}

TactorGeometry derive_geometry(double tip_radius_mm, double trajectory_radius_mm,
                               double max_indentation_mm) {
  if (!(tip_radius_mm > 0.0)) {
    throw std::invalid_argument("tip_radius_mm must be positive, got " +
                                std::to_string(tip_radius_mm));
  }
  if (!(trajectory_radius_mm > 0.0)) {
    throw std::invalid_argument("trajectory_radius_mm must be positive, got " +
                                std::to_string(trajectory_radius_mm));
  }
  if (!(max_indentation_mm > 0.0)) {
    throw std::invalid_argument("max_indentation_mm must be positive, got " +
                                std::to_string(max_indentation_mm));
  }
  // max_indentation >= trajectory_radius falls through to the exit-angle
  // domain check below (the arccos argument drops to 0 or below).

  TactorGeometry g;
  g.tip_radius_mm = tip_radius_mm;
  g.trajectory_radius_mm = trajectory_radius_mm;
  g.max_indentation_mm = max_indentation_mm;
  // Plane height that makes the perpendicular configuration indent by
  // exactly max_indentation.
  g.standoff_mm = tip_radius_mm + trajectory_radius_mm - max_indentation_mm;

  const double cos_exit = (g.standoff_mm - g.tip_radius_mm) / g.trajectory_radius_mm;
  if (!(cos_exit > 0.0) || !(cos_exit < 1.0)) {
    throw std::domain_error("exit-angle cosine (standoff - tip_radius) / trajectory_radius = " +
                            std::to_string(cos_exit) + " outside (0, 1)");
  }
  g.exit_angle_rad = std::acos(cos_exit);
  g.half_travel_mm = trajectory_radius_mm * std::sin(g.exit_angle_rad);
  return g;
}

double ActuationParams::period_s() const { return 2.0 * kPi / angular_velocity_rad_s; }

void ActuationParams::validate(double speed_cap_rad_s) const {
  if (!(angular_velocity_rad_s > 0.0)) {
    throw std::invalid_argument("angular_velocity_rad_s must be positive, got " +
                                std::to_string(angular_velocity_rad_s));
  }
  if (angular_velocity_rad_s > speed_cap_rad_s) {
    throw std::invalid_argument("angular_velocity_rad_s " +
                                std::to_string(angular_velocity_rad_s) +
                                " exceeds the motor speed cap " +
                                std::to_string(speed_cap_rad_s));
  }
  if (!(delay_fraction >= 0.0) || !(delay_fraction <= 1.0)) {
    throw std::invalid_argument("delay_fraction must lie in [0, 1], got " +
                                std::to_string(delay_fraction));
  }
  if (tactor_count < 1) {
    throw std::invalid_argument("tactor_count must be >= 1, got " +
                                std::to_string(tactor_count));
  }
  if (tactor_count > 1 && !(spacing_mm > 0.0)) {
    throw std::invalid_argument("spacing_mm must be positive for more than one tactor, got " +
                                std::to_string(spacing_mm));
  }
}

double indentation_at(const TactorGeometry& geometry, double angle_rad) {
  const double a = std::abs(angle_rad);
  if (a >= geometry.exit_angle_rad) return 0.0;
  // Penetration of the tip past the skin plane, linear in the vertical tip
  // height y = R_L cos(angle).
  const double y = geometry.trajectory_radius_mm * std::cos(a);
  return geometry.max_indentation_mm + y - geometry.trajectory_radius_mm;
}

double local_speed(const TactorGeometry& geometry, double angular_velocity_rad_s) {
  if (!(angular_velocity_rad_s > 0.0)) {
    throw std::invalid_argument("angular_velocity_rad_s must be positive, got " +
                                std::to_string(angular_velocity_rad_s));
  }
  return geometry.half_travel_mm * angular_velocity_rad_s / geometry.exit_angle_rad;
}

StrokeTimes stroke_times(const TactorGeometry& geometry, const ActuationParams& params) {
  params.validate();
  const double period = params.period_s();
  const double stagger = params.delay_fraction * (params.tactor_count - 1);
  StrokeTimes t;
  t.contact_s = period * (geometry.exit_angle_rad / kPi + stagger);
  t.actuation_s = period * (1.0 + stagger);
  return t;
}

double apparent_speed(const TactorGeometry& geometry, const ActuationParams& params) {
  const StrokeTimes t = stroke_times(geometry, params);
  // A single tactor has no array to sweep; the perceived speed is the tip's
  // own slip speed, returned through the same code path so the two agree to
  // the last bit.
  if (params.tactor_count == 1) {
    return local_speed(geometry, params.angular_velocity_rad_s);
  }
  const double travel =
      2.0 * geometry.half_travel_mm + params.spacing_mm * (params.tactor_count - 1);
  return travel / t.contact_s;
}

SpeedSummary summarize_speeds(const TactorGeometry& geometry, const ActuationParams& params) {
  const StrokeTimes t = stroke_times(geometry, params);
  SpeedSummary s;
  s.stroke_skin_travel_mm = 2.0 * geometry.half_travel_mm;
  s.contact_time_s = t.contact_s;
  s.actuation_time_s = t.actuation_s;
  s.local_speed_mm_s = local_speed(geometry, params.angular_velocity_rad_s);
  s.apparent_speed_mm_s = apparent_speed(geometry, params);
  return s;
}

const SpeedSummary& SpeedGrid::at(int omega_index, int delay_index, int spacing_index) const {
  const int n_delay = static_cast<int>(delay_fractions.size());
  const int n_space = static_cast<int>(spacings_mm.size());
  return cells.at(static_cast<size_t>((omega_index * n_delay + delay_index) * n_space +
                                      spacing_index));
}

double SpeedGrid::min_apparent_mm_s() const {
  return std::min_element(cells.begin(), cells.end(),
                          [](const SpeedSummary& a, const SpeedSummary& b) {
                            return a.apparent_speed_mm_s < b.apparent_speed_mm_s;
                          })
      ->apparent_speed_mm_s;
}

double SpeedGrid::max_apparent_mm_s() const {
  return std::max_element(cells.begin(), cells.end(),
                          [](const SpeedSummary& a, const SpeedSummary& b) {
                            return a.apparent_speed_mm_s < b.apparent_speed_mm_s;
                          })
      ->apparent_speed_mm_s;
}

SpeedGrid speed_table(const TactorGeometry& geometry,
                      const std::vector<double>& angular_velocities_rad_s,
                      const std::vector<double>& delay_fractions, int tactor_count,
                      const std::vector<double>& spacings_mm) {
  if (angular_velocities_rad_s.empty() || delay_fractions.empty() || spacings_mm.empty()) {
    throw std::invalid_argument("speed_table requires non-empty parameter lists");
  }
  SpeedGrid grid;
  grid.angular_velocities_rad_s = angular_velocities_rad_s;
  grid.delay_fractions = delay_fractions;
  grid.spacings_mm = spacings_mm;
  grid.tactor_count = tactor_count;
  grid.cells.reserve(angular_velocities_rad_s.size() * delay_fractions.size() *
                     spacings_mm.size());
  for (double omega : angular_velocities_rad_s) {
    for (double delay : delay_fractions) {
      for (double spacing : spacings_mm) {
        ActuationParams p{omega, delay, tactor_count, spacing};
        grid.cells.push_back(summarize_speeds(geometry, p));
      }
    }
  }
  return grid;
}

}  // namespace slipstroke
