#pragma once

#include <vector>

namespace slipstroke {

/// Output-shaft speed limit of the stock 141:1 gearmotor (92 RPM).
inline constexpr double kDefaultSpeedCapRadS = 9.6342174710086993;  // 92 * 2*pi / 60

/// Rounded tactor rotating about a fixed axis below a rigid skin plane.
///
/// The constructed fields fix the contact pass completely: the tactor tip
/// (radius tip_radius_mm, tip center at trajectory_radius_mm from the axis)
/// touches the plane while |angle| <= exit_angle_rad, where angle 0 is the
/// perpendicular, fully indented configuration. Per pass the contact point
/// sweeps 2 * half_travel_mm along the skin.
///
/// Always build through derive_geometry(); standoff_mm is forced to
/// tip_radius + trajectory_radius - max_indentation so the requested peak
/// indentation is consistent with the plane height.
struct TactorGeometry {
  double tip_radius_mm = 0.0;
  double trajectory_radius_mm = 0.0;
  double max_indentation_mm = 0.0;
  double standoff_mm = 0.0;    // axis to skin plane
  double exit_angle_rad = 0.0; // half-angle of the contact arc
  double half_travel_mm = 0.0; // skin travel per half pass

  friend bool operator==(const TactorGeometry&, const TactorGeometry&) = default;
};

/// Validates the inputs and fills in the derived fields.
///
/// Throws std::invalid_argument on non-positive radii/indentation, and
/// std::domain_error when the exit-angle arccos argument
/// (standoff - tip_radius) / trajectory_radius falls outside (0, 1), i.e.
/// the tactor never touches or never leaves the skin.
TactorGeometry derive_geometry(double tip_radius_mm, double trajectory_radius_mm,
                               double max_indentation_mm);

/// One sequential-activation setting for an array of rotating tactors.
struct ActuationParams {
  double angular_velocity_rad_s = 0.0;
  double delay_fraction = 0.0; // onset stagger as a fraction of one period
  int tactor_count = 1;
  double spacing_mm = 0.0;     // shaft-to-shaft distance between neighbours

  /// Full rotation period.
  double period_s() const;

  /// Throws std::invalid_argument naming the offending field. The angular
  /// velocity must not exceed the motor speed cap.
  void validate(double speed_cap_rad_s = kDefaultSpeedCapRadS) const;
};

/// Normal indentation of the tactor into the skin plane at a shaft angle.
///
/// Even in the angle, max_indentation_mm at 0, exactly 0 for
/// |angle| >= exit_angle. Angles are taken as-is (no wrapping): callers
/// working with unwrapped rotation phases wrap first.
double indentation_at(const TactorGeometry& geometry, double angle_rad);

/// Tip speed along the skin during the contact pass of a single tactor.
double local_speed(const TactorGeometry& geometry, double angular_velocity_rad_s);

struct StrokeTimes {
  double contact_s = 0.0;   // first skin contact to last release, all tactors
  double actuation_s = 0.0; // onset of first rotation to end of last rotation
};

StrokeTimes stroke_times(const TactorGeometry& geometry, const ActuationParams& params);

/// Average speed of the perceived contact point across the whole array:
/// (2x + D(N-1)) / contact time.
double apparent_speed(const TactorGeometry& geometry, const ActuationParams& params);

/// Everything the speed table reports for one actuation setting.
struct SpeedSummary {
  double stroke_skin_travel_mm = 0.0; // 2x, per tactor
  double contact_time_s = 0.0;
  double actuation_time_s = 0.0;
  double local_speed_mm_s = 0.0;
  double apparent_speed_mm_s = 0.0;
};

SpeedSummary summarize_speeds(const TactorGeometry& geometry, const ActuationParams& params);

/// Cross product of angular velocities x delay fractions x spacings, one
/// SpeedSummary per cell. Cells are stored angular-velocity-major, then
/// delay, then spacing; the common sweeps keep one of the latter two axes
/// at a single value.
struct SpeedGrid {
  std::vector<double> angular_velocities_rad_s;
  std::vector<double> delay_fractions;
  std::vector<double> spacings_mm;
  int tactor_count = 1;
  std::vector<SpeedSummary> cells;

  const SpeedSummary& at(int omega_index, int delay_index, int spacing_index = 0) const;
  double min_apparent_mm_s() const;
  double max_apparent_mm_s() const;
};

SpeedGrid speed_table(const TactorGeometry& geometry,
                      const std::vector<double>& angular_velocities_rad_s,
                      const std::vector<double>& delay_fractions, int tactor_count,
                      const std::vector<double>& spacings_mm);

}  // namespace slipstroke
