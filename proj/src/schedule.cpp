#include "slipstroke/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace slipstroke {

namespace {
constexpr double kPi = std::numbers::pi;

double direction_sign(SweepDirection d) {
  return d == SweepDirection::forward ? 1.0 : -1.0;
}
}  // namespace

double wrap_angle(double angle_rad) {
  double a = std::fmod(angle_rad + kPi, 2.0 * kPi);
  if (a <= 0.0) a += 2.0 * kPi;
  return a - kPi;
}

double TrajectorySet::rest_angle_rad() const {
  return direction == SweepDirection::forward ? -kPi / 2.0 : kPi / 2.0;
}

double TrajectorySet::physical_angle_rad(Eigen::Index tick, int motor) const {
  return wrap_angle(angle_rad(tick, motor));
}

static void check_options(const ScheduleOptions& options, double angular_velocity_rad_s) {
  if (!(options.tick_rate_hz > 0.0)) {
    throw std::invalid_argument("tick_rate_hz must be positive, got " +
                                std::to_string(options.tick_rate_hz));
  }
  if (angular_velocity_rad_s > 0.0 &&
      options.tick_rate_hz < 100.0 * angular_velocity_rad_s / kPi) {
    throw std::invalid_argument("tick_rate_hz " + std::to_string(options.tick_rate_hz) +
                                " too low: need at least 100 samples per half revolution");
  }
  if (options.pre_roll_s < 0.0 || options.post_roll_s < 0.0) {
    throw std::invalid_argument("pre/post roll must be non-negative");
  }
}

TrajectorySet build_schedule(const TactorGeometry& geometry, const ActuationParams& params,
                             const ScheduleOptions& options) {
  params.validate();
  check_options(options, params.angular_velocity_rad_s);

  const double f = options.tick_rate_hz;
  const double period = params.period_s();
  const double omega = direction_sign(options.direction) * params.angular_velocity_rad_s;

  TrajectorySet ts;
  ts.tick_rate_hz = f;
  ts.motor_count = params.tactor_count;
  ts.direction = options.direction;
  ts.geometry = geometry;
  ts.params = params;
  ts.pre_roll_s = options.pre_roll_s;
  ts.post_roll_s = options.post_roll_s;

  // Onsets snap to the tick grid; everything downstream works in integer
  // ticks so that time-shifted motors sample identically.
  std::vector<Eigen::Index> onset_ticks(params.tactor_count);
  ts.onsets_s.resize(params.tactor_count);
  for (int i = 0; i < params.tactor_count; ++i) {
    onset_ticks[i] = static_cast<Eigen::Index>(
        std::llround(static_cast<double>(i) * params.delay_fraction * period * f));
    ts.onsets_s[i] = static_cast<double>(onset_ticks[i]) / f;
  }
  ts.actuation_time_s = stroke_times(geometry, params).actuation_s;

  const auto pre_ticks = static_cast<Eigen::Index>(std::llround(options.pre_roll_s * f));
  const auto post_ticks = static_cast<Eigen::Index>(std::llround(options.post_roll_s * f));
  const auto rotation_end_tick = static_cast<Eigen::Index>(
      std::ceil((static_cast<double>(onset_ticks.back()) / f + period) * f - 1e-9));
  const Eigen::Index n = pre_ticks + rotation_end_tick + post_ticks + 1;

  ts.time_s.resize(n);
  ts.angle_rad.resize(n, params.tactor_count);
  const double rest = ts.rest_angle_rad();
  for (Eigen::Index k = 0; k < n; ++k) {
    ts.time_s[k] = static_cast<double>(k - pre_ticks) / f;
    for (int i = 0; i < params.tactor_count; ++i) {
      const double rel = static_cast<double>(k - pre_ticks - onset_ticks[i]) / f;
      const double phase = std::clamp(rel, 0.0, period);
      ts.angle_rad(k, i) = rest + omega * phase;
    }
  }
  return ts;
}

TrajectorySet hold_schedule(const TactorGeometry& geometry, int motor_count,
                            double duration_s, const ScheduleOptions& options) {
  if (motor_count < 1) {
    throw std::invalid_argument("motor_count must be >= 1, got " + std::to_string(motor_count));
  }
  if (!(duration_s >= 0.0)) {
    throw std::invalid_argument("duration_s must be non-negative");
  }
  check_options(options, 0.0);

  TrajectorySet ts;
  ts.tick_rate_hz = options.tick_rate_hz;
  ts.motor_count = motor_count;
  ts.direction = options.direction;
  ts.geometry = geometry;
  ts.params = ActuationParams{0.0, 0.0, motor_count, 0.0};
  ts.rotates = false;
  ts.pre_roll_s = 0.0;
  ts.post_roll_s = 0.0;
  ts.onsets_s.assign(motor_count, 0.0);
  ts.actuation_time_s = 0.0;

  const auto n = static_cast<Eigen::Index>(std::llround(duration_s * options.tick_rate_hz)) + 1;
  ts.time_s.resize(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    ts.time_s[k] = static_cast<double>(k) / options.tick_rate_hz;
  }
  ts.angle_rad = Eigen::MatrixXd::Constant(n, motor_count, ts.rest_angle_rad());
  return ts;
}

Eigen::MatrixXd indentation_samples(const TrajectorySet& schedule,
                                    const TactorGeometry& geometry) {
  Eigen::MatrixXd indent(schedule.tick_count(), schedule.motor_count);
  for (Eigen::Index k = 0; k < schedule.tick_count(); ++k) {
    for (int i = 0; i < schedule.motor_count; ++i) {
      indent(k, i) = indentation_at(geometry, schedule.physical_angle_rad(k, i));
    }
  }
  return indent;
}

ContactProfile contact_profile(const TrajectorySet& schedule, const TactorGeometry& geometry) {
  if (!(schedule.geometry == geometry)) {
    throw std::invalid_argument("contact_profile: geometry differs from the one the schedule "
                                "was built with");
  }

  ContactProfile profile;
  if (!schedule.rotates) return profile;

  const double omega = schedule.params.angular_velocity_rad_s;
  const double theta = geometry.exit_angle_rad;
  const double f = schedule.tick_rate_hz;
  const auto pre_ticks =
      static_cast<Eigen::Index>(std::llround(schedule.pre_roll_s * f));

  profile.events.reserve(schedule.motor_count);
  for (int i = 0; i < schedule.motor_count; ++i) {
    ContactEvent ev;
    // The pass runs while the shaft crosses [-theta, theta], a quarter turn
    // after onset.
    ev.start_s = schedule.onsets_s[i] + (kPi / 2.0 - theta) / omega;
    ev.end_s = schedule.onsets_s[i] + (kPi / 2.0 + theta) / omega;

    const auto first_tick =
        static_cast<Eigen::Index>(std::ceil(ev.start_s * f - 1e-9)) + pre_ticks;
    const auto last_tick =
        static_cast<Eigen::Index>(std::floor(ev.end_s * f + 1e-9)) + pre_ticks;
    ev.indentation_mm.resize(last_tick - first_tick + 1);
    for (Eigen::Index k = first_tick; k <= last_tick; ++k) {
      ev.indentation_mm[k - first_tick] =
          indentation_at(geometry, schedule.physical_angle_rad(k, i));
    }
    profile.events.push_back(std::move(ev));
  }

  profile.first_contact_s = profile.events.front().start_s;
  profile.last_release_s = profile.events.back().end_s;
  profile.overlapping = false;
  for (size_t i = 0; i + 1 < profile.events.size(); ++i) {
    if (profile.events[i + 1].start_s < profile.events[i].end_s) {
      profile.overlapping = true;
      break;
    }
  }
  return profile;
}

}  // namespace slipstroke
