#include "slipstroke/motor_sim.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace slipstroke {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kDivergenceThresholdRad = 2.0 * kPi;
constexpr double kDivergenceHoldS = 0.5;

void require_positive(double value, const char* name) {
  if (!(value > 0.0)) {
    throw std::invalid_argument(std::string(name) + " must be positive, got " +
                                std::to_string(value));
  }
}
}  // namespace

void MotorModel::validate() const {
  require_positive(gear_ratio, "gear_ratio");
  require_positive(speed_cap_rad_s, "speed_cap_rad_s");
  require_positive(current_limit_a, "current_limit_a");
  require_positive(torque_constant_nm_per_a, "torque_constant_nm_per_a");
  require_positive(inertia_kg_m2, "inertia_kg_m2");
  require_positive(damping_nm_s_per_rad, "damping_nm_s_per_rad");
  if (encoder_counts_per_output_rev <= 0) {
    throw std::invalid_argument("encoder_counts_per_output_rev must be positive, got " +
                                std::to_string(encoder_counts_per_output_rev));
  }
}

void PidGains::validate() const {
  if (kp < 0.0 || ki < 0.0 || kd < 0.0) {
    throw std::invalid_argument("PID gains must be non-negative");
  }
  if (integral_clamp_a < 0.0) {
    throw std::invalid_argument("integral_clamp_a must be non-negative");
  }
  require_positive(derivative_filter_tau_s, "derivative_filter_tau_s");
}

PidGains default_pid_gains() {
  PidGains g;
  g.kp = 5.0;
  g.ki = 50.0;
  g.kd = 3.2e-3;
  g.integral_clamp_a = 0.005;
  g.derivative_filter_tau_s = 2e-4;
  return g;
}

TrackingResult simulate_tracking(const MotorModel& model, const PidGains& gains,
                                 const Eigen::Ref<const Eigen::VectorXd>& reference_rad,
                                 double dt_s) {
  model.validate();
  gains.validate();
  require_positive(dt_s, "dt_s");
  if (reference_rad.size() == 0) {
    throw std::invalid_argument("reference must contain at least one sample");
  }

  const auto n = reference_rad.size();
  const double counts_per_rad =
      static_cast<double>(model.encoder_counts_per_output_rev) / (2.0 * kPi);
  const double lp_alpha = dt_s / (gains.derivative_filter_tau_s + dt_s);

  TrackingResult r;
  r.actual_rad.resize(n);
  r.error_rad.resize(n);
  r.current_a.resize(n);
  r.encoder_counts.resize(n);

  double angle = reference_rad[0];
  double velocity = 0.0;
  double integral = 0.0;
  double filtered_meas = std::floor(angle * counts_per_rad) / counts_per_rad;
  double prev_filtered = filtered_meas;

  Eigen::Index divergence_run = 0;
  const auto divergence_ticks =
      static_cast<Eigen::Index>(std::ceil(kDivergenceHoldS / dt_s));
  long saturated = 0;
  double sum_sq_error = 0.0;

  for (Eigen::Index k = 0; k < n; ++k) {
    const auto counts = static_cast<long>(std::floor(angle * counts_per_rad));
    const double measured = static_cast<double>(counts) / counts_per_rad;
    const double error = reference_rad[k] - measured;

    integral += error * dt_s;
    double integral_term = gains.ki * integral;
    integral_term = std::clamp(integral_term, -gains.integral_clamp_a, gains.integral_clamp_a);

    filtered_meas += lp_alpha * (measured - filtered_meas);
    const double deriv = (filtered_meas - prev_filtered) / dt_s;
    prev_filtered = filtered_meas;

    const double command = gains.kp * error + integral_term - gains.kd * deriv;
    const double current =
        std::clamp(command, -model.current_limit_a, model.current_limit_a);
    if (current != command) ++saturated;

    r.actual_rad[k] = angle;
    r.encoder_counts[k] = static_cast<int>(counts);
    r.current_a[k] = current;
    const double true_error = reference_rad[k] - angle;
    r.error_rad[k] = true_error;
    sum_sq_error += true_error * true_error;
    r.summary.max_abs_error_rad = std::max(r.summary.max_abs_error_rad, std::abs(true_error));

    if (std::abs(true_error) > kDivergenceThresholdRad) {
      ++divergence_run;
      if (divergence_run >= divergence_ticks && !r.summary.unstable) {
        r.summary.unstable = true;
        r.summary.first_divergence_s =
            static_cast<double>(k - divergence_run + 1) * dt_s;
      }
    } else {
      divergence_run = 0;
    }

    // Semi-implicit Euler: velocity first, then position.
    const double torque =
        model.torque_constant_nm_per_a * current - model.damping_nm_s_per_rad * velocity;
    velocity += dt_s * torque / model.inertia_kg_m2;
    velocity = std::clamp(velocity, -model.speed_cap_rad_s, model.speed_cap_rad_s);
    angle += dt_s * velocity;
  }

  r.summary.rms_error_rad = std::sqrt(sum_sq_error / static_cast<double>(n));
  r.summary.saturation_fraction = static_cast<double>(saturated) / static_cast<double>(n);
  return r;
}

SpeedCapCheck validate_speed_cap(const ActuationParams& params, const MotorModel& model) {
  SpeedCapCheck check;
  check.margin_rad_s = model.speed_cap_rad_s - params.angular_velocity_rad_s;
  check.ok = params.angular_velocity_rad_s <= model.speed_cap_rad_s;
  return check;
}

}  // namespace slipstroke
