#pragma once

#include <Eigen/Core>

#include "slipstroke/kinematics.hpp"

namespace slipstroke {

/// Lumped model of one geared DC motor, everything referred to the output
/// shaft. Gear ratio, speed cap, and current limit come from the stock
/// hardware; the remaining constants are simulation defaults and may be
/// overridden through the device config.
struct MotorModel {
  double gear_ratio = 141.0;
  double speed_cap_rad_s = kDefaultSpeedCapRadS; // hard saturation on shaft speed
  double current_limit_a = 0.010;                // hard saturation on commanded current
  double torque_constant_nm_per_a = 0.25;        // output torque per amp, gearing included
  double inertia_kg_m2 = 2.0e-7;                 // tactor + shaft, at the output
  double damping_nm_s_per_rad = 1.0e-5;          // viscous
  long encoder_counts_per_output_rev = 577536;   // 1024 cpr quadrature through 141:1

  void validate() const;
};

/// Position-loop gains mapping angle error (rad) to commanded current (A).
struct PidGains {
  double kp = 0.0;
  double ki = 0.0;
  double kd = 0.0;
  double integral_clamp_a = 0.005;       // bound on the integral term's contribution
  double derivative_filter_tau_s = 2e-4; // one-pole low-pass on the measurement

  void validate() const;
};

/// Gains the stock config ships with; tuned once against the full actuation
/// grid at 10 kHz (see the tracking tests for the thresholds they hold).
PidGains default_pid_gains();

struct TrackingSummary {
  double max_abs_error_rad = 0.0;
  double rms_error_rad = 0.0;
  double saturation_fraction = 0.0; // ticks where the current command clipped
  bool unstable = false;            // |error| > 2 pi sustained for 0.5 s
  double first_divergence_s = 0.0;  // start of the sustained excursion, if any
};

struct TrackingResult {
  Eigen::VectorXd actual_rad;
  Eigen::VectorXd error_rad; // reference minus actual (true, unquantized)
  Eigen::VectorXd current_a; // post-saturation command
  Eigen::VectorXi encoder_counts;
  TrackingSummary summary;
};

/// Runs the closed PID loop over one motor's sampled reference.
///
/// Discrete simulation at the control tick: the PID acts on the quantized
/// encoder angle, the commanded current saturates at the model's limit, and
/// the plant (inertia + viscous damping) integrates semi-implicitly with the
/// shaft speed clipped at the cap. The motor starts at the first reference
/// sample with zero velocity. Divergence is reported through the summary,
/// never silently dropped.
TrackingResult simulate_tracking(const MotorModel& model, const PidGains& gains,
                                 const Eigen::Ref<const Eigen::VectorXd>& reference_rad,
                                 double dt_s);

struct SpeedCapCheck {
  bool ok = false;
  double margin_rad_s = 0.0; // cap minus requested angular velocity
};

SpeedCapCheck validate_speed_cap(const ActuationParams& params, const MotorModel& model);

}  // namespace slipstroke
