#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "slipstroke/errors.hpp"
#include "slipstroke/kinematics.hpp"
#include "slipstroke/schedule.hpp"
#include "slipstroke/stream_io.hpp"
#include "oracles.hpp"

using namespace slipstroke;

namespace {

constexpr double kPi = std::numbers::pi;

// Stock geometry (tip 3 mm, trajectory 9 mm, 1.5 mm max indentation).
constexpr double kExitAngle = 0.58568554345715096;     // acos(1 - 1.5/9)
constexpr double kExitFraction = 0.18642949867733731;  // exit angle / pi

TactorGeometry stock_geometry() { return derive_geometry(3.0, 9.0, 1.5); }

ActuationParams stock_params(double omega, double delay, int tactors = 5) {
  return ActuationParams{omega, delay, tactors, 20.0};
}

}  // namespace

TEST_CASE("staggered onsets land on the delay grid") {
  const TrajectorySet ts =
      build_schedule(stock_geometry(), stock_params(2.0 * kPi, 0.10));

  REQUIRE(ts.onsets_s.size() == 5);
  const double expected[] = {0.0, 0.1, 0.2, 0.3, 0.4};
  for (int i = 0; i < 5; ++i) CHECK(ts.onsets_s[static_cast<size_t>(i)] == expected[i]);
  CHECK(ts.actuation_time_s == doctest::Approx(1.4).epsilon(1e-15));
  CHECK(ts.motor_count == 5);
  CHECK(ts.rotates);
  CHECK(ts.rest_angle_rad() == -kPi / 2.0);

  // Slower rotation stretches the same fractions: period 2 s at omega = pi.
  const TrajectorySet slow =
      build_schedule(stock_geometry(), stock_params(kPi, 0.25));
  const double slow_expected[] = {0.0, 0.5, 1.0, 1.5, 2.0};
  for (int i = 0; i < 5; ++i) CHECK(slow.onsets_s[static_cast<size_t>(i)] == slow_expected[i]);
  CHECK(slow.actuation_time_s == doctest::Approx(4.0).epsilon(1e-15));
}

TEST_CASE("zero delay actuates all motors in unison") {
  const TrajectorySet ts =
      build_schedule(stock_geometry(), stock_params(2.0 * kPi, 0.0, 3));
  for (double onset : ts.onsets_s) CHECK(onset == 0.0);
  for (int m = 1; m < ts.motor_count; ++m) {
    CHECK((ts.angle_rad.col(m) - ts.angle_rad.col(0)).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("later motors replay the first motor's samples shifted by whole ticks") {
  // 9973 Hz puts the onsets off the tick grid, so the rounding path matters.
  for (double tick_rate : {10000.0, 9973.0}) {
    CAPTURE(tick_rate);
    ScheduleOptions options;
    options.tick_rate_hz = tick_rate;
    const TrajectorySet ts =
        build_schedule(stock_geometry(), stock_params(2.0 * kPi, 0.10), options);

    const auto pre_ticks = std::llround(options.pre_roll_s * tick_rate);
    for (int i = 1; i < ts.motor_count; ++i) {
      const auto shift = std::llround(static_cast<double>(i) * 0.10 * 1.0 * tick_rate);
      CHECK(ts.onsets_s[static_cast<size_t>(i)] ==
            static_cast<double>(shift) / tick_rate);
      long long mismatches = 0;
      for (Eigen::Index k = shift; k < ts.tick_count(); ++k) {
        if (ts.angle_rad(k, i) != ts.angle_rad(k - shift, 0)) ++mismatches;
      }
      CHECK(mismatches == 0);
      // Before its onset the motor is parked exactly at rest.
      for (Eigen::Index k = 0; k < pre_ticks + shift; ++k) {
        if (ts.angle_rad(k, i) != ts.rest_angle_rad()) ++mismatches;
      }
      CHECK(mismatches == 0);
    }
  }
}

TEST_CASE("contact window matches the exit-angle crossing times") {
  const TactorGeometry g = stock_geometry();
  const TrajectorySet ts = build_schedule(g, stock_params(2.0 * kPi, 0.10));
  const ContactProfile profile = contact_profile(ts, g);

  REQUIRE(profile.events.size() == 5);
  CHECK(profile.first_contact_s ==
        doctest::Approx(0.15678525066133135).epsilon(1e-13));
  CHECK(profile.last_release_s ==
        doctest::Approx(0.74321474933866865).epsilon(1e-13));
  for (size_t i = 0; i < profile.events.size(); ++i) {
    const ContactEvent& ev = profile.events[i];
    // Each pass spans 2*theta of rotation, one quarter turn after onset.
    CHECK(ev.end_s - ev.start_s == doctest::Approx(kExitFraction).epsilon(1e-12));
    CHECK(ev.start_s == doctest::Approx(ts.onsets_s[i] + (kPi / 2.0 - kExitAngle) /
                                                             (2.0 * kPi))
                            .epsilon(1e-13));
    // The sampled indentation peaks at the full commanded depth mid-pass.
    CHECK(ev.indentation_mm.maxCoeff() == doctest::Approx(1.5).epsilon(1e-6));
    CHECK(ev.indentation_mm.minCoeff() >= 0.0);
  }
}

TEST_CASE("analytic overlap agrees with sampled contact windows across the stock grid") {
  const TactorGeometry g = stock_geometry();
  const double omegas[] = {2.0 * kPi, 4.0 * kPi / 3.0, kPi, 0.8 * kPi, 2.0 * kPi / 3.0};
  const double delays[] = {0.0, 0.05, 0.10, 0.15, 0.20, 0.25};

  for (double omega : omegas) {
    for (double delay : delays) {
      CAPTURE(omega);
      CAPTURE(delay);
      const TrajectorySet ts = build_schedule(g, stock_params(omega, delay));
      const ContactProfile profile = contact_profile(ts, g);
      const bool expected = delay < kExitFraction;
      CHECK(profile.overlapping == expected);
      CHECK(profile.overlapping == oracles::sampled_overlap(ts, g));
    }
  }
}

TEST_CASE("per-pass indentation profiles are identical across motors") {
  const TactorGeometry g = stock_geometry();
  const TrajectorySet ts = build_schedule(g, stock_params(2.0 * kPi, 0.10));
  const ContactProfile profile = contact_profile(ts, g);

  const Eigen::VectorXd& first = profile.events.front().indentation_mm;
  REQUIRE(first.size() > 0);
  for (size_t i = 1; i < profile.events.size(); ++i) {
    const Eigen::VectorXd& other = profile.events[i].indentation_mm;
    REQUIRE(other.size() == first.size());
    CHECK((other - first).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("stream length covers onsets plus one revolution") {
  ScheduleOptions options;
  options.pre_roll_s = 0.0;
  options.post_roll_s = 0.0;
  const TrajectorySet ts =
      build_schedule(stock_geometry(), stock_params(2.0 * kPi, 0.10), options);

  // Last onset at 0.4 s plus a 1 s revolution at 10 kHz, inclusive of t = 0.
  CHECK(ts.tick_count() == 14001);
  CHECK(ts.time_s(0) == 0.0);
  CHECK(ts.time_s(ts.tick_count() - 1) == 1.4);

  // Pre-roll shifts the grid to negative times without changing the motion.
  const TrajectorySet padded =
      build_schedule(stock_geometry(), stock_params(2.0 * kPi, 0.10));
  CHECK(padded.tick_count() == 14001 + 2000 + 2000);
  CHECK(padded.time_s(0) == -0.2);
  CHECK(padded.angle_rad(0, 0) == padded.rest_angle_rad());
}

TEST_CASE("sample values pin down the piecewise-linear ramp") {
  const double omega = 2.0 * kPi;
  const TrajectorySet ts = build_schedule(stock_geometry(), stock_params(omega, 0.10));

  // t = 0.05 s: motor 0 is 5% through its revolution, the rest still parked.
  const Eigen::Index k = 2000 + 500;
  CHECK(ts.time_s(k) == 0.05);
  CHECK(ts.angle_rad(k, 0) == -kPi / 2.0 + omega * 0.05);
  for (int m = 1; m < 5; ++m) CHECK(ts.angle_rad(k, m) == -kPi / 2.0);

  // Every motor ends exactly one unwrapped revolution past rest and the
  // wrapped shaft angle returns to the rest position.
  const Eigen::Index last = ts.tick_count() - 1;
  for (int m = 0; m < 5; ++m) {
    CHECK(ts.angle_rad(last, m) == -kPi / 2.0 + omega * 1.0);
    CHECK(ts.physical_angle_rad(last, m) == doctest::Approx(-kPi / 2.0).epsilon(1e-12));
  }
}

TEST_CASE("reverse direction mirrors the forward schedule") {
  ScheduleOptions reverse_options;
  reverse_options.direction = SweepDirection::reverse;
  const TrajectorySet fwd =
      build_schedule(stock_geometry(), stock_params(kPi, 0.15));
  const TrajectorySet rev =
      build_schedule(stock_geometry(), stock_params(kPi, 0.15), reverse_options);

  CHECK(rev.rest_angle_rad() == kPi / 2.0);
  REQUIRE(rev.tick_count() == fwd.tick_count());
  CHECK((rev.angle_rad + fwd.angle_rad).cwiseAbs().maxCoeff() == 0.0);

  // Indentation is even in the shaft angle, so contact looks the same.
  const ContactProfile pf = contact_profile(fwd, stock_geometry());
  const ContactProfile pr = contact_profile(rev, stock_geometry());
  CHECK(pr.first_contact_s == pf.first_contact_s);
  CHECK(pr.last_release_s == pf.last_release_s);
  CHECK(pr.overlapping == pf.overlapping);
}

TEST_CASE("hold schedule stays at rest") {
  const TactorGeometry g = stock_geometry();
  const TrajectorySet ts = hold_schedule(g, 2, 0.5);

  CHECK(ts.tick_count() == 5001);
  CHECK_FALSE(ts.rotates);
  CHECK(ts.time_s(0) == 0.0);
  CHECK(ts.time_s(5000) == 0.5);
  CHECK((ts.angle_rad.array() == ts.rest_angle_rad()).all());

  // Rest is a quarter turn away from the skin: no contact anywhere.
  CHECK(indentation_samples(ts, g).maxCoeff() == 0.0);
  const ContactProfile profile = contact_profile(ts, g);
  CHECK(profile.events.empty());
  CHECK_FALSE(profile.overlapping);

  CHECK_THROWS_AS(hold_schedule(g, 0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(hold_schedule(g, 2, -1.0), std::invalid_argument);
}

TEST_CASE("schedule construction rejects bad inputs") {
  const TactorGeometry g = stock_geometry();

  ScheduleOptions bad_rate;
  bad_rate.tick_rate_hz = 0.0;
  CHECK_THROWS_AS(build_schedule(g, stock_params(2.0 * kPi, 0.10), bad_rate),
                  std::invalid_argument);

  // 2*pi rad/s needs at least 200 Hz to keep 100 samples per half turn.
  bad_rate.tick_rate_hz = 199.0;
  CHECK_THROWS_AS(build_schedule(g, stock_params(2.0 * kPi, 0.10), bad_rate),
                  std::invalid_argument);
  bad_rate.tick_rate_hz = 200.0;
  CHECK_NOTHROW(build_schedule(g, stock_params(2.0 * kPi, 0.10), bad_rate));

  ScheduleOptions bad_roll;
  bad_roll.pre_roll_s = -0.1;
  CHECK_THROWS_AS(build_schedule(g, stock_params(2.0 * kPi, 0.10), bad_roll),
                  std::invalid_argument);

  CHECK_THROWS_WITH_AS(build_schedule(g, ActuationParams{2.0 * kPi, 0.10, 0, 20.0}),
                       doctest::Contains("tactor_count"), std::invalid_argument);

  // Contact analysis refuses a geometry other than the schedule's own.
  const TrajectorySet ts = build_schedule(g, stock_params(2.0 * kPi, 0.10));
  CHECK_THROWS_AS(contact_profile(ts, derive_geometry(2.0, 10.0, 1.0)),
                  std::invalid_argument);
}

TEST_CASE("command stream round trip is bit exact") {
  const TactorGeometry g = stock_geometry();
  const TrajectorySet ts =
      build_schedule(g, ActuationParams{4.0 * kPi / 3.0, 0.05, 3, 30.0});

  StreamProvenance provenance;
  provenance.config_hash_hex = "00f1e2d3c4b5a697";
  provenance.seed = 42;
  provenance.has_seed = true;

  std::ostringstream out;
  write_command_stream(out, ts, provenance);
  std::istringstream in(out.str());
  const TrajectorySet back = read_command_stream(in, "roundtrip");

  CHECK(back.tick_rate_hz == ts.tick_rate_hz);
  CHECK(back.motor_count == ts.motor_count);
  CHECK(back.direction == ts.direction);
  CHECK(back.rotates == ts.rotates);
  CHECK(back.geometry == ts.geometry);
  CHECK(back.params.angular_velocity_rad_s == ts.params.angular_velocity_rad_s);
  CHECK(back.params.delay_fraction == ts.params.delay_fraction);
  CHECK(back.params.tactor_count == ts.params.tactor_count);
  CHECK(back.params.spacing_mm == ts.params.spacing_mm);
  CHECK(back.pre_roll_s == ts.pre_roll_s);
  CHECK(back.post_roll_s == ts.post_roll_s);
  CHECK(back.onsets_s == ts.onsets_s);
  CHECK(back.actuation_time_s == doctest::Approx(ts.actuation_time_s).epsilon(1e-12));

  REQUIRE(back.tick_count() == ts.tick_count());
  CHECK((back.time_s - ts.time_s).cwiseAbs().maxCoeff() == 0.0);
  CHECK((back.angle_rad - ts.angle_rad).cwiseAbs().maxCoeff() == 0.0);

  // A second export of the re-imported stream reproduces the file verbatim.
  std::ostringstream again;
  write_command_stream(again, back, provenance);
  CHECK(again.str() == out.str());
}

TEST_CASE("hold stream survives the same round trip") {
  const TactorGeometry g = stock_geometry();
  const TrajectorySet ts = hold_schedule(g, 2, 0.05);

  std::ostringstream out;
  write_command_stream(out, ts, StreamProvenance{});
  std::istringstream in(out.str());
  const TrajectorySet back = read_command_stream(in, "roundtrip");

  CHECK_FALSE(back.rotates);
  CHECK(back.motor_count == 2);
  REQUIRE(back.tick_count() == ts.tick_count());
  CHECK((back.angle_rad - ts.angle_rad).cwiseAbs().maxCoeff() == 0.0);
  CHECK(back.actuation_time_s == 0.0);
  CHECK(contact_profile(back, g).events.empty());
}
