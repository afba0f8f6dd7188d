#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "oracles.hpp"
#include "slipstroke/kinematics.hpp"

using namespace slipstroke;
using doctest::Approx;

namespace {

constexpr double kPi = std::numbers::pi;

TactorGeometry default_geometry() { return derive_geometry(3.0, 9.0, 1.5); }

const std::vector<double>& grid_omegas() {
  static const std::vector<double> v = {2.0 * kPi, 4.0 * kPi / 3.0, kPi, 0.8 * kPi,
                                        2.0 * kPi / 3.0};
  return v;
}

const std::vector<double>& grid_delays() {
  static const std::vector<double> v = {0.0, 0.05, 0.10, 0.15, 0.20, 0.25};
  return v;
}

}  // namespace

TEST_CASE("derive_geometry produces the stock contact arc") {
  const TactorGeometry g = default_geometry();
  CHECK(g.standoff_mm == 10.5);
  CHECK(g.exit_angle_rad == Approx(0.58568554345715096).epsilon(1e-14));
  CHECK(g.half_travel_mm == Approx(4.9749371855330998).epsilon(1e-14));
  // One pass travels just about a centimeter along the skin.
  CHECK(2.0 * g.half_travel_mm == Approx(9.9498743710661995).epsilon(1e-14));
}

TEST_CASE("derive_geometry on a second geometry") {
  const TactorGeometry g = derive_geometry(2.0, 10.0, 1.0);
  CHECK(g.standoff_mm == 11.0);
  CHECK(g.exit_angle_rad == Approx(0.45102681179626243).epsilon(1e-14));
  CHECK(g.half_travel_mm == Approx(4.3588989435406736).epsilon(1e-14));
}

TEST_CASE("derive_geometry rejects impossible shapes") {
  CHECK_THROWS_AS(derive_geometry(0.0, 9.0, 1.5), std::invalid_argument);
  CHECK_THROWS_AS(derive_geometry(3.0, -1.0, 1.5), std::invalid_argument);
  CHECK_THROWS_AS(derive_geometry(3.0, 9.0, 0.0), std::invalid_argument);
  // Indentation at or past the trajectory radius: the tactor never leaves
  // the skin, the exit-angle cosine leaves (0, 1).
  CHECK_THROWS_AS(derive_geometry(3.0, 9.0, 9.0), std::domain_error);
  CHECK_THROWS_AS(derive_geometry(3.0, 9.0, 10.0), std::domain_error);
  // Just short of the radius is extreme but legal: theta approaches pi/2.
  const TactorGeometry edge = derive_geometry(3.0, 9.0, 8.9999);
  CHECK(edge.exit_angle_rad < kPi / 2.0);
  CHECK(edge.exit_angle_rad > 1.5);
}

TEST_CASE("geometry round trip: plane height matches the exit configuration") {
  for (const TactorGeometry& g :
       {default_geometry(), derive_geometry(2.0, 10.0, 1.0), derive_geometry(5.0, 20.0, 3.0)}) {
    const double y_exit = g.trajectory_radius_mm * std::cos(g.exit_angle_rad);
    CHECK(g.standoff_mm == Approx(y_exit + g.tip_radius_mm).epsilon(1e-9));
    CHECK(g.exit_angle_rad > 0.0);
    CHECK(g.exit_angle_rad < kPi / 2.0);
  }
}

TEST_CASE("indentation endpoints are exact") {
  const TactorGeometry g = default_geometry();
  CHECK(indentation_at(g, 0.0) == 1.5);
  CHECK(indentation_at(g, g.exit_angle_rad) == 0.0);
  CHECK(indentation_at(g, -g.exit_angle_rad) == 0.0);
  CHECK(indentation_at(g, 2.0) == 0.0);
  CHECK(indentation_at(g, kPi) == 0.0);
}

TEST_CASE("indentation at an interior angle matches the frozen value") {
  const TactorGeometry g = default_geometry();
  CHECK(indentation_at(g, 0.3) == Approx(1.0980284021304542).epsilon(1e-14));
}

TEST_CASE("indentation matches the circle-versus-plane oracle everywhere") {
  const TactorGeometry g = default_geometry();
  for (int i = -400; i <= 400; ++i) {
    const double angle = i * 0.005;
    const double expected = oracles::indentation_circle_plane(g, angle);
    CHECK(indentation_at(g, angle) == Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("indentation is even, continuous, and maximal at zero") {
  const TactorGeometry g = default_geometry();
  double prev = indentation_at(g, -1.0);
  for (int i = -999; i <= 1000; ++i) {
    const double angle = i * 0.001;
    const double v = indentation_at(g, angle);
    CHECK(v == indentation_at(g, -angle)); // cos is even, bit for bit
    CHECK(v <= g.max_indentation_mm);
    CHECK(v >= 0.0);
    CHECK(std::abs(v - prev) < 0.006); // slope bounded by R_L * step
    prev = v;
  }
}

TEST_CASE("local speeds reproduce the quoted per-velocity list") {
  const TactorGeometry g = default_geometry();
  const double expected[] = {53.370708185440846, 35.580472123627231, 26.685354092720423,
                             21.348283274176338, 17.790236061813615};
  for (std::size_t i = 0; i < grid_omegas().size(); ++i) {
    CHECK(local_speed(g, grid_omegas()[i]) == Approx(expected[i]).epsilon(1e-13));
  }
  // cm/s, one decimal: 5.3, 3.6, 2.7, 2.1, 1.8
  CHECK(std::round(local_speed(g, 2.0 * kPi)) == 53.0);
  CHECK(std::round(local_speed(g, 2.0 * kPi / 3.0) * 10.0) / 10.0 == Approx(17.8));
  CHECK_THROWS_AS(local_speed(g, 0.0), std::invalid_argument);
}

TEST_CASE("stroke times match the frozen grid points") {
  const TactorGeometry g = default_geometry();
  const StrokeTimes t = stroke_times(g, {kPi, 0.10, 5, 20.0});
  CHECK(t.contact_s == Approx(1.1728589973546746).epsilon(1e-14));
  CHECK(t.actuation_s == Approx(2.8).epsilon(1e-15));

  // Zero delay collapses to a single pass regardless of N.
  const StrokeTimes t0 = stroke_times(g, {2.0 * kPi, 0.0, 5, 20.0});
  CHECK(t0.contact_s == Approx(2.0 * g.exit_angle_rad / (2.0 * kPi)).epsilon(1e-15));
  const StrokeTimes t1 = stroke_times(g, {2.0 * kPi, 0.0, 1, 0.0});
  CHECK(t0.contact_s == t1.contact_s);

  const StrokeTimes tq = stroke_times(g, {2.0 * kPi, 0.25, 5, 20.0});
  CHECK(tq.actuation_s == Approx(2.0).epsilon(1e-15));
}

TEST_CASE("actuation params validation names the offending field") {
  ActuationParams p{2.0 * kPi, 0.10, 5, 20.0};
  CHECK_NOTHROW(p.validate());

  p.angular_velocity_rad_s = -1.0;
  CHECK_THROWS_WITH_AS(p.validate(), doctest::Contains("angular_velocity_rad_s"),
                       std::invalid_argument);
  p.angular_velocity_rad_s = 10.0; // above the 9.634 rad/s cap
  CHECK_THROWS_WITH_AS(p.validate(), doctest::Contains("speed cap"),
                       std::invalid_argument);
  p.angular_velocity_rad_s = kDefaultSpeedCapRadS; // boundary passes
  CHECK_NOTHROW(p.validate());

  p = {2.0 * kPi, 1.5, 5, 20.0};
  CHECK_THROWS_WITH_AS(p.validate(), doctest::Contains("delay_fraction"),
                       std::invalid_argument);
  p = {2.0 * kPi, 0.1, 0, 20.0};
  CHECK_THROWS_WITH_AS(p.validate(), doctest::Contains("tactor_count"),
                       std::invalid_argument);
  p = {2.0 * kPi, 0.1, 5, 0.0};
  CHECK_THROWS_WITH_AS(p.validate(), doctest::Contains("spacing_mm"),
                       std::invalid_argument);
  p = {2.0 * kPi, 0.1, 1, 0.0}; // single tactor needs no spacing
  CHECK_NOTHROW(p.validate());
}

TEST_CASE("apparent speeds reproduce the quoted table cells") {
  const TactorGeometry g = default_geometry();
  CHECK(apparent_speed(g, {2.0 * kPi, 0.0, 5, 20.0}) ==
        Approx(482.48734781370016).epsilon(1e-13));
  CHECK(apparent_speed(g, {2.0 * kPi / 3.0, 0.25, 5, 20.0}) ==
        Approx(25.271869496205401).epsilon(1e-13));
  CHECK(apparent_speed(g, {kPi, 0.10, 5, 20.0}) ==
        Approx(76.692828868554265).epsilon(1e-13));
  CHECK(apparent_speed(g, {kPi, 0.15, 5, 20.0}) ==
        Approx(57.188771862162539).epsilon(1e-13));
  CHECK(apparent_speed(g, {2.0 * kPi / 3.0, 0.05, 5, 20.0}) ==
        Approx(77.590586535573088).epsilon(1e-13));
  CHECK(apparent_speed(g, {2.0 * kPi / 3.0, 0.10, 5, 20.0}) ==
        Approx(51.128552579036177).epsilon(1e-13));
}

TEST_CASE("single tactor: apparent speed is the local speed, bit for bit") {
  const TactorGeometry g = default_geometry();
  for (double omega : grid_omegas()) {
    CHECK(apparent_speed(g, {omega, 0.10, 1, 0.0}) == local_speed(g, omega));
  }
}

TEST_CASE("N=1 consistency: 2x over contact time equals x omega over theta") {
  const TactorGeometry g = default_geometry();
  for (double omega : grid_omegas()) {
    const StrokeTimes t = stroke_times(g, {omega, 0.0, 1, 0.0});
    const double from_times = 2.0 * g.half_travel_mm / t.contact_s;
    const double closed_form = local_speed(g, omega);
    CHECK(from_times == Approx(closed_form).epsilon(1e-9));
  }
}

TEST_CASE("speed table covers the full grid with the quoted extremes") {
  const TactorGeometry g = default_geometry();
  const SpeedGrid grid = speed_table(g, grid_omegas(), grid_delays(), 5, {20.0});
  REQUIRE(grid.cells.size() == 30);
  CHECK(grid.min_apparent_mm_s() == Approx(25.271869496205401).epsilon(1e-13));
  CHECK(grid.max_apparent_mm_s() == Approx(482.48734781370016).epsilon(1e-13));
  CHECK(grid.at(0, 0).apparent_speed_mm_s == grid.max_apparent_mm_s());
  CHECK(grid.at(4, 5).apparent_speed_mm_s == grid.min_apparent_mm_s());

  // The slimmer four-tactor grid over spacings.
  const SpeedGrid wide = speed_table(g, grid_omegas(), {0.10}, 4, {20.0, 30.0, 35.0, 40.0});
  REQUIRE(wide.cells.size() == 20);
  CHECK(wide.min_apparent_mm_s() == Approx(47.934232717703637).epsilon(1e-13));
  CHECK(wide.max_apparent_mm_s() == Approx(267.15048064399090).epsilon(1e-13));

  CHECK_THROWS_AS(speed_table(g, {}, grid_delays(), 5, {20.0}), std::invalid_argument);
}

TEST_CASE("apparent speed is monotone in omega, delay, and spacing") {
  const TactorGeometry g = default_geometry();
  const std::vector<double> spacings = {15.0, 20.0, 30.0, 40.0};
  const SpeedGrid grid = speed_table(g, grid_omegas(), grid_delays(), 5, spacings);
  // grid_omegas() descends, so apparent speed must strictly descend with it.
  for (std::size_t w = 0; w + 1 < grid_omegas().size(); ++w) {
    for (std::size_t d = 0; d < grid_delays().size(); ++d) {
      for (std::size_t s = 0; s < spacings.size(); ++s) {
        CHECK(grid.at(static_cast<int>(w), static_cast<int>(d), static_cast<int>(s))
                  .apparent_speed_mm_s >
              grid.at(static_cast<int>(w) + 1, static_cast<int>(d), static_cast<int>(s))
                  .apparent_speed_mm_s);
      }
    }
  }
  for (std::size_t w = 0; w < grid_omegas().size(); ++w) {
    for (std::size_t d = 0; d + 1 < grid_delays().size(); ++d) {
      for (std::size_t s = 0; s < spacings.size(); ++s) {
        CHECK(grid.at(static_cast<int>(w), static_cast<int>(d), static_cast<int>(s))
                  .apparent_speed_mm_s >
              grid.at(static_cast<int>(w), static_cast<int>(d) + 1, static_cast<int>(s))
                  .apparent_speed_mm_s);
      }
    }
  }
  for (std::size_t w = 0; w < grid_omegas().size(); ++w) {
    for (std::size_t d = 0; d < grid_delays().size(); ++d) {
      for (std::size_t s = 0; s + 1 < spacings.size(); ++s) {
        CHECK(grid.at(static_cast<int>(w), static_cast<int>(d), static_cast<int>(s))
                  .apparent_speed_mm_s <
              grid.at(static_cast<int>(w), static_cast<int>(d), static_cast<int>(s) + 1)
                  .apparent_speed_mm_s);
      }
    }
  }
}

TEST_CASE("apparent speed beats local speed across the whole stock grid") {
  const TactorGeometry g = default_geometry();
  const SpeedGrid grid = speed_table(g, grid_omegas(), grid_delays(), 5, {20.0});
  for (const SpeedSummary& cell : grid.cells) {
    CHECK(cell.apparent_speed_mm_s > cell.local_speed_mm_s);
    CHECK(cell.actuation_time_s >= cell.contact_time_s);
  }
}
