// Independent reference implementations the tests compare the library
// against. Everything here is deliberately written from first principles
// with different algorithms than the production code.
#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "slipstroke/schedule.hpp"

namespace oracles {

// ----------------------------------------------------------- student-t --

inline double t_density(double x, double df) {
  const double c = std::lgamma((df + 1.0) / 2.0) - std::lgamma(df / 2.0) -
                   0.5 * std::log(df * M_PI);
  return std::exp(c - (df + 1.0) / 2.0 * std::log1p(x * x / df));
}

inline double adaptive_simpson(const std::function<double(double)>& f, double a,
                               double b, double fa, double fm, double fb, double whole,
                               double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol) {
    return left + right + (left + right - whole) / 15.0;
  }
  return adaptive_simpson(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double tol) {
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 48);
}

/// Two-sided p-value for |t| on df degrees of freedom by adaptive Simpson
/// quadrature of the t density. The tail integral maps [T, inf) onto [0, 1)
/// through x = T + u/(1-u).
inline double two_sided_p(double t, double df) {
  const double T = std::abs(t);
  auto tail = [df, T](double u) {
    const double g = 1.0 - u;
    const double x = T + u / g;
    return t_density(x, df) / (g * g);
  };
  const double p = 2.0 * integrate(tail, 0.0, 1.0 - 1e-9, 1e-13);
  return std::min(p, 1.0);
}

// ------------------------------------------------------------ geometry --

/// Indentation by direct circle-versus-plane intersection: the tip circle's
/// center sits trajectory_radius from the axis at `angle` off the skin
/// normal; penetration is how far the circle's lowest point dips below the
/// plane at standoff height.
inline double indentation_circle_plane(const slipstroke::TactorGeometry& g,
                                       double angle_rad) {
  const double center_height = g.trajectory_radius_mm * std::cos(angle_rad);
  const double lowest = center_height + g.tip_radius_mm;
  return std::max(0.0, lowest - g.standoff_mm);
}

// ------------------------------------------------------------- overlap --

/// Overlap decided purely from sampled angles: mark every tick where a
/// motor's wrapped angle indents the skin, extract each motor's contact
/// window, and intersect adjacent windows.
inline bool sampled_overlap(const slipstroke::TrajectorySet& ts,
                            const slipstroke::TactorGeometry& g) {
  struct Window {
    long first = -1;
    long last = -1;
  };
  std::vector<Window> windows(static_cast<std::size_t>(ts.motor_count));
  for (long k = 0; k < ts.tick_count(); ++k) {
    for (int m = 0; m < ts.motor_count; ++m) {
      const double a = ts.physical_angle_rad(k, m);
      if (indentation_circle_plane(g, a) > 0.0) {
        auto& w = windows[static_cast<std::size_t>(m)];
        if (w.first < 0) w.first = k;
        w.last = k;
      }
    }
  }
  for (std::size_t m = 0; m + 1 < windows.size(); ++m) {
    if (windows[m].first < 0 || windows[m + 1].first < 0) continue;
    if (windows[m + 1].first <= windows[m].last) return true;
  }
  return false;
}

}  // namespace oracles
