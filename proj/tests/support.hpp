#pragma once
// Shared fixtures: closed-form reference curves and small numeric helpers.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <vector>

#include "curveflow/curve.hpp"

namespace testsupport {

inline constexpr double kPi = std::numbers::pi;

inline std::vector<curveflow::Point> circle_points(std::size_t n, double R, curveflow::Point c = {0, 0},
                                                   double phase = 0.0) {
  std::vector<curveflow::Point> p(n);
  for (std::size_t j = 0; j < n; ++j) {
    p[j] = c + std::polar(R, 2 * kPi * (static_cast<double>(j) / static_cast<double>(n) + phase));
  }
  return p;
}

/// (a cos 2 pi t, b sin 2 pi t), not arc-length parametrized.
inline std::vector<curveflow::Point> ellipse_points(std::size_t n, double a, double b) {
  std::vector<curveflow::Point> p(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double t = 2 * kPi * static_cast<double>(j) / static_cast<double>(n);
    p[j] = {a * std::cos(t), b * std::sin(t)};
  }
  return p;
}

inline double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline double max_abs_diff(std::span<const curveflow::Point> a, std::span<const curveflow::Point> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace testsupport
