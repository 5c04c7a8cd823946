#pragma once
// Closed-form geometry of the ellipse (a cos t, b sin t) integrated with a dense
// periodic trapezoid rule. Independent of the spectral code paths.

#include <cmath>
#include <functional>
#include <numbers>

namespace testsupport {

struct EllipseOracle {
  double a, b;
  std::size_t points = 1000000;

  double D(double t) const { return a * a * std::sin(t) * std::sin(t) + b * b * std::cos(t) * std::cos(t); }
  double dD(double t) const { return (a * a - b * b) * std::sin(2 * t); }
  double ddD(double t) const { return 2 * (a * a - b * b) * std::cos(2 * t); }
  double speed(double t) const { return std::sqrt(D(t)); }
  double kappa(double t) const { return a * b / std::pow(D(t), 1.5); }
  double dkappa(double t) const { return -1.5 * a * b * std::pow(D(t), -2.5) * dD(t); }
  double ddkappa(double t) const {
    return a * b * (3.75 * std::pow(D(t), -3.5) * dD(t) * dD(t) - 1.5 * std::pow(D(t), -2.5) * ddD(t));
  }
  // Arc-length derivatives of kappa.
  double kappa_s(double t) const { return dkappa(t) / speed(t); }
  double kappa_ss(double t) const {
    const double g = speed(t);
    const double dg = dD(t) / (2 * g);
    return (ddkappa(t) * g - dkappa(t) * dg) / (g * g * g);
  }

  /// int_0^{2pi} f(t) |f'(t)| dt, i.e. the arc-length integral of f.
  double ds_integral(const std::function<double(double)>& f) const {
    const double h = 2 * std::numbers::pi / static_cast<double>(points);
    double acc = 0.0;
    for (std::size_t j = 0; j < points; ++j) {
      const double t = h * static_cast<double>(j);
      acc += f(t) * speed(t);
    }
    return acc * h;
  }

  double length() const {
    return ds_integral([](double) { return 1.0; });
  }

  double I0() const {
    const double L = length();
    const double kbar = 2 * std::numbers::pi / L;
    return L * ds_integral([&](double t) { return std::pow(kappa(t) - kbar, 2); });
  }
  double I1() const {
    const double L = length();
    return std::pow(L, 3) * ds_integral([&](double t) { return std::pow(kappa_s(t), 2); });
  }
  double I2() const {
    const double L = length();
    return std::pow(L, 5) * ds_integral([&](double t) { return std::pow(kappa_ss(t), 2); });
  }
  double J(int k, double p) const {
    const double L = length();
    const double kbar = 2 * std::numbers::pi / L;
    const double integral = ds_integral([&](double t) {
      const double v = k == 0 ? kappa(t) - kbar : (k == 1 ? kappa_s(t) : kappa_ss(t));
      return std::pow(std::abs(v), p);
    });
    return std::pow(std::pow(L, (1.0 + k) * p - 1.0) * integral, 1.0 / p);
  }
};

}  // namespace testsupport
