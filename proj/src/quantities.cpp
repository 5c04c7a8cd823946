#include "curveflow/quantities.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

#include "curveflow/errors.hpp"
#include "curveflow/kernels.hpp"
#include "curveflow/spectral.hpp"

namespace curveflow {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Frame {
  std::vector<double> speed;
  std::vector<double> kappa;
};

Frame speed_and_curvature(const ClosedCurve& curve) {
  const auto d1 = spectral::derivative(curve.points(), 1);
  const auto d2 = spectral::derivative(curve.points(), 2);
  Frame f{std::vector<double>(d1.size()), std::vector<double>(d1.size())};
  kernels::speed_curvature(d1, d2, f.speed, f.kappa);
  return f;
}

double mean(std::span<const double> v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

void require_arclength(const ClosedCurve& curve) {
  if (!curve.is_arclength()) {
    fail(ErrorKind::NotArcLength, "curve must be resampled to arc length first");
  }
}

void require_budget(const ClosedCurve& curve, int order) {
  if (order < 0) fail(ErrorKind::InvalidArgument, "negative derivative order");
  if (static_cast<std::size_t>(order) + 2 > curve.size() / 2) {
    fail(ErrorKind::OrderTooHigh, "derivative order " + std::to_string(order) + " exceeds N/2 - 2");
  }
}

}  // namespace

double length(const ClosedCurve& curve) {
  const double L = mean(parameter_speed(curve));
  if (!(L > 1e-12)) fail(ErrorKind::DegenerateCurve, "length below 1e-12");
  return L;
}

double signed_area(const ClosedCurve& curve) {
  const auto d1 = spectral::derivative(curve.points(), 1);
  std::vector<double> cross(d1.size());
  for (std::size_t i = 0; i < d1.size(); ++i) {
    const auto& z = curve[i];
    cross[i] = z.real() * d1[i].imag() - z.imag() * d1[i].real();
  }
  length(curve);  // degeneracy check
  return 0.5 * mean(cross);
}

std::vector<double> curvature(const ClosedCurve& curve) {
  auto f = speed_and_curvature(curve);
  const double L = mean(f.speed);
  if (!(L > 1e-12)) fail(ErrorKind::DegenerateCurve, "length below 1e-12");
  for (double g : f.speed) {
    if (!(g > 1e-12 * L)) fail(ErrorKind::NonMonotoneArcLength, "parametrization speed vanishes");
  }
  return std::move(f.kappa);
}

RotationNumber rotation_number(const ClosedCurve& curve) {
  const auto f = speed_and_curvature(curve);
  const double turning = kernels::dot(f.kappa, f.speed) / static_cast<double>(f.speed.size());
  const double x = turning / kTwoPi;
  RotationNumber r{static_cast<int>(std::lround(x)), 0.0};
  r.residual = std::abs(x - r.value);
  if (!(r.residual <= 1e-6)) {
    fail(ErrorKind::AmbiguousRotation, "turning integral is not close to an integer (residual " +
                                           std::to_string(r.residual) + ")");
  }
  return r;
}

CurvatureDeviation curvature_deviation(const ClosedCurve& curve) {
  const auto kappa = curvature(curve);
  const auto speed = parameter_speed(curve);
  const double L = mean(speed);
  const double turning = kernels::dot(kappa, speed) / static_cast<double>(speed.size());
  CurvatureDeviation out;
  out.rotation = static_cast<int>(std::lround(turning / kTwoPi));
  out.rotation_warning = out.rotation != 1;
  const double kbar = turning / L;
  out.values.resize(kappa.size());
  for (std::size_t i = 0; i < kappa.size(); ++i) out.values[i] = kappa[i] - kbar;
  return out;
}

std::vector<double> arclength_derivative(std::span<const double> field, int order, double length) {
  return spectral::derivative_real(field, order, length);
}

double arclength_integral(std::span<const double> field, double length) {
  return length * mean(field);
}

std::vector<double> scale_invariant_I_all(const ClosedCurve& curve, int ell_max) {
  require_arclength(curve);
  require_budget(curve, ell_max);
  const double L = length(curve);
  const auto kd = curvature_deviation(curve).values;
  auto coeffs = spectral::forward_real(kd);
  std::vector<double> out;
  for (int ell = 0; ell <= ell_max; ++ell) {
    auto c = coeffs;
    spectral::differentiate(c, ell, L);
    const auto d = spectral::inverse_real(c);
    const double sq = kernels::dot(d, d) / static_cast<double>(d.size()) * L;
    out.push_back(std::pow(L, 2 * ell + 1) * sq);
  }
  return out;
}

double scale_invariant_I(const ClosedCurve& curve, int ell) {
  return scale_invariant_I_all(curve, ell).back();
}

// L^2 - 4 pi A = 4 pi^2 sum k(k-1)|c_k|^2 - var(|f'|) by Parseval, a sum of
// non-negative terms plus a speed variance that vanishes in arc length. This
// avoids the cancellation in 1 - 4 pi A / L^2 near circles.
double isoperimetric_deficit(const ClosedCurve& curve) {
  const double L = length(curve);
  const std::size_t n = curve.size();
  const auto c = spectral::forward(curve.points());
  double modes = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const int k = spectral::wavenumber(i, n);
    if (2 * static_cast<std::size_t>(std::abs(k)) == n) continue;  // derivative drops the Nyquist mode
    modes += static_cast<double>(k) * (k - 1) * std::norm(c[i]);
  }
  double var = 0.0;
  for (double g : parameter_speed(curve)) var += (g - L) * (g - L);
  var /= static_cast<double>(n);
  return (4.0 * std::numbers::pi * std::numbers::pi * modes - var) / (L * L);
}

double J_norm(const ClosedCurve& curve, int k, double p) {
  if (!(p >= 1.0)) fail(ErrorKind::InvalidArgument, "J norm needs p >= 1");
  require_arclength(curve);
  require_budget(curve, k);
  const double L = length(curve);
  const auto d = arclength_derivative(curvature_deviation(curve).values, k, L);
  double acc = 0.0;
  for (double v : d) acc += std::pow(std::abs(v), p);
  const double integral = L * acc / static_cast<double>(d.size());
  return std::pow(std::pow(L, (1.0 + k) * p - 1.0) * integral, 1.0 / p);
}

CurveQuantities compute_quantities(const ClosedCurve& curve) {
  CurveQuantities q;
  q.L = length(curve);
  q.A = signed_area(curve);
  q.kappa = curvature(curve);
  auto dev = curvature_deviation(curve);
  q.kappa_dev = std::move(dev.values);
  q.rotation = dev.rotation;
  return q;
}

}  // namespace curveflow
