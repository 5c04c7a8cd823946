#include "curveflow/curve.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "curveflow/errors.hpp"
#include "curveflow/kernels.hpp"
#include "curveflow/spectral.hpp"

namespace curveflow {
namespace {

using cplx = std::complex<double>;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr std::size_t kOversample = 4;

void check_count(std::size_t n) {
  if (n < kMinSamples) fail(ErrorKind::TooFewPoints, "need at least 16 samples, got " + std::to_string(n));
  if (n % 2 != 0) fail(ErrorKind::TooFewPoints, "sample count must be even, got " + std::to_string(n));
}

// Series in FFT order -> symmetric k = -K..K layout with the Nyquist term split.
std::vector<cplx> to_symmetric(std::span<const cplx> fft_coeffs) {
  const std::size_t n = fft_coeffs.size();
  const std::size_t half = n / 2;
  std::vector<cplx> out(n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    const int k = spectral::wavenumber(i, n);
    if (static_cast<std::size_t>(k) == half) {
      out[0] += 0.5 * fft_coeffs[i];
      out[n] += 0.5 * fft_coeffs[i];
    } else {
      out[static_cast<std::size_t>(k + static_cast<int>(half))] = fft_coeffs[i];
    }
  }
  return out;
}

// Smallest |f'(theta)|^2 near local minima of the speed sampled on a fine
// grid, refined by golden-section search on the exact trigonometric polynomial.
double min_speed_squared(std::span<const cplx> d1_sym, int k_min, std::span<const double> fine_speed) {
  const std::size_t m = fine_speed.size();
  const double h = 1.0 / static_cast<double>(m);
  double best = *std::min_element(fine_speed.begin(), fine_speed.end());
  best *= best;
  const double mean = std::accumulate(fine_speed.begin(), fine_speed.end(), 0.0) / static_cast<double>(m);
  auto speed2 = [&](double th) {
    cplx v;
    const cplx* c = d1_sym.data();
    cplx* o = &v;
    kernels::eval_series({&c, 1}, d1_sym.size(), k_min, {&th, 1}, {&o, 1});
    return std::norm(v);
  };
  for (std::size_t i = 0; i < m; ++i) {
    const double gi = fine_speed[i];
    if (gi > 0.05 * mean) continue;
    if (gi > fine_speed[(i + m - 1) % m] || gi > fine_speed[(i + 1) % m]) continue;
    double a = (static_cast<double>(i) - 1.0) * h, b = (static_cast<double>(i) + 1.0) * h;
    const double r = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - r * (b - a), d = a + r * (b - a);
    double fc = speed2(c), fd = speed2(d);
    for (int it = 0; it < 60; ++it) {
      if (fc < fd) {
        b = d; d = c; fd = fc; c = b - r * (b - a); fc = speed2(c);
      } else {
        a = c; c = d; fc = fd; d = a + r * (b - a); fd = speed2(d);
      }
    }
    best = std::min({best, fc, fd});
  }
  return best;
}

ClosedCurve resample_once(const ClosedCurve& curve, std::size_t n_out);

}  // namespace

ClosedCurve ClosedCurve::from_samples(std::vector<Point> points) {
  check_count(points.size());
  double poly = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!std::isfinite(points[i].real()) || !std::isfinite(points[i].imag())) {
      fail(ErrorKind::InvalidArgument, "non-finite sample");
    }
    poly += std::abs(points[(i + 1) % points.size()] - points[i]);
  }
  if (poly < 1e-12) fail(ErrorKind::DegenerateCurve, "total polygonal length below 1e-12");
  return ClosedCurve(std::move(points), false);
}

SpectralCoeffs spectral_coeffs(const ClosedCurve& curve) {
  const auto c = spectral::forward(curve.points());
  return SpectralCoeffs{static_cast<int>(curve.size() / 2), to_symmetric(c)};
}

std::vector<Point> evaluate(const SpectralCoeffs& coeffs, std::span<const double> theta) {
  std::vector<Point> out(theta.size());
  const cplx* c = coeffs.modes.data();
  cplx* o = out.data();
  kernels::eval_series({&c, 1}, coeffs.modes.size(), -coeffs.K, theta, {&o, 1});
  return out;
}

ClosedCurve from_coeffs(const SpectralCoeffs& coeffs, std::size_t n) {
  std::vector<double> theta(n);
  for (std::size_t j = 0; j < n; ++j) theta[j] = static_cast<double>(j) / static_cast<double>(n);
  return ClosedCurve::from_samples(evaluate(coeffs, theta));
}

std::vector<Point> derivative(const ClosedCurve& curve, int order) {
  if (order < 0) fail(ErrorKind::InvalidArgument, "negative derivative order");
  if (static_cast<std::size_t>(order) + 1 > curve.size() / 2) {
    fail(ErrorKind::OrderTooHigh, "order " + std::to_string(order) + " exceeds N/2 - 1");
  }
  return spectral::derivative(curve.points(), order);
}

std::vector<double> parameter_speed(const ClosedCurve& curve) {
  const auto d1 = spectral::derivative(curve.points(), 1);
  std::vector<double> g(d1.size());
  for (std::size_t i = 0; i < d1.size(); ++i) g[i] = std::abs(d1[i]);
  return g;
}

double arclength_defect(const ClosedCurve& curve) {
  const auto g = parameter_speed(curve);
  const double mean = std::accumulate(g.begin(), g.end(), 0.0) / static_cast<double>(g.size());
  double worst = 0.0;
  for (double v : g) worst = std::max(worst, std::abs(v - mean));
  return worst / mean;
}

namespace {

ClosedCurve resample_once(const ClosedCurve& curve, std::size_t n_out) {
  const std::size_t n = curve.size();
  const std::size_t m = kOversample * n;
  const auto zc = spectral::forward(curve.points());

  auto d1c = zc;
  spectral::differentiate(d1c, 1);
  const auto d1_fine = spectral::inverse(spectral::zero_pad(d1c, m));
  std::vector<double> g(m);
  for (std::size_t i = 0; i < m; ++i) g[i] = std::abs(d1_fine[i]);

  const auto gc = spectral::forward_real(g);
  const double length = gc[0].real();
  if (!(length > 1e-12)) fail(ErrorKind::DegenerateCurve, "curve length below 1e-12");

  const auto d1_sym = to_symmetric(d1c);
  const double gmin2 = min_speed_squared(d1_sym, -static_cast<int>(n / 2), g);
  if (gmin2 <= 1e-16 * length * length) {
    fail(ErrorKind::NonMonotoneArcLength, "parametrization speed vanishes (cusp)");
  }

  // Cumulative arc length S(theta) = L theta + P(theta) - P(0) with P' = g - L.
  std::vector<cplx> pc(m);
  for (std::size_t i = 1; i < m; ++i) {
    const int k = spectral::wavenumber(i, m);
    if (2 * static_cast<std::size_t>(std::abs(k)) == m) continue;
    pc[i] = gc[i] / cplx(0.0, kTwoPi * k);
  }
  const auto p_fine = spectral::inverse_real(pc);
  std::vector<double> s_fine(m + 1), g_table(m + 1);
  for (std::size_t i = 0; i < m; ++i) {
    s_fine[i] = length * static_cast<double>(i) / static_cast<double>(m) + p_fine[i] - p_fine[0];
    g_table[i] = g[i];
  }
  s_fine[m] = length;
  g_table[m] = g[0];

  // Keep only the significant modes of P and g for Newton refinement.
  const int kmax_all = static_cast<int>(m / 2) - 1;
  int kcut = 1;
  for (int k = kmax_all; k >= 1; --k) {
    const double mag = std::abs(gc[static_cast<std::size_t>(k)]) + std::abs(gc[m - static_cast<std::size_t>(k)]);
    if (mag > 1e-18 * length) {
      kcut = k;
      break;
    }
  }
  std::vector<cplx> p_sym(2 * static_cast<std::size_t>(kcut) + 1), g_sym(p_sym.size());
  for (int k = -kcut; k <= kcut; ++k) {
    const std::size_t src = k >= 0 ? static_cast<std::size_t>(k) : m - static_cast<std::size_t>(-k);
    const std::size_t dst = static_cast<std::size_t>(k + kcut);
    p_sym[dst] = pc[src];
    g_sym[dst] = gc[src];
  }
  const double p0 = p_fine[0];

  // Initial guess: monotone cubic Hermite inverse of the fine table, slopes dtheta/ds = 1/g.
  const double h = 1.0 / static_cast<double>(m);
  std::vector<double> theta(n_out);
  std::size_t j = 0;
  for (std::size_t i = 0; i < n_out; ++i) {
    const double target = length * static_cast<double>(i) / static_cast<double>(n_out);
    while (j + 1 < m && s_fine[j + 1] <= target) ++j;
    const double s0 = s_fine[j], s1 = s_fine[j + 1];
    const double ds = s1 - s0;
    if (!(ds > 0.0)) fail(ErrorKind::NonMonotoneArcLength, "cumulative arc length not increasing");
    const double secant = h / ds;
    double m0 = 1.0 / g_table[j], m1 = 1.0 / g_table[j + 1];
    // Fritsch-Carlson limiter.
    const double a = m0 / secant, b = m1 / secant;
    if (a * a + b * b > 9.0) {
      const double tau = 3.0 / std::sqrt(a * a + b * b);
      m0 = tau * a * secant;
      m1 = tau * b * secant;
    }
    const double u = (target - s0) / ds;
    const double u2 = u * u, u3 = u2 * u;
    const double h00 = 2 * u3 - 3 * u2 + 1, h10 = u3 - 2 * u2 + u;
    const double h01 = -2 * u3 + 3 * u2, h11 = u3 - u2;
    theta[i] = static_cast<double>(j) * h * h00 + ds * m0 * h10 +
               static_cast<double>(j + 1) * h * h01 + ds * m1 * h11;
  }

  // Newton on S(theta) = target using the truncated series.
  std::vector<cplx> pv(n_out), gv(n_out);
  const cplx* series[2] = {p_sym.data(), g_sym.data()};
  cplx* outs[2] = {pv.data(), gv.data()};
  for (int it = 0; it < 6; ++it) {
    kernels::eval_series(series, p_sym.size(), -kcut, theta, outs);
    double worst = 0.0;
    for (std::size_t i = 1; i < n_out; ++i) {
      const double target = length * static_cast<double>(i) / static_cast<double>(n_out);
      const double s = length * theta[i] + pv[i].real() - p0;
      const double step = (s - target) / gv[i].real();
      theta[i] -= step;
      worst = std::max(worst, std::abs(step));
    }
    theta[0] = 0.0;
    if (worst < 1e-15) break;
  }

  const auto zsym = to_symmetric(zc);
  std::vector<Point> pts(n_out);
  const cplx* zs = zsym.data();
  cplx* po = pts.data();
  kernels::eval_series({&zs, 1}, zsym.size(), -static_cast<int>(n / 2), theta, {&po, 1});
  check_count(pts.size());
  return ClosedCurve::from_samples(std::move(pts));
}

}  // namespace

ClosedCurve resample_arclength(const ClosedCurve& curve, std::size_t n_out) {
  check_count(n_out);
  if (n_out == curve.size() && arclength_defect(curve) <= 1e-13) {
    // Already uniform up to rounding; resampling would only add noise.
    ClosedCurve same = curve;
    same.arclength_ = true;
    return same;
  }
  ClosedCurve out = resample_once(curve, n_out);
  // A poorly resolved input may need another pass to reach the tolerance.
  for (int pass = 0; pass < 2 && arclength_defect(out) > kArcLengthTolerance; ++pass) {
    out = resample_once(out, n_out);
  }
  out.arclength_ = arclength_defect(out) <= kArcLengthTolerance;
  return out;
}

ClosedCurve scaled(const ClosedCurve& curve, double factor) {
  std::vector<Point> pts(curve.points().begin(), curve.points().end());
  for (auto& p : pts) p *= factor;
  ClosedCurve out = ClosedCurve::from_samples(std::move(pts));
  out.arclength_ = curve.is_arclength();
  return out;
}

ClosedCurve rigid_motion(const ClosedCurve& curve, double angle, Point translation) {
  const Point rot = std::polar(1.0, angle);
  std::vector<Point> pts(curve.points().begin(), curve.points().end());
  for (auto& p : pts) p = rot * p + translation;
  ClosedCurve out = ClosedCurve::from_samples(std::move(pts));
  out.arclength_ = curve.is_arclength();
  return out;
}

ClosedCurve reversed(const ClosedCurve& curve) {
  // Keep sample 0 in place: f(-theta).
  const std::size_t n = curve.size();
  std::vector<Point> pts(n);
  for (std::size_t i = 0; i < n; ++i) pts[i] = curve[(n - i) % n];
  return with_verified_arclength(ClosedCurve::from_samples(std::move(pts)));
}

ClosedCurve shift_origin(const ClosedCurve& curve, double delta) {
  const std::size_t n = curve.size();
  auto c = spectral::forward(curve.points());
  for (std::size_t i = 0; i < n; ++i) {
    const int k = spectral::wavenumber(i, n);
    if (2 * static_cast<std::size_t>(std::abs(k)) == n) {
      c[i] *= std::cos(kTwoPi * k * delta);  // symmetric split of the Nyquist term
    } else {
      c[i] *= std::polar(1.0, kTwoPi * k * delta);
    }
  }
  ClosedCurve out = ClosedCurve::from_samples(spectral::inverse(c));
  out.arclength_ = curve.is_arclength();
  return out;
}

ClosedCurve with_verified_arclength(const ClosedCurve& curve) {
  ClosedCurve out = curve;
  out.arclength_ = arclength_defect(curve) <= kArcLengthTolerance;
  return out;
}

}  // namespace curveflow
