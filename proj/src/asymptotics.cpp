#include "curveflow/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "curveflow/errors.hpp"
#include "curveflow/flow.hpp"
#include "curveflow/oracles.hpp"
#include "curveflow/quantities.hpp"
#include "curveflow/spectral.hpp"

namespace curveflow {
namespace {

using cplx = std::complex<double>;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double cross(Point a, Point b) { return a.real() * b.imag() - a.imag() * b.real(); }

bool inside_polygon(std::span<const Point> poly, Point q) {
  bool in = false;
  const std::size_t n = poly.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Point a = poly[i];
    const Point b = poly[j];
    if ((a.imag() > q.imag()) != (b.imag() > q.imag())) {
      const double x = a.real() + (q.imag() - a.imag()) / (b.imag() - a.imag()) * (b.real() - a.real());
      if (q.real() < x) in = !in;
    }
  }
  return in;
}

// Region-to-disk distance without star-shapedness: the region side is exact
// on the boundary (distance to a disk is convex), the disk side is sampled on
// a polar grid.
double fallback_distance(const ClosedCurve& curve, Point center, double radius) {
  const std::size_t fine = 4 * curve.size();
  const auto boundary = from_coeffs(spectral_coeffs(curve), fine);
  double out = 0.0;
  for (const Point& p : boundary.points()) out = std::max(out, std::abs(p - center) - radius);
  constexpr int kRings = 64;
  constexpr int kSpokes = 256;
  for (int i = 0; i <= kRings; ++i) {
    const double rho = radius * i / kRings;
    for (int j = 0; j < (i == 0 ? 1 : kSpokes); ++j) {
      const Point y = center + std::polar(rho, kTwoPi * j / kSpokes);
      if (inside_polygon(boundary.points(), y)) continue;
      double nearest = std::numeric_limits<double>::infinity();
      for (const Point& q : boundary.points()) nearest = std::min(nearest, std::abs(q - y));
      out = std::max(out, nearest);
    }
  }
  return std::max(out, 0.0);
}

}  // namespace

FourierFrame fourier_frame(const ClosedCurve& curve) {
  if (!curve.is_arclength()) fail(ErrorKind::NotArcLength, "frame needs an arc-length curve");
  const double L = length(curve);
  const auto c = spectral::forward(curve.points());
  FourierFrame f;
  f.c = c[0];
  f.r = std::abs(c[1]);
  double sigma = std::fmod(L / kTwoPi * std::arg(c[1]), L);
  if (sigma < 0.0) sigma += L;
  if (sigma >= L) sigma = 0.0;
  f.sigma = sigma;
  return f;
}

CircleLimit limit_circle(std::span<const TraceRecord> trace) {
  if (trace.size() < 5) fail(ErrorKind::NotConverged, "need at least 5 records");
  const auto& last = trace.back();
  if (!(last.I[0] <= 1e-6)) fail(ErrorKind::NotConverged, "final I_0 = " + std::to_string(last.I[0]) + " > 1e-6");
  CircleLimit lim;
  lim.c_inf = last.frame.c;
  lim.sigma_inf = last.frame.sigma;
  lim.L_inf = last.L;
  lim.r_inf = last.L / kTwoPi;
  return lim;
}

double tilde_f_distance(const ClosedCurve& curve, const FourierFrame& frame, const CircleLimit& limit, int k) {
  if (k < 0) fail(ErrorKind::InvalidArgument, "k must be >= 0");
  if (static_cast<std::size_t>(k) + 1 > curve.size() / 2) fail(ErrorKind::OrderTooHigh, "k exceeds N/2 - 1");
  const std::size_t n = curve.size();
  const double L = length(curve);
  auto c = spectral::forward(curve.points());
  for (std::size_t i = 0; i < n; ++i) {
    const int kk = spectral::wavenumber(i, n);
    if (2 * static_cast<std::size_t>(std::abs(kk)) == n) {
      c[i] = 0.0;
      continue;
    }
    c[i] *= std::polar(1.0, -kTwoPi * kk * frame.sigma / L);
  }
  c[0] -= limit.c_inf;
  c[1] -= limit.L_inf / kTwoPi;
  double total = 0.0;
  for (int j = 0; j <= k; ++j) {
    auto d = c;
    spectral::differentiate(d, j);
    double worst = 0.0;
    for (const auto& v : spectral::inverse(d)) worst = std::max(worst, std::abs(v));
    total += worst;
  }
  return total;
}

HausdorffResult hausdorff_to_disk_ex(const ClosedCurve& curve, Point center, double radius) {
  if (!(radius > 0.0)) fail(ErrorKind::InvalidArgument, "radius must be positive");
  if (oracles::self_intersects(curve.points())) fail(ErrorKind::NotSimple, "curve self-intersects");
  const auto d1 = derivative(curve, 1);
  bool star = true;
  for (std::size_t i = 0; i < curve.size(); ++i) {
    if (!(cross(curve[i] - center, d1[i]) > 0.0)) {
      star = false;
      break;
    }
  }
  if (!star) return {fallback_distance(curve, center, radius), true};
  double out = 0.0;
  for (const Point& p : curve.points()) out = std::max(out, std::abs(std::abs(p - center) - radius));
  return {out, false};
}

double hausdorff_to_disk(const ClosedCurve& curve, Point center, double radius) {
  return hausdorff_to_disk_ex(curve, center, radius).distance;
}

Point barycenter(const ClosedCurve& curve) {
  if (oracles::self_intersects(curve.points())) fail(ErrorKind::NotSimple, "curve self-intersects");
  const double A = signed_area(curve);
  const double L = length(curve);
  if (!(std::abs(A) > 1e-14 * L * L)) fail(ErrorKind::DegenerateCurve, "enclosed area vanishes");
  const auto d1 = derivative(curve, 1);
  const std::size_t n = curve.size();
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = curve[i].real();
    const double y = curve[i].imag();
    mx += 0.5 * x * x * d1[i].imag();
    my -= 0.5 * y * y * d1[i].real();
  }
  return Point(mx, my) / (static_cast<double>(n) * A);
}

std::optional<double> convexity_time(std::span<const TraceRecord> trace, bool breakdown) {
  if (breakdown || trace.empty() || !trace.back().convex) return std::nullopt;
  std::size_t i = trace.size() - 1;
  while (i > 0 && trace[i - 1].convex) --i;
  return trace[i].t;
}

DecayFit fit_decay(std::span<const std::pair<double, double>> series, double window_fraction) {
  if (!(window_fraction > 0.0 && window_fraction <= 1.0)) {
    fail(ErrorKind::InvalidArgument, "window fraction must lie in (0, 1]");
  }
  if (series.empty()) fail(ErrorKind::InsufficientPositiveData, "empty series");
  const double t_lo = series.front().first;
  const double t_hi = series.back().first;
  DecayFit fit;
  fit.t_hi = t_hi;
  fit.t_lo = t_hi - window_fraction * (t_hi - t_lo);
  std::vector<double> ts, ys;
  for (const auto& [t, v] : series) {
    if (t >= fit.t_lo && v > 0.0 && std::isfinite(v)) {
      ts.push_back(t);
      ys.push_back(std::log(v));
    }
  }
  if (ts.size() < 5) fail(ErrorKind::InsufficientPositiveData, "fewer than 5 positive points in the window");
  const double n = static_cast<double>(ts.size());
  double tm = 0.0, ym = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    tm += ts[i];
    ym += ys[i];
  }
  tm /= n;
  ym /= n;
  double stt = 0.0, sty = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    stt += (ts[i] - tm) * (ts[i] - tm);
    sty += (ts[i] - tm) * (ys[i] - ym);
    syy += (ys[i] - ym) * (ys[i] - ym);
  }
  const double slope = stt > 0.0 ? sty / stt : 0.0;
  fit.lambda = -slope;
  fit.logC = ym - slope * tm;
  fit.points = ts.size();
  double ss_res = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const double e = ys[i] - (fit.logC + slope * ts[i]);
    ss_res += e * e;
  }
  const double scale = std::max(1.0, std::abs(ym));
  fit.r_squared = syy <= 1e-24 * n * scale * scale ? 1.0 : std::clamp(1.0 - ss_res / syy, 0.0, 1.0);
  return fit;
}

}  // namespace curveflow
