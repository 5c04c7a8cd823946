#include "curveflow/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "curveflow/asymptotics.hpp"
#include "curveflow/errors.hpp"
#include "curveflow/flow.hpp"
#include "curveflow/presets.hpp"
#include "curveflow/quantities.hpp"
#include "curveflow/spectral.hpp"

namespace curveflow::oracles {
namespace {

double cross(Point a, Point b) { return a.real() * b.imag() - a.imag() * b.real(); }

template <class T>
std::vector<T> fd_impl(std::span<const T> s, int order, double h) {
  if (order != 1 && order != 2) fail(ErrorKind::BadOrder, "finite differences support orders 1 and 2");
  const std::size_t n = s.size();
  std::vector<T> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const T& prev = s[(i + n - 1) % n];
    const T& next = s[(i + 1) % n];
    out[i] = order == 1 ? (next - prev) / (2.0 * h) : (next - 2.0 * s[i] + prev) / (h * h);
  }
  return out;
}

int orientation(Point a, Point b, Point c) {
  const double v = cross(b - a, c - a);
  return (v > 0.0) - (v < 0.0);
}

bool on_segment(Point a, Point b, Point p) {
  return std::min(a.real(), b.real()) <= p.real() && p.real() <= std::max(a.real(), b.real()) &&
         std::min(a.imag(), b.imag()) <= p.imag() && p.imag() <= std::max(a.imag(), b.imag());
}

bool segments_meet(Point p1, Point p2, Point q1, Point q2) {
  const int o1 = orientation(p1, p2, q1);
  const int o2 = orientation(p1, p2, q2);
  const int o3 = orientation(q1, q2, p1);
  const int o4 = orientation(q1, q2, p2);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_segment(p1, p2, q1)) return true;
  if (o2 == 0 && on_segment(p1, p2, q2)) return true;
  if (o3 == 0 && on_segment(q1, q2, p1)) return true;
  if (o4 == 0 && on_segment(q1, q2, p2)) return true;
  return false;
}

}  // namespace

PolygonOracleResult polygon_quantities(std::span<const Point> p) {
  if (p.size() < 3) fail(ErrorKind::TooFewPoints, "polygon needs at least 3 points");
  const std::size_t n = p.size();
  PolygonOracleResult r;
  int sign = 0;
  bool convex = true;
  for (std::size_t i = 0; i < n; ++i) {
    const Point a = p[i];
    const Point b = p[(i + 1) % n];
    const Point c = p[(i + 2) % n];
    r.length += std::abs(b - a);
    r.area += 0.5 * cross(a, b);
    const double turn = cross(b - a, c - b);
    const int s = (turn > 0.0) - (turn < 0.0);
    if (s == 0 || (sign != 0 && s != sign)) convex = false;
    if (sign == 0) sign = s;
  }
  r.convex = convex;
  return r;
}

std::vector<double> fd_derivative(std::span<const double> samples, int order, double h) {
  return fd_impl(samples, order, h);
}

std::vector<Point> fd_derivative(std::span<const Point> samples, int order, double h) {
  return fd_impl(samples, order, h);
}

double dense_hausdorff(std::span<const Point> a, std::span<const Point> b) {
  if (a.empty() || b.empty()) fail(ErrorKind::EmptyInput, "point sets must be non-empty");
  auto directed = [](std::span<const Point> x, std::span<const Point> y) {
    double worst = 0.0;
    for (const Point& p : x) {
      double best = std::numeric_limits<double>::infinity();
      for (const Point& q : y) best = std::min(best, std::norm(p - q));
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::sqrt(std::max(directed(a, b), directed(b, a)));
}

bool self_intersects(std::span<const Point> p) {
  if (p.size() < 4) fail(ErrorKind::TooFewPoints, "polyline needs at least 4 points");
  const std::size_t n = p.size();
  struct Box {
    double x0, x1, y0, y1;
  };
  std::vector<Box> box(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Point a = p[i];
    const Point b = p[(i + 1) % n];
    box[i] = {std::min(a.real(), b.real()), std::max(a.real(), b.real()), std::min(a.imag(), b.imag()),
              std::max(a.imag(), b.imag())};
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;  // adjacent through the closing edge
      if (box[i].x1 < box[j].x0 || box[j].x1 < box[i].x0 || box[i].y1 < box[j].y0 || box[j].y1 < box[i].y0) {
        continue;
      }
      if (segments_meet(p[i], p[(i + 1) % n], p[j], p[(j + 1) % n])) return true;
    }
  }
  return false;
}

double linearization_rate_check(int m, int k, double R, double eps) {
  if (k < 2) fail(ErrorKind::InvalidArgument, "mode k must be >= 2");
  if (!(R > 0.0)) fail(ErrorKind::InvalidArgument, "R must be positive");
  if (!(eps > 0.0)) fail(ErrorKind::InvalidArgument, "eps must be positive");
  if (eps > 1e-3 * R) fail(ErrorKind::PerturbationTooLarge, "eps exceeds 1e-3 R, outside the linear regime");

  const double lambda = linearized_rate(m, k, R);
  const double horizon = 2.0 / lambda;
  FlowConfig config;
  config.m = m;
  config.N = std::max<std::size_t>(128, static_cast<std::size_t>(8 * (2 * m + 2)));
  config.t_max = horizon;
  config.dt_init = horizon / 400.0;
  config.record_every = horizon / 40.0;
  config.ell_max = 0;
  config.check_self_intersection = false;
  validate(config);

  const ClosedCurve c0 = make_preset(PerturbedCirclePreset{R, {{k, eps, 0.0}}}, config.N);
  auto amplitude = [k](const ClosedCurve& c) {
    const auto coeffs = spectral::forward_real(curvature_deviation(c).values);
    return 2.0 * std::abs(coeffs[static_cast<std::size_t>(k)]);
  };

  FlowState state{0.0, c0, config.dt_init, 0, 0, 0};
  std::vector<std::pair<double, double>> series{{0.0, amplitude(c0)}};
  for (int rec = 1; rec <= 40; ++rec) {
    const double target = rec == 40 ? horizon : rec * config.record_every;
    while (state.t < target) state = step_until(state, config, target);
    series.emplace_back(state.t, amplitude(state.curve));
  }
  return fit_decay(series, 1.0).lambda;
}

}  // namespace curveflow::oracles
