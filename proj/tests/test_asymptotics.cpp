#include <doctest.h>

#include "curveflow/asymptotics.hpp"
#include "curveflow/errors.hpp"
#include "curveflow/flow.hpp"
#include "curveflow/presets.hpp"
#include "curveflow/quantities.hpp"
#include "support.hpp"

using namespace curveflow;
using testsupport::kPi;

namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const CurveflowError& e) {
    return e.kind();
  }
  FAIL("no throw");
  return ErrorKind::InvalidArgument;
}

// Periodic distance on [0, L).
double sigma_gap(double a, double b, double L) {
  const double d = std::fmod(std::abs(a - b), L);
  return std::min(d, L - d);
}

ClosedCurve figure_eight(std::size_t n) {
  std::vector<Point> p(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double t = 2 * kPi * static_cast<double>(j) / static_cast<double>(n);
    p[j] = {std::sin(t), std::sin(t) * std::cos(t)};
  }
  return ClosedCurve::from_samples(p);
}

}  // namespace

TEST_CASE("frame of a circle") {
  const auto c = make_preset(CirclePreset{{1, 2}, 3.0}, 64);
  const auto f = fourier_frame(c);
  CHECK(std::abs(f.c - Point(1, 2)) < 1e-12);
  CHECK(f.r == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(sigma_gap(f.sigma, 0.0, 6 * kPi) < 1e-10);

  const auto shifted = shift_origin(c, 0.1);
  CHECK(shifted.is_arclength());
  CHECK(fourier_frame(shifted).sigma == doctest::Approx(0.6 * kPi).epsilon(1e-10));

  const auto raw = ClosedCurve::from_samples(testsupport::ellipse_points(64, 2, 1));
  CHECK(kind_of([&] { fourier_frame(raw); }) == ErrorKind::NotArcLength);
}

TEST_CASE("frame equivariance") {
  const auto c = make_preset(RandomBandlimitedPreset{3, 6, 0.15}, 128);
  const auto f = fourier_frame(c);
  const double L = length(c);
  const double alpha = 0.7;
  const Point b(2.0, -1.0);
  const auto moved = rigid_motion(c, alpha, b);
  const auto fm = fourier_frame(moved);
  CHECK(std::abs(fm.c - (std::polar(1.0, alpha) * f.c + b)) < 1e-12);
  CHECK(fm.r == doctest::Approx(f.r).epsilon(1e-12));
  CHECK(sigma_gap(fm.sigma, f.sigma + L * alpha / (2 * kPi), L) < 1e-10);

  const auto big = scaled(c, 2.5);
  const auto fs = fourier_frame(big);
  CHECK(std::abs(fs.c - 2.5 * f.c) < 1e-12);
  CHECK(fs.r == doctest::Approx(2.5 * f.r).epsilon(1e-12));
  CHECK(sigma_gap(fs.sigma, 2.5 * f.sigma, 2.5 * L) < 1e-9);
}

TEST_CASE("hausdorff distance to a disk") {
  const auto c = make_preset(CirclePreset{{0, 0}, 1.0}, 128);
  CHECK(hausdorff_to_disk(c, {0, 0}, 1.0) < 1e-12);
  CHECK(hausdorff_to_disk(c, {0, 0}, 0.5) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(hausdorff_to_disk(c, {0.1, 0}, 1.0) == doctest::Approx(0.1).epsilon(1e-9));
  const auto h = hausdorff_to_disk_ex(c, {3, 0}, 1.0);
  CHECK(h.used_fallback);
  CHECK(std::abs(h.distance - 3.0) < 1e-2);

  const auto e = make_preset(EllipsePreset{2.0, 1.0}, 128);
  CHECK(hausdorff_to_disk(e, {0, 0}, 1.5) == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(kind_of([] { hausdorff_to_disk(figure_eight(64), {0, 0}, 1.0); }) == ErrorKind::NotSimple);
}

TEST_CASE("barycenter") {
  const auto c = make_preset(CirclePreset{{1, 2}, 0.5}, 64);
  CHECK(std::abs(barycenter(c) - Point(1, 2)) < 1e-12);
  const auto e = rigid_motion(make_preset(EllipsePreset{2.0, 1.0}, 128), 0.3, {-1, 4});
  CHECK(std::abs(barycenter(e) - Point(-1, 4)) < 1e-12);
  // A polar graph r = 1 + eps cos(phi) has centroid x = eps + O(eps^3).
  const double eps = 1e-3;
  const auto p = make_preset(PerturbedCirclePreset{1.0, {{1, eps, 0.0}}}, 128);
  CHECK(std::abs(barycenter(p).real() - eps) < 1e-8);
  CHECK(std::abs(barycenter(p).imag()) < 1e-12);
  CHECK(kind_of([] { barycenter(figure_eight(64)); }) == ErrorKind::NotSimple);
}

TEST_CASE("decay fits") {
  std::vector<std::pair<double, double>> s;
  for (int i = 0; i <= 100; ++i) {
    const double t = 0.05 * i;
    s.emplace_back(t, 2.0 * std::exp(-3.0 * t));
  }
  const auto f = fit_decay(s);
  CHECK(f.lambda == doctest::Approx(3.0).epsilon(1e-10));
  CHECK(f.logC == doctest::Approx(std::log(2.0)).epsilon(1e-10));
  CHECK(f.r_squared == doctest::Approx(1.0));
  CHECK(f.t_lo == doctest::Approx(2.5));
  CHECK(f.t_hi == doctest::Approx(5.0));
  CHECK(f.points == 51);

  auto noisy = s;
  noisy[80].second = 0.0;
  noisy[90].second = -1.0;
  const auto g = fit_decay(noisy);
  CHECK(g.points == 49);
  CHECK(g.lambda == doctest::Approx(3.0).epsilon(1e-10));

  const auto full = fit_decay(s, 1.0);
  CHECK(full.points == 101);

  std::vector<std::pair<double, double>> few{{0, 1}, {1, 0.5}, {2, 0.25}, {3, 0.0}, {4, 0.0}, {5, 0.0}};
  CHECK(kind_of([&] { fit_decay(few, 1.0); }) == ErrorKind::InsufficientPositiveData);
  CHECK(kind_of([&] { fit_decay(s, 0.0); }) == ErrorKind::InvalidArgument);
  CHECK(kind_of([&] { fit_decay(s, 1.5); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("convexity time") {
  std::vector<TraceRecord> tr(5);
  const bool flags[] = {false, true, false, true, true};
  for (std::size_t i = 0; i < tr.size(); ++i) {
    tr[i].t = static_cast<double>(i);
    tr[i].convex = flags[i];
  }
  CHECK(convexity_time(tr) == 3.0);
  CHECK_FALSE(convexity_time(tr, true).has_value());
  tr.back().convex = false;
  CHECK_FALSE(convexity_time(tr).has_value());
  for (auto& r : tr) r.convex = true;
  CHECK(convexity_time(tr) == 0.0);
  CHECK_FALSE(convexity_time(std::span<const TraceRecord>{}).has_value());
}

TEST_CASE("limit circle and tilde-f distance") {
  FlowConfig cfg;
  cfg.N = 64;
  cfg.t_max = 0.04;
  const auto c = shift_origin(make_preset(CirclePreset{{0.5, -0.5}, 2.0}, 64), 0.3);
  const auto res = evolve(c, cfg);
  REQUIRE(res.trace.size() == 5);
  const auto lim = limit_circle(res.trace);
  CHECK(std::abs(lim.c_inf - Point(0.5, -0.5)) < 1e-10);
  CHECK(lim.r_inf == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(lim.L_inf == doctest::Approx(4 * kPi).epsilon(1e-12));
  const auto frame = fourier_frame(res.final_state.curve);
  CHECK(tilde_f_distance(res.final_state.curve, frame, lim, 2) < 1e-9);

  const auto pert = make_preset(PerturbedCirclePreset{2.0, {{3, 1e-4, 0.0}}}, 64);
  const auto pframe = fourier_frame(pert);
  const CircleLimit plim{pframe.c, 2.0, pframe.sigma, length(pert)};
  const double d0 = tilde_f_distance(pert, pframe, plim, 0);
  const double d2 = tilde_f_distance(pert, pframe, plim, 2);
  CHECK(d0 > 1e-5);
  CHECK(d0 < 1e-3);
  CHECK(d2 > d0);

  CHECK(kind_of([&] { limit_circle(std::span(res.trace).first(4)); }) == ErrorKind::NotConverged);
  auto unconverged = res.trace;
  unconverged.back().I[0] = 1e-3;
  CHECK(kind_of([&] { limit_circle(unconverged); }) == ErrorKind::NotConverged);
}
