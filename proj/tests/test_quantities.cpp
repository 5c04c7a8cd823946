#include <doctest.h>

#include "curveflow/errors.hpp"
#include "curveflow/inequalities.hpp"
#include "curveflow/presets.hpp"
#include "curveflow/quantities.hpp"
#include "ellipse_oracle.hpp"
#include "support.hpp"

using namespace curveflow;
using testsupport::kPi;

namespace {

const testsupport::EllipseOracle kEllipse{2.0, 1.0};

const ClosedCurve& ellipse() {
  static const ClosedCurve c = make_preset(EllipsePreset{2.0, 1.0}, 256);
  return c;
}

}  // namespace

TEST_CASE("circle quantities") {
  const auto c = make_preset(CirclePreset{{0.5, -1.0}, 2.0}, 128);
  CHECK(length(c) == doctest::Approx(4 * kPi).epsilon(1e-12));
  CHECK(signed_area(c) == doctest::Approx(4 * kPi).epsilon(1e-12));
  for (double k : curvature(c)) CHECK(std::abs(k - 0.5) < 1e-10);
  for (double k : curvature_deviation(c).values) CHECK(std::abs(k) < 1e-10);
  // Rounding in kd grows by N per derivative, so only low orders reach 1e-12.
  for (double v : scale_invariant_I_all(c, 2)) CHECK(std::abs(v) < 1e-12);
  CHECK(std::abs(isoperimetric_deficit(c)) < 1e-12);
  CHECK(J_norm(c, 0, 4.0) < 1e-10);
  CHECK(J_norm(c, 1, 3.0) < 1e-8);
}

TEST_CASE("orientation and rotation number") {
  const auto ccw = ClosedCurve::from_samples(testsupport::circle_points(64, 1.0));
  const auto cw = reversed(ccw);
  CHECK(signed_area(cw) == doctest::Approx(-kPi).epsilon(1e-12));
  for (double k : curvature(cw)) CHECK(k == doctest::Approx(-1.0).epsilon(1e-10));
  CHECK(rotation_number(cw).value == -1);
  CHECK(rotation_number(ccw).value == 1);

  std::vector<Point> twice(64);
  for (std::size_t j = 0; j < twice.size(); ++j) twice[j] = std::polar(1.0, 4 * kPi * j / 64.0);
  const auto dbl = ClosedCurve::from_samples(twice);
  CHECK(rotation_number(dbl).value == 2);
  const auto dev = curvature_deviation(dbl);
  CHECK(dev.rotation == 2);
  CHECK(dev.rotation_warning);
}

TEST_CASE("ellipse against closed-form quadrature") {
  const auto& e = ellipse();
  const double L = kEllipse.length();
  CHECK(length(e) == doctest::Approx(L).epsilon(1e-10));
  CHECK(std::abs(length(e) - 9.688448220547675) < 1e-8);
  CHECK(signed_area(e) == doctest::Approx(2 * kPi).epsilon(1e-12));
  // Sample 0 sits at (2, 0).
  CHECK(std::abs(e[0] - Point(2.0, 0.0)) < 1e-12);
  CHECK(curvature(e)[0] == doctest::Approx(2.0).epsilon(1e-8));
  CHECK(curvature_deviation(e).values[0] == doctest::Approx(2.0 - 2 * kPi / L).epsilon(1e-8));
  CHECK(std::abs(curvature_deviation(e).values[0] - 1.351479) < 1e-5);
  CHECK(isoperimetric_deficit(e) == doctest::Approx(1 - 8 * kPi * kPi / (L * L)).epsilon(1e-10));
  CHECK(std::abs(isoperimetric_deficit(e) - 0.1588) < 1e-4);

  const auto I = scale_invariant_I_all(e, 2);
  CHECK(testsupport::rel(I[0], kEllipse.I0()) < 1e-7);
  CHECK(testsupport::rel(I[1], kEllipse.I1()) < 1e-7);
  CHECK(testsupport::rel(I[2], kEllipse.I2()) < 1e-7);
  CHECK(testsupport::rel(J_norm(e, 0, 4.0), kEllipse.J(0, 4.0)) < 1e-6);
  // |x|^3 has a jump in its third derivative, so the trapezoid rule converges at h^4 only.
  const auto fine = make_preset(EllipsePreset{2.0, 1.0}, 1024);
  CHECK(testsupport::rel(J_norm(fine, 1, 3.0), kEllipse.J(1, 3.0)) < 1e-6);
}

TEST_CASE("J_{k,2} squared equals I_k") {
  const auto c = make_preset(RandomBandlimitedPreset{5, 8, 0.2}, 256);
  const auto I = scale_invariant_I_all(c, 3);
  for (int k = 0; k <= 3; ++k) CHECK(testsupport::rel(std::pow(J_norm(c, k, 2.0), 2), I[k]) < 1e-10);
}

TEST_CASE("curvature deviation is mean free") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto c = make_preset(RandomBandlimitedPreset{seed, 8, 0.2}, 256);
    const auto kd = curvature_deviation(c).values;
    const double L = length(c);
    double mx = 0.0;
    for (double v : kd) mx = std::max(mx, std::abs(v));
    CHECK(std::abs(arclength_integral(kd, L)) <= 1e-10 * mx * L);
    const auto r = rotation_number(c);
    CHECK(r.value == 1);
    CHECK(r.residual < 1e-8);
  }
}

TEST_CASE("scale and rigid-motion invariance") {
  const auto c = make_preset(RandomBandlimitedPreset{9, 8, 0.2}, 256);
  const auto I = scale_invariant_I_all(c, 3);
  const double Im1 = isoperimetric_deficit(c);
  const double J = J_norm(c, 1, 3.0);
  for (double s : {0.1, 3.0, 100.0}) {
    CAPTURE(s);
    const auto cs = scaled(c, s);
    const auto Is = scale_invariant_I_all(cs, 3);
    for (int l = 0; l <= 3; ++l) CHECK(testsupport::rel(Is[l], I[l]) < 1e-9);
    CHECK(testsupport::rel(isoperimetric_deficit(cs), Im1) < 1e-9);
    CHECK(testsupport::rel(J_norm(cs, 1, 3.0), J) < 1e-9);
    CHECK(testsupport::rel(length(cs), s * length(c)) < 1e-12);
    CHECK(testsupport::rel(signed_area(cs), s * s * signed_area(c)) < 1e-12);
  }
  const auto moved = rigid_motion(c, 1.1, Point(-4.0, 7.0));
  const auto Im = scale_invariant_I_all(moved, 3);
  for (int l = 0; l <= 3; ++l) CHECK(std::abs(Im[l] - I[l]) <= 1e-10 * std::max(1.0, I[l]));
  CHECK(std::abs(isoperimetric_deficit(moved) - Im1) < 1e-10);
}

TEST_CASE("Wirtinger chain on random curves") {
  const auto ens = random_ensemble(50, 3, 8, 0.2, 256);
  for (const auto& c : ens) {
    const auto I = scale_invariant_I_all(c, 3);
    for (int l = 0; l < 3; ++l) CHECK(I[l + 1] >= 4 * kPi * kPi * I[l] - 1e-8 * I[l + 1]);
    CHECK(isoperimetric_deficit(c) >= -1e-10);
  }
}

TEST_CASE("resolution convergence of I_0") {
  const double a = scale_invariant_I(make_preset(EllipsePreset{2.0, 1.0}, 256), 0);
  const double b = scale_invariant_I(make_preset(EllipsePreset{2.0, 1.0}, 512), 0);
  CHECK(testsupport::rel(a, b) <= 1e-10);
}

TEST_CASE("guards") {
  const auto raw = ClosedCurve::from_samples(testsupport::ellipse_points(64, 2.0, 1.0));
  CHECK_THROWS_AS(scale_invariant_I(raw, 0), CurveflowError);
  const auto c = make_preset(CirclePreset{}, 64);
  try {
    scale_invariant_I(c, 31);
    FAIL("expected OrderTooHigh");
  } catch (const CurveflowError& e) {
    CHECK(e.kind() == ErrorKind::OrderTooHigh);
  }
  try {
    scale_invariant_I(raw, 0);
  } catch (const CurveflowError& e) {
    CHECK(e.kind() == ErrorKind::NotArcLength);
  }
}
