#include <doctest.h>

#include <random>

#include "curveflow/errors.hpp"
#include "curveflow/flow.hpp"
#include "curveflow/oracles.hpp"
#include "support.hpp"

using namespace curveflow;
using namespace curveflow::oracles;
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

std::vector<Point> figure_eight(std::size_t n) {
  std::vector<Point> p(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double t = 2 * kPi * static_cast<double>(j) / static_cast<double>(n);
    p[j] = {std::sin(t), std::sin(t) * std::cos(t)};
  }
  return p;
}

}  // namespace

TEST_CASE("polygon quantities") {
  const std::vector<Point> square{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  const auto q = polygon_quantities(square);
  CHECK(q.length == 4.0);
  CHECK(q.area == 1.0);
  CHECK(q.convex);
  const std::vector<Point> rev(square.rbegin(), square.rend());
  CHECK(polygon_quantities(rev).area == -1.0);
  CHECK(polygon_quantities(rev).convex);
  const std::vector<Point> dart{{0, 0}, {2, 0}, {1, 0.3}, {1, 2}};
  CHECK_FALSE(polygon_quantities(dart).convex);
  const std::vector<Point> two{{0, 0}, {1, 0}};
  CHECK(kind_of([&] { polygon_quantities(two); }) == ErrorKind::TooFewPoints);
}

TEST_CASE("dense circle polygon") {
  const auto p = testsupport::circle_points(1000000, 1.0);
  const auto q = polygon_quantities(p);
  CHECK(std::abs(q.length - 2 * kPi) < 1e-10);
  CHECK(std::abs(q.area - kPi) < 1e-10);
  CHECK(q.convex);
}

TEST_CASE("finite differences") {
  const std::size_t n = 1000;
  const double h = 2 * kPi / static_cast<double>(n);
  std::vector<double> s(n);
  for (std::size_t j = 0; j < n; ++j) s[j] = std::sin(h * j);
  const auto d1 = fd_derivative(s, 1, h);
  const auto d2 = fd_derivative(s, 2, h);
  double e1 = 0.0, e2 = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    e1 = std::max(e1, std::abs(d1[j] - std::cos(h * j)));
    e2 = std::max(e2, std::abs(d2[j] + std::sin(h * j)));
  }
  CHECK(e1 < 1e-5);
  CHECK(e2 < 1e-5);
  CHECK(kind_of([&] { fd_derivative(s, 3, h); }) == ErrorKind::BadOrder);
  CHECK(kind_of([&] { fd_derivative(s, 0, h); }) == ErrorKind::BadOrder);
}

TEST_CASE("finite differences converge at second order") {
  auto err = [](std::size_t n) {
    const double h = 2 * kPi / static_cast<double>(n);
    std::vector<Point> p(n);
    for (std::size_t j = 0; j < n; ++j) p[j] = {2 * std::cos(h * j), std::sin(h * j)};
    const auto d = fd_derivative(p, 1, h);
    double e = 0.0;
    for (std::size_t j = 0; j < n; ++j) e = std::max(e, std::abs(d[j] - Point(-2 * std::sin(h * j), std::cos(h * j))));
    return e;
  };
  for (std::size_t n : {64, 128, 256}) {
    const double ratio = err(n) / err(2 * n);
    CHECK(ratio >= 3.5);
    CHECK(ratio <= 4.5);
  }
}

TEST_CASE("dense hausdorff") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1, 1);
  auto cloud = [&](std::size_t n) {
    std::vector<Point> p(n);
    for (auto& x : p) x = {u(rng), u(rng)};
    return p;
  };
  const auto a = cloud(50), b = cloud(60), c = cloud(70);
  CHECK(dense_hausdorff(a, b) == dense_hausdorff(b, a));
  CHECK(dense_hausdorff(a, a) == 0.0);
  CHECK(dense_hausdorff(a, c) <= dense_hausdorff(a, b) + dense_hausdorff(b, c) + 1e-15);
  const std::vector<Point> one{{0, 0}}, other{{3, 4}};
  CHECK(dense_hausdorff(one, other) == 5.0);
  CHECK(kind_of([&] { dense_hausdorff(std::vector<Point>{}, one); }) == ErrorKind::EmptyInput);
}

TEST_CASE("self intersection") {
  CHECK_FALSE(self_intersects(testsupport::circle_points(256, 1.0)));
  CHECK_FALSE(self_intersects(testsupport::ellipse_points(256, 2.0, 1.0)));
  CHECK(self_intersects(figure_eight(256)));
  const std::vector<Point> touching{{0, 0}, {2, 0}, {2, 2}, {1, 0}, {0, 2}};
  CHECK(self_intersects(touching));
  CHECK(kind_of([] { self_intersects(std::vector<Point>{{0, 0}, {1, 0}, {0, 1}}); }) == ErrorKind::TooFewPoints);

  // Invariant under rigid motions and cyclic relabeling.
  for (const auto& pts : {figure_eight(128), testsupport::ellipse_points(128, 2.0, 1.0)}) {
    const bool base = self_intersects(pts);
    std::vector<Point> moved(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) moved[i] = std::polar(1.0, 1.3) * pts[i] + Point(5, -2);
    CHECK(self_intersects(moved) == base);
    auto rotated = pts;
    std::rotate(rotated.begin(), rotated.begin() + 37, rotated.end());
    CHECK(self_intersects(rotated) == base);
  }
}

TEST_CASE("linearization rate check") {
  const double predicted = linearized_rate(1, 3, 1.0);
  const double measured = linearization_rate_check(1, 3, 1.0, 1e-4);
  CHECK(std::abs(measured - predicted) <= 0.02 * predicted);
  CHECK(kind_of([] { linearization_rate_check(1, 3, 1.0, 0.5); }) == ErrorKind::PerturbationTooLarge);
  CHECK(kind_of([] { linearization_rate_check(1, 1, 1.0, 1e-4); }) == ErrorKind::InvalidArgument);
}
