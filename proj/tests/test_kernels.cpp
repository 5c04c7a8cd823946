#include <doctest.h>

#include <random>
#include <vector>

#include "curveflow/kernels.hpp"

using namespace curveflow::kernels;

namespace {

std::vector<cplx> random_cplx(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<cplx> v(n);
  for (auto& x : v) x = {u(rng), u(rng)};
  return v;
}

std::vector<double> random_real(std::mt19937_64& rng, std::size_t n, double lo = -1.0, double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> v(n);
  for (auto& x : v) x = u(rng);
  return v;
}

double max_err(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST_CASE("scalar eval_series matches a direct sum") {
  std::mt19937_64 rng(1);
  const auto c = random_cplx(rng, 41);
  const auto theta = random_real(rng, 19, 0.0, 1.0);
  std::vector<cplx> out(theta.size());
  const cplx* cp = c.data();
  cplx* op = out.data();
  scalar_table().eval_series(&cp, 1, c.size(), -20, theta.data(), theta.size(), &op);
  for (std::size_t p = 0; p < theta.size(); ++p) {
    cplx ref = 0.0;
    for (std::size_t j = 0; j < c.size(); ++j) {
      ref += c[j] * std::polar(1.0, 2 * std::numbers::pi * (static_cast<int>(j) - 20) * theta[p]);
    }
    CHECK(std::abs(out[p] - ref) < 1e-12);
  }
}

TEST_CASE("scalar speed_curvature on a circle") {
  // f = R e^{2 pi i t}: f' = 2 pi i R e, f'' = -(2 pi)^2 R e.
  const double R = 2.5;
  std::vector<cplx> d1, d2;
  for (int j = 0; j < 8; ++j) {
    const cplx e = std::polar(1.0, 2 * std::numbers::pi * j / 8.0);
    d1.push_back(cplx(0, 2 * std::numbers::pi * R) * e);
    d2.push_back(-std::pow(2 * std::numbers::pi, 2) * R * e);
  }
  std::vector<double> speed(8), kappa(8);
  scalar_table().speed_curvature(d1.data(), d2.data(), 8, speed.data(), kappa.data());
  for (int j = 0; j < 8; ++j) {
    CHECK(speed[j] == doctest::Approx(2 * std::numbers::pi * R).epsilon(1e-14));
    CHECK(kappa[j] == doctest::Approx(1.0 / R).epsilon(1e-14));
  }
}

TEST_CASE("AVX2 kernels agree with the scalar reference") {
  const KernelTable* simd = avx2_table();
  if (simd == nullptr) {
    MESSAGE("AVX2/FMA not available; equivalence test skipped");
    return;
  }
  const KernelTable& ref = scalar_table();
  std::mt19937_64 rng(42);

  // Sizes straddle the 4-wide vector body and the scalar tail.
  for (std::size_t n : {1u, 3u, 4u, 5u, 8u, 13u, 64u, 257u}) {
    CAPTURE(n);
    SUBCASE("dot") {
      const auto a = random_real(rng, n);
      const auto b = random_real(rng, n);
      const double x = ref.dot(a.data(), b.data(), n);
      const double y = simd->dot(a.data(), b.data(), n);
      CHECK(std::abs(x - y) <= 1e-14 * static_cast<double>(n));
    }
    SUBCASE("scale_accumulate") {
      const auto mult = random_real(rng, n);
      const auto x = random_cplx(rng, n);
      for (bool acc : {false, true}) {
        auto o1 = random_cplx(rng, n);
        auto o2 = o1;
        ref.scale_accumulate(mult.data(), x.data(), n, o1.data(), acc);
        simd->scale_accumulate(mult.data(), x.data(), n, o2.data(), acc);
        CHECK(max_err(o1, o2) <= 1e-15);
      }
    }
    SUBCASE("speed_curvature") {
      const auto d1 = random_cplx(rng, n);
      const auto d2 = random_cplx(rng, n);
      std::vector<double> s1(n), k1(n), s2(n), k2(n);
      ref.speed_curvature(d1.data(), d2.data(), n, s1.data(), k1.data());
      simd->speed_curvature(d1.data(), d2.data(), n, s2.data(), k2.data());
      for (std::size_t i = 0; i < n; ++i) {
        CHECK(std::abs(s1[i] - s2[i]) <= 1e-15 * s1[i]);
        CHECK(std::abs(k1[i] - k2[i]) <= 1e-13 * std::max(1.0, std::abs(k1[i])));
      }
    }
    SUBCASE("eval_series") {
      const std::size_t ncoef = 2 * n + 1;
      const int k_min = -static_cast<int>(n);
      std::vector<std::vector<cplx>> coeffs;
      for (std::size_t s = 0; s < kMaxSeries; ++s) coeffs.push_back(random_cplx(rng, ncoef));
      const auto theta = random_real(rng, n + 3, 0.0, 1.0);
      for (std::size_t ns = 1; ns <= kMaxSeries; ++ns) {
        std::vector<const cplx*> cp;
        std::vector<std::vector<cplx>> o1(ns, std::vector<cplx>(theta.size()));
        auto o2 = o1;
        std::vector<cplx*> p1, p2;
        for (std::size_t s = 0; s < ns; ++s) {
          cp.push_back(coeffs[s].data());
          p1.push_back(o1[s].data());
          p2.push_back(o2[s].data());
        }
        ref.eval_series(cp.data(), ns, ncoef, k_min, theta.data(), theta.size(), p1.data());
        simd->eval_series(cp.data(), ns, ncoef, k_min, theta.data(), theta.size(), p2.data());
        for (std::size_t s = 0; s < ns; ++s) CHECK(max_err(o1[s], o2[s]) <= 1e-12 * static_cast<double>(ncoef));
      }
    }
  }
}

TEST_CASE("active table is one of the two variants") {
  const KernelTable& t = active();
  CHECK((&t == &scalar_table() || &t == avx2_table()));
}
