#pragma once
// Data-parallel inner loops of the solver. Every kernel has a portable scalar
// reference implementation and, where the CPU supports it, an AVX2/FMA variant
// picked once at startup. Both variants must agree to rounding (see
// tests/test_kernels.cpp).

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>

namespace curveflow::kernels {

using cplx = std::complex<double>;

enum class Isa { Scalar, Avx2 };

/// Upper bound on the number of series `eval_series` evaluates in one pass.
inline constexpr std::size_t kMaxSeries = 4;

/// Terms between direct re-evaluations of the twiddle factor in eval_series.
inline constexpr std::size_t kReseedInterval = 32;

struct KernelTable {
  Isa isa;
  const char* name;

  // out[s][p] = sum_j coeffs[s][j] * exp(2 pi i (k_min + j) theta[p]), s < nseries.
  void (*eval_series)(const cplx* const* coeffs, std::size_t nseries, std::size_t ncoef,
                      int k_min, const double* theta, std::size_t npts, cplx* const* out);

  // out[i] = mult[i] * x[i], or out[i] += mult[i] * x[i] when accumulate is set.
  void (*scale_accumulate)(const double* mult, const cplx* x, std::size_t n, cplx* out,
                           bool accumulate);

  // speed[i] = |d1[i]|, kappa[i] = Im(conj(d1) d2) / |d1|^3.
  void (*speed_curvature)(const cplx* d1, const cplx* d2, std::size_t n, double* speed,
                          double* kappa);

  double (*dot)(const double* a, const double* b, std::size_t n);
};

const KernelTable& scalar_table();

/// nullptr when the running CPU lacks AVX2+FMA (or the build target is not x86-64).
const KernelTable* avx2_table();

/// Table used by the library. AVX2 when available unless the environment
/// variable CURVEFLOW_KERNELS=scalar is set.
const KernelTable& active();

// Span conveniences over active().

void eval_series(std::span<const cplx* const> coeffs, std::size_t ncoef, int k_min,
                 std::span<const double> theta, std::span<cplx* const> out);

void scale_accumulate(std::span<const double> mult, std::span<const cplx> x,
                      std::span<cplx> out, bool accumulate);

void speed_curvature(std::span<const cplx> d1, std::span<const cplx> d2, std::span<double> speed,
                     std::span<double> kappa);

double dot(std::span<const double> a, std::span<const double> b);

}  // namespace curveflow::kernels

namespace curveflow::kernels::detail {

// exp(2 pi i k theta) with the phase reduced mod 1 first. Shared by both
// variants so they reseed identically.
inline cplx unit_phase(int k, double theta) {
  double x = static_cast<double>(k) * theta;
  x -= std::floor(x);
  const double a = 2.0 * std::numbers::pi * x;
  return {std::cos(a), std::sin(a)};
}

}  // namespace curveflow::kernels::detail
