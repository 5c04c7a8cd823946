#include <algorithm>
#include <cmath>

#include "curveflow/kernels.hpp"
#include "kernels_internal.hpp"

namespace curveflow::kernels {
namespace scalar {

void eval_series(const cplx* const* coeffs, std::size_t nseries, std::size_t ncoef, int k_min,
                 const double* theta, std::size_t npts, cplx* const* out) {
  for (std::size_t p = 0; p < npts; ++p) {
    const double th = theta[p];
    const cplx step = detail::unit_phase(1, th);
    cplx acc[kMaxSeries] = {};
    for (std::size_t j0 = 0; j0 < ncoef; j0 += kReseedInterval) {
      cplx w = detail::unit_phase(k_min + static_cast<int>(j0), th);
      const std::size_t j1 = std::min(ncoef, j0 + kReseedInterval);
      for (std::size_t j = j0; j < j1; ++j) {
        for (std::size_t s = 0; s < nseries; ++s) {
          const cplx c = coeffs[s][j];
          acc[s] = {acc[s].real() + (c.real() * w.real() - c.imag() * w.imag()),
                    acc[s].imag() + (c.real() * w.imag() + c.imag() * w.real())};
        }
        w = {w.real() * step.real() - w.imag() * step.imag(),
             w.real() * step.imag() + w.imag() * step.real()};
      }
    }
    for (std::size_t s = 0; s < nseries; ++s) out[s][p] = acc[s];
  }
}

void scale_accumulate(const double* mult, const cplx* x, std::size_t n, cplx* out,
                      bool accumulate) {
  if (accumulate) {
    for (std::size_t i = 0; i < n; ++i) out[i] += mult[i] * x[i];
  } else {
    for (std::size_t i = 0; i < n; ++i) out[i] = mult[i] * x[i];
  }
}

void speed_curvature(const cplx* d1, const cplx* d2, std::size_t n, double* speed,
                     double* kappa) {
  for (std::size_t i = 0; i < n; ++i) {
    const double x1 = d1[i].real(), y1 = d1[i].imag();
    const double x2 = d2[i].real(), y2 = d2[i].imag();
    const double g = std::sqrt(x1 * x1 + y1 * y1);
    speed[i] = g;
    kappa[i] = (x1 * y2 - y1 * x2) / (g * g * g);
  }
}

double dot(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

}  // namespace scalar

const KernelTable& scalar_table() {
  static const KernelTable table{Isa::Scalar, "scalar", scalar::eval_series,
                                 scalar::scale_accumulate, scalar::speed_curvature,
                                 scalar::dot};
  return table;
}

}  // namespace curveflow::kernels
