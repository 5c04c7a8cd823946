#include <cstdlib>
#include <string_view>

#include "curveflow/kernels.hpp"
#include "kernels_internal.hpp"

namespace curveflow::kernels {

const KernelTable* avx2_table() {
  static const KernelTable* table = avx2_table_if_built();
  return table;
}

const KernelTable& active() {
  static const KernelTable& table = [&]() -> const KernelTable& {
    const char* env = std::getenv("CURVEFLOW_KERNELS");
    if (env != nullptr && std::string_view(env) == "scalar") return scalar_table();
    if (const KernelTable* t = avx2_table()) return *t;
    return scalar_table();
  }();
  return table;
}

void eval_series(std::span<const cplx* const> coeffs, std::size_t ncoef, int k_min,
                 std::span<const double> theta, std::span<cplx* const> out) {
  active().eval_series(coeffs.data(), coeffs.size(), ncoef, k_min, theta.data(), theta.size(),
                       out.data());
}

void scale_accumulate(std::span<const double> mult, std::span<const cplx> x,
                      std::span<cplx> out, bool accumulate) {
  active().scale_accumulate(mult.data(), x.data(), x.size(), out.data(), accumulate);
}

void speed_curvature(std::span<const cplx> d1, std::span<const cplx> d2, std::span<double> speed,
                     std::span<double> kappa) {
  active().speed_curvature(d1.data(), d2.data(), d1.size(), speed.data(), kappa.data());
}

double dot(std::span<const double> a, std::span<const double> b) {
  return active().dot(a.data(), b.data(), a.size());
}

}  // namespace curveflow::kernels
