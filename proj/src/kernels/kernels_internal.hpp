#pragma once

#include "curveflow/kernels.hpp"

namespace curveflow::kernels {

namespace scalar {
void eval_series(const cplx* const* coeffs, std::size_t nseries, std::size_t ncoef, int k_min,
                 const double* theta, std::size_t npts, cplx* const* out);
}

// Defined in kernels_avx2.cpp; nullptr on non-x86 builds.
const KernelTable* avx2_table_if_built();

}  // namespace curveflow::kernels
