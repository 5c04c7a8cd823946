// AVX2/FMA variants. Functions carry target attributes instead of compiling
// the whole file with -mavx2, so nothing inline from the standard library is
// emitted with AVX2 encodings.

#include <algorithm>
#include <cmath>

#include "curveflow/kernels.hpp"
#include "kernels_internal.hpp"

#if defined(__x86_64__) && (defined(__GNUC__) || defined(__clang__))
#define CURVEFLOW_HAVE_AVX2_BUILD 1
#include <immintrin.h>
#else
#define CURVEFLOW_HAVE_AVX2_BUILD 0
#endif

namespace curveflow::kernels {

#if CURVEFLOW_HAVE_AVX2_BUILD

namespace avx2 {

#define CF_AVX2 __attribute__((target("avx2,fma")))

// Four points per lane group, split re/im (SoA). Leftover points go through
// the scalar reference.
CF_AVX2 void eval_series(const cplx* const* coeffs, std::size_t nseries, std::size_t ncoef,
                         int k_min, const double* theta, std::size_t npts, cplx* const* out) {
  const std::size_t nvec = npts - npts % 4;
  alignas(32) double wr0[4], wi0[4], sr0[4], si0[4];
  alignas(32) double res_re[kMaxSeries][4], res_im[kMaxSeries][4];

  for (std::size_t p = 0; p < nvec; p += 4) {
    for (int l = 0; l < 4; ++l) {
      const cplx st = detail::unit_phase(1, theta[p + l]);
      sr0[l] = st.real();
      si0[l] = st.imag();
    }
    const __m256d sr = _mm256_load_pd(sr0);
    const __m256d si = _mm256_load_pd(si0);
    __m256d acc_re[kMaxSeries], acc_im[kMaxSeries];
    for (std::size_t s = 0; s < nseries; ++s) {
      acc_re[s] = _mm256_setzero_pd();
      acc_im[s] = _mm256_setzero_pd();
    }
    for (std::size_t j0 = 0; j0 < ncoef; j0 += kReseedInterval) {
      for (int l = 0; l < 4; ++l) {
        const cplx w = detail::unit_phase(k_min + static_cast<int>(j0), theta[p + l]);
        wr0[l] = w.real();
        wi0[l] = w.imag();
      }
      __m256d wr = _mm256_load_pd(wr0);
      __m256d wi = _mm256_load_pd(wi0);
      const std::size_t j1 = std::min(ncoef, j0 + kReseedInterval);
      for (std::size_t j = j0; j < j1; ++j) {
        for (std::size_t s = 0; s < nseries; ++s) {
          const double* c = reinterpret_cast<const double*>(coeffs[s] + j);
          const __m256d cr = _mm256_broadcast_sd(c);
          const __m256d ci = _mm256_broadcast_sd(c + 1);
          acc_re[s] = _mm256_add_pd(acc_re[s], _mm256_fmsub_pd(cr, wr, _mm256_mul_pd(ci, wi)));
          acc_im[s] = _mm256_add_pd(acc_im[s], _mm256_fmadd_pd(cr, wi, _mm256_mul_pd(ci, wr)));
        }
        const __m256d nwr = _mm256_fmsub_pd(wr, sr, _mm256_mul_pd(wi, si));
        const __m256d nwi = _mm256_fmadd_pd(wr, si, _mm256_mul_pd(wi, sr));
        wr = nwr;
        wi = nwi;
      }
    }
    for (std::size_t s = 0; s < nseries; ++s) {
      _mm256_store_pd(res_re[s], acc_re[s]);
      _mm256_store_pd(res_im[s], acc_im[s]);
      for (int l = 0; l < 4; ++l) out[s][p + l] = {res_re[s][l], res_im[s][l]};
    }
  }
  if (nvec < npts) {
    cplx* tail[kMaxSeries];
    for (std::size_t s = 0; s < nseries; ++s) tail[s] = out[s] + nvec;
    scalar::eval_series(coeffs, nseries, ncoef, k_min, theta + nvec, npts - nvec, tail);
  }
}

// Two complex values per register; the real multiplier is duplicated into
// both halves of each complex lane.
CF_AVX2 void scale_accumulate(const double* mult, const cplx* x, std::size_t n, cplx* out,
                              bool accumulate) {
  const double* xd = reinterpret_cast<const double*>(x);
  double* od = reinterpret_cast<double*>(out);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m128d m2 = _mm_loadu_pd(mult + i);
    const __m256d m = _mm256_permute4x64_pd(_mm256_castpd128_pd256(m2), 0x50);
    const __m256d v = _mm256_loadu_pd(xd + 2 * i);
    if (accumulate) {
      _mm256_storeu_pd(od + 2 * i, _mm256_fmadd_pd(m, v, _mm256_loadu_pd(od + 2 * i)));
    } else {
      _mm256_storeu_pd(od + 2 * i, _mm256_mul_pd(m, v));
    }
  }
  for (; i < n; ++i) {
    if (accumulate) {
      out[i] += mult[i] * x[i];
    } else {
      out[i] = mult[i] * x[i];
    }
  }
}

CF_AVX2 void speed_curvature(const cplx* d1, const cplx* d2, std::size_t n, double* speed,
                             double* kappa) {
  const double* a = reinterpret_cast<const double*>(d1);
  const double* b = reinterpret_cast<const double*>(d2);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    // [x0 y0 x1 y1], [x2 y2 x3 y3] -> x = [x0 x1 x2 x3], y = [y0 y1 y2 y3]
    const __m256d a01 = _mm256_loadu_pd(a + 2 * i);
    const __m256d a23 = _mm256_loadu_pd(a + 2 * i + 4);
    const __m256d b01 = _mm256_loadu_pd(b + 2 * i);
    const __m256d b23 = _mm256_loadu_pd(b + 2 * i + 4);
    const __m256d x1 = _mm256_permute4x64_pd(_mm256_unpacklo_pd(a01, a23), 0xD8);
    const __m256d y1 = _mm256_permute4x64_pd(_mm256_unpackhi_pd(a01, a23), 0xD8);
    const __m256d x2 = _mm256_permute4x64_pd(_mm256_unpacklo_pd(b01, b23), 0xD8);
    const __m256d y2 = _mm256_permute4x64_pd(_mm256_unpackhi_pd(b01, b23), 0xD8);
    const __m256d g = _mm256_sqrt_pd(_mm256_fmadd_pd(x1, x1, _mm256_mul_pd(y1, y1)));
    const __m256d cross = _mm256_fmsub_pd(x1, y2, _mm256_mul_pd(y1, x2));
    _mm256_storeu_pd(speed + i, g);
    _mm256_storeu_pd(kappa + i, _mm256_div_pd(cross, _mm256_mul_pd(g, _mm256_mul_pd(g, g))));
  }
  for (; i < n; ++i) {
    const double x1 = d1[i].real(), y1 = d1[i].imag();
    const double x2 = d2[i].real(), y2 = d2[i].imag();
    const double g = std::sqrt(x1 * x1 + y1 * y1);
    speed[i] = g;
    kappa[i] = (x1 * y2 - y1 * x2) / (g * g * g);
  }
}

CF_AVX2 double dot(const double* a, const double* b, std::size_t n) {
  __m256d s0 = _mm256_setzero_pd();
  __m256d s1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    s0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), s0);
    s1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), s1);
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, _mm256_add_pd(s0, s1));
  double s = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

#undef CF_AVX2

}  // namespace avx2

const KernelTable* avx2_table_if_built() {
  static const KernelTable table{Isa::Avx2, "avx2", avx2::eval_series, avx2::scale_accumulate,
                                 avx2::speed_curvature, avx2::dot};
  __builtin_cpu_init();
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) return &table;
  return nullptr;
}

#else

const KernelTable* avx2_table_if_built() { return nullptr; }

#endif

}  // namespace curveflow::kernels
