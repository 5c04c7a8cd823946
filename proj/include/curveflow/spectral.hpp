#pragma once
// Discrete Fourier machinery on the periodic parameter domain R/Z.
//
// Coefficients are stored in FFT order: index i holds wavenumber i for
// i <= n/2 and i - n above. The forward transform is normalized so that
// z_j = sum_k c_k exp(2 pi i k j / n).

#include <complex>
#include <span>
#include <vector>

namespace curveflow::spectral {

using cplx = std::complex<double>;

std::vector<cplx> forward(std::span<const cplx> samples);
std::vector<cplx> inverse(std::span<const cplx> coeffs);

std::vector<cplx> forward_real(std::span<const double> samples);
/// Real part of the inverse transform.
std::vector<double> inverse_real(std::span<const cplx> coeffs);

/// Signed wavenumber of FFT slot `index` for length n; the Nyquist slot maps to +n/2.
inline int wavenumber(std::size_t index, std::size_t n) {
  const auto i = static_cast<long>(index);
  const auto nn = static_cast<long>(n);
  return static_cast<int>(i <= nn / 2 ? i : i - nn);
}

/// Multiplies coefficients in place by (2 pi i k / period_length)^order. The
/// Nyquist coefficient is zeroed for odd orders.
void differentiate(std::span<cplx> coeffs, int order, double period_length = 1.0);

/// Derivative of periodic samples, d^order/du^order with u in [0, period_length).
std::vector<cplx> derivative(std::span<const cplx> samples, int order,
                             double period_length = 1.0);
std::vector<double> derivative_real(std::span<const double> samples, int order,
                                    double period_length = 1.0);

/// Zeroes modes with |k| > n/3 (two-thirds dealiasing rule).
void truncate_two_thirds(std::span<cplx> coeffs);

/// Coefficients of length n re-expressed on a grid of length m >= n by zero
/// padding; the Nyquist coefficient is split evenly between +-n/2.
std::vector<cplx> zero_pad(std::span<const cplx> coeffs, std::size_t m);

}  // namespace curveflow::spectral
