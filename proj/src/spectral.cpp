#include "curveflow/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <utility>

#include "curveflow/errors.hpp"

namespace curveflow::spectral {
namespace {

// FFTW planning is not thread-safe; execution with the new-array interface is.
class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  fftw_plan get(std::size_t n, int sign) {
    std::lock_guard lock(mutex_);
    auto key = std::make_pair(n, sign);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    std::vector<cplx> in(n), out(n);
    fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(n), reinterpret_cast<fftw_complex*>(in.data()),
                                      reinterpret_cast<fftw_complex*>(out.data()), sign,
                                      FFTW_ESTIMATE | FFTW_UNALIGNED);
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mutex_;
  std::map<std::pair<std::size_t, int>, fftw_plan> plans_;
};

PlanCache& plans() {
  static PlanCache cache;
  return cache;
}

void execute(std::span<const cplx> in, std::span<cplx> out, int sign) {
  fftw_plan plan = plans().get(in.size(), sign);
  // FFTW does not write to the input of an out-of-place complex transform.
  fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in.data())),
                   reinterpret_cast<fftw_complex*>(out.data()));
}

}  // namespace

std::vector<cplx> forward(std::span<const cplx> samples) {
  std::vector<cplx> out(samples.size());
  if (samples.empty()) return out;
  execute(samples, out, FFTW_FORWARD);
  const double scale = 1.0 / static_cast<double>(samples.size());
  for (auto& c : out) c *= scale;
  return out;
}

std::vector<cplx> inverse(std::span<const cplx> coeffs) {
  std::vector<cplx> out(coeffs.size());
  if (coeffs.empty()) return out;
  execute(coeffs, out, FFTW_BACKWARD);
  return out;
}

std::vector<cplx> forward_real(std::span<const double> samples) {
  std::vector<cplx> z(samples.begin(), samples.end());
  return forward(z);
}

std::vector<double> inverse_real(std::span<const cplx> coeffs) {
  const auto z = inverse(coeffs);
  std::vector<double> out(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) out[i] = z[i].real();
  return out;
}

void differentiate(std::span<cplx> coeffs, int order, double period_length) {
  if (order < 0) fail(ErrorKind::InvalidArgument, "negative derivative order");
  if (order == 0) return;
  const std::size_t n = coeffs.size();
  const double base = 2.0 * std::numbers::pi / period_length;
  // i^order
  static constexpr cplx kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const cplx rot = kIPow[order % 4];
  for (std::size_t i = 0; i < n; ++i) {
    const int k = wavenumber(i, n);
    if (n % 2 == 0 && 2 * static_cast<std::size_t>(std::abs(k)) == n && order % 2 == 1) {
      coeffs[i] = 0.0;
      continue;
    }
    coeffs[i] *= rot * std::pow(base * k, order);
  }
}

std::vector<cplx> derivative(std::span<const cplx> samples, int order, double period_length) {
  if (order == 0) return {samples.begin(), samples.end()};
  auto c = forward(samples);
  differentiate(c, order, period_length);
  return inverse(c);
}

std::vector<double> derivative_real(std::span<const double> samples, int order,
                                    double period_length) {
  if (order == 0) return {samples.begin(), samples.end()};
  auto c = forward_real(samples);
  differentiate(c, order, period_length);
  return inverse_real(c);
}

void truncate_two_thirds(std::span<cplx> coeffs) {
  const std::size_t n = coeffs.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (3 * static_cast<std::size_t>(std::abs(wavenumber(i, n))) > n) coeffs[i] = 0.0;
  }
}

std::vector<cplx> zero_pad(std::span<const cplx> coeffs, std::size_t m) {
  const std::size_t n = coeffs.size();
  if (m < n) fail(ErrorKind::InvalidArgument, "zero_pad target shorter than input");
  std::vector<cplx> out(m);
  for (std::size_t i = 0; i < n; ++i) {
    const int k = wavenumber(i, n);
    if (n % 2 == 0 && 2 * static_cast<std::size_t>(std::abs(k)) == n && m > n) {
      out[static_cast<std::size_t>(k)] += 0.5 * coeffs[i];
      out[m - static_cast<std::size_t>(k)] += 0.5 * coeffs[i];
      continue;
    }
    const std::size_t slot = k >= 0 ? static_cast<std::size_t>(k) : m - static_cast<std::size_t>(-k);
    out[slot] = coeffs[i];
  }
  return out;
}

}  // namespace curveflow::spectral
