#pragma once
// Closed plane curves sampled uniformly on the periodic parameter domain R/Z.

#include <complex>
#include <span>
#include <vector>

namespace curveflow {

/// Planar point (x, y) stored as x + i y.
using Point = std::complex<double>;

/// Smallest admissible sample count.
inline constexpr std::size_t kMinSamples = 16;

/// Relative tolerance on |d f / d theta| - L for a curve to count as
/// arc-length parametrized.
inline constexpr double kArcLengthTolerance = 1e-8;

/// Immutable closed curve: N samples f(j/N), j = 0..N-1, with no repeated
/// endpoint. N is even and at least kMinSamples.
class ClosedCurve {
 public:
  ClosedCurve() = default;  // empty placeholder, not a valid curve

  /// Validates sample count and non-degeneracy; the result is never flagged
  /// as arc-length parametrized.
  static ClosedCurve from_samples(std::vector<Point> points);

  std::span<const Point> points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  const Point& operator[](std::size_t i) const { return points_[i]; }

  /// True when the samples are equally spaced in arc length (see kArcLengthTolerance).
  bool is_arclength() const { return arclength_; }

 private:
  ClosedCurve(std::vector<Point> points, bool arclength)
      : points_(std::move(points)), arclength_(arclength) {}

  std::vector<Point> points_;
  bool arclength_ = false;

  friend ClosedCurve resample_arclength(const ClosedCurve& curve, std::size_t n_out);
  friend ClosedCurve scaled(const ClosedCurve& curve, double factor);
  friend ClosedCurve rigid_motion(const ClosedCurve& curve, double angle, Point translation);
  friend ClosedCurve shift_origin(const ClosedCurve& curve, double delta);
  friend ClosedCurve with_verified_arclength(const ClosedCurve& curve);
};

/// Fourier modes c_k, k = -K..K, of z(theta) = x + i y = sum c_k exp(2 pi i k theta).
struct SpectralCoeffs {
  int K = 0;
  std::vector<std::complex<double>> modes;  // size 2K+1, modes[k + K]

  std::complex<double> operator()(int k) const { return modes[static_cast<std::size_t>(k + K)]; }
};

/// K = N/2; the Nyquist coefficient is split evenly between k = +-K.
SpectralCoeffs spectral_coeffs(const ClosedCurve& curve);

/// Evaluates the Fourier series at arbitrary parameter values.
std::vector<Point> evaluate(const SpectralCoeffs& coeffs, std::span<const double> theta);

/// Samples the series on a uniform grid of n points (not flagged arc-length).
ClosedCurve from_coeffs(const SpectralCoeffs& coeffs, std::size_t n);

/// Samples of d^order f / d theta^order via the multiplier (2 pi i k)^order.
/// Throws OrderTooHigh when order > N/2 - 1.
std::vector<Point> derivative(const ClosedCurve& curve, int order);

/// Speeds |d f / d theta| at the samples.
std::vector<double> parameter_speed(const ClosedCurve& curve);

/// Max relative deviation of |d f / d theta| from its mean.
double arclength_defect(const ClosedCurve& curve);

/// Re-samples the spectral interpolant at n_out points equally spaced in arc
/// length, keeping the point at theta = 0 as the new origin. Throws
/// DegenerateCurve or NonMonotoneArcLength (the parametrization has a cusp).
ClosedCurve resample_arclength(const ClosedCurve& curve, std::size_t n_out);

ClosedCurve scaled(const ClosedCurve& curve, double factor);
/// Rotation by `angle` about the origin followed by translation.
ClosedCurve rigid_motion(const ClosedCurve& curve, double angle, Point translation);
/// Reverses orientation; the result has the same image.
ClosedCurve reversed(const ClosedCurve& curve);
/// Spectral shift of the parameter origin: samples f(j/N + delta).
ClosedCurve shift_origin(const ClosedCurve& curve, double delta);
/// Sets the arc-length flag when the samples pass the uniform-speed check.
ClosedCurve with_verified_arclength(const ClosedCurve& curve);

}  // namespace curveflow
