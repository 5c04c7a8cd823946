#pragma once
// Long-time diagnostics of a flow run: the Fourier frame (c, r, sigma), the
// limit circle, C^k distance of the reparametrized curve to that circle,
// Hausdorff distance to a disk, barycenter, convexity time and decay fits.

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "curveflow/curve.hpp"

namespace curveflow {

struct TraceRecord;

/// c is the arc-length mean of f, r = |f_hat(1)|/sqrt(L) and sigma the
/// arc-length shift in [0, L) with f_hat(1) = sqrt(L) r exp(2 pi i sigma/L),
/// using the basis L^{-1/2} exp(2 pi i k s/L).
struct FourierFrame {
  Point c{0.0, 0.0};
  double r = 0.0;
  double sigma = 0.0;
};

struct CircleLimit {
  Point c_inf{0.0, 0.0};
  double r_inf = 0.0;
  double sigma_inf = 0.0;
  double L_inf = 0.0;
};

struct DecayFit {
  double lambda = 0.0;
  double logC = 0.0;
  double t_lo = 0.0;
  double t_hi = 0.0;
  double r_squared = 0.0;
  std::size_t points = 0;
};

/// Requires an arc-length curve.
FourierFrame fourier_frame(const ClosedCurve& curve);

/// Needs at least 5 records and a final I_0 <= 1e-6 (NotConverged otherwise).
CircleLimit limit_circle(std::span<const TraceRecord> trace);

/// sum_{j<=k} max_theta |d^j/dtheta^j (f~ - f~_inf)| with f~(theta) = f(L theta - sigma)
/// and f~_inf(theta) = c_inf + (L_inf/2pi) e^{2 pi i theta}.
double tilde_f_distance(const ClosedCurve& curve, const FourierFrame& frame,
                        const CircleLimit& limit, int k);

struct HausdorffResult {
  double distance = 0.0;
  bool used_fallback = false;  // curve not star-shaped about the center
};

/// Hausdorff distance between the closed region bounded by the curve and the
/// disk D_radius(center). Throws NotSimple for self-intersecting input.
HausdorffResult hausdorff_to_disk_ex(const ClosedCurve& curve, Point center, double radius);
double hausdorff_to_disk(const ClosedCurve& curve, Point center, double radius);

/// Area centroid (1/A) int_Omega x dx.
Point barycenter(const ClosedCurve& curve);

/// First recorded t after which every record is convex. Absent if the last
/// record is not convex or the run broke down.
std::optional<double> convexity_time(std::span<const TraceRecord> trace, bool breakdown = false);

/// Least-squares fit of log(value) against t over the trailing window
/// [t_hi - w (t_hi - t_lo), t_hi]. Non-positive values inside the window are
/// skipped; fewer than 5 usable points throws InsufficientPositiveData.
DecayFit fit_decay(std::span<const std::pair<double, double>> series, double window_fraction = 0.5);

}  // namespace curveflow
