#pragma once
// Geometric quantities of closed curves: length, signed area, curvature, the
// deviation of curvature from its mean, and the scale-invariant energies
//   I_l    = L^{2l+1} int |d_s^l kd|^2 ds,
//   I_{-1} = 1 - 4 pi A / L^2,
//   J_{k,p} = (L^{(1+k)p-1} int |d_s^k kd|^p ds)^{1/p},
// where kd is the curvature deviation. Integrals use the periodic trapezoid
// rule on the sample grid.
//
// Curvature is positive on convex arcs of counterclockwise curves (the normal
// nu = (-y', x') points inward there).

#include <span>
#include <vector>

#include "curveflow/curve.hpp"

namespace curveflow {

double length(const ClosedCurve& curve);

/// (1/2) closed integral of (x dy - y dx); positive for counterclockwise curves.
double signed_area(const ClosedCurve& curve);

/// Works on any regular parametrization: (x'y'' - y'x'') / |f'|^3.
std::vector<double> curvature(const ClosedCurve& curve);

struct RotationNumber {
  int value = 0;
  double residual = 0.0;  // |int kappa ds / 2pi - value|
};

/// Throws AmbiguousRotation when the residual exceeds 1e-6.
RotationNumber rotation_number(const ClosedCurve& curve);

struct CurvatureDeviation {
  std::vector<double> values;
  int rotation = 1;
  /// Set when the rotation number is not 1; the mean (1/L) int kappa ds is
  /// subtracted either way, which equals 2 pi / L for rotation number 1.
  bool rotation_warning = false;
};

CurvatureDeviation curvature_deviation(const ClosedCurve& curve);

/// I_ell. Requires an arc-length curve (NotArcLength) and ell <= N/2 - 2 (OrderTooHigh).
double scale_invariant_I(const ClosedCurve& curve, int ell);

/// I_0 .. I_{ell_max} in one pass.
std::vector<double> scale_invariant_I_all(const ClosedCurve& curve, int ell_max);

double isoperimetric_deficit(const ClosedCurve& curve);

double J_norm(const ClosedCurve& curve, int k, double p);

/// d_s^order of a periodic field sampled on an arc-length curve of length L.
std::vector<double> arclength_derivative(std::span<const double> field, int order, double length);

/// Trapezoid integral over arc length of a field on an arc-length curve.
double arclength_integral(std::span<const double> field, double length);

struct CurveQuantities {
  double L = 0.0;
  double A = 0.0;
  std::vector<double> kappa;
  std::vector<double> kappa_dev;
  int rotation = 0;
};

CurveQuantities compute_quantities(const ClosedCurve& curve);

}  // namespace curveflow
