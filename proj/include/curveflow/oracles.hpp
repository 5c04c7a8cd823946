#pragma once
// Low-tech reference computations (polygons, finite differences, brute-force
// distances) used to cross-check the spectral code paths.

#include <complex>
#include <span>
#include <vector>

#include "curveflow/curve.hpp"

namespace curveflow::oracles {

struct PolygonOracleResult {
  double length = 0.0;  // sum of chord lengths
  double area = 0.0;    // shoelace, signed
  bool convex = false;  // consecutive edge cross products share one strict sign
};

/// Throws TooFewPoints below 3 points.
PolygonOracleResult polygon_quantities(std::span<const Point> points);

/// Periodic centered differences of second order, order 1 or 2 (BadOrder otherwise).
std::vector<double> fd_derivative(std::span<const double> samples, int order, double h);
std::vector<Point> fd_derivative(std::span<const Point> samples, int order, double h);

/// Brute-force Hausdorff distance of two finite point sets. Throws EmptyInput.
double dense_hausdorff(std::span<const Point> a, std::span<const Point> b);

/// O(N^2) test of the closed polyline for crossing or touching non-adjacent
/// segments. Throws TooFewPoints below 4 points.
bool self_intersects(std::span<const Point> points);

/// Runs the nonlinear flow from the circle of radius R perturbed by
/// eps cos(k phi) for two e-foldings of linearized_rate(m, k, R) and returns
/// the fitted decay rate of the mode-k curvature amplitude.
/// Throws PerturbationTooLarge when eps > 1e-3 R and InvalidArgument for k < 2.
double linearization_rate_check(int m, int k, double R, double eps);

}  // namespace curveflow::oracles
