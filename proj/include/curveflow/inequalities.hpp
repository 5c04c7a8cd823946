#pragma once
// Evaluation of the interpolation inequalities between I_{-1}, I_0 and I_l on
// individual curves and ensembles.
//
//   Thm1Lower: 8 pi^2 I_{-1} <= I_0
//   Thm1Upper: I_0 <= I_{-1}^{1/2} [L^3 int (kappa^3 kd + (kd')^2) ds]^{1/2}
//   GN:        I_l <= C I_m^{l/m} I_0^{1-l/m}
//   Thm2:      I_l <= C (I_{-1}^{(m-l)/2} I_m + I_{-1}^{(m-l)/(m+1)} I_m^{(l+1)/(m+1)})
//
// GN and Thm2 have no known constant; their reports carry rhs without C, so
// only `ratio` is meaningful and `slack` is informational.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "curveflow/curve.hpp"

namespace curveflow {

enum class InequalityName { Thm1Lower, Thm1Upper, GN, Thm2 };

std::string to_string(InequalityName name);

/// Both sides below this count as the trivially satisfied 0/0 case.
inline constexpr double kTrivialThreshold = 1e-14;

struct InequalityReport {
  InequalityName name = InequalityName::Thm1Lower;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;  // rhs - lhs
  double ratio = 0.0;  // lhs / rhs, 0 in the trivial case
  bool trivial = false;
  std::optional<int> ell;
  std::optional<int> m;

  /// slack >= -rel * max(1, rhs).
  bool holds(double rel = 1e-9) const;
};

InequalityReport make_report(InequalityName name, double lhs, double rhs);

std::pair<InequalityReport, InequalityReport> check_theorem1(const ClosedCurve& curve);

/// Throws BadIndices unless 0 <= ell <= m and m >= 1.
InequalityReport check_gn(const ClosedCurve& curve, int ell, int m);

/// Throws BadIndices unless 0 <= ell <= m.
InequalityReport check_theorem2(const ClosedCurve& curve, int ell, int m);

enum class ConstantKind { GN, Thm2 };

struct EmpiricalConstant {
  double value = 0.0;
  std::size_t argmax = 0;  // index of the maximizing curve
};

/// Sup of the GN/Thm2 ratio over the ensemble; a lower bound for C(l,m).
/// Throws EmptyEnsemble.
EmpiricalConstant empirical_constant(std::span<const ClosedCurve> ensemble, int ell, int m,
                                     ConstantKind which);

/// Simple random band-limited curves (see RandomBandlimitedPreset). Member
/// seeds are drawn from a mt19937_64 stream seeded with `seed`; a draw that
/// fails the self-intersection test is discarded.
std::vector<ClosedCurve> random_ensemble(std::size_t count, std::uint64_t seed, int max_mode,
                                         double max_amplitude, std::size_t n);

/// One JSON object (single line) with every report field.
std::string to_json_line(const InequalityReport& report);

}  // namespace curveflow
