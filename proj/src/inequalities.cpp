#include "curveflow/inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <json.hpp>
#include <numbers>
#include <random>

#include "curveflow/errors.hpp"
#include "curveflow/oracles.hpp"
#include "curveflow/presets.hpp"
#include "curveflow/quantities.hpp"

namespace curveflow {
namespace {

constexpr double kPi = std::numbers::pi;

void check_indices(int ell, int m) {
  if (ell < 0 || m < 0 || ell > m) {
    fail(ErrorKind::BadIndices, "need 0 <= ell <= m (ell=" + std::to_string(ell) + ", m=" + std::to_string(m) + ")");
  }
}

}  // namespace

std::string to_string(InequalityName name) {
  switch (name) {
    case InequalityName::Thm1Lower: return "Thm1Lower";
    case InequalityName::Thm1Upper: return "Thm1Upper";
    case InequalityName::GN: return "GN";
    case InequalityName::Thm2: return "Thm2";
  }
  return "?";
}

bool InequalityReport::holds(double rel) const {
  return trivial || slack >= -rel * std::max(1.0, rhs);
}

InequalityReport make_report(InequalityName name, double lhs, double rhs) {
  InequalityReport r;
  r.name = name;
  r.lhs = lhs;
  r.rhs = rhs;
  r.slack = rhs - lhs;
  r.trivial = std::abs(lhs) < kTrivialThreshold && std::abs(rhs) < kTrivialThreshold;
  r.ratio = r.trivial ? 0.0 : lhs / rhs;
  return r;
}

std::pair<InequalityReport, InequalityReport> check_theorem1(const ClosedCurve& curve) {
  const auto I = scale_invariant_I_all(curve, 1);
  const double im1 = isoperimetric_deficit(curve);
  const double L = length(curve);
  const auto kappa = curvature(curve);
  const auto kd = curvature_deviation(curve).values;
  const auto dkd = arclength_derivative(kd, 1, L);
  std::vector<double> integrand(kd.size());
  for (std::size_t i = 0; i < kd.size(); ++i) {
    integrand[i] = kappa[i] * kappa[i] * kappa[i] * kd[i] + dkd[i] * dkd[i];
  }
  const double bracket = L * L * L * arclength_integral(integrand, L);
  const double upper = std::sqrt(std::max(0.0, im1)) * std::sqrt(std::max(0.0, bracket));
  return {make_report(InequalityName::Thm1Lower, 8.0 * kPi * kPi * im1, I[0]),
          make_report(InequalityName::Thm1Upper, I[0], upper)};
}

InequalityReport check_gn(const ClosedCurve& curve, int ell, int m) {
  check_indices(ell, m);
  if (m < 1) fail(ErrorKind::BadIndices, "GN needs m >= 1");
  const auto I = scale_invariant_I_all(curve, m);
  const double theta = static_cast<double>(ell) / static_cast<double>(m);
  InequalityReport r;
  if (I[0] < kTrivialThreshold || I[static_cast<std::size_t>(m)] < kTrivialThreshold) {
    r = make_report(InequalityName::GN, I[static_cast<std::size_t>(ell)], 0.0);
    r.trivial = true;
    r.ratio = 0.0;
  } else {
    const double rhs = std::pow(I[static_cast<std::size_t>(m)], theta) * std::pow(I[0], 1.0 - theta);
    r = make_report(InequalityName::GN, I[static_cast<std::size_t>(ell)], rhs);
  }
  r.ell = ell;
  r.m = m;
  return r;
}

InequalityReport check_theorem2(const ClosedCurve& curve, int ell, int m) {
  check_indices(ell, m);
  const auto I = scale_invariant_I_all(curve, m);
  const double im1 = std::max(0.0, isoperimetric_deficit(curve));
  const double Im = I[static_cast<std::size_t>(m)];
  const double dm = static_cast<double>(m - ell);
  const double rhs = std::pow(im1, dm / 2.0) * Im +
                     std::pow(im1, dm / (m + 1.0)) * std::pow(Im, (ell + 1.0) / (m + 1.0));
  InequalityReport r = make_report(InequalityName::Thm2, I[static_cast<std::size_t>(ell)], rhs);
  r.ell = ell;
  r.m = m;
  return r;
}

EmpiricalConstant empirical_constant(std::span<const ClosedCurve> ensemble, int ell, int m,
                                     ConstantKind which) {
  if (ensemble.empty()) fail(ErrorKind::EmptyEnsemble, "ensemble is empty");
  EmpiricalConstant best;
  for (std::size_t i = 0; i < ensemble.size(); ++i) {
    const auto r = which == ConstantKind::GN ? check_gn(ensemble[i], ell, m)
                                             : check_theorem2(ensemble[i], ell, m);
    if (i == 0 || r.ratio > best.value) best = {r.ratio, i};
  }
  return best;
}

std::vector<ClosedCurve> random_ensemble(std::size_t count, std::uint64_t seed, int max_mode,
                                         double max_amplitude, std::size_t n) {
  std::mt19937_64 seeds(seed);
  std::vector<ClosedCurve> out;
  out.reserve(count);
  std::size_t attempts = 0;
  while (out.size() < count) {
    if (++attempts > 10 * count + 100) fail(ErrorKind::InvalidPreset, "could not draw enough simple curves");
    ClosedCurve c = make_preset(RandomBandlimitedPreset{seeds(), max_mode, max_amplitude}, n);
    if (!c.is_arclength() || oracles::self_intersects(c.points())) continue;
    out.push_back(std::move(c));
  }
  return out;
}

std::string to_json_line(const InequalityReport& r) {
  nlohmann::json j{{"name", to_string(r.name)}, {"lhs", r.lhs},     {"rhs", r.rhs},
                   {"slack", r.slack},          {"ratio", r.ratio}, {"trivial", r.trivial}};
  j["ell"] = r.ell ? nlohmann::json(*r.ell) : nlohmann::json(nullptr);
  j["m"] = r.m ? nlohmann::json(*r.m) : nlohmann::json(nullptr);
  return j.dump();
}

}  // namespace curveflow
