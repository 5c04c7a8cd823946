#include "curveflow/flow.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <json.hpp>
#include <numbers>

#include "curveflow/kernels.hpp"
#include "curveflow/oracles.hpp"
#include "curveflow/quantities.hpp"
#include "curveflow/spectral.hpp"

namespace curveflow {
namespace {

using cplx = std::complex<double>;
constexpr double kPi = std::numbers::pi;

double mean(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

bool all_finite(std::span<const Point> z) {
  return std::all_of(z.begin(), z.end(),
                     [](const Point& p) { return std::isfinite(p.real()) && std::isfinite(p.imag()); });
}

// Velocity field of a stage curve together with the pieces needed to turn it
// into a vector field.
struct StageField {
  std::vector<double> V;
  std::vector<cplx> d1;
  std::vector<double> g;
  std::vector<double> kd;
};

StageField stage_field(std::span<const Point> z, int m) {
  const std::size_t n = z.size();
  auto c = spectral::forward(z);
  auto c1 = c;
  spectral::differentiate(c1, 1);
  auto c2 = c;
  spectral::differentiate(c2, 2);
  StageField f;
  f.d1 = spectral::inverse(c1);
  const auto d2 = spectral::inverse(c2);
  f.g.resize(n);
  std::vector<double> kappa(n);
  kernels::speed_curvature(f.d1, d2, f.g, kappa);
  const double L = mean(f.g);
  for (double gi : f.g) {
    if (!(gi > 1e-12 * L)) fail(ErrorKind::NonMonotoneArcLength, "stage curve lost regularity");
  }
  const double kbar = kernels::dot(kappa, f.g) / static_cast<double>(n) / L;
  f.kd.resize(n);
  for (std::size_t i = 0; i < n; ++i) f.kd[i] = kappa[i] - kbar;
  f.V = f.kd;
  for (int j = 0; j < 2 * m; ++j) {
    f.V = spectral::derivative_real(f.V, 1);
    for (std::size_t i = 0; i < n; ++i) f.V[i] /= f.g[i];
  }
  if (m % 2 == 1) {
    for (double& v : f.V) v = -v;
  }
  return f;
}

// phi_1..phi_3 of the exponential integrator at z <= 0.
struct Phi {
  double p1, p2, p3;
};

Phi phi(double z) {
  if (std::abs(z) < 1.0) {
    // Taylor series, 20 terms are plenty for |z| < 1.
    Phi p{0.0, 0.0, 0.0};
    double term = 1.0;  // z^n / n!
    for (int n = 0; n < 20; ++n) {
      p.p1 += term / (n + 1.0);
      p.p2 += term / ((n + 1.0) * (n + 2.0));
      p.p3 += term / ((n + 1.0) * (n + 2.0) * (n + 3.0));
      term *= z / (n + 1.0);
    }
    return p;
  }
  const double p1 = std::expm1(z) / z;
  const double p2 = (p1 - 1.0) / z;
  const double p3 = (p2 - 0.5) / z;
  return {p1, p2, p3};
}

struct EtdCoeffs {
  std::vector<double> E, E2, Q, f1, f2, f3;
};

EtdCoeffs etd_coeffs(std::size_t n, double h, double L, int m) {
  EtdCoeffs c;
  for (auto* v : {&c.E, &c.E2, &c.Q, &c.f1, &c.f2, &c.f3}) v->resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double k = spectral::wavenumber(i, n);
    const double lam = -std::pow(2.0 * kPi * k / L, 2 * m + 2);
    const double z = h * lam;
    const Phi full = phi(z);
    const Phi half = phi(0.5 * z);
    c.E[i] = std::exp(z);
    c.E2[i] = std::exp(0.5 * z);
    c.Q[i] = 0.5 * h * half.p1;
    c.f1[i] = h * (full.p1 - 3.0 * full.p2 + 4.0 * full.p3);
    c.f2[i] = h * (full.p2 - 2.0 * full.p3);
    c.f3[i] = h * (4.0 * full.p3 - full.p2);
  }
  return c;
}

// Fourier coefficients of V nu minus the linear part, top third removed.
std::vector<cplx> remainder(std::span<const cplx> u, double L, int m) {
  const std::size_t n = u.size();
  const auto z = spectral::inverse(u);
  if (!all_finite(z)) fail(ErrorKind::DegenerateCurve, "non-finite stage");
  const auto f = stage_field(z, m);
  std::vector<cplx> w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = f.V[i] * cplx(0.0, 1.0) * f.d1[i] / f.g[i];
  auto out = spectral::forward(w);
  for (std::size_t i = 0; i < n; ++i) {
    const double k = spectral::wavenumber(i, n);
    const double lam = -std::pow(2.0 * kPi * k / L, 2 * m + 2);
    out[i] -= lam * u[i];
  }
  spectral::truncate_two_thirds(out);
  return out;
}

std::vector<cplx> etdrk4(std::span<const cplx> u, double h, double L, int m) {
  using kernels::scale_accumulate;
  const std::size_t n = u.size();
  const auto c = etd_coeffs(n, h, L, m);
  std::vector<cplx> a(n), b(n), s(n), tmp(n), out(n);

  const auto Nu = remainder(u, L, m);
  scale_accumulate(c.E2, u, a, false);
  scale_accumulate(c.Q, Nu, a, true);
  const auto Na = remainder(a, L, m);
  scale_accumulate(c.E2, u, b, false);
  scale_accumulate(c.Q, Na, b, true);
  const auto Nb = remainder(b, L, m);
  for (std::size_t i = 0; i < n; ++i) tmp[i] = 2.0 * Nb[i] - Nu[i];
  scale_accumulate(c.E2, a, s, false);
  scale_accumulate(c.Q, tmp, s, true);
  const auto Nc = remainder(s, L, m);

  for (std::size_t i = 0; i < n; ++i) tmp[i] = 2.0 * (Na[i] + Nb[i]);
  scale_accumulate(c.E, u, out, false);
  scale_accumulate(c.f1, Nu, out, true);
  scale_accumulate(c.f2, tmp, out, true);
  scale_accumulate(c.f3, Nc, out, true);
  return out;
}

bool is_breakdown(ErrorKind kind) {
  return kind == ErrorKind::CurvatureBlowup || kind == ErrorKind::StepSizeUnderflow ||
         kind == ErrorKind::SelfIntersection;
}

// Nonuniform three-point derivative at the middle point.
double centered_derivative(double t0, double t1, double t2, double f0, double f1, double f2) {
  const double h0 = t1 - t0;
  const double h1 = t2 - t1;
  return -h1 / (h0 * (h0 + h1)) * f0 + (h1 - h0) / (h0 * h1) * f1 + h0 / (h1 * (h0 + h1)) * f2;
}

int budget_order(const FlowConfig& config) { return std::max(config.ell_max, config.m + 1); }

}  // namespace

std::string to_string(Termination t) {
  switch (t) {
    case Termination::Converged: return "Converged";
    case Termination::TimeOut: return "TimeOut";
    case Termination::Breakdown: return "Breakdown";
  }
  return "?";
}

void validate(const FlowConfig& c) {
  auto bad = [](const std::string& msg) { fail(ErrorKind::InvalidArgument, msg); };
  if (c.m < 0) bad("m must be >= 0");
  if (c.N % 2 != 0 || c.N < kMinSamples) bad("N must be even and >= 16");
  if (c.N < static_cast<std::size_t>(8 * (2 * c.m + 2))) bad("N must be >= 8(2m+2)");
  if (!(c.t_max > 0.0) || !std::isfinite(c.t_max)) bad("t_max must be positive");
  if (!(c.dt_init > 0.0) || c.dt_init > c.t_max) bad("dt_init must lie in (0, t_max]");
  if (!(c.stop_I0 >= 0.0)) bad("stop_I0 must be >= 0");
  if (!(c.record_every > 0.0) || !std::isfinite(c.record_every)) bad("record_every must be positive");
  if (c.ell_max < 0) bad("ell_max must be >= 0");
  if (static_cast<std::size_t>(budget_order(c)) + 2 > c.N / 2) bad("ell_max and m+1 must be <= N/2 - 2");
  if (!(c.safety > 0.0 && c.safety <= 1.0)) bad("safety must lie in (0, 1]");
  if (!(c.blowup_kappa > 0.0)) bad("blowup_kappa must be positive");
}

std::vector<double> normal_velocity(const ClosedCurve& curve, int m) {
  if (m < 0) fail(ErrorKind::InvalidArgument, "m must be >= 0");
  if (!curve.is_arclength()) fail(ErrorKind::NotArcLength, "curve must be arc-length parametrized");
  if (static_cast<std::size_t>(2 * m) + 2 > curve.size() / 2) {
    fail(ErrorKind::OrderTooHigh, "2m exceeds the derivative budget N/2 - 2");
  }
  const double L = length(curve);
  auto v = arclength_derivative(curvature_deviation(curve).values, 2 * m, L);
  if (m % 2 == 1) {
    for (double& x : v) x = -x;
  }
  return v;
}

std::vector<double> normal_velocity_general(std::span<const Point> samples, int m) {
  if (m < 0) fail(ErrorKind::InvalidArgument, "m must be >= 0");
  return stage_field(samples, m).V;
}

FlowState step_until(const FlowState& state, const FlowConfig& config, double t_stop) {
  const int m = config.m;
  const ClosedCurve& curve = state.curve;
  const std::size_t n = curve.size();
  const double L0 = length(curve);

  // I_m = L^{2m+1} int kd V ds.
  const auto f0 = stage_field(curve.points(), m);
  const double Im = std::pow(L0, 2 * m + 1) * L0 * kernels::dot(f0.kd, f0.V) / static_cast<double>(n);
  const auto u = spectral::forward(curve.points());

  FlowState next = state;
  const double remaining = t_stop - state.t;
  // Absorb a sliver left over from rounding into this step.
  double h = state.dt >= remaining * (1.0 - 1e-9) ? remaining : state.dt;
  for (;;) {
    if (h < 1e-14 * config.t_max) {
      fail(ErrorKind::StepSizeUnderflow, "step size fell below 1e-14 t_max at t = " + std::to_string(state.t));
    }
    bool accepted = false;
    try {
      const auto z = spectral::inverse(etdrk4(u, h, L0, m));
      if (all_finite(z)) {
        ClosedCurve moved = resample_arclength(ClosedCurve::from_samples(z), n);
        const double L1 = length(moved);
        const double rel = (L1 - L0) / L0;
        const double allowed = 10.0 * config.safety * h * Im / std::pow(L0, 2 * m + 2) + 1e-12;
        if (rel <= 1e-12 && std::abs(rel) <= allowed && moved.is_arclength()) {
          next.curve = std::move(moved);
          accepted = true;
        }
      }
    } catch (const CurveflowError& e) {
      if (is_breakdown(e.kind())) throw;
    }
    if (accepted) break;
    h *= 0.5;
    next.dt = h;
    next.accepted_streak = 0;
    ++next.rejected;
  }

  next.t = (h >= remaining) ? t_stop : state.t + h;
  ++next.step_count;
  if (++next.accepted_streak >= 10) {
    next.dt = std::min(next.dt * 1.2, config.dt_init);
    next.accepted_streak = 0;
  }

  const auto kappa = curvature(next.curve);
  double kmax = 0.0;
  for (double k : kappa) kmax = std::max(kmax, std::abs(k));
  if (!(kmax <= config.blowup_kappa)) {
    fail(ErrorKind::CurvatureBlowup, "max |kappa| = " + std::to_string(kmax) + " at t = " + std::to_string(next.t));
  }
  return next;
}

FlowState step(const FlowState& state, const FlowConfig& config) {
  return step_until(state, config, config.t_max);
}

TraceRecord make_record(const ClosedCurve& curve, double t, const FlowConfig& config) {
  TraceRecord r;
  r.t = t;
  r.L = length(curve);
  r.A = signed_area(curve);
  r.I_minus1 = isoperimetric_deficit(curve);
  const auto I = scale_invariant_I_all(curve, std::max(config.ell_max, config.m));
  r.I.assign(I.begin(), I.begin() + config.ell_max + 1);
  r.I_m = I[static_cast<std::size_t>(config.m)];
  const auto kappa = curvature(curve);
  const auto [lo, hi] = std::minmax_element(kappa.begin(), kappa.end());
  r.kappa_min = *lo;
  r.kappa_max = *hi;
  r.convex = r.kappa_min > 0.0;
  r.frame = fourier_frame(curve);
  r.simple = config.check_self_intersection ? !oracles::self_intersects(curve.points()) : true;
  if (config.keep_snapshots) r.snapshot = curve;
  return r;
}

EvolveResult evolve(const ClosedCurve& curve, const FlowConfig& config) {
  validate(config);
  ClosedCurve c0 = resample_arclength(curve, config.N);
  try {
    if (rotation_number(c0).value != 1) fail(ErrorKind::BadInitialData, "rotation number is not 1");
  } catch (const CurveflowError& e) {
    if (e.kind() == ErrorKind::BadInitialData) throw;
    fail(ErrorKind::BadInitialData, std::string("rotation number undefined: ") + e.what());
  }
  if (!(signed_area(c0) > 0.0)) fail(ErrorKind::BadInitialData, "signed area must be positive");

  EvolveResult res;
  res.final_state = FlowState{0.0, std::move(c0), config.dt_init, 0, 0, 0};
  FlowState& state = res.final_state;
  res.trace.push_back(make_record(state.curve, 0.0, config));

  auto converged = [&](const TraceRecord& r) { return config.stop_I0 > 0.0 && r.I[0] <= config.stop_I0; };
  if (converged(res.trace.back())) {
    res.termination = Termination::Converged;
    return res;
  }

  for (std::size_t k = 1;; ++k) {
    double target = static_cast<double>(k) * config.record_every;
    if (target > config.t_max || config.t_max - target < 1e-9 * config.record_every) target = config.t_max;
    try {
      while (state.t < target) state = step_until(state, config, target);
    } catch (const CurveflowError& e) {
      if (!is_breakdown(e.kind())) throw;
      res.termination = Termination::Breakdown;
      res.breakdown = e.kind();
      res.message = e.what();
      return res;
    }
    TraceRecord rec = make_record(state.curve, state.t, config);
    const bool simple = rec.simple;
    res.trace.push_back(std::move(rec));
    if (!simple) {
      res.termination = Termination::Breakdown;
      res.breakdown = ErrorKind::SelfIntersection;
      res.message = "curve self-intersects at t = " + std::to_string(state.t);
      return res;
    }
    if (converged(res.trace.back())) {
      res.termination = Termination::Converged;
      return res;
    }
    if (target >= config.t_max) {
      res.termination = Termination::TimeOut;
      return res;
    }
  }
}

std::vector<double> gradient_identity_residual(std::span<const TraceRecord> trace, const FlowConfig& config) {
  if (trace.size() < 3) fail(ErrorKind::TooFewRecords, "need at least 3 records");
  const int m = config.m;
  std::vector<double> out;
  for (std::size_t i = 1; i + 1 < trace.size(); ++i) {
    const auto& a = trace[i - 1];
    const auto& b = trace[i];
    const auto& c = trace[i + 1];
    const double dL = centered_derivative(a.t, b.t, c.t, a.L, b.L, c.L);
    const double rate = b.I_m / std::pow(b.L, 2 * m + 1);
    out.push_back(std::abs(dL + rate) / (rate + 1e-14));
  }
  return out;
}

double energy_identity_rhs(const ClosedCurve& curve, int m) {
  const double L = length(curve);
  const auto kd = curvature_deviation(curve).values;
  const auto V = normal_velocity(curve, m);  // (-1)^m d_s^{2m} kd
  std::vector<double> integrand(kd.size());
  for (std::size_t i = 0; i < kd.size(); ++i) {
    const double x = kd[i];
    integrand[i] = (x * x * x + 6.0 * kPi / L * x * x + 8.0 * kPi * kPi / (L * L) * x) * V[i];
  }
  return L * arclength_integral(integrand, L);
}

std::vector<double> energy_identity_residual_I0(std::span<const TraceRecord> trace, const FlowConfig& config) {
  if (trace.size() < 3) fail(ErrorKind::TooFewRecords, "need at least 3 records");
  for (const auto& r : trace) {
    if (!r.snapshot) fail(ErrorKind::MissingSnapshots, "energy balance needs a curve snapshot on every record");
  }
  const int m = config.m;
  std::vector<double> out;
  for (std::size_t i = 1; i + 1 < trace.size(); ++i) {
    const auto& a = trace[i - 1];
    const auto& b = trace[i];
    const auto& c = trace[i + 1];
    const auto I = scale_invariant_I_all(*b.snapshot, m + 1);
    const double scale = std::pow(b.L, 2 * m + 2);
    const double t1 = centered_derivative(a.t, b.t, c.t, a.I[0], b.I[0], c.I[0]);
    const double t2 = I[0] * I[static_cast<std::size_t>(m)] / scale;
    const double t3 = 2.0 * I[static_cast<std::size_t>(m + 1)] / scale;
    const double t4 = energy_identity_rhs(*b.snapshot, m);
    out.push_back(std::abs(t1 + t2 + t3 - t4) /
                  (std::abs(t1) + std::abs(t2) + std::abs(t3) + std::abs(t4) + 1e-14));
  }
  return out;
}

std::string trace_csv_header(int ell_max) {
  std::string h = "t,L,A,I_m1";
  for (int l = 0; l <= ell_max; ++l) h += ",I_" + std::to_string(l);
  return h + ",kappa_min,kappa_max,convex,cx,cy,r,sigma,simple";
}

namespace {

std::vector<double> trace_row(const TraceRecord& r, int ell_max) {
  std::vector<double> row{r.t, r.L, r.A, r.I_minus1};
  for (int l = 0; l <= ell_max; ++l) row.push_back(r.I.at(static_cast<std::size_t>(l)));
  row.insert(row.end(), {r.kappa_min, r.kappa_max, r.convex ? 1.0 : 0.0, r.frame.c.real(), r.frame.c.imag(),
                         r.frame.r, r.frame.sigma, r.simple ? 1.0 : 0.0});
  return row;
}

}  // namespace

std::string trace_csv(std::span<const TraceRecord> trace, int ell_max) {
  std::string out = trace_csv_header(ell_max) + "\n";
  char buf[32];
  for (const auto& r : trace) {
    const auto row = trace_row(r, ell_max);
    for (std::size_t i = 0; i < row.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%.17g", row[i]);
      if (i) out += ',';
      out += buf;
    }
    out += '\n';
  }
  return out;
}

std::string trace_json(std::span<const TraceRecord> trace, int ell_max) {
  nlohmann::json cols = nlohmann::json::array();
  const std::string header = trace_csv_header(ell_max);
  std::size_t start = 0;
  while (start <= header.size()) {
    const auto comma = header.find(',', start);
    cols.push_back(header.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : trace) rows.push_back(trace_row(r, ell_max));
  return nlohmann::json{{"columns", std::move(cols)}, {"rows", std::move(rows)}}.dump() + "\n";
}

double linearized_rate(int m, int k, double R) {
  if (k < 1) fail(ErrorKind::InvalidArgument, "k must be >= 1");
  if (m < 0) fail(ErrorKind::InvalidArgument, "m must be >= 0");
  if (!(R > 0.0)) fail(ErrorKind::InvalidArgument, "R must be positive");
  const double kk = k;
  return std::pow(kk, 2 * m) * (kk * kk - 1.0) / std::pow(R, 2 * m + 2);
}

}  // namespace curveflow
