#pragma once
// Time stepping for the H^{-m} gradient flow of length
//
//   df/dt = (-1)^m (d_s^{2m} kd) nu,     kd = kappa - 2 pi / L,
//
// with nu the inward unit normal. Positions are advanced in Fourier space by
// an exponential time-differencing Runge-Kutta scheme whose linear part is the
// leading term -(2 pi k / L)^{2m+2}; the curve is resampled to arc length
// after every accepted step.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "curveflow/asymptotics.hpp"
#include "curveflow/curve.hpp"
#include "curveflow/errors.hpp"

namespace curveflow {

struct FlowConfig {
  int m = 1;
  std::size_t N = 256;
  double dt_init = 1e-3;
  double t_max = 1.0;
  double stop_I0 = 0.0;  // 0 disables the convergence stop
  double record_every = 1e-2;
  int ell_max = 2;
  double safety = 0.9;
  double blowup_kappa = 1e6;
  bool keep_snapshots = false;
  bool check_self_intersection = true;
};

/// Throws InvalidArgument when a field is out of range.
void validate(const FlowConfig& config);

struct FlowState {
  double t = 0.0;
  ClosedCurve curve;
  double dt = 0.0;
  std::size_t step_count = 0;
  std::size_t rejected = 0;
  int accepted_streak = 0;
};

struct TraceRecord {
  double t = 0.0;
  double L = 0.0;
  double A = 0.0;
  double I_minus1 = 0.0;
  std::vector<double> I;  // I_0 .. I_{ell_max}
  double I_m = 0.0;       // I at the flow order, kept even when m > ell_max
  double kappa_min = 0.0;
  double kappa_max = 0.0;
  bool convex = false;
  FourierFrame frame;
  bool simple = true;
  std::optional<ClosedCurve> snapshot;
};

enum class Termination { Converged, TimeOut, Breakdown };

std::string to_string(Termination t);

struct EvolveResult {
  std::vector<TraceRecord> trace;
  FlowState final_state;
  Termination termination = Termination::TimeOut;
  std::optional<ErrorKind> breakdown;
  std::string message;
};

/// (-1)^m d_s^{2m} kd on an arc-length curve.
std::vector<double> normal_velocity(const ClosedCurve& curve, int m);

/// Same operator for an arbitrary regular parametrization: d_s = (1/|f_theta|) d_theta.
std::vector<double> normal_velocity_general(std::span<const Point> samples, int m);

/// One accepted step (retrying with halved dt as needed). Throws
/// StepSizeUnderflow or CurvatureBlowup.
FlowState step(const FlowState& state, const FlowConfig& config);

/// Same as step, but never steps past t_stop.
FlowState step_until(const FlowState& state, const FlowConfig& config, double t_stop);

/// Record for the state's curve at time t.
TraceRecord make_record(const ClosedCurve& curve, double t, const FlowConfig& config);

/// Throws BadInitialData unless the curve has rotation number 1 and positive
/// signed area. Breakdown is reported in the result, not thrown.
EvolveResult evolve(const ClosedCurve& curve, const FlowConfig& config);

/// |dL/dt + I_m/L^{2m+1}| / (I_m/L^{2m+1} + 1e-14) at interior records, with
/// dL/dt from three-point centered differences.
std::vector<double> gradient_identity_residual(std::span<const TraceRecord> trace,
                                               const FlowConfig& config);

/// Relative residual of the I_0 energy balance
///   dI_0/dt + I_0 I_m/L^{2m+2} + 2 I_{m+1}/L^{2m+2}
///     = (-1)^m L int (kd^3 + (6pi/L) kd^2 + (8pi^2/L^2) kd) d_s^{2m} kd ds
/// at interior records, normalized by the sum of the magnitudes of the four
/// terms. Needs snapshots on every record.
std::vector<double> energy_identity_residual_I0(std::span<const TraceRecord> trace,
                                                const FlowConfig& config);

/// Right-hand side of the energy balance on one curve.
double energy_identity_rhs(const ClosedCurve& curve, int m);

/// Header t,L,A,I_m1,I_0,...,I_{ell_max},kappa_min,kappa_max,convex,cx,cy,r,sigma,simple.
std::string trace_csv_header(int ell_max);

/// Full CSV text, header included, numbers printed with 17 significant digits.
std::string trace_csv(std::span<const TraceRecord> trace, int ell_max);

/// The same table as a JSON document {"columns": [...], "rows": [[...], ...]}.
std::string trace_json(std::span<const TraceRecord> trace, int ell_max);

/// k^{2m}(k^2 - 1)/R^{2m+2}: decay rate of a mode-k radial perturbation of
/// the circle of radius R under the linearized flow.
double linearized_rate(int m, int k, double R);

}  // namespace curveflow
