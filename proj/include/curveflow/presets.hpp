#pragma once
// Named initial curves. All presets come back resampled to arc length.

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "curveflow/curve.hpp"

namespace curveflow {

struct CirclePreset {
  Point center{0.0, 0.0};
  double radius = 1.0;
};

struct EllipsePreset {
  double a = 2.0;  // semi-axis along x
  double b = 1.0;  // semi-axis along y
};

struct RadialMode {
  int k = 2;
  double amplitude = 0.0;
  double phase = 0.0;
};

/// Polar graph r(phi) = R + sum eps_k cos(k phi + phase_k).
struct PerturbedCirclePreset {
  double radius = 1.0;
  std::vector<RadialMode> modes;
};

/// Polar graph r(phi) = 1 + sum_{k=2}^{max_mode} rho_k cos(k phi + psi_k) with
/// rho_k = max_amplitude * u_k * (2/k)^2, u_k and psi_k drawn from a
/// mt19937_64 stream seeded with `seed`. Every curve is star-shaped about the
/// origin, hence simple with rotation number 1.
struct RandomBandlimitedPreset {
  std::uint64_t seed = 0;
  int max_mode = 8;
  double max_amplitude = 0.2;
};

using PresetSpec =
    std::variant<CirclePreset, EllipsePreset, PerturbedCirclePreset, RandomBandlimitedPreset>;

/// Throws InvalidPreset on non-positive radii/axes or non-finite parameters.
ClosedCurve make_preset(const PresetSpec& spec, std::size_t n);

/// Parses `preset:NAME(arg,...)`:
///   circle(cx,cy,R) | circle(R) | ellipse(a,b)
///   perturbed_circle(R,k1,eps1,phase1[,k2,eps2,phase2...])
///   random_bandlimited(seed,max_mode,max_amplitude) | random_bandlimited(max_mode,max_amplitude)
/// The two-argument random form takes its seed from `default_seed`.
/// Arguments must be plain decimal numbers; anything else is InvalidPreset.
PresetSpec parse_preset(std::string_view text, std::uint64_t default_seed = 0);

/// Canonical text for a preset (parse_preset round-trips it).
std::string to_string(const PresetSpec& spec);

/// Uniform deviate in [0, 1) built from the top 53 bits of a 64-bit draw.
double unit_uniform(std::uint64_t bits);

}  // namespace curveflow
