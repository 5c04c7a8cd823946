#pragma once
// Curve files (JSON, "version":1):
//   {"version":1,"kind":"samples","points":[[x,y],...]}
//   {"version":1,"kind":"fourier","K":k,"coeffs":[[re,im],...]}   (k = -K..K)

#include <filesystem>
#include <optional>
#include <string>

#include "curveflow/curve.hpp"

namespace curveflow {

/// "samples" kind; doubles are written in shortest round-trip form so reading
/// back reproduces the samples bit for bit.
std::string to_samples_json(const ClosedCurve& curve);
std::string to_fourier_json(const SpectralCoeffs& coeffs);

/// Parses either kind. A "fourier" file is sampled at `n` points, by default
/// the smallest even count >= max(16, 2K+2). Throws BadFile.
ClosedCurve curve_from_json(const std::string& text, std::optional<std::size_t> n = std::nullopt);

ClosedCurve read_curve_file(const std::filesystem::path& path,
                            std::optional<std::size_t> n = std::nullopt);
void write_curve_file(const std::filesystem::path& path, const ClosedCurve& curve);

}  // namespace curveflow
