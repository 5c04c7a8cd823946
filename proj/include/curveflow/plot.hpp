#pragma once
// SVG rendering of a trace: decay of I_{-1}, I_0..I_ell on a log axis next to
// overlaid curve snapshots and the limit circle of the last record.

#include <filesystem>
#include <string>
#include <vector>

#include "curveflow/curve.hpp"

namespace curveflow {

struct TraceTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  /// Index of a column, or -1.
  int column(const std::string& name) const;
};

/// Throws MissingTrace for a missing, empty or header-only file and BadFile
/// for malformed rows.
TraceTable read_trace_csv(const std::filesystem::path& path);

/// Curve snapshots (*.json) of a directory in file-name order.
std::vector<ClosedCurve> read_snapshot_dir(const std::filesystem::path& dir);

/// Deterministic for identical inputs.
std::string render_svg(const TraceTable& trace, const std::vector<ClosedCurve>& snapshots);

}  // namespace curveflow
