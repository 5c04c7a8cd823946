#include "curveflow/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

#include "curveflow/curve_io.hpp"
#include "curveflow/errors.hpp"

namespace curveflow {
namespace {

constexpr double kPanelW = 420.0;
constexpr double kPanelH = 360.0;
constexpr double kMargin = 40.0;
constexpr const char* kPalette[] = {"#1b9e77", "#d95f02", "#7570b3", "#e7298a", "#66a61e", "#e6ab02", "#a6761d"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();

  void add(double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  bool valid() const { return lo <= hi; }
  double span() const { return hi > lo ? hi - lo : 1.0; }
};

void decay_panel(std::ostringstream& svg, const TraceTable& trace) {
  const double x0 = kMargin;
  const double y0 = kMargin;
  const double w = kPanelW - 2 * kMargin;
  const double h = kPanelH - 2 * kMargin;
  const int tcol = trace.column("t");

  std::vector<int> series;
  for (std::size_t c = 0; c < trace.columns.size(); ++c) {
    if (trace.columns[c].starts_with("I_")) series.push_back(static_cast<int>(c));
  }
  Range tr, yr;
  for (const auto& row : trace.rows) {
    tr.add(row[static_cast<std::size_t>(tcol)]);
    for (int c : series) {
      const double v = row[static_cast<std::size_t>(c)];
      if (v > 0.0 && std::isfinite(v)) yr.add(std::log10(v));
    }
  }
  svg << "<g id=\"decay\">\n";
  svg << "<rect x=\"" << num(x0) << "\" y=\"" << num(y0) << "\" width=\"" << num(w) << "\" height=\"" << num(h)
      << "\" fill=\"none\" stroke=\"#333\"/>\n";
  svg << "<text x=\"" << num(x0) << "\" y=\"" << num(y0 - 12) << "\" font-size=\"12\">log10 I vs t</text>\n";
  if (!tr.valid() || !yr.valid()) {
    svg << "</g>\n";
    return;
  }
  svg << "<text x=\"" << num(x0) << "\" y=\"" << num(y0 + h + 16) << "\" font-size=\"10\">t=" << num(tr.lo)
      << "</text>\n";
  svg << "<text x=\"" << num(x0 + w - 50) << "\" y=\"" << num(y0 + h + 16) << "\" font-size=\"10\">t=" << num(tr.hi)
      << "</text>\n";
  svg << "<text x=\"" << num(2.0) << "\" y=\"" << num(y0 + 10) << "\" font-size=\"10\">" << num(yr.hi) << "</text>\n";
  svg << "<text x=\"" << num(2.0) << "\" y=\"" << num(y0 + h) << "\" font-size=\"10\">" << num(yr.lo) << "</text>\n";
  for (std::size_t s = 0; s < series.size(); ++s) {
    const auto c = static_cast<std::size_t>(series[s]);
    const char* color = kPalette[s % std::size(kPalette)];
    svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.2\" points=\"";
    bool first = true;
    for (const auto& row : trace.rows) {
      const double v = row[c];
      if (!(v > 0.0) || !std::isfinite(v)) continue;
      const double px = x0 + (row[static_cast<std::size_t>(tcol)] - tr.lo) / tr.span() * w;
      const double py = y0 + h - (std::log10(v) - yr.lo) / yr.span() * h;
      svg << (first ? "" : " ") << num(px) << "," << num(py);
      first = false;
    }
    svg << "\"/>\n";
    svg << "<text x=\"" << num(x0 + w - 60) << "\" y=\"" << num(y0 + 14 + 12 * static_cast<double>(s))
        << "\" font-size=\"10\" fill=\"" << color << "\">" << trace.columns[c] << "</text>\n";
  }
  svg << "</g>\n";
}

void shape_panel(std::ostringstream& svg, const TraceTable& trace, const std::vector<ClosedCurve>& snapshots) {
  const double x0 = kPanelW + kMargin;
  const double y0 = kMargin;
  const double side = kPanelH - 2 * kMargin;

  const auto& last = trace.rows.back();
  const int cx = trace.column("cx");
  const int cy = trace.column("cy");
  const int lc = trace.column("L");
  const bool have_circle = cx >= 0 && cy >= 0 && lc >= 0;
  const Point center = have_circle ? Point(last[static_cast<std::size_t>(cx)], last[static_cast<std::size_t>(cy)])
                                   : Point(0.0, 0.0);
  const double radius = have_circle ? last[static_cast<std::size_t>(lc)] / (2.0 * std::numbers::pi) : 0.0;

  Range xr, yr;
  for (const auto& c : snapshots) {
    for (const auto& p : c.points()) {
      xr.add(p.real());
      yr.add(p.imag());
    }
  }
  if (have_circle) {
    xr.add(center.real() - radius);
    xr.add(center.real() + radius);
    yr.add(center.imag() - radius);
    yr.add(center.imag() + radius);
  }
  svg << "<g id=\"shapes\">\n";
  svg << "<rect x=\"" << num(x0) << "\" y=\"" << num(y0) << "\" width=\"" << num(side) << "\" height=\""
      << num(side) << "\" fill=\"none\" stroke=\"#333\"/>\n";
  svg << "<text x=\"" << num(x0) << "\" y=\"" << num(y0 - 12) << "\" font-size=\"12\">snapshots and limit circle</text>\n";
  if (!xr.valid()) {
    svg << "</g>\n";
    return;
  }
  const double extent = std::max(xr.span(), yr.span()) * 1.05;
  const double mx = 0.5 * (xr.lo + xr.hi);
  const double my = 0.5 * (yr.lo + yr.hi);
  auto px = [&](double x) { return x0 + side / 2 + (x - mx) / extent * side; };
  auto py = [&](double y) { return y0 + side / 2 - (y - my) / extent * side; };

  for (std::size_t s = 0; s < snapshots.size(); ++s) {
    const double shade = snapshots.size() > 1 ? static_cast<double>(s) / static_cast<double>(snapshots.size() - 1) : 1.0;
    const int grey = static_cast<int>(std::lround(200.0 - 180.0 * shade));
    char color[16];
    std::snprintf(color, sizeof color, "#%02x%02x%02x", grey, grey, grey);
    svg << "<polygon fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1\" points=\"";
    const auto pts = snapshots[s].points();
    for (std::size_t i = 0; i < pts.size(); ++i) {
      svg << (i ? " " : "") << num(px(pts[i].real())) << "," << num(py(pts[i].imag()));
    }
    svg << "\"/>\n";
  }
  if (have_circle) {
    svg << "<circle cx=\"" << num(px(center.real())) << "\" cy=\"" << num(py(center.imag())) << "\" r=\""
        << num(radius / extent * side) << "\" fill=\"none\" stroke=\"#d62728\" stroke-dasharray=\"4 3\"/>\n";
  }
  svg << "</g>\n";
}

}  // namespace

int TraceTable::column(const std::string& name) const {
  const auto it = std::find(columns.begin(), columns.end(), name);
  return it == columns.end() ? -1 : static_cast<int>(it - columns.begin());
}

TraceTable read_trace_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::MissingTrace, "cannot open trace " + path.string());
  TraceTable table;
  std::string line;
  if (!std::getline(in, line) || line.empty()) fail(ErrorKind::MissingTrace, "trace is empty: " + path.string());
  table.columns = split(line, ',');
  if (table.column("t") < 0) fail(ErrorKind::BadFile, "trace header lacks a t column");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = split(line, ',');
    if (cells.size() != table.columns.size()) fail(ErrorKind::BadFile, "ragged trace row");
    std::vector<double> row;
    for (const auto& cell : cells) {
      char* end = nullptr;
      const double v = std::strtod(cell.c_str(), &end);
      if (cell.empty() || end != cell.c_str() + cell.size()) fail(ErrorKind::BadFile, "bad number '" + cell + "'");
      row.push_back(v);
    }
    table.rows.push_back(std::move(row));
  }
  if (table.rows.empty()) fail(ErrorKind::MissingTrace, "trace has no records: " + path.string());
  return table;
}

std::vector<ClosedCurve> read_snapshot_dir(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) fail(ErrorKind::BadFile, "not a directory: " + dir.string());
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<ClosedCurve> out;
  for (const auto& f : files) out.push_back(read_curve_file(f));
  return out;
}

std::string render_svg(const TraceTable& trace, const std::vector<ClosedCurve>& snapshots) {
  if (trace.rows.empty()) fail(ErrorKind::MissingTrace, "trace has no records");
  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(2 * kPanelW) << "\" height=\"" << num(kPanelH)
      << "\" viewBox=\"0 0 " << num(2 * kPanelW) << " " << num(kPanelH) << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  decay_panel(svg, trace);
  shape_panel(svg, trace, snapshots);
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace curveflow
