#include "curveflow/curve_io.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

#include "curveflow/errors.hpp"

namespace curveflow {

using nlohmann::json;

std::string to_samples_json(const ClosedCurve& curve) {
  json pts = json::array();
  for (const auto& p : curve.points()) pts.push_back({p.real(), p.imag()});
  json doc{{"version", 1}, {"kind", "samples"}, {"points", std::move(pts)}};
  return doc.dump();
}

std::string to_fourier_json(const SpectralCoeffs& coeffs) {
  json cs = json::array();
  for (const auto& c : coeffs.modes) cs.push_back({c.real(), c.imag()});
  json doc{{"version", 1}, {"kind", "fourier"}, {"K", coeffs.K}, {"coeffs", std::move(cs)}};
  return doc.dump();
}

ClosedCurve curve_from_json(const std::string& text, std::optional<std::size_t> n) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorKind::BadFile, std::string("invalid JSON: ") + e.what());
  }
  try {
    if (!doc.contains("version")) fail(ErrorKind::BadFile, "missing version field");
    if (doc.at("version").get<int>() != 1) fail(ErrorKind::BadFile, "unsupported version");
    const auto kind = doc.at("kind").get<std::string>();
    if (kind == "samples") {
      std::vector<Point> pts;
      for (const auto& p : doc.at("points")) {
        if (p.size() != 2) fail(ErrorKind::BadFile, "point must be [x,y]");
        pts.emplace_back(p[0].get<double>(), p[1].get<double>());
      }
      ClosedCurve c = ClosedCurve::from_samples(std::move(pts));
      if (n && *n != c.size()) return resample_arclength(c, *n);
      return c;
    }
    if (kind == "fourier") {
      SpectralCoeffs sc;
      sc.K = doc.at("K").get<int>();
      if (sc.K < 1) fail(ErrorKind::BadFile, "K must be positive");
      for (const auto& c : doc.at("coeffs")) {
        if (c.size() != 2) fail(ErrorKind::BadFile, "coefficient must be [re,im]");
        sc.modes.emplace_back(c[0].get<double>(), c[1].get<double>());
      }
      if (sc.modes.size() != 2 * static_cast<std::size_t>(sc.K) + 1) {
        fail(ErrorKind::BadFile, "expected 2K+1 coefficients");
      }
      std::size_t count = std::max<std::size_t>(kMinSamples, 2 * static_cast<std::size_t>(sc.K) + 2);
      if (count % 2) ++count;
      return from_coeffs(sc, n.value_or(count));
    }
    fail(ErrorKind::BadFile, "unknown kind '" + kind + "'");
  } catch (const json::exception& e) {
    fail(ErrorKind::BadFile, std::string("malformed curve file: ") + e.what());
  }
}

ClosedCurve read_curve_file(const std::filesystem::path& path, std::optional<std::size_t> n) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::BadFile, "cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return curve_from_json(ss.str(), n);
}

void write_curve_file(const std::filesystem::path& path, const ClosedCurve& curve) {
  std::ofstream out(path);
  if (!out) fail(ErrorKind::BadFile, "cannot write " + path.string());
  out << to_samples_json(curve) << '\n';
}

}  // namespace curveflow
