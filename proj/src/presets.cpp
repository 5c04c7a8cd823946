#include "curveflow/presets.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <random>

#include "curveflow/errors.hpp"

namespace curveflow {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require(bool ok, const std::string& what) {
  if (!ok) fail(ErrorKind::InvalidPreset, what);
}

ClosedCurve polar_curve(std::size_t n, auto&& radius_of) {
  std::vector<Point> pts(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double phi = kTwoPi * static_cast<double>(j) / static_cast<double>(n);
    const double r = radius_of(phi);
    require(std::isfinite(r) && r > 0.0, "radial function must stay positive");
    pts[j] = std::polar(r, phi);
  }
  return ClosedCurve::from_samples(std::move(pts));
}

struct Builder {
  std::size_t n;

  ClosedCurve operator()(const CirclePreset& c) const {
    require(c.radius > 0.0 && std::isfinite(c.radius), "circle radius must be positive");
    require(std::isfinite(c.center.real()) && std::isfinite(c.center.imag()), "circle center must be finite");
    std::vector<Point> pts(n);
    for (std::size_t j = 0; j < n; ++j) {
      pts[j] = c.center + std::polar(c.radius, kTwoPi * static_cast<double>(j) / static_cast<double>(n));
    }
    return ClosedCurve::from_samples(std::move(pts));
  }

  ClosedCurve operator()(const EllipsePreset& e) const {
    require(e.a > 0.0 && e.b > 0.0 && std::isfinite(e.a) && std::isfinite(e.b), "ellipse axes must be positive");
    std::vector<Point> pts(n);
    for (std::size_t j = 0; j < n; ++j) {
      const double t = kTwoPi * static_cast<double>(j) / static_cast<double>(n);
      pts[j] = {e.a * std::cos(t), e.b * std::sin(t)};
    }
    return ClosedCurve::from_samples(std::move(pts));
  }

  ClosedCurve operator()(const PerturbedCirclePreset& p) const {
    require(p.radius > 0.0 && std::isfinite(p.radius), "radius must be positive");
    for (const auto& m : p.modes) {
      require(m.k >= 0 && std::isfinite(m.amplitude) && std::isfinite(m.phase), "bad perturbation mode");
      require(2 * static_cast<std::size_t>(m.k) < n, "perturbation mode not resolved at this sample count");
    }
    return polar_curve(n, [&](double phi) {
      double r = p.radius;
      for (const auto& m : p.modes) r += m.amplitude * std::cos(m.k * phi + m.phase);
      return r;
    });
  }

  ClosedCurve operator()(const RandomBandlimitedPreset& p) const {
    require(p.max_mode >= 2 && 2 * static_cast<std::size_t>(p.max_mode) < n, "max_mode must be in [2, N/2)");
    require(p.max_amplitude >= 0.0 && p.max_amplitude < 1.0, "max_amplitude must be in [0, 1)");
    std::mt19937_64 rng(p.seed);
    std::vector<RadialMode> modes;
    for (int k = 2; k <= p.max_mode; ++k) {
      const double u = unit_uniform(rng());
      const double psi = kTwoPi * unit_uniform(rng());
      const double w = 2.0 / k;
      modes.push_back({k, p.max_amplitude * u * w * w, psi});
    }
    return (*this)(PerturbedCirclePreset{1.0, std::move(modes)});
  }
};

std::vector<double> parse_args(std::string_view body) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= body.size()) {
    std::size_t comma = body.find(',', pos);
    if (comma == std::string_view::npos) comma = body.size();
    std::string_view tok = body.substr(pos, comma - pos);
    while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
    while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
    require(!tok.empty(), "empty preset argument");
    if (tok.front() == '+') tok.remove_prefix(1);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    require(ec == std::errc() && ptr == tok.data() + tok.size() && std::isfinite(v),
            "malformed number '" + std::string(tok) + "'");
    out.push_back(v);
    pos = comma + 1;
  }
  return out;
}

int as_int(double v) {
  require(v == std::floor(v) && std::abs(v) < 1e9, "expected an integer argument");
  return static_cast<int>(v);
}

std::string fmt(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

}  // namespace

double unit_uniform(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

ClosedCurve make_preset(const PresetSpec& spec, std::size_t n) {
  const ClosedCurve raw = std::visit(Builder{n}, spec);
  return resample_arclength(raw, n);
}

PresetSpec parse_preset(std::string_view text, std::uint64_t default_seed) {
  constexpr std::string_view prefix = "preset:";
  if (text.starts_with(prefix)) text.remove_prefix(prefix.size());
  const auto open = text.find('(');
  require(open != std::string_view::npos && !text.empty() && text.back() == ')',
          "expected NAME(args)");
  const std::string_view name = text.substr(0, open);
  const auto args = parse_args(text.substr(open + 1, text.size() - open - 2));

  if (name == "circle") {
    if (args.size() == 1) return CirclePreset{{0.0, 0.0}, args[0]};
    require(args.size() == 3, "circle takes (cx,cy,R) or (R)");
    return CirclePreset{{args[0], args[1]}, args[2]};
  }
  if (name == "ellipse") {
    require(args.size() == 2, "ellipse takes (a,b)");
    return EllipsePreset{args[0], args[1]};
  }
  if (name == "perturbed_circle") {
    require(args.size() >= 1 && (args.size() - 1) % 3 == 0, "perturbed_circle takes (R,k,eps,phase,...)");
    PerturbedCirclePreset p{args[0], {}};
    for (std::size_t i = 1; i < args.size(); i += 3) {
      p.modes.push_back({as_int(args[i]), args[i + 1], args[i + 2]});
    }
    return p;
  }
  if (name == "random_bandlimited") {
    if (args.size() == 2) return RandomBandlimitedPreset{default_seed, as_int(args[0]), args[1]};
    require(args.size() == 3, "random_bandlimited takes (seed,max_mode,max_amplitude)");
    require(args[0] >= 0.0, "seed must be non-negative");
    return RandomBandlimitedPreset{static_cast<std::uint64_t>(as_int(args[0])), as_int(args[1]), args[2]};
  }
  fail(ErrorKind::InvalidPreset, "unknown preset '" + std::string(name) + "'");
}

std::string to_string(const PresetSpec& spec) {
  struct Printer {
    std::string operator()(const CirclePreset& c) const {
      return "preset:circle(" + fmt(c.center.real()) + "," + fmt(c.center.imag()) + "," + fmt(c.radius) + ")";
    }
    std::string operator()(const EllipsePreset& e) const {
      return "preset:ellipse(" + fmt(e.a) + "," + fmt(e.b) + ")";
    }
    std::string operator()(const PerturbedCirclePreset& p) const {
      std::string s = "preset:perturbed_circle(" + fmt(p.radius);
      for (const auto& m : p.modes) s += "," + std::to_string(m.k) + "," + fmt(m.amplitude) + "," + fmt(m.phase);
      return s + ")";
    }
    std::string operator()(const RandomBandlimitedPreset& r) const {
      return "preset:random_bandlimited(" + std::to_string(r.seed) + "," + std::to_string(r.max_mode) + "," +
             fmt(r.max_amplitude) + ")";
    }
  };
  return std::visit(Printer{}, spec);
}

}  // namespace curveflow
