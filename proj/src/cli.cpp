#include "curveflow/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <future>
#include <iostream>
#include <json.hpp>
#include <sstream>
#include <thread>

#include "curveflow/asymptotics.hpp"
#include "curveflow/curve_io.hpp"
#include "curveflow/errors.hpp"
#include "curveflow/flow.hpp"
#include "curveflow/inequalities.hpp"
#include "curveflow/oracles.hpp"
#include "curveflow/plot.hpp"
#include "curveflow/presets.hpp"
#include "curveflow/quantities.hpp"

namespace curveflow::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct EvolveOptions {
  int m = 1;
  std::string curve = "preset:ellipse(2,1)";
  std::size_t modes = 256;
  double dt = 5e-4;
  double t_max = 1.0;
  double stop_I0 = 0.0;
  int ell_max = 2;
  double record_every = 1e-2;
  double safety = 0.9;
  double blowup_kappa = 1e6;
  std::string out = "run";
  std::string format = "csv";
  std::size_t snapshots = 0;
  std::uint64_t seed = 0;
  std::string config;
  bool timing = false;
};

json config_json(const EvolveOptions& o, const std::string& canonical_curve) {
  return json{{"m", o.m},
              {"curve", canonical_curve},
              {"modes", o.modes},
              {"dt", o.dt},
              {"t_max", o.t_max},
              {"stop_I0", o.stop_I0},
              {"ell_max", o.ell_max},
              {"record_every", o.record_every},
              {"safety", o.safety},
              {"blowup_kappa", o.blowup_kappa},
              {"format", o.format},
              {"snapshots", o.snapshots},
              {"seed", o.seed}};
}

// Fields of a report's "config" object fill every option the command line did
// not set explicitly.
void apply_config_file(EvolveOptions& o, const std::string& path, const CLI::App& app) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::BadFile, "cannot open config " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    fail(ErrorKind::BadFile, std::string("invalid config JSON: ") + e.what());
  }
  const json& c = doc.contains("config") ? doc.at("config") : doc;
  auto take = [&](const char* key, const char* flag, auto& field) {
    if (c.contains(key) && app.get_option(flag)->count() == 0) {
      try {
        c.at(key).get_to(field);
      } catch (const json::exception& e) {
        fail(ErrorKind::BadFile, std::string("bad config field ") + key + ": " + e.what());
      }
    }
  };
  take("m", "--m", o.m);
  take("curve", "--curve", o.curve);
  take("modes", "--modes", o.modes);
  take("dt", "--dt", o.dt);
  take("t_max", "--t-max", o.t_max);
  take("stop_I0", "--stop-I0", o.stop_I0);
  take("ell_max", "--ell-max", o.ell_max);
  take("record_every", "--record-every", o.record_every);
  take("safety", "--safety", o.safety);
  take("blowup_kappa", "--blowup-kappa", o.blowup_kappa);
  take("format", "--format", o.format);
  take("snapshots", "--snapshots", o.snapshots);
  take("seed", "--seed", o.seed);
}

ClosedCurve load_curve(const std::string& spec, std::size_t n, std::uint64_t seed, std::string& canonical) {
  if (spec.starts_with("preset:")) {
    const PresetSpec preset = parse_preset(spec, seed);
    canonical = to_string(preset);
    return make_preset(preset, n);
  }
  canonical = spec;
  return read_curve_file(spec, n);
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::BadFile, "cannot write " + path.string());
  out << text;
}

json number_or_null(std::optional<double> v) { return v ? json(*v) : json(nullptr); }

json fit_json(const std::vector<TraceRecord>& trace, const std::function<double(const TraceRecord&)>& pick) {
  std::vector<std::pair<double, double>> series;
  for (const auto& r : trace) series.emplace_back(r.t, pick(r));
  try {
    const DecayFit f = fit_decay(series, 0.5);
    return json{{"lambda", f.lambda}, {"logC", f.logC}, {"t_lo", f.t_lo}, {"t_hi", f.t_hi},
                {"r_squared", f.r_squared}, {"points", f.points}};
  } catch (const CurveflowError&) {
    return nullptr;
  }
}

json frame_json(const FourierFrame& f) {
  return json{{"cx", f.c.real()}, {"cy", f.c.imag()}, {"r", f.r}, {"sigma", f.sigma}};
}

json build_report(const EvolveOptions& o, const std::string& canonical, const FlowConfig& cfg, const EvolveResult& res) {
  json rep;
  rep["version"] = 1;
  rep["config"] = config_json(o, canonical);
  rep["termination"] = to_string(res.termination);
  rep["breakdown"] = res.breakdown ? json(std::string(to_string(*res.breakdown))) : json(nullptr);
  rep["message"] = res.message;
  rep["steps"] = res.final_state.step_count;
  rep["rejected_steps"] = res.final_state.rejected;

  const TraceRecord& last = res.trace.back();
  json fin{{"t", last.t},
           {"L", last.L},
           {"A", last.A},
           {"I_m1", last.I_minus1},
           {"I", last.I},
           {"kappa_min", last.kappa_min},
           {"kappa_max", last.kappa_max},
           {"convex", last.convex},
           {"simple", last.simple},
           {"frame", frame_json(last.frame)}};
  if (last.snapshot && last.simple && last.A > 0.0) {
    try {
      const Point b = barycenter(*last.snapshot);
      fin["barycenter"] = {b.real(), b.imag()};
    } catch (const CurveflowError&) {
      fin["barycenter"] = nullptr;
    }
  }
  rep["final"] = std::move(fin);

  json fits;
  fits["I_m1"] = fit_json(res.trace, [](const TraceRecord& r) { return r.I_minus1; });
  for (int l = 0; l <= cfg.ell_max; ++l) {
    fits["I_" + std::to_string(l)] =
        fit_json(res.trace, [l](const TraceRecord& r) { return r.I[static_cast<std::size_t>(l)]; });
  }
  rep["fits"] = std::move(fits);

  try {
    const CircleLimit lim = limit_circle(res.trace);
    json jl{{"c_inf", {lim.c_inf.real(), lim.c_inf.imag()}},
            {"r_inf", lim.r_inf},
            {"sigma_inf", lim.sigma_inf},
            {"L_inf", lim.L_inf}};
    if (last.snapshot) {
      jl["hausdorff_final"] = hausdorff_to_disk(*last.snapshot, lim.c_inf, lim.r_inf);
      jl["tilde_f_distance_c2"] = tilde_f_distance(*last.snapshot, last.frame, lim, 2);
    }
    rep["limit"] = std::move(jl);
  } catch (const CurveflowError&) {
    rep["limit"] = nullptr;
  }
  rep["convexity_time"] = number_or_null(convexity_time(res.trace, res.termination == Termination::Breakdown));

  json ids;
  try {
    const auto g = gradient_identity_residual(res.trace, cfg);
    ids["gradient_max"] = *std::max_element(g.begin(), g.end());
    const auto e = energy_identity_residual_I0(res.trace, cfg);
    ids["energy_I0_max"] = *std::max_element(e.begin(), e.end());
  } catch (const CurveflowError&) {
    ids = nullptr;
  }
  rep["identities"] = std::move(ids);
  return rep;
}

int cmd_evolve(const EvolveOptions& o, std::ostream& out, std::ostream& err) {
  (void)err;
  const auto t0 = std::chrono::steady_clock::now();
  std::string canonical;
  const ClosedCurve curve = load_curve(o.curve, o.modes, o.seed, canonical);

  FlowConfig cfg;
  cfg.m = o.m;
  cfg.N = o.modes;
  cfg.dt_init = o.dt;
  cfg.t_max = o.t_max;
  cfg.stop_I0 = o.stop_I0;
  cfg.record_every = o.record_every;
  cfg.ell_max = o.ell_max;
  cfg.safety = o.safety;
  cfg.blowup_kappa = o.blowup_kappa;
  cfg.keep_snapshots = true;
  validate(cfg);

  const EvolveResult res = evolve(curve, cfg);

  const fs::path dir(o.out);
  fs::create_directories(dir);
  if (o.format == "json") {
    write_text(dir / "trace.json", trace_json(res.trace, cfg.ell_max));
  } else {
    write_text(dir / "trace.csv", trace_csv(res.trace, cfg.ell_max));
  }
  if (o.snapshots > 0) {
    const fs::path sdir = dir / "snapshots";
    fs::create_directories(sdir);
    for (std::size_t i = 0; i < res.trace.size(); ++i) {
      if (i % o.snapshots != 0 && i + 1 != res.trace.size()) continue;
      char name[32];
      std::snprintf(name, sizeof name, "snap_%05zu.json", i);
      write_curve_file(sdir / name, *res.trace[i].snapshot);
    }
  }
  json rep = build_report(o, canonical, cfg, res);
  if (o.timing) {
    rep["wall_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
  write_text(dir / "report.json", rep.dump(2) + "\n");

  out << to_string(res.termination);
  if (res.breakdown) out << " (" << to_string(*res.breakdown) << ")";
  out << " at t=" << res.final_state.t << " after " << res.final_state.step_count << " steps, " << res.trace.size()
      << " records\n";
  return res.termination == Termination::Breakdown ? 2 : 0;
}

struct CheckOptions {
  std::string curve;
  std::size_t ensemble = 0;
  std::uint64_t seed = 7;
  int max_mode = 8;
  double amplitude = 0.2;
  int ell = 1;
  int m = 2;
  std::size_t modes = 256;
  double inject = 0.0;
};

struct CurveReports {
  std::vector<InequalityReport> reports;
};

CurveReports check_one(const ClosedCurve& c, int ell, int m) {
  const auto [lo, up] = check_theorem1(c);
  return {{lo, up, check_gn(c, ell, m), check_theorem2(c, ell, m)}};
}

template <class Fn>
auto parallel_map(std::size_t count, Fn fn) {
  using R = decltype(fn(std::size_t{0}));
  std::vector<R> out(count);
  const std::size_t workers = std::max(1u, std::min(8u, std::thread::hardware_concurrency()));
  std::vector<std::future<void>> jobs;
  for (std::size_t w = 0; w < workers; ++w) {
    jobs.push_back(std::async(std::launch::async, [&, w] {
      for (std::size_t i = w; i < count; i += workers) out[i] = fn(i);
    }));
  }
  for (auto& j : jobs) j.get();
  return out;
}

int cmd_check(const CheckOptions& o, std::ostream& out) {
  std::vector<ClosedCurve> curves;
  if (o.ensemble > 0) {
    curves = random_ensemble(o.ensemble, o.seed, o.max_mode, o.amplitude, o.modes);
  } else {
    std::string canonical;
    curves.push_back(resample_arclength(load_curve(o.curve, o.modes, o.seed, canonical), o.modes));
  }
  auto results = parallel_map(curves.size(), [&](std::size_t i) { return check_one(curves[i], o.ell, o.m); });
  if (o.inject != 0.0) {
    auto& r = results.front().reports.front();
    r.slack += o.inject;
    r.trivial = false;
  }

  std::size_t violations = 0;
  double gn_sup = 0.0;
  double thm2_sup = 0.0;
  for (std::size_t i = 0; i < results.size(); ++i) {
    for (const auto& r : results[i].reports) {
      json line = json::parse(to_json_line(r));
      line["curve"] = i;
      line["holds"] = r.holds();
      out << line.dump() << '\n';
      if (r.name == InequalityName::Thm1Lower || r.name == InequalityName::Thm1Upper) {
        if (!r.holds()) ++violations;
      } else if (r.name == InequalityName::GN) {
        gn_sup = std::max(gn_sup, r.ratio);
      } else {
        thm2_sup = std::max(thm2_sup, r.ratio);
      }
    }
  }
  out << json{{"summary",
               {{"curves", results.size()},
                {"thm1_violations", violations},
                {"gn_ratio_sup", gn_sup},
                {"thm2_ratio_sup", thm2_sup},
                {"ell", o.ell},
                {"m", o.m}}}}
             .dump()
      << '\n';
  return violations == 0 ? 0 : 2;
}

struct RatesOptions {
  int m = 1;
  int k_max = 4;
  double radius = 1.0;
  double eps = 1e-4;
};

int cmd_rates(const RatesOptions& o, std::ostream& out) {
  if (o.eps > 1e-3 * o.radius) {
    fail(ErrorKind::PerturbationTooLarge, "eps must not exceed 1e-3 * radius (linear regime)");
  }
  std::vector<int> ks;
  for (int k = 2; k <= o.k_max; ++k) ks.push_back(k);
  const auto measured = parallel_map(ks.size(), [&](std::size_t i) {
    return oracles::linearization_rate_check(o.m, ks[i], o.radius, o.eps);
  });
  out << "k,predicted,measured,rel_error,status\n";
  char buf[160];
  if (o.k_max >= 1) out << "1,0,,,neutral\n";
  bool ok = true;
  for (std::size_t i = 0; i < ks.size(); ++i) {
    const double pred = linearized_rate(o.m, ks[i], o.radius);
    const double rel = std::abs(measured[i] - pred) / pred;
    const bool pass = rel <= 0.02;
    ok = ok && pass;
    std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%.17g,%s\n", ks[i], pred, measured[i], rel, pass ? "ok" : "off");
    out << buf;
  }
  return ok ? 0 : 2;
}

struct PlotOptions {
  std::string trace;
  std::string snapshots;
  std::string out;
};

int cmd_plot(const PlotOptions& o, std::ostream& out) {
  const TraceTable table = read_trace_csv(o.trace);
  std::vector<ClosedCurve> snaps;
  if (!o.snapshots.empty()) snaps = read_snapshot_dir(o.snapshots);
  write_text(o.out, render_svg(table, snaps));
  out << "wrote " << o.out << '\n';
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Simulator for the H^{-m} gradient flow of length of closed plane curves", "curveflow"};
  app.require_subcommand(1);

  EvolveOptions ev;
  auto* evolve_cmd = app.add_subcommand("evolve", "run the flow and write trace, report and snapshots");
  evolve_cmd->add_option("--m", ev.m, "flow order m >= 0")->check(CLI::NonNegativeNumber);
  evolve_cmd->add_option("--curve", ev.curve, "curve file or preset:NAME(args)");
  evolve_cmd->add_option("--modes", ev.modes, "sample count N");
  evolve_cmd->add_option("--dt", ev.dt, "initial and maximal step");
  evolve_cmd->add_option("--t-max", ev.t_max, "final time");
  evolve_cmd->add_option("--stop-I0", ev.stop_I0, "stop once I_0 falls to this value (0 = never)");
  evolve_cmd->add_option("--ell-max", ev.ell_max, "highest I_l traced")->check(CLI::NonNegativeNumber);
  evolve_cmd->add_option("--record-every", ev.record_every, "trace cadence in t");
  evolve_cmd->add_option("--safety", ev.safety, "step acceptance safety factor in (0,1]");
  evolve_cmd->add_option("--blowup-kappa", ev.blowup_kappa, "curvature magnitude declaring breakdown");
  evolve_cmd->add_option("--out", ev.out, "output directory");
  evolve_cmd->add_option("--format", ev.format, "trace format")->check(CLI::IsMember({"csv", "json"}));
  evolve_cmd->add_option("--snapshots", ev.snapshots, "write the curve every K records (0 = none)");
  evolve_cmd->add_option("--seed", ev.seed, "seed for random presets");
  evolve_cmd->add_option("--config", ev.config, "take unset options from a report.json config echo");
  evolve_cmd->add_flag("--timing", ev.timing, "add wall-clock seconds to the report");

  CheckOptions ck;
  auto* check_cmd = app.add_subcommand("check", "evaluate the interpolation inequalities");
  auto* ck_curve = check_cmd->add_option("--curve", ck.curve, "curve file or preset:NAME(args)");
  auto* ck_ens = check_cmd->add_option("--ensemble", ck.ensemble, "number of random band-limited curves");
  ck_curve->excludes(ck_ens);
  check_cmd->add_option("--seed", ck.seed, "ensemble seed");
  check_cmd->add_option("--max-mode", ck.max_mode, "highest radial mode of ensemble curves");
  check_cmd->add_option("--amplitude", ck.amplitude, "amplitude bound of ensemble curves");
  check_cmd->add_option("--ell", ck.ell, "index l")->check(CLI::NonNegativeNumber);
  check_cmd->add_option("--m", ck.m, "index m")->check(CLI::NonNegativeNumber);
  check_cmd->add_option("--modes", ck.modes, "sample count N");
  check_cmd->add_option("--test-inject-slack", ck.inject)->group("");

  RatesOptions rt;
  auto* rates_cmd = app.add_subcommand("rates", "compare fitted and linearized mode decay rates");
  rates_cmd->add_option("--m", rt.m, "flow order")->check(CLI::NonNegativeNumber);
  rates_cmd->add_option("--k-max", rt.k_max, "highest mode")->check(CLI::PositiveNumber);
  rates_cmd->add_option("--radius", rt.radius, "circle radius")->check(CLI::PositiveNumber);
  rates_cmd->add_option("--eps", rt.eps, "perturbation amplitude")->check(CLI::PositiveNumber);

  PlotOptions pl;
  auto* plot_cmd = app.add_subcommand("plot", "render a trace (and snapshots) to SVG");
  plot_cmd->add_option("--trace", pl.trace, "trace CSV")->required();
  plot_cmd->add_option("--snapshots", pl.snapshots, "snapshot directory");
  plot_cmd->add_option("--out", pl.out, "output SVG")->required();

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (evolve_cmd->parsed()) {
      if (!ev.config.empty()) apply_config_file(ev, ev.config, *evolve_cmd);
      if (ev.m < 0) fail(ErrorKind::InvalidArgument, "--m must be >= 0");
      return cmd_evolve(ev, out, err);
    }
    if (check_cmd->parsed()) {
      if (ck.ensemble == 0 && ck.curve.empty()) fail(ErrorKind::InvalidArgument, "check needs --curve or --ensemble");
      return cmd_check(ck, out);
    }
    if (rates_cmd->parsed()) return cmd_rates(rt, out);
    if (plot_cmd->parsed()) return cmd_plot(pl, out);
  } catch (const CurveflowError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

int main_entry(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace curveflow::cli
