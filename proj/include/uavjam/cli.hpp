#pragma once

// Command-line front end. The only component that touches the filesystem.
//
//   uavjam metrics  --config FILE [--out DIR] [--scheme classical|zf] [--grid-step F] [--workers N]
//   uavjam sweep radius|angles|power --config FILE [...] [--angle-step F]
//   uavjam validate --config FILE [--seed N] [--trials N] [--draws N]
//
// Exit codes: 0 ok, 1 usage, 2 validation failure, 3 oracle inconclusive.

#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "uavjam/area_metrics.hpp"
#include "uavjam/config_io.hpp"
#include "uavjam/mc_oracle.hpp"
#include "uavjam/scenario.hpp"
#include "uavjam/sweep.hpp"

namespace uavjam::cli {

inline constexpr const char* kToolVersion = "0.1.0";

enum ExitCode : int { kOk = 0, kUsage = 1, kValidationFailure = 2, kOracleInconclusive = 3 };

struct Options {
  std::string command;
  std::string kind;  // sweep kind
  std::string config;
  std::string out = ".";
  std::optional<std::string> scheme;
  std::optional<double> grid_step;
  double angle_step = 5.0;
  std::uint64_t seed = 1;
  std::uint64_t trials = 100000;
  std::size_t draws = 100;
  unsigned workers = 1;
  std::vector<double> rj_values;
  std::vector<double> ratios;
};

/// Reproduction record written next to every set of outputs.
struct RunManifest {
  Options opts;
  double grid_step = 0.0;
  std::uint64_t scenario_hash = 0;
  std::vector<std::string> outputs;
  json scenario;
};

namespace detail {

inline std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

inline void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write '" + path.string() + "'");
  f << content;
}

inline void write_manifest(const std::filesystem::path& dir, const RunManifest& m) {
  json j;
  j["command"] = m.opts.kind.empty() ? m.opts.command : m.opts.command + " " + m.opts.kind;
  j["scenario_file"] = m.opts.config;
  j["output_dir"] = m.opts.out;
  j["grid_step"] = m.grid_step;
  j["angle_step"] = m.opts.angle_step;
  j["seed"] = m.opts.seed;
  j["trials"] = m.opts.trials;
  j["workers"] = m.opts.workers;
  j["scheme_override"] = m.opts.scheme ? json(*m.opts.scheme) : json(nullptr);
  j["scenario_hash"] = m.scenario_hash;
  j["scenario"] = m.scenario;
  j["outputs"] = m.outputs;
  j["timestamp"] = utc_timestamp();
  j["tool_version"] = kToolVersion;
  write_file(dir / "manifest.json", j.dump(2) + "\n");
}

inline Config load(const Options& o) {
  Config c = load_config(o.config);
  if (o.scheme) {
    c.scenario.scheme = scheme_from_string(*o.scheme);
    c.scenario = validate_scenario(c.scenario);
  }
  if (!o.rj_values.empty()) {
    c.sweep.rj_values = o.rj_values;
    c.sweep.power_rj_values = o.rj_values;
  }
  if (!o.ratios.empty()) c.sweep.ratios = o.ratios;
  return c;
}

inline double grid_step_for(const Options& o, const Scenario& s) {
  return o.grid_step ? *o.grid_step : default_grid_step(s);
}

struct PlotSpec {
  std::string file;
  int xcol = 1;
  int first = 2;
  int last = 2;
};

inline std::string gnuplot_script(const std::vector<PlotSpec>& plots) {
  std::string out = "# gnuplot -persist plots.gp\nset key outside\n";
  for (const PlotSpec& p : plots) {
    out += "set title '" + p.file + "'\nplot for [c=" + std::to_string(p.first) + ":" + std::to_string(p.last) +
           "] '" + p.file + "' using " + std::to_string(p.xcol) +
           ":c with linespoints title sprintf('column %d', c)\npause -1\n";
  }
  return out;
}

}  // namespace detail

inline int cmd_metrics(const Options& o, std::ostream& out) {
  const Config cfg = detail::load(o);
  const Scenario& s = cfg.scenario;
  const double step = detail::grid_step_for(o, s);
  const auto grid = make_grid(s.area, step);
  const DeltaField field = delta_field(s, grid, o.workers);
  const MetricReport report = wsc(field);

  const std::filesystem::path dir(o.out);
  std::filesystem::create_directories(dir);
  detail::write_file(dir / "delta_field.csv", delta_field_csv(field));
  detail::write_file(dir / "metrics.csv", std::string(kMetricsHeader) + metrics_csv_row(s, report));
  detail::write_manifest(dir, {o, step, field.scenario_hash, {"delta_field.csv", "metrics.csv"}, scenario_to_json(s)});

  out << "scheme " << to_string(report.scheme) << "  step " << fmt9(step) << "  |S| " << fmt9(report.area_s)
      << "\ncoverage " << fmt9(report.coverage) << "  efficiency " << fmt9(report.efficiency) << "  wsc "
      << fmt9(report.wsc) << "\n";
  if (field.excluded > 0) out << field.excluded << " cell(s) excluded around alice\n";
  return kOk;
}

inline int cmd_sweep(const Options& o, std::ostream& out) {
  const Config cfg = detail::load(o);
  const Scenario& s = cfg.scenario;
  const double step = detail::grid_step_for(o, s);
  const std::filesystem::path dir(o.out);
  std::filesystem::create_directories(dir);
  std::vector<std::string> files;
  std::vector<detail::PlotSpec> plots;

  if (o.kind == "radius") {
    SweepContext ctx(s, step, o.workers);
    const auto rows = sweep_radius(ctx, cfg.sweep.rj_values, reference_angle_configs());
    detail::write_file(dir / "sweep_radius.csv", sweep_radius_csv(rows));
    detail::write_file(dir / "fig2.dat", radius_figure_dat(rows, false));
    detail::write_file(dir / "fig3.dat", radius_figure_dat(rows, true));
    files = {"sweep_radius.csv", "fig2.dat", "fig3.dat"};
    plots = {{"fig2.dat", 1, 2, 9}, {"fig3.dat", 1, 2, 9}};
    out << "radius sweep: " << rows.size() << " rows\n";
  } else if (o.kind == "angles") {
    SweepContext ctx(s, step, o.workers);
    const auto opts = sweep_angles(ctx, cfg.sweep.rj_values, cfg.sweep.objective, o.angle_step);
    detail::write_file(dir / "optimize_angles.csv", optimum_csv(opts));
    detail::write_file(dir / "fig4.dat", angles_figure_dat(opts, false));
    detail::write_file(dir / "fig5.dat", angles_figure_dat(opts, true));
    files = {"optimize_angles.csv", "fig4.dat", "fig5.dat"};
    plots = {{"fig4.dat", 1, 2, 3}, {"fig5.dat", 1, 2, 5}};
    out << "angle optimization: " << opts.size() << " optima\n";
  } else if (o.kind == "power") {
    const double total = cfg.sweep.gamma_total ? *cfg.sweep.gamma_total : s.power.gamma_total.value_or(20.0);
    SweepContext ctx(s, step, o.workers);
    const auto opts =
        sweep_power(ctx, total, cfg.sweep.ratios, cfg.sweep.power_rj_values, cfg.sweep.objective, o.angle_step);
    detail::write_file(dir / "sweep_power.csv", optimum_csv(opts));
    detail::write_file(dir / "fig6.dat", power_figure_dat(opts, PowerFigure::Coverage));
    detail::write_file(dir / "fig7.dat", power_figure_dat(opts, PowerFigure::Angles));
    detail::write_file(dir / "fig8.dat", power_figure_dat(opts, PowerFigure::Efficiency));
    files = {"sweep_power.csv", "fig6.dat", "fig7.dat", "fig8.dat"};
    plots = {{"fig6.dat", 2, 3, 4}, {"fig7.dat", 2, 3, 6}, {"fig8.dat", 2, 3, 4}};
    out << "power sweep (gamma_T = " << fmt9(total) << "): " << opts.size() << " optima\n";
  } else {
    throw CLI::ValidationError("sweep kind", "unknown sweep kind '" + o.kind + "' (radius, angles, power)");
  }
  detail::write_file(dir / "plots.gp", detail::gnuplot_script(plots));
  files.push_back("plots.gp");
  detail::write_manifest(dir, {o, step, scenario_hash(s), files, scenario_to_json(s)});
  return kOk;
}

/// Eve positions probed by the validation checks, in the normalized frame.
inline std::vector<Point2> validation_eve_positions(const Scenario& s) {
  const double d = s.d_ab();
  return {{1.5 * d, 0.25 * d}, {-0.5 * d, 0.5 * d}, {0.5 * d, -d}};
}

inline int cmd_validate(const Options& o, std::ostream& out, std::ostream& err) {
  const Config cfg = detail::load(o);
  const Scenario& base = cfg.scenario;
  if (o.trials < 10000) {
    err << "warning: " << o.trials << " trials give a binomial stderr too large for meaningful checks"
        << " (>= 10000 recommended)\n";
  }
  McConfig mc;
  mc.trials = o.trials;
  mc.seed = o.seed;
  mc.workers = o.workers;

  std::string csv = "check,scheme,eve_x,eve_y,expected,observed,tolerance,pass\n";
  bool all_ok = true;
  auto record = [&](const std::string& check, Scheme sc, Point2 eve, double expected, double observed, double tol,
                    bool pass) {
    csv += check + ',' + to_string(sc) + ',' + fmt9(eve.x) + ',' + fmt9(eve.y) + ',' + fmt9(expected) + ',' +
           fmt9(observed) + ',' + fmt9(tol) + ',' + (pass ? "1" : "0") + '\n';
    out << (pass ? "PASS " : "FAIL ") << check << " [" << to_string(sc) << "] eve=(" << fmt9(eve.x) << ","
        << fmt9(eve.y) << ") expected " << fmt9(expected) << " observed " << fmt9(observed) << " tol " << fmt9(tol)
        << "\n";
    all_ok = all_ok && pass;
  };

  const auto eves = validation_eve_positions(base);
  std::uint64_t stream = 0;
  for (Scheme sc : kBothSchemes) {
    Scenario s = base;
    s.scheme = sc;
    if (sc == Scheme::ZeroForcing && s.power.gamma_j1 != s.power.gamma_j2) {
      const double g = 0.5 * (s.power.gamma_j1 + s.power.gamma_j2);
      s.power.gamma_j1 = s.power.gamma_j2 = g;
    }
    if (!(s.power.gamma_a > 0.0)) {
      err << "warning: gamma_a = 0, closed-form SOP checks skipped\n";
      break;
    }
    for (Point2 eve : eves) {
      const ChannelSet ch = channel_set(s, eve);
      const SnrCoefficients c = snr_coefficients(sc, ch, s.power);
      const double closed = sop_closed_form(c.a_j, c.b_j, ch.ab.omega, ch.ae.omega, s.secrecy_rate_rs);
      const McResult mr = simulate_sop(s, eve, mc, stream++);
      const double tol = std::max(3.0 * mr.stderr_, 1e-3);
      record("sop_closed_form", sc, eve, closed, mr.empirical_sop, tol, std::abs(mr.empirical_sop - closed) <= tol);
    }
  }

  {
    Scenario s = base;
    s.scheme = Scheme::ZeroForcing;
    if (s.power.gamma_j1 != s.power.gamma_j2) s.power.gamma_j1 = s.power.gamma_j2 = 0.5 * (s.power.gamma_j1 + s.power.gamma_j2);
    McConfig sig = mc;
    sig.symbol_blocks = 64;
    for (Point2 eve : eves) {
      const ZfSignalReport r = simulate_zf_signals(s, eve, sig);
      const ChannelSet ch = channel_set(s, eve);
      const double scale = r.p_j * ch.j1b.gain * ch.j2b.gain;
      const double bob_ratio = scale > 0.0 ? r.bob_jam_power / scale : r.bob_jam_power;
      record("zf_bob_cancellation", Scheme::ZeroForcing, eve, 0.0, bob_ratio, 1e-12, bob_ratio < 1e-12);
      const double expect = r.g_int * r.p_j;
      const double tol = 3.0 * r.eve_jam_stderr;
      record("zf_eve_jamming_power", Scheme::ZeroForcing, eve, expect, r.eve_jam_power, tol,
             std::abs(r.eve_jam_power - expect) <= tol || (expect == 0.0 && r.eve_jam_power < 1e-20));
    }
  }

  const std::filesystem::path dir(o.out);
  std::filesystem::create_directories(dir);
  int code = all_ok ? kOk : kValidationFailure;
  std::string verdict_line;
  std::string sign_csv = "draw,a_nj,b_nj,a_j,b_j,omega_ab,omega_ae,rs,empirical,stderr,derived,printed,derived_fits,printed_fits\n";
  try {
    const SignVerdict v = resolve_delta_sign(o.draws, mc);
    for (std::size_t i = 0; i < v.draws.size(); ++i) {
      const SignDraw& d = v.draws[i];
      sign_csv += std::to_string(i) + ',' + fmt9(d.coeffs.a_nj) + ',' + fmt9(d.coeffs.b_nj) + ',' + fmt9(d.coeffs.a_j) +
                  ',' + fmt9(d.coeffs.b_j) + ',' + fmt9(d.omega_ab) + ',' + fmt9(d.omega_ae) + ',' + fmt9(d.rs) + ',' +
                  fmt9(d.empirical_delta) + ',' + fmt9(d.delta_stderr) + ',' + fmt9(d.derived) + ',' + fmt9(d.printed) +
                  ',' + (d.derived_fits ? "1" : "0") + ',' + (d.printed_fits ? "1" : "0") + '\n';
    }
    verdict_line = std::string("verdict ") + to_string(v.verdict) + " (derived fits " + std::to_string(v.derived_fits) +
                   "/" + std::to_string(v.applicable) + ", printed fits " + std::to_string(v.printed_fits) + "/" +
                   std::to_string(v.applicable) + ")";
    const bool ok = v.verdict == ExponentSign::Derived;
    csv += std::string("delta_sign,classical,,,derived_sign,") + to_string(v.verdict) + ",," + (ok ? "1" : "0") + '\n';
    if (!ok) code = kValidationFailure;
  } catch (const OracleInconclusiveError& e) {
    verdict_line = std::string("verdict inconclusive: ") + e.what();
    csv += "delta_sign,classical,,,derived_sign,inconclusive,,0\n";
    code = kOracleInconclusive;
  }
  out << verdict_line << "\n";
  detail::write_file(dir / "validation.csv", csv);
  detail::write_file(dir / "delta_sign.csv", sign_csv);
  detail::write_manifest(dir, {o, detail::grid_step_for(o, base), scenario_hash(base), {"validation.csv", "delta_sign.csv"},
                               scenario_to_json(base)});
  out << (code == kOk ? "all checks passed" : "some checks FAILED") << "\n";
  return code;
}

/// Parses arguments and dispatches. Never throws; returns the exit code.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"UAV cooperative-jamming secrecy-area simulator", "uavjam"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);
  Options o;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", o.config, "scenario JSON file")->required();
    sub->add_option("--out", o.out, "output directory");
    sub->add_option("--scheme", o.scheme, "scheme override")->check(CLI::IsMember({"classical", "zf"}));
    sub->add_option("--grid-step", o.grid_step, "quadrature grid step (default d_AB/100)")->check(CLI::PositiveNumber);
    sub->add_option("--angle-step", o.angle_step, "angle search resolution in degrees")->check(CLI::PositiveNumber);
    sub->add_option("--seed", o.seed, "Monte Carlo seed");
    sub->add_option("--trials", o.trials, "Monte Carlo trials per run")->check(CLI::PositiveNumber);
    sub->add_option("--workers", o.workers, "worker threads")->check(CLI::Range(1u, 256u));
  };

  CLI::App* metrics = app.add_subcommand("metrics", "Delta field and Coverage/Efficiency/WSC for one scenario");
  add_common(metrics);
  CLI::App* sweep = app.add_subcommand("sweep", "parameter sweeps: radius, angles or power");
  sweep->add_option("kind", o.kind, "radius | angles | power")->required();
  sweep->add_option("--rj", o.rj_values, "radius values (overrides config)");
  sweep->add_option("--ratios", o.ratios, "gamma_A/gamma_J ratios (power sweep)");
  add_common(sweep);
  CLI::App* validate = app.add_subcommand("validate", "closed forms vs Monte Carlo oracle");
  validate->add_option("--draws", o.draws, "parameter draws for the exponent-sign check")->check(CLI::PositiveNumber);
  add_common(validate);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (metrics->parsed()) {
      o.command = "metrics";
      return cmd_metrics(o, out);
    }
    if (sweep->parsed()) {
      o.command = "sweep";
      if (o.kind != "radius" && o.kind != "angles" && o.kind != "power") {
        err << "error: unknown sweep kind '" << o.kind << "' (expected radius, angles or power)\n";
        return kUsage;
      }
      return cmd_sweep(o, out);
    }
    o.command = "validate";
    return cmd_validate(o, out, err);
  } catch (const ValidationError& e) {
    err << "validation error: " << e.what() << "\n";
    return kValidationFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kValidationFailure;
  }
}

}  // namespace uavjam::cli
