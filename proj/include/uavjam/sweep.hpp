#pragma once

// Parameter studies: metrics versus jammer radius at fixed angle
// configurations, exhaustive angle search, and power-allocation sweeps at a
// fixed total transmit SNR.

#include <cmath>
#include <cstddef>
#include <limits>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "uavjam/area_metrics.hpp"
#include "uavjam/parallel.hpp"
#include "uavjam/scenario.hpp"

namespace uavjam {

/// A fixed jammer arrangement. The labels are headings measured the same way
/// for both jammers (0 = behind Alice, 180 = toward Bob), so (45, -45) is a
/// mirror pair about the Alice-Bob axis.
struct AngleConfig {
  int id = 0;  // 1..4, 0 for a free pair
  double heading1 = 0.0;
  double heading2 = 0.0;

  /// Scenario-convention angles (jammer 2 opens counterclockwise).
  double theta1() const { return wrap_degrees(heading1); }
  double theta2() const { return wrap_degrees(-heading2); }
};

inline std::vector<AngleConfig> reference_angle_configs() {
  return {{1, 45.0, -45.0}, {2, 90.0, -90.0}, {3, 135.0, -135.0}, {4, 0.0, 180.0}};
}

enum class Objective { WSC, Efficiency, Coverage };

inline const char* to_string(Objective o) {
  switch (o) {
    case Objective::WSC: return "wsc";
    case Objective::Efficiency: return "efficiency";
    case Objective::Coverage: return "coverage";
  }
  return "wsc";
}

inline Objective objective_from_string(const std::string& s) {
  if (s == "wsc") return Objective::WSC;
  if (s == "efficiency") return Objective::Efficiency;
  if (s == "coverage") return Objective::Coverage;
  throw ValidationError("unknown objective '" + s + "' (expected wsc, efficiency or coverage)");
}

inline double objective_value(const MetricReport& m, Objective o) {
  switch (o) {
    case Objective::WSC: return m.wsc;
    case Objective::Efficiency: return m.efficiency;
    case Objective::Coverage: return m.coverage;
  }
  return m.wsc;
}

struct SweepRow {
  Scheme scheme = Scheme::Classical;
  int config = 0;
  double rj = 0.0;
  double theta1 = 0.0;  // scenario convention
  double theta2 = 0.0;
  double gamma_a = 0.0;
  double gamma_j = 0.0;  // gamma_j1 + gamma_j2
  std::optional<double> ratio;
  MetricReport metrics;
  double angle_step = 0.0;  // 0 for fixed configurations
};

struct OptimumRecord {
  Scheme scheme = Scheme::Classical;
  double rj = 0.0;
  std::optional<double> ratio;
  double theta1_star = 0.0;
  double theta2_star = 0.0;
  Objective objective = Objective::WSC;
  double value = 0.0;
  double angle_step = 0.0;
};

struct Optimum {
  OptimumRecord record;
  SweepRow row;
};

/// Candidate angles (-180, 180] for a step that divides 360.
inline std::vector<double> angle_grid(double angle_step) {
  if (!(angle_step > 0.0) || angle_step > 360.0) throw ValidationError("angle step must lie in (0, 360]");
  const double count = 360.0 / angle_step;
  const double n = std::round(count);
  if (std::abs(count - n) > 1e-9 * n) throw ValidationError("angle step must divide 360");
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n));
  for (std::size_t k = 1; k <= static_cast<std::size_t>(n); ++k) {
    out.push_back(-180.0 + static_cast<double>(k) * angle_step);
  }
  return out;
}

inline SweepRow make_row(Scheme scheme, double rj, double theta1, double theta2, const PowerBudget& power,
                         const MetricReport& m) {
  SweepRow r;
  r.scheme = scheme;
  r.rj = rj;
  r.theta1 = theta1;
  r.theta2 = theta2;
  r.gamma_a = power.gamma_a;
  r.gamma_j = power.gamma_j1 + power.gamma_j2;
  r.metrics = m;
  return r;
}

/// Shared state for sweeps over one base scenario: the Eve sites on a fixed
/// grid and the most recent heading table.
class SweepContext {
public:
  SweepContext(const Scenario& base, double grid_step, unsigned workers = 1)
      : base_(validate_scenario(base)),
        step_(grid_step),
        workers_(workers),
        grid_(make_grid(base_.area, grid_step)),
        sites_(base_, grid_) {}

  const Scenario& base() const { return base_; }
  double grid_step() const { return step_; }
  unsigned workers() const { return workers_; }
  const EveSites& sites() const { return sites_; }

  /// Metrics at one explicit placement (scenario-convention angles).
  MetricReport evaluate(double rj, double theta1, double theta2, Scheme scheme, const PowerBudget& power) const {
    JammerPlacement jp = base_.jammers;
    jp.radius_rj = rj;
    jp.theta1 = theta1;
    jp.theta2 = theta2;
    const JammerLinkTable table(base_, sites_, rj, {jammer_heading(jp, 1), jammer_heading(jp, 2)}, workers_);
    return pair_metrics(sites_, table, 0, 1, scheme, power, step_);
  }

  /// Exhaustive search over (theta1, theta2) on the angle grid. The maximum
  /// wins; ties go to the lexicographically smallest pair.
  Optimum optimize(double rj, Scheme scheme, const PowerBudget& power, Objective objective, double angle_step) {
    const std::vector<double> angles = angle_grid(angle_step);
    const JammerLinkTable& table = heading_table(rj, angle_step);
    const std::size_t n = angles.size();
    // Heading index of jammer 2 for scenario angle theta2 = angles[k].
    std::vector<std::size_t> mirror(n);
    for (std::size_t k = 0; k < n; ++k) mirror[k] = (2 * n - 2 - k) % n;

    std::vector<MetricReport> results(n * n);
    parallel_for(n * n, workers_, [&](std::size_t idx) {
      const std::size_t i = idx / n;
      const std::size_t j = idx % n;
      results[idx] = pair_metrics(sites_, table, i, mirror[j], scheme, power, step_);
    });

    std::size_t best = 0;
    double best_value = -std::numeric_limits<double>::infinity();
    for (std::size_t idx = 0; idx < results.size(); ++idx) {
      const double v = objective_value(results[idx], objective);
      if (v > best_value) {
        best_value = v;
        best = idx;
      }
    }
    Optimum out;
    out.record.scheme = scheme;
    out.record.rj = rj;
    out.record.theta1_star = angles[best / n];
    out.record.theta2_star = angles[best % n];
    out.record.objective = objective;
    out.record.value = best_value;
    out.record.angle_step = angle_step;
    out.row = make_row(scheme, rj, out.record.theta1_star, out.record.theta2_star, power, results[best]);
    out.row.angle_step = angle_step;
    last_scan_ = std::move(results);
    return out;
  }

  /// Metrics of every pair from the most recent optimize() call, row-major
  /// over (theta1, theta2) on the angle grid.
  const std::vector<MetricReport>& last_scan() const { return last_scan_; }

private:
  const JammerLinkTable& heading_table(double rj, double angle_step) {
    if (!table_ || table_rj_ != rj || table_step_ != angle_step) {
      table_.reset();
      table_ = std::make_unique<JammerLinkTable>(base_, sites_, rj, angle_grid(angle_step), workers_);
      table_rj_ = rj;
      table_step_ = angle_step;
    }
    return *table_;
  }

  Scenario base_;
  double step_;
  unsigned workers_;
  std::vector<GridCell> grid_;
  EveSites sites_;
  std::unique_ptr<JammerLinkTable> table_;
  double table_rj_ = 0.0;
  double table_step_ = 0.0;
  std::vector<MetricReport> last_scan_;
};

inline constexpr Scheme kBothSchemes[] = {Scheme::Classical, Scheme::ZeroForcing};

/// Both schemes at every (rj, configuration), in that nesting order.
inline std::vector<SweepRow> sweep_radius(SweepContext& ctx, const std::vector<double>& rj_values,
                                          const std::vector<AngleConfig>& configs) {
  std::vector<SweepRow> rows;
  const PowerBudget power = ctx.base().power;
  for (double rj : rj_values) {
    if (!(rj > 0.0)) throw ValidationError("radius sweep values must be > 0");
    for (const AngleConfig& cfg : configs) {
      for (Scheme scheme : kBothSchemes) {
        const MetricReport m = ctx.evaluate(rj, cfg.theta1(), cfg.theta2(), scheme, power);
        SweepRow row = make_row(scheme, rj, cfg.theta1(), cfg.theta2(), power, m);
        row.config = cfg.id;
        rows.push_back(row);
      }
    }
  }
  return rows;
}

inline Optimum optimize_angles(SweepContext& ctx, double rj, Scheme scheme, Objective objective,
                               double angle_step) {
  return ctx.optimize(rj, scheme, ctx.base().power, objective, angle_step);
}

/// Angle optimum for both schemes at every radius.
inline std::vector<Optimum> sweep_angles(SweepContext& ctx, const std::vector<double>& rj_values,
                                         Objective objective, double angle_step) {
  std::vector<Optimum> out;
  for (double rj : rj_values) {
    if (!(rj > 0.0)) throw ValidationError("radius sweep values must be > 0");
    for (Scheme scheme : kBothSchemes) out.push_back(optimize_angles(ctx, rj, scheme, objective, angle_step));
  }
  return out;
}

/// For each radius and ratio rho = gamma_A / gamma_J the total budget is
/// split as gamma_J = total / (1 + rho), gamma_A = total rho / (1 + rho) and
/// the angles are re-optimized for both schemes.
inline std::vector<Optimum> sweep_power(SweepContext& ctx, double gamma_total, const std::vector<double>& ratios,
                                        const std::vector<double>& rj_values, Objective objective,
                                        double angle_step) {
  if (!(gamma_total > 0.0)) throw ValidationError("gamma_total must be > 0");
  std::vector<Optimum> out;
  for (double rj : rj_values) {
    if (!(rj > 0.0)) throw ValidationError("radius sweep values must be > 0");
    for (double rho : ratios) {
      const PowerBudget power = PowerBudget::from_ratio(gamma_total, rho);
      for (Scheme scheme : kBothSchemes) {
        Optimum o = ctx.optimize(rj, scheme, power, objective, angle_step);
        o.record.ratio = rho;
        o.row.ratio = rho;
        out.push_back(o);
      }
    }
  }
  return out;
}

}  // namespace uavjam
