#pragma once

// Area metrics over the eavesdropper region S: the secrecy-improvement field
// Delta(Eve), Jamming Coverage, Jamming Efficiency and Weighted Secrecy
// Coverage (WSC), evaluated by midpoint quadrature on a Cartesian grid.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "uavjam/channel.hpp"
#include "uavjam/parallel.hpp"
#include "uavjam/scenario.hpp"
#include "uavjam/secrecy.hpp"
#include "uavjam/summation.hpp"

namespace uavjam {

struct FieldCell {
  GridCell cell;
  double delta = 0.0;
};

struct DeltaField {
  std::vector<FieldCell> cells;  // inside S, excluded cells removed
  std::uint64_t scenario_hash = 0;
  double step = 0.0;
  Scheme scheme = Scheme::Classical;
  std::size_t excluded = 0;  // inside S but within the Eve-exclusion radius
};

struct MetricReport {
  double coverage = 0.0;
  double efficiency = 0.0;
  double wsc = 0.0;
  double area_s = 0.0;
  Scheme scheme = Scheme::Classical;
  double step = 0.0;
  std::size_t cells = 0;
  std::size_t excluded = 0;
};

/// Reduces a stream of (delta, cell area) pairs into the three metrics.
/// Values must arrive in cell-index order.
class MetricAccumulator {
public:
  void add(double delta, double area) {
    area_.add(area);
    weighted_.add(delta * area);
    if (delta > 1.0) covered_.add(area);
  }

  MetricReport report(Scheme scheme, double step, std::size_t cells, std::size_t excluded) const {
    MetricReport r;
    r.area_s = area_.value();
    r.coverage = covered_.value();
    r.efficiency = r.area_s > 0.0 ? weighted_.value() / r.area_s : 0.0;
    r.wsc = r.coverage * r.efficiency;
    r.scheme = scheme;
    r.step = step;
    r.cells = cells;
    r.excluded = excluded;
    return r;
  }

private:
  CompensatedSum area_;
  CompensatedSum weighted_;
  CompensatedSum covered_;
};

/// Eve sites of a grid: the cells inside S that lie outside the exclusion
/// radius, together with the per-site ground-link terms that do not depend
/// on the jammers.
class EveSites {
public:
  EveSites(const Scenario& s, std::span<const GridCell> grid) : rs_(s.secrecy_rate_rs) {
    if (!(s.alice == Point2{0.0, 0.0}) || s.bob.y != 0.0) {
      throw std::invalid_argument("EveSites needs a normalized scenario (see validate_scenario)");
    }
    omega_ab_ = ground_rate(s.d_ab(), s.env.alpha);
    const double k = std::exp2(rs_);
    const double eps = s.eve_exclusion_radius();
    for (const GridCell& c : grid) {
      if (!c.inside_s) continue;
      if (distance(c.center, s.alice) < eps) {
        ++excluded_;
        continue;
      }
      cells_.push_back(c);
      const double omega_ae = ground_rate(distance(c.center, s.alice), s.env.alpha);
      kr_.push_back(k * (omega_ab_ / omega_ae));
    }
  }

  std::size_t size() const { return cells_.size(); }
  std::size_t excluded() const { return excluded_; }
  std::span<const GridCell> cells() const { return cells_; }
  double omega_ab() const { return omega_ab_; }
  double secrecy_rate() const { return rs_; }
  /// 2^R_S * Omega_AB / Omega_AE per site.
  std::span<const double> rate_ratio() const { return kr_; }

private:
  std::vector<GridCell> cells_;
  std::vector<double> kr_;
  std::size_t excluded_ = 0;
  double omega_ab_ = 1.0;
  double rs_ = 1.0;
};

/// A2G coefficients from jammers on a circle of fixed radius and height, for
/// a list of headings (jammer 1 convention), to Bob and to every Eve site.
class JammerLinkTable {
public:
  JammerLinkTable(const Scenario& s, const EveSites& sites, double radius, std::vector<double> headings,
                  unsigned workers = 1)
      : headings_(std::move(headings)), sites_(sites.size()) {
    const std::size_t nh = headings_.size();
    bob_.resize(nh);
    eve_.resize(nh * sites_);
    std::vector<Point3> pos(nh);
    for (std::size_t h = 0; h < nh; ++h) {
      const Point2 g = jammer_ground_point(s.alice, radius, headings_[h]);
      pos[h] = {g.x, g.y, s.jammers.height_zj};
      bob_[h] = a2g_link(pos[h], s.bob, s.env).coeff;
    }
    const auto cells = sites.cells();
    parallel_for(nh, workers, [&](std::size_t h) {
      double* row = eve_.data() + h * sites_;
      for (std::size_t i = 0; i < sites_; ++i) row[i] = a2g_link(pos[h], cells[i].center, s.env).coeff;
    });
  }

  std::size_t headings() const { return headings_.size(); }
  double heading(std::size_t h) const { return headings_[h]; }
  double bob(std::size_t h) const { return bob_[h]; }
  std::span<const double> eve(std::size_t h) const { return {eve_.data() + h * sites_, sites_}; }

private:
  std::vector<double> headings_;
  std::size_t sites_;
  std::vector<double> bob_;
  std::vector<double> eve_;
};

/// Evaluates Delta at every Eve site for one jammer pair and hands
/// (site index, delta) to `sink` in index order. This is the single code path
/// behind every field and metric value.
template <class Sink>
void for_each_delta(const EveSites& sites, const JammerLinkTable& table, std::size_t h1, std::size_t h2,
                    Scheme scheme, const PowerBudget& power, Sink&& sink) {
  const auto kr = sites.rate_ratio();
  const auto e1 = table.eve(h1);
  const auto e2 = table.eve(h2);
  const double b1 = table.bob(h1);
  const double b2 = table.bob(h2);
  const std::size_t n = sites.size();
  if (scheme == Scheme::Classical) {
    const double g1 = power.gamma_j1;
    const double g2 = power.gamma_j2;
    const double bob_load = 1.0 + (b1 * b1) * g1 + (b2 * b2) * g2;
    const double bob_factor = delta_bob_factor(power.gamma_a, bob_load, sites.omega_ab(), sites.secrecy_rate());
    for (std::size_t i = 0; i < n; ++i) {
      const double eve_load = 1.0 + (e1[i] * e1[i]) * g1 + (e2[i] * e2[i]) * g2;
      sink(i, bob_factor * delta_eve_factor(kr[i], bob_load, eve_load));
    }
  } else {
    const double pj = zf_jammer_power(power);
    for (std::size_t i = 0; i < n; ++i) {
      const double h_int = interference_coeff(e1[i], e2[i], b1, b2);
      const double eve_load = 1.0 + (h_int * h_int) * pj;
      sink(i, delta_eve_factor(kr[i], 1.0, eve_load));
    }
  }
}

/// Coverage, Efficiency and WSC for one jammer pair, without materializing
/// the field.
inline MetricReport pair_metrics(const EveSites& sites, const JammerLinkTable& table, std::size_t h1,
                                 std::size_t h2, Scheme scheme, const PowerBudget& power, double step) {
  const auto cells = sites.cells();
  MetricAccumulator acc;
  for_each_delta(sites, table, h1, h2, scheme, power,
                 [&](std::size_t i, double delta) { acc.add(delta, cells[i].area); });
  return acc.report(scheme, step, sites.size(), sites.excluded());
}

namespace detail {

inline double grid_step_of(std::span<const GridCell> grid) {
  return grid.empty() ? 0.0 : std::sqrt(grid.front().area);
}

}  // namespace detail

/// Delta at the center of every grid cell inside S, with Eve at the cell
/// center and the scenario's scheme. `s` must be normalized and the grid
/// built over s.area.
inline DeltaField delta_field(const Scenario& s, std::span<const GridCell> grid, unsigned workers = 1) {
  const EveSites sites(s, grid);
  const JammerLinkTable table(s, sites, s.jammers.radius_rj,
                              {jammer_heading(s.jammers, 1), jammer_heading(s.jammers, 2)}, workers);
  DeltaField field;
  field.scenario_hash = scenario_hash(s);
  field.step = detail::grid_step_of(grid);
  field.scheme = s.scheme;
  field.excluded = sites.excluded();
  field.cells.resize(sites.size());
  const auto cells = sites.cells();
  for_each_delta(sites, table, 0, 1, s.scheme, s.power,
                 [&](std::size_t i, double delta) { field.cells[i] = {cells[i], delta}; });
  return field;
}

inline double coverage(const DeltaField& field) {
  CompensatedSum covered;
  for (const FieldCell& c : field.cells) {
    if (c.delta > 1.0) covered.add(c.cell.area);
  }
  return covered.value();
}

inline double field_area(const DeltaField& field) {
  CompensatedSum area;
  for (const FieldCell& c : field.cells) area.add(c.cell.area);
  return area.value();
}

inline double efficiency(const DeltaField& field) {
  CompensatedSum weighted;
  for (const FieldCell& c : field.cells) weighted.add(c.delta * c.cell.area);
  const double area = field_area(field);
  return area > 0.0 ? weighted.value() / area : 0.0;
}

/// Full metric report; WSC = Coverage x Efficiency.
inline MetricReport wsc(const DeltaField& field) {
  MetricAccumulator acc;
  for (const FieldCell& c : field.cells) acc.add(c.delta, c.cell.area);
  return acc.report(field.scheme, field.step, field.cells.size(), field.excluded);
}

/// Metrics for a normalized scenario on a fresh grid of the given step.
inline MetricReport evaluate_metrics(const Scenario& s, double step, unsigned workers = 1) {
  const auto grid = make_grid(s.area, step);
  return wsc(delta_field(s, grid, workers));
}

}  // namespace uavjam
