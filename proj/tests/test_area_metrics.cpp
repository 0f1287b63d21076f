#include <catch_amalgamated.hpp>

#include <cmath>
#include <map>
#include <utility>

#include "uavjam/area_metrics.hpp"

using namespace uavjam;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

Scenario with(Scheme scheme, double theta1, double theta2, double rj = 5.0) {
  Scenario s;
  s.scheme = scheme;
  s.jammers.theta1 = theta1;
  s.jammers.theta2 = theta2;
  s.jammers.radius_rj = rj;
  return validate_scenario(s);
}

}  // namespace

TEST_CASE("compensated sum recovers cancelled small terms") {
  CompensatedSum s;
  s.add(1.0);
  s.add(1e100);
  s.add(1.0);
  s.add(-1e100);
  CHECK(s.value() == 2.0);
  CompensatedSum t;
  for (int i = 0; i < 1000000; ++i) t.add(0.1);
  CHECK_THAT(t.value(), WithinRel(100000.0, 1e-15));
}

TEST_CASE("field values equal the per-point improvement") {
  for (Scheme sc : {Scheme::Classical, Scheme::ZeroForcing}) {
    const Scenario s = with(sc, 30.0, 150.0, 7.0);
    const auto grid = make_grid(s.area, 2.0);
    const DeltaField field = delta_field(s, grid);
    REQUIRE(!field.cells.empty());
    CHECK(field.scheme == sc);
    CHECK(field.scenario_hash == scenario_hash(s));
    for (std::size_t i = 0; i < field.cells.size(); i += 7) {
      const FieldCell& c = field.cells[i];
      const ChannelSet ch = channel_set(s, c.cell.center);
      const SnrCoefficients co = snr_coefficients(sc, ch, s.power);
      CHECK_THAT(c.delta, WithinRel(secrecy_improvement(co, ch.omega_ab(), ch.omega_ae(), s.secrecy_rate_rs), 1e-12));
      CHECK(c.delta >= 0.0);
      CHECK(s.area.contains(c.cell.center));
    }
  }
}

TEST_CASE("metrics follow their definitions on the field") {
  const Scenario s = with(Scheme::Classical, 0.0, 0.0, 3.0);
  const auto grid = make_grid(s.area, 1.0);
  const DeltaField field = delta_field(s, grid);
  const MetricReport m = wsc(field);
  double cov = 0.0, area = 0.0, weighted = 0.0;
  for (const FieldCell& c : field.cells) {
    area += c.cell.area;
    weighted += c.delta * c.cell.area;
    if (c.delta > 1.0) cov += c.cell.area;
  }
  CHECK_THAT(m.coverage, WithinRel(cov, 1e-12));
  CHECK_THAT(m.area_s, WithinRel(area, 1e-12));
  CHECK_THAT(m.efficiency, WithinRel(weighted / area, 1e-12));
  CHECK_THAT(m.wsc, WithinRel(m.coverage * m.efficiency, 1e-15));
  CHECK(m.coverage == coverage(field));
  CHECK(m.area_s == field_area(field));
  CHECK(m.efficiency == efficiency(field));
  CHECK(m.coverage >= 0.0);
  CHECK(m.coverage <= m.area_s);
  CHECK(m.cells == field.cells.size());
  const MetricReport e = evaluate_metrics(s, 1.0);
  CHECK(e.wsc == m.wsc);
}

TEST_CASE("coverage counts strictly improved cells only") {
  Scenario s = with(Scheme::Classical, 0.0, 180.0);
  s.power.gamma_j1 = s.power.gamma_j2 = 0.0;
  const MetricReport m = evaluate_metrics(s, 1.0);
  CHECK(m.coverage == 0.0);
  CHECK(m.wsc == 0.0);
  CHECK_THAT(m.efficiency, WithinRel(1.0, 1e-14));
}

TEST_CASE("zero-forcing covers every cell of S") {
  for (double rj : {2.0, 9.0, 17.0}) {
    const Scenario s = with(Scheme::ZeroForcing, 45.0, 120.0, rj);
    const DeltaField f = delta_field(s, make_grid(s.area, 0.5));
    const MetricReport m = wsc(f);
    CHECK(m.efficiency >= 1.0);
    for (const FieldCell& c : f.cells) CHECK(c.delta >= 1.0);
    CHECK(m.coverage <= m.area_s);
    CHECK(m.area_s - m.coverage <= 0.25 + 1e-12);
  }
}

TEST_CASE("mirror jammer pair gives a field symmetric about the Alice-Bob axis") {
  for (Scheme sc : {Scheme::Classical, Scheme::ZeroForcing}) {
    const Scenario s = with(sc, 45.0, 45.0);
    const DeltaField f = delta_field(s, make_grid(s.area, 1.0));
    std::map<std::pair<long, long>, double> byPos;
    for (const FieldCell& c : f.cells) {
      byPos[{std::lround(c.cell.center.x * 10), std::lround(c.cell.center.y * 10)}] = c.delta;
    }
    for (const auto& [k, v] : byPos) {
      auto it = byPos.find({k.first, -k.second});
      REQUIRE(it != byPos.end());
      CHECK_THAT(it->second, WithinRel(v, 1e-12));
    }
  }
}

TEST_CASE("cells near Alice are excluded and counted") {
  Scenario s;
  s.area = {{0.0, 0.0}, 30.0};  // Alice sits on a cell center.
  s = validate_scenario(s);
  const auto grid = make_grid(s.area, 60.0 / 301.0);
  const DeltaField f = delta_field(s, grid);
  CHECK(f.excluded == 1u);
  for (const FieldCell& c : f.cells) CHECK(distance(c.cell.center, s.alice) >= s.eve_exclusion_radius());
}

TEST_CASE("zero Alice power uses the limiting field") {
  Scenario s = with(Scheme::Classical, 0.0, 180.0);
  s.power.gamma_a = 0.0;
  const MetricReport mc = evaluate_metrics(s, 1.0);
  CHECK(mc.efficiency == 0.0);
  CHECK(mc.coverage == 0.0);
  Scenario z = with(Scheme::ZeroForcing, 0.0, 180.0);
  const MetricReport ref = evaluate_metrics(z, 1.0);
  z.power.gamma_a = 0.0;
  const MetricReport mz = evaluate_metrics(z, 1.0);
  CHECK_THAT(mz.efficiency, WithinRel(ref.efficiency, 1e-12));
  CHECK(mz.coverage == ref.coverage);
}

TEST_CASE("worker count does not change the result bits") {
  const Scenario s = with(Scheme::Classical, 20.0, 100.0, 8.0);
  const auto grid = make_grid(s.area, 0.5);
  const DeltaField a = delta_field(s, grid, 1);
  const DeltaField b = delta_field(s, grid, 4);
  REQUIRE(a.cells.size() == b.cells.size());
  for (std::size_t i = 0; i < a.cells.size(); ++i) REQUIRE(a.cells[i].delta == b.cells[i].delta);
  CHECK(wsc(a).wsc == wsc(b).wsc);
}

TEST_CASE("heading table matches direct link evaluation") {
  const Scenario s = with(Scheme::Classical, 0.0, 180.0);
  const auto grid = make_grid(s.area, 3.0);
  const EveSites sites(s, grid);
  const JammerLinkTable table(s, sites, 6.0, {0.0, 90.0, -45.0, 180.0}, 2);
  const auto cells = sites.cells();
  for (std::size_t h = 0; h < table.headings(); ++h) {
    const Point2 g = jammer_ground_point(s.alice, 6.0, table.heading(h));
    const Point3 j{g.x, g.y, s.jammers.height_zj};
    CHECK(table.bob(h) == a2g_link(j, s.bob, s.env).coeff);
    for (std::size_t i = 0; i < sites.size(); i += 11) CHECK(table.eve(h)[i] == a2g_link(j, cells[i].center, s.env).coeff);
  }
  Scenario shifted = s;
  shifted.alice = {1.0, 0.0};
  CHECK_THROWS_AS(EveSites(shifted, grid), std::invalid_argument);
}
