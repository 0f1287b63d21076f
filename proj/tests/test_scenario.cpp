#include <catch_amalgamated.hpp>

#include <cmath>
#include <set>

#include "uavjam/scenario.hpp"

using namespace uavjam;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("defaults describe the reference urban scenario") {
  const Scenario s = reference_scenario();
  CHECK(s.d_ab() == 20.0);
  CHECK(s.jammers.height_zj == 13.0);
  CHECK(s.power.gamma_a == 10.0);
  CHECK(s.power.gamma_j1 == 5.0);
  CHECK(s.power.gamma_j2 == 5.0);
  CHECK(s.secrecy_rate_rs == 1.0);
  CHECK(s.env.psi == 9.61);
  CHECK(s.env.omega == 0.16);
  CHECK(s.env.eta_los == 1.0);
  CHECK(s.env.eta_nlos == 20.0);
  CHECK(s.area == default_area(s.alice, s.bob));
  CHECK(s.area.radius == 30.0);
  CHECK(default_grid_step(s) == 0.2);
  CHECK_NOTHROW(validate_scenario(s));
}

TEST_CASE("wrap_degrees maps onto (-180, 180]") {
  CHECK(wrap_degrees(180.0) == 180.0);
  CHECK(wrap_degrees(-180.0) == 180.0);
  CHECK(wrap_degrees(540.0) == 180.0);
  CHECK(wrap_degrees(190.0) == -170.0);
  CHECK(wrap_degrees(-190.0) == 170.0);
  CHECK(wrap_degrees(0.0) == 0.0);
  CHECK(wrap_degrees(725.0) == 5.0);
  for (double a = -1000.0; a <= 1000.0; a += 7.25) {
    const double w = wrap_degrees(a);
    CHECK(w > -180.0);
    CHECK(w <= 180.0);
    CHECK_THAT(std::remainder(w - a, 360.0), WithinAbs(0.0, 1e-9));
  }
}

TEST_CASE("jammer angles open in mirrored directions") {
  JammerPlacement jp;
  jp.radius_rj = 5.0;
  jp.theta1 = 0.0;
  jp.theta2 = 180.0;
  const Point3 j1 = jammer_cartesian(jp, {0, 0}, 1);
  const Point3 j2 = jammer_cartesian(jp, {0, 0}, 2);
  CHECK_THAT(j1.x, WithinAbs(-5.0, 1e-12));
  CHECK_THAT(j1.y, WithinAbs(0.0, 1e-12));
  CHECK_THAT(j2.x, WithinAbs(5.0, 1e-12));
  CHECK_THAT(j2.y, WithinAbs(0.0, 1e-12));
  CHECK(j1.z == 13.0);

  // Equal angles are mirror images about the Alice-Bob axis.
  for (double t = -170.0; t <= 180.0; t += 10.0) {
    jp.theta1 = t;
    jp.theta2 = t;
    const Point3 a = jammer_cartesian(jp, {0, 0}, 1);
    const Point3 b = jammer_cartesian(jp, {0, 0}, 2);
    CHECK_THAT(a.x, WithinAbs(b.x, 1e-12));
    CHECK_THAT(a.y, WithinAbs(-b.y, 1e-12));
    CHECK_THAT(std::hypot(a.x, a.y), WithinRel(5.0, 1e-12));
  }
  jp.theta1 = 90.0;
  CHECK_THAT(jammer_cartesian(jp, {0, 0}, 1).y, WithinAbs(-5.0, 1e-12));
  CHECK_THROWS_AS(jammer_heading(jp, 3), std::invalid_argument);
}

TEST_CASE("grid covers S with symmetric cell centers") {
  const AreaSpec area{{10.0, 0.0}, 30.0};
  const auto grid = make_grid(area, 0.2);
  CHECK(grid.size() == 300u * 300u);
  double sx = 0.0, sy = 0.0, inside = 0.0;
  for (const GridCell& c : grid) {
    sx += c.center.x - 10.0;
    sy += c.center.y;
    CHECK(c.area == Catch::Approx(0.04));
    if (c.inside_s) inside += c.area;
  }
  CHECK_THAT(sx, WithinAbs(0.0, 1e-6));
  CHECK_THAT(sy, WithinAbs(0.0, 1e-6));
  // Quadrature area approaches pi r^2.
  CHECK_THAT(inside, WithinRel(area.area(), 2e-3));
  // Row-major from the lowest row.
  CHECK(grid[0].center.y < grid[300].center.y);
  CHECK(grid[0].center.x < grid[1].center.x);

  CHECK_THROWS_AS(make_grid(area, 0.0), ValidationError);
  CHECK_THROWS_AS(make_grid(area, -1.0), ValidationError);
  CHECK_THROWS_AS(make_grid(area, 60.0), ValidationError);
  CHECK_THROWS_AS(make_grid(area, std::nan("")), ValidationError);
}

TEST_CASE("validate_scenario rejects broken invariants") {
  auto broken = [](auto mutate) {
    Scenario s;
    mutate(s);
    return s;
  };
  CHECK_THROWS_AS(validate_scenario(broken([](Scenario& s) { s.bob = s.alice; })), ValidationError);
  CHECK_THROWS_AS(validate_scenario(broken([](Scenario& s) { s.jammers.radius_rj = -1.0; })), ValidationError);
  CHECK_THROWS_AS(validate_scenario(broken([](Scenario& s) { s.jammers.theta1 = 181.0; })), ValidationError);
  CHECK_NOTHROW(validate_scenario(broken([](Scenario& s) { s.jammers.radius_rj = 0.0; })));
  CHECK_THROWS_AS(validate_scenario(broken([](Scenario& s) { s.jammers.height_zj = -1.0; })), ValidationError);
  CHECK_THROWS_AS(validate_scenario(broken([](Scenario& s) { s.power.gamma_a = -1.0; })), ValidationError);
  CHECK_THROWS_AS(validate_scenario(broken([](Scenario& s) { s.power.gamma_j1 = -0.5; })), ValidationError);
  CHECK_THROWS_AS(validate_scenario(broken([](Scenario& s) { s.secrecy_rate_rs = 0.0; })), ValidationError);
  CHECK_THROWS_AS(validate_scenario(broken([](Scenario& s) { s.env.alpha = std::nan(""); })), ValidationError);
  CHECK_THROWS_AS(validate_scenario(broken([](Scenario& s) { s.area.radius = 0.0; })), ValidationError);
  CHECK_THROWS_AS(validate_scenario(broken([](Scenario& s) {
                    s.scheme = Scheme::ZeroForcing;
                    s.power.gamma_j2 = 4.0;
                  })),
                  ValidationError);
  CHECK_NOTHROW(validate_scenario(broken([](Scenario& s) { s.power.gamma_j2 = 4.0; })));
  CHECK_NOTHROW(validate_scenario(broken([](Scenario& s) { s.power.gamma_a = 0.0; })));
}

TEST_CASE("validate_scenario normalizes the frame") {
  Scenario s;
  s.alice = {3.0, 4.0};
  s.bob = {3.0, 24.0};
  s.area = default_area(s.alice, s.bob);
  const Scenario n = validate_scenario(s);
  CHECK(n.alice == Point2{0.0, 0.0});
  CHECK_THAT(n.bob.x, WithinAbs(20.0, 1e-12));
  CHECK_THAT(n.bob.y, WithinAbs(0.0, 1e-12));
  CHECK_THAT(n.area.center.x, WithinAbs(10.0, 1e-12));
  CHECK_THAT(n.area.center.y, WithinAbs(0.0, 1e-12));
  CHECK(n.area.radius == 30.0);
  CHECK(validate_scenario(n) == n);
}

TEST_CASE("power split by ratio keeps the total") {
  for (double rho : {0.0, 0.25, 0.5, 1.0, 2.0, 7.5}) {
    const PowerBudget p = PowerBudget::from_ratio(20.0, rho);
    CHECK_THAT(p.gamma_a + p.gamma_j1 + p.gamma_j2, WithinRel(20.0, 1e-14));
    CHECK(p.gamma_j1 == p.gamma_j2);
    if (rho > 0.0) CHECK_THAT(p.gamma_a / (p.gamma_j1 + p.gamma_j2), WithinRel(rho, 1e-14));
  }
  CHECK(PowerBudget::from_ratio(20.0, 0.0).gamma_a == 0.0);
  CHECK_THROWS_AS(PowerBudget::from_ratio(0.0, 1.0), ValidationError);
  CHECK_THROWS_AS(PowerBudget::from_ratio(20.0, -1.0), ValidationError);
}

TEST_CASE("scenario hash separates scenarios") {
  std::set<std::uint64_t> seen;
  Scenario s;
  seen.insert(scenario_hash(s));
  s.jammers.theta1 = 5.0;
  seen.insert(scenario_hash(s));
  s.scheme = Scheme::ZeroForcing;
  seen.insert(scenario_hash(s));
  s.power.gamma_a = 10.000000000000002;
  seen.insert(scenario_hash(s));
  CHECK(seen.size() == 4u);
  CHECK(scenario_hash(Scenario{}) == scenario_hash(Scenario{}));
}

TEST_CASE("scheme names round-trip") {
  CHECK(scheme_from_string(to_string(Scheme::Classical)) == Scheme::Classical);
  CHECK(scheme_from_string(to_string(Scheme::ZeroForcing)) == Scheme::ZeroForcing);
  CHECK_THROWS_AS(scheme_from_string("mimo"), ValidationError);
}
