#include <catch_amalgamated.hpp>

#include <string>

#include "uavjam/config_io.hpp"

using namespace uavjam;

TEST_CASE("empty config gives the default scenario") {
  const Config c = config_from_json(json::object());
  CHECK(c.scenario == validate_scenario(Scenario{}));
  CHECK(c.sweep.rj_values.size() == 9u);
  CHECK(c.sweep.objective == Objective::WSC);
}

TEST_CASE("scenario JSON round-trips") {
  Scenario s;
  s.jammers.radius_rj = 7.5;
  s.jammers.theta1 = 33.0;
  s.power.gamma_a = 12.0;
  s.power.gamma_total = 22.0;
  s.scheme = Scheme::ZeroForcing;
  s = validate_scenario(s);
  const Scenario back = validate_scenario(scenario_from_json(scenario_to_json(s)));
  CHECK(back == s);
}

TEST_CASE("points accept objects and pairs; area defaults follow the nodes") {
  const json j = json::parse(R"({"alice": [0, 0], "bob": {"x": 40, "y": 0}})");
  const Config c = config_from_json(j);
  CHECK(c.scenario.bob.x == 40.0);
  CHECK(c.scenario.area.radius == 60.0);
  CHECK(c.scenario.area.center.x == 20.0);
}

TEST_CASE("malformed configs raise validation errors") {
  CHECK_THROWS_AS(config_from_json(json::parse(R"({"bob": [0, 0]})")), ValidationError);
  CHECK_THROWS_AS(config_from_json(json::parse(R"({"jammers": {"radius": 3}})")), ValidationError);
  CHECK_THROWS_AS(config_from_json(json::parse(R"({"colour": 1})")), ValidationError);
  CHECK_THROWS_AS(config_from_json(json::parse(R"({"power": {"gamma_a": "ten"}})")), ValidationError);
  CHECK_THROWS_AS(config_from_json(json::parse(R"({"alice": [1, 2, 3]})")), ValidationError);
  CHECK_THROWS_AS(config_from_json(json::parse(R"({"scheme": "mimo"})")), ValidationError);
  CHECK_THROWS_AS(config_from_json(json::parse(R"({"sweep": {"objective": "sop"}})")), ValidationError);
  CHECK_THROWS_AS(config_from_json(json::parse(R"([1, 2])")), ValidationError);
  CHECK_THROWS_AS(config_from_json(json::parse(R"({"power": {"gamma_a": 1, "gamma_total": 50}})")),
                  ValidationError);
  CHECK_THROWS_AS(load_config("/nonexistent/uavjam.json"), ValidationError);
}

TEST_CASE("CSV rendering uses nine significant digits") {
  CHECK(fmt9(1.0 / 3.0) == "0.333333333");
  CHECK(fmt9(20.0) == "20");
  CHECK(fmt_opt(std::nullopt).empty());
  Scenario s = validate_scenario(Scenario{});
  const auto grid = make_grid(s.area, 6.0);
  const DeltaField f = delta_field(s, grid);
  const std::string csv = delta_field_csv(f);
  CHECK(csv.rfind("x,y,delta,cell_area\n", 0) == 0);
  std::size_t lines = 0;
  for (char ch : csv) lines += ch == '\n';
  CHECK(lines == f.cells.size() + 1);
  const std::string row = metrics_csv_row(s, wsc(f));
  CHECK(row.rfind("classical,5,0,180,10,10,6,", 0) == 0);
}

TEST_CASE("figure tables have one row per radius") {
  SweepContext ctx(Scenario{}, 6.0);
  const auto rows = sweep_radius(ctx, {2.0, 4.0, 6.0}, reference_angle_configs());
  const std::string dat = radius_figure_dat(rows, false);
  std::size_t lines = 0;
  for (char ch : dat) lines += ch == '\n';
  CHECK(lines == 2 + 3);
  CHECK(dat.find("zf_c1") != std::string::npos);
  CHECK(dat.find("classical_c4") != std::string::npos);
}
