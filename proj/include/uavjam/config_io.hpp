#pragma once

// JSON scenario files and the CSV / plot-data renderings of results.

#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "uavjam/area_metrics.hpp"
#include "uavjam/scenario.hpp"
#include "uavjam/sweep.hpp"

namespace uavjam {

using json = nlohmann::json;

/// Optional "sweep" section of a config file.
struct SweepSettings {
  std::vector<double> rj_values{2, 4, 6, 8, 10, 12, 14, 16, 18};
  std::vector<double> ratios{0.0, 0.25, 0.5, 1.0, 2.0};
  std::vector<double> power_rj_values{4, 8, 12, 16};
  std::optional<double> gamma_total;  // falls back to power.gamma_total, then 20
  Objective objective = Objective::WSC;
};

struct Config {
  Scenario scenario;  // normalized
  SweepSettings sweep;
};

namespace detail {

inline Point2 point_from_json(const json& j, const char* what) {
  if (j.is_array() && j.size() == 2) return {j.at(0).get<double>(), j.at(1).get<double>()};
  if (j.is_object()) return {j.at("x").get<double>(), j.at("y").get<double>()};
  throw ValidationError(std::string(what) + " must be {\"x\":..,\"y\":..} or [x, y]");
}

inline json point_to_json(Point2 p) { return {{"x", p.x}, {"y", p.y}}; }

template <class T>
void read_opt(const json& obj, const char* key, T& out) {
  if (obj.contains(key) && !obj.at(key).is_null()) out = obj.at(key).get<T>();
}

inline void reject_unknown(const json& obj, std::initializer_list<const char*> keys, const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (const char* k : keys) known = known || it.key() == k;
    if (!known) throw ValidationError("unknown key '" + it.key() + "' in " + where);
  }
}

}  // namespace detail

/// Field-for-field mapping of a JSON object onto a Scenario. Missing fields
/// take the reference-scenario defaults; a missing "area" is the disk
/// around the Alice-Bob midpoint. The result is not yet validated.
inline Scenario scenario_from_json(const json& j) {
  using detail::read_opt;
  if (!j.is_object()) throw ValidationError("scenario config must be a JSON object");
  detail::reject_unknown(j, {"alice", "bob", "jammers", "power", "env", "secrecy_rate_rs", "area", "scheme", "sweep"},
                         "scenario");
  Scenario s;
  try {
    if (j.contains("alice")) s.alice = detail::point_from_json(j.at("alice"), "alice");
    if (j.contains("bob")) s.bob = detail::point_from_json(j.at("bob"), "bob");
    if (j.contains("jammers")) {
      const json& jj = j.at("jammers");
      detail::reject_unknown(jj, {"radius_rj", "theta1", "theta2", "height_zj"}, "jammers");
      read_opt(jj, "radius_rj", s.jammers.radius_rj);
      read_opt(jj, "theta1", s.jammers.theta1);
      read_opt(jj, "theta2", s.jammers.theta2);
      read_opt(jj, "height_zj", s.jammers.height_zj);
    }
    if (j.contains("power")) {
      const json& pj = j.at("power");
      detail::reject_unknown(pj, {"gamma_a", "gamma_j1", "gamma_j2", "gamma_total"}, "power");
      read_opt(pj, "gamma_a", s.power.gamma_a);
      read_opt(pj, "gamma_j1", s.power.gamma_j1);
      read_opt(pj, "gamma_j2", s.power.gamma_j2);
      if (pj.contains("gamma_total") && !pj.at("gamma_total").is_null()) {
        s.power.gamma_total = pj.at("gamma_total").get<double>();
      }
    }
    if (j.contains("env")) {
      const json& ej = j.at("env");
      detail::reject_unknown(ej, {"psi", "omega", "alpha", "alpha_j", "eta_los", "eta_nlos", "noise_power"}, "env");
      read_opt(ej, "psi", s.env.psi);
      read_opt(ej, "omega", s.env.omega);
      read_opt(ej, "alpha", s.env.alpha);
      read_opt(ej, "alpha_j", s.env.alpha_j);
      read_opt(ej, "eta_los", s.env.eta_los);
      read_opt(ej, "eta_nlos", s.env.eta_nlos);
      read_opt(ej, "noise_power", s.env.noise_power);
    }
    read_opt(j, "secrecy_rate_rs", s.secrecy_rate_rs);
    s.area = default_area(s.alice, s.bob);
    if (j.contains("area")) {
      const json& aj = j.at("area");
      detail::reject_unknown(aj, {"center", "radius"}, "area");
      if (aj.contains("center")) s.area.center = detail::point_from_json(aj.at("center"), "area.center");
      read_opt(aj, "radius", s.area.radius);
    }
    if (j.contains("scheme")) s.scheme = scheme_from_string(j.at("scheme").get<std::string>());
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed scenario field: ") + e.what());
  }
  return s;
}

inline json scenario_to_json(const Scenario& s) {
  json j;
  j["alice"] = detail::point_to_json(s.alice);
  j["bob"] = detail::point_to_json(s.bob);
  j["jammers"] = {{"radius_rj", s.jammers.radius_rj},
                  {"theta1", s.jammers.theta1},
                  {"theta2", s.jammers.theta2},
                  {"height_zj", s.jammers.height_zj}};
  j["power"] = {{"gamma_a", s.power.gamma_a}, {"gamma_j1", s.power.gamma_j1}, {"gamma_j2", s.power.gamma_j2}};
  if (s.power.gamma_total) j["power"]["gamma_total"] = *s.power.gamma_total;
  j["env"] = {{"psi", s.env.psi},         {"omega", s.env.omega},       {"alpha", s.env.alpha},
              {"alpha_j", s.env.alpha_j}, {"eta_los", s.env.eta_los},   {"eta_nlos", s.env.eta_nlos},
              {"noise_power", s.env.noise_power}};
  j["secrecy_rate_rs"] = s.secrecy_rate_rs;
  j["area"] = {{"center", detail::point_to_json(s.area.center)}, {"radius", s.area.radius}};
  j["scheme"] = to_string(s.scheme);
  return j;
}

inline SweepSettings sweep_settings_from_json(const json& j) {
  SweepSettings st;
  if (!j.contains("sweep")) return st;
  const json& sj = j.at("sweep");
  detail::reject_unknown(sj, {"rj_values", "ratios", "power_rj_values", "gamma_total", "objective"}, "sweep");
  try {
    detail::read_opt(sj, "rj_values", st.rj_values);
    detail::read_opt(sj, "ratios", st.ratios);
    detail::read_opt(sj, "power_rj_values", st.power_rj_values);
    if (sj.contains("gamma_total") && !sj.at("gamma_total").is_null()) st.gamma_total = sj.at("gamma_total").get<double>();
    if (sj.contains("objective")) st.objective = objective_from_string(sj.at("objective").get<std::string>());
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed sweep field: ") + e.what());
  }
  return st;
}

inline Config config_from_json(const json& j) {
  Config c;
  c.scenario = validate_scenario(scenario_from_json(j));
  c.sweep = sweep_settings_from_json(j);
  return c;
}

inline Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config file '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError("config '" + path + "' is not valid JSON: " + e.what());
  }
  return config_from_json(j);
}

// ---------------------------------------------------------------------------
// CSV: comma separated, header row, 9 significant digits, '\n' line ends.

inline std::string fmt9(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

inline std::string fmt_opt(const std::optional<double>& v) { return v ? fmt9(*v) : std::string(); }

inline std::string delta_field_csv(const DeltaField& field) {
  std::string out = "x,y,delta,cell_area\n";
  out.reserve(field.cells.size() * 48);
  for (const FieldCell& c : field.cells) {
    out += fmt9(c.cell.center.x) + ',' + fmt9(c.cell.center.y) + ',' + fmt9(c.delta) + ',' + fmt9(c.cell.area) + '\n';
  }
  return out;
}

inline constexpr const char* kMetricsHeader = "scheme,rj,theta1,theta2,gamma_a,gamma_j,step,coverage,efficiency,wsc\n";

inline std::string metrics_csv_row(const Scenario& s, const MetricReport& m) {
  return std::string(to_string(m.scheme)) + ',' + fmt9(s.jammers.radius_rj) + ',' + fmt9(s.jammers.theta1) + ',' +
         fmt9(s.jammers.theta2) + ',' + fmt9(s.power.gamma_a) + ',' + fmt9(s.power.gamma_j1 + s.power.gamma_j2) +
         ',' + fmt9(m.step) + ',' + fmt9(m.coverage) + ',' + fmt9(m.efficiency) + ',' + fmt9(m.wsc) + '\n';
}

inline std::string sweep_radius_csv(const std::vector<SweepRow>& rows) {
  std::string out = "scheme,config,rj,theta1,theta2,gamma_a,gamma_j,step,coverage,efficiency,wsc,area_s\n";
  for (const SweepRow& r : rows) {
    out += std::string(to_string(r.scheme)) + ',' + std::to_string(r.config) + ',' + fmt9(r.rj) + ',' +
           fmt9(r.theta1) + ',' + fmt9(r.theta2) + ',' + fmt9(r.gamma_a) + ',' + fmt9(r.gamma_j) + ',' +
           fmt9(r.metrics.step) + ',' + fmt9(r.metrics.coverage) + ',' + fmt9(r.metrics.efficiency) + ',' +
           fmt9(r.metrics.wsc) + ',' + fmt9(r.metrics.area_s) + '\n';
  }
  return out;
}

inline std::string optimum_csv(const std::vector<Optimum>& opts) {
  std::string out =
      "scheme,rj,ratio,gamma_a,gamma_j,objective,theta1_star,theta2_star,value,angle_step,step,coverage,efficiency,"
      "wsc,area_s\n";
  for (const Optimum& o : opts) {
    const SweepRow& r = o.row;
    out += std::string(to_string(o.record.scheme)) + ',' + fmt9(o.record.rj) + ',' + fmt_opt(o.record.ratio) + ',' +
           fmt9(r.gamma_a) + ',' + fmt9(r.gamma_j) + ',' + to_string(o.record.objective) + ',' +
           fmt9(o.record.theta1_star) + ',' + fmt9(o.record.theta2_star) + ',' + fmt9(o.record.value) + ',' +
           fmt9(o.record.angle_step) + ',' + fmt9(r.metrics.step) + ',' + fmt9(r.metrics.coverage) + ',' +
           fmt9(r.metrics.efficiency) + ',' + fmt9(r.metrics.wsc) + ',' + fmt9(r.metrics.area_s) + '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------
// Whitespace-separated plot data, one file per figure.

namespace detail {

inline const SweepRow* find_row(const std::vector<SweepRow>& rows, double rj, int config, Scheme scheme) {
  for (const SweepRow& r : rows) {
    if (r.rj == rj && r.config == config && r.scheme == scheme) return &r;
  }
  return nullptr;
}

inline const Optimum* find_opt(const std::vector<Optimum>& opts, double rj, std::optional<double> ratio,
                               Scheme scheme) {
  for (const Optimum& o : opts) {
    if (o.record.rj == rj && o.record.ratio == ratio && o.record.scheme == scheme) return &o;
  }
  return nullptr;
}

inline std::vector<double> unique_in_order(std::vector<double> v) {
  std::vector<double> out;
  for (double x : v) {
    bool seen = false;
    for (double y : out) seen = seen || y == x;
    if (!seen) out.push_back(x);
  }
  return out;
}

}  // namespace detail

/// fig2 (efficiency) and fig3 (WSC / |S|) tables: one line per radius,
/// columns zf_c1..zf_c4 classical_c1..classical_c4.
inline std::string radius_figure_dat(const std::vector<SweepRow>& rows, bool normalized_wsc) {
  std::vector<double> rjs;
  std::vector<int> cfgs;
  for (const SweepRow& r : rows) {
    rjs.push_back(r.rj);
    bool seen = false;
    for (int c : cfgs) seen = seen || c == r.config;
    if (!seen) cfgs.push_back(r.config);
  }
  rjs = detail::unique_in_order(rjs);
  std::string out = normalized_wsc ? "# area-normalized WSC vs R_J\n# rj" : "# jamming efficiency vs R_J\n# rj";
  for (Scheme sc : kBothSchemes) {
    for (int c : cfgs) out += std::string(" ") + to_string(sc) + "_c" + std::to_string(c);
  }
  out += '\n';
  for (double rj : rjs) {
    out += fmt9(rj);
    for (Scheme sc : kBothSchemes) {
      for (int c : cfgs) {
        const SweepRow* r = detail::find_row(rows, rj, c, sc);
        const double v = !r ? 0.0 : normalized_wsc ? r->metrics.wsc / r->metrics.area_s : r->metrics.efficiency;
        out += ' ' + fmt9(v);
      }
    }
    out += '\n';
  }
  return out;
}

/// fig4: efficiency at the optimum angles; fig5: the optimum angles.
inline std::string angles_figure_dat(const std::vector<Optimum>& opts, bool angles) {
  std::vector<double> rjs;
  for (const Optimum& o : opts) rjs.push_back(o.record.rj);
  rjs = detail::unique_in_order(rjs);
  std::string out = angles ? "# optimal angles vs R_J\n# rj zf_theta1 zf_theta2 classical_theta1 classical_theta2\n"
                           : "# efficiency at optimal angles vs R_J\n# rj zf classical\n";
  for (double rj : rjs) {
    out += fmt9(rj);
    for (Scheme sc : {Scheme::ZeroForcing, Scheme::Classical}) {
      const Optimum* o = detail::find_opt(opts, rj, std::nullopt, sc);
      if (!o) continue;
      if (angles) {
        out += ' ' + fmt9(o->record.theta1_star) + ' ' + fmt9(o->record.theta2_star);
      } else {
        out += ' ' + fmt9(o->row.metrics.efficiency);
      }
    }
    out += '\n';
  }
  return out;
}

enum class PowerFigure { Coverage, Angles, Efficiency };

/// fig6 (coverage / |S|), fig7 (optimum angles), fig8 (efficiency) versus
/// the power ratio; one block per radius separated by blank lines.
inline std::string power_figure_dat(const std::vector<Optimum>& opts, PowerFigure which) {
  std::vector<double> rjs;
  std::vector<double> ratios;
  for (const Optimum& o : opts) {
    rjs.push_back(o.record.rj);
    if (o.record.ratio) ratios.push_back(*o.record.ratio);
  }
  rjs = detail::unique_in_order(rjs);
  ratios = detail::unique_in_order(ratios);
  std::string out;
  switch (which) {
    case PowerFigure::Coverage: out = "# normalized coverage vs gamma_A/gamma_J\n# rj ratio zf classical\n"; break;
    case PowerFigure::Angles:
      out = "# optimal angles vs gamma_A/gamma_J\n# rj ratio zf_theta1 zf_theta2 classical_theta1 classical_theta2\n";
      break;
    case PowerFigure::Efficiency: out = "# efficiency vs gamma_A/gamma_J\n# rj ratio zf classical\n"; break;
  }
  for (std::size_t b = 0; b < rjs.size(); ++b) {
    if (b > 0) out += "\n\n";
    for (double rho : ratios) {
      out += fmt9(rjs[b]) + ' ' + fmt9(rho);
      for (Scheme sc : {Scheme::ZeroForcing, Scheme::Classical}) {
        const Optimum* o = detail::find_opt(opts, rjs[b], rho, sc);
        if (!o) continue;
        const MetricReport& m = o->row.metrics;
        switch (which) {
          case PowerFigure::Coverage: out += ' ' + fmt9(m.coverage / m.area_s); break;
          case PowerFigure::Angles:
            out += ' ' + fmt9(o->record.theta1_star) + ' ' + fmt9(o->record.theta2_star);
            break;
          case PowerFigure::Efficiency: out += ' ' + fmt9(m.efficiency); break;
        }
      }
      out += '\n';
    }
  }
  return out;
}

}  // namespace uavjam
