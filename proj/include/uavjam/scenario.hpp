#pragma once

// Experiment geometry and configuration: node positions, jammer placement,
// power budget, environment constants and the quadrature grid over the
// eavesdropper area S.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <initializer_list>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace uavjam {

/// Raised when a scenario or one of its parts violates an invariant.
class ValidationError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2&, const Point2&) = default;
};

struct Point3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend bool operator==(const Point3&, const Point3&) = default;
};

inline double distance(Point2 a, Point2 b) { return std::hypot(a.x - b.x, a.y - b.y); }

/// Environment and link constants. Defaults are the dense-urban values of
/// the reference scenario.
struct Environment {
  double psi = 9.61;
  double omega = 0.16;
  double alpha = 0.3;    // ground pathloss exponent
  double alpha_j = 0.3;  // air-to-ground pathloss exponent
  double eta_los = 1.0;
  double eta_nlos = 20.0;
  double noise_power = 1.0;

  friend bool operator==(const Environment&, const Environment&) = default;
};

/// Both jammers share the ground radius and the flight height. Angles are in
/// degrees and measured from the point directly behind Alice; jammer 1 opens
/// clockwise and jammer 2 counterclockwise.
struct JammerPlacement {
  double radius_rj = 5.0;
  double theta1 = 0.0;
  double theta2 = 180.0;
  double height_zj = 13.0;

  friend bool operator==(const JammerPlacement&, const JammerPlacement&) = default;
};

/// Transmit SNRs (P / sigma^2), linear scale.
struct PowerBudget {
  double gamma_a = 10.0;
  double gamma_j1 = 5.0;
  double gamma_j2 = 5.0;
  std::optional<double> gamma_total;

  /// Splits a total budget by the ratio rho = gamma_a / gamma_j, with the
  /// jamming share divided equally between the two jammers.
  static PowerBudget from_ratio(double gamma_total, double rho) {
    if (!(gamma_total > 0.0) || !(rho >= 0.0) || !std::isfinite(rho)) {
      throw ValidationError("power split needs gamma_total > 0 and a finite ratio >= 0");
    }
    const double gamma_j = gamma_total / (1.0 + rho);
    PowerBudget p;
    p.gamma_a = gamma_total * rho / (1.0 + rho);
    p.gamma_j1 = 0.5 * gamma_j;
    p.gamma_j2 = 0.5 * gamma_j;
    p.gamma_total = gamma_total;
    return p;
  }

  friend bool operator==(const PowerBudget&, const PowerBudget&) = default;
};

struct AreaSpec {
  Point2 center;
  double radius = 30.0;

  double area() const { return std::numbers::pi * radius * radius; }
  bool contains(Point2 p) const { return distance(p, center) < radius; }

  friend bool operator==(const AreaSpec&, const AreaSpec&) = default;
};

enum class Scheme { Classical, ZeroForcing };

inline const char* to_string(Scheme s) {
  return s == Scheme::Classical ? "classical" : "zf";
}

inline Scheme scheme_from_string(const std::string& s) {
  if (s == "classical") return Scheme::Classical;
  if (s == "zf" || s == "zero_forcing" || s == "zeroforcing") return Scheme::ZeroForcing;
  throw ValidationError("unknown scheme '" + s + "' (expected classical or zf)");
}

struct Scenario {
  Point2 alice{0.0, 0.0};
  Point2 bob{20.0, 0.0};
  JammerPlacement jammers;
  PowerBudget power;
  Environment env;
  double secrecy_rate_rs = 1.0;
  AreaSpec area{{10.0, 0.0}, 30.0};
  Scheme scheme = Scheme::Classical;

  double d_ab() const { return distance(alice, bob); }

  /// Eve positions closer than this to Alice are excluded from S.
  double eve_exclusion_radius() const { return 1e-3 * d_ab(); }

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// Disk centered at the Alice-Bob midpoint with radius 1.5 d_AB.
inline AreaSpec default_area(Point2 alice, Point2 bob) {
  return AreaSpec{{0.5 * (alice.x + bob.x), 0.5 * (alice.y + bob.y)}, 1.5 * distance(alice, bob)};
}

/// Reference configuration: d_AB = 20, z_J = 13,
/// gamma_A = 10, gamma_J1 = gamma_J2 = 5, R_S = 1.
inline Scenario reference_scenario() { return Scenario{}; }

inline double default_grid_step(const Scenario& s) { return s.d_ab() / 100.0; }

/// Maps an angle in degrees onto (-180, 180].
inline double wrap_degrees(double deg) {
  double w = std::remainder(deg, 360.0);
  if (w <= -180.0) w += 360.0;
  return w;
}

/// Direction angle of a jammer's ground projection as seen from Alice, in
/// jammer 1's (clockwise) convention. Jammer 2 opens counterclockwise, so its
/// angle is mirrored.
inline double jammer_heading(const JammerPlacement& placement, int index) {
  if (index == 1) return wrap_degrees(placement.theta1);
  if (index == 2) return wrap_degrees(-placement.theta2);
  throw std::invalid_argument("jammer index must be 1 or 2");
}

/// Ground projection of a jammer at `heading` degrees (jammer 1 convention)
/// on the circle of `radius` around Alice. Alice-Bob is assumed along +x.
inline Point2 jammer_ground_point(Point2 alice, double radius, double heading) {
  const double rad = wrap_degrees(heading) * (std::numbers::pi / 180.0);
  return {alice.x - radius * std::cos(rad), alice.y - radius * std::sin(rad)};
}

/// Cartesian position of jammer `index` (1 or 2). Heading 0 is directly
/// behind Alice; heading 180 is directly in front of her, toward Bob.
inline Point3 jammer_cartesian(const JammerPlacement& placement, Point2 alice, int index) {
  const Point2 g = jammer_ground_point(alice, placement.radius_rj, jammer_heading(placement, index));
  return {g.x, g.y, placement.height_zj};
}

struct GridCell {
  Point2 center;
  double area = 0.0;
  bool inside_s = false;
};

/// Uniform square-cell grid covering the bounding box of S, row-major from
/// the lowest y row. Cell centers are placed symmetrically about S's center.
inline std::vector<GridCell> make_grid(const AreaSpec& area, double step) {
  if (!(step > 0.0) || !std::isfinite(step)) {
    throw ValidationError("grid step must be a positive finite number");
  }
  if (!(area.radius > 0.0)) throw ValidationError("area radius must be positive");
  if (step >= 2.0 * area.radius) {
    throw ValidationError("grid step must be smaller than the area diameter");
  }
  const auto n = static_cast<std::size_t>(std::ceil(2.0 * area.radius / step));
  const double mid = 0.5 * static_cast<double>(n - 1);
  std::vector<GridCell> cells;
  cells.reserve(n * n);
  for (std::size_t row = 0; row < n; ++row) {
    const double y = area.center.y + (static_cast<double>(row) - mid) * step;
    for (std::size_t col = 0; col < n; ++col) {
      const double x = area.center.x + (static_cast<double>(col) - mid) * step;
      GridCell c;
      c.center = {x, y};
      c.area = step * step;
      c.inside_s = area.contains(c.center);
      cells.push_back(c);
    }
  }
  return cells;
}

namespace detail {

inline void require(bool ok, const std::string& what) {
  if (!ok) throw ValidationError(what);
}

inline bool finite_all(std::initializer_list<double> xs) {
  for (double x : xs) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}

}  // namespace detail

/// Checks every invariant and returns the scenario in the normalized frame:
/// Alice at the origin and Bob on the +x axis at distance d_AB. The area
/// center is moved with the same rigid transform; jammer angles are relative
/// to the Alice-Bob axis and stay unchanged.
inline Scenario validate_scenario(const Scenario& s) {
  using detail::require;
  const Environment& e = s.env;
  require(detail::finite_all({e.psi, e.omega, e.alpha, e.alpha_j, e.eta_los, e.eta_nlos, e.noise_power}),
          "environment constants must be finite");
  require(e.psi > 0.0, "env.psi must be > 0");
  require(e.omega > 0.0, "env.omega must be > 0");
  require(e.alpha > 0.0, "env.alpha must be > 0");
  require(e.alpha_j > 0.0, "env.alpha_j must be > 0");
  require(e.eta_los > 0.0, "env.eta_los must be > 0");
  require(e.eta_nlos >= e.eta_los, "env.eta_nlos must be >= env.eta_los");
  require(e.noise_power > 0.0, "env.noise_power must be > 0");

  const JammerPlacement& j = s.jammers;
  require(detail::finite_all({j.radius_rj, j.theta1, j.theta2, j.height_zj}), "jammer placement must be finite");
  require(j.radius_rj >= 0.0, "jammers.radius_rj must be >= 0");
  require(j.height_zj > 0.0, "jammers.height_zj must be > 0");
  require(j.theta1 >= -180.0 && j.theta1 <= 180.0, "jammers.theta1 must lie in [-180, 180]");
  require(j.theta2 >= -180.0 && j.theta2 <= 180.0, "jammers.theta2 must lie in [-180, 180]");

  const PowerBudget& p = s.power;
  require(detail::finite_all({p.gamma_a, p.gamma_j1, p.gamma_j2}), "transmit SNRs must be finite");
  require(p.gamma_a >= 0.0, "power.gamma_a must be >= 0");
  require(p.gamma_j1 >= 0.0, "power.gamma_j1 must be >= 0");
  require(p.gamma_j2 >= 0.0, "power.gamma_j2 must be >= 0");
  if (p.gamma_total) {
    const double total = *p.gamma_total;
    require(std::isfinite(total) && total >= 0.0, "power.gamma_total must be >= 0");
    const double sum = p.gamma_a + p.gamma_j1 + p.gamma_j2;
    require(std::abs(sum - total) <= 1e-9 * std::max(std::abs(total), 1.0),
            "power.gamma_a + gamma_j1 + gamma_j2 must equal power.gamma_total");
  }
  if (s.scheme == Scheme::ZeroForcing) {
    require(p.gamma_j1 == p.gamma_j2, "zero-forcing precoding needs gamma_j1 == gamma_j2");
  }

  require(detail::finite_all({s.alice.x, s.alice.y, s.bob.x, s.bob.y}), "node positions must be finite");
  require(!(s.alice == s.bob), "alice and bob must be at different positions");
  require(std::isfinite(s.secrecy_rate_rs) && s.secrecy_rate_rs > 0.0, "secrecy_rate_rs must be > 0");
  require(detail::finite_all({s.area.center.x, s.area.center.y, s.area.radius}), "area must be finite");
  require(s.area.radius > 0.0, "area.radius must be > 0");

  const double d = s.d_ab();
  require(d > 0.0, "alice and bob must be at different positions");

  Scenario out = s;
  const double c = (s.bob.x - s.alice.x) / d;
  const double sn = (s.bob.y - s.alice.y) / d;
  auto to_frame = [&](Point2 q) {
    const double dx = q.x - s.alice.x;
    const double dy = q.y - s.alice.y;
    return Point2{c * dx + sn * dy, -sn * dx + c * dy};
  };
  out.alice = {0.0, 0.0};
  out.bob = {d, 0.0};
  out.area.center = to_frame(s.area.center);
  require(out.eve_exclusion_radius() <= out.area.radius,
          "eve exclusion radius (1e-3 d_AB) exceeds area.radius");
  return out;
}

/// FNV-1a over a fixed-precision rendering of every scenario field.
inline std::uint64_t scenario_hash(const Scenario& s) {
  char buf[1024];
  const int n = std::snprintf(
      buf, sizeof buf,
      "%.17g,%.17g,%.17g,%.17g|%.17g,%.17g,%.17g,%.17g|%.17g,%.17g,%.17g,%.17g|"
      "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g|%.17g|%.17g,%.17g,%.17g|%d",
      s.alice.x, s.alice.y, s.bob.x, s.bob.y, s.jammers.radius_rj, s.jammers.theta1, s.jammers.theta2,
      s.jammers.height_zj, s.power.gamma_a, s.power.gamma_j1, s.power.gamma_j2,
      s.power.gamma_total.value_or(-1.0), s.env.psi, s.env.omega, s.env.alpha, s.env.alpha_j, s.env.eta_los,
      s.env.eta_nlos, s.env.noise_power, s.secrecy_rate_rs, s.area.center.x, s.area.center.y, s.area.radius,
      static_cast<int>(s.scheme));
  std::uint64_t h = 1469598103934665603ULL;
  for (int i = 0; i < n && i < static_cast<int>(sizeof buf); ++i) {
    h ^= static_cast<unsigned char>(buf[i]);
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace uavjam
