#pragma once

// Ground Rayleigh-link statistics and deterministic air-to-ground (A2G)
// jamming-link coefficients.

#include <cmath>
#include <numbers>

#include "uavjam/scenario.hpp"

namespace uavjam {

/// Exponential statistics of a Rayleigh ground link: the gain |h|^2 has rate
/// omega = d^alpha (mean 1/omega).
struct GroundLinkStat {
  double omega = 1.0;
  double distance = 1.0;

  double mean_gain() const { return 1.0 / omega; }
};

struct A2GLink {
  double height = 0.0;
  double ground_distance = 0.0;
  double p_los = 0.0;
  double pathloss = 1.0;
  double coeff = 1.0;  // 1 / sqrt(pathloss)
  double gain = 1.0;   // coeff^2

  double p_nlos() const { return 1.0 - p_los; }
};

struct ChannelSet {
  GroundLinkStat ab;
  GroundLinkStat ae;
  A2GLink j1b, j2b, j1e, j2e;
  double h_int = 0.0;  // h_J1E h_J2B - h_J2E h_J1B
  double g_int = 0.0;

  double omega_ab() const { return ab.omega; }
  double omega_ae() const { return ae.omega; }
};

inline double ground_rate(double distance, double alpha) {
  if (!(distance > 0.0)) {
    throw std::domain_error("ground link distance must be > 0");
  }
  return std::pow(distance, alpha);
}

inline GroundLinkStat ground_link(Point2 a, Point2 b, double alpha) {
  const double d = distance(a, b);
  return {ground_rate(d, alpha), d};
}

/// Elevation angle in degrees; 90 when the node sits under the jammer.
inline double elevation_degrees(double height, double ground_distance) {
  if (ground_distance == 0.0) return 90.0;
  return (180.0 / std::numbers::pi) * std::atan(height / ground_distance);
}

inline double los_probability(double height, double ground_distance, const Environment& env) {
  const double theta = elevation_degrees(height, ground_distance);
  return 1.0 / (1.0 + env.psi * std::exp(-env.omega * (theta - env.psi)));
}

inline A2GLink a2g_pathloss(double height, double ground_distance, const Environment& env) {
  A2GLink link;
  link.height = height;
  link.ground_distance = ground_distance;
  link.p_los = los_probability(height, ground_distance, env);
  const double mix = link.p_los * env.eta_los + (1.0 - link.p_los) * env.eta_nlos;
  link.pathloss = std::pow(height * height + ground_distance * ground_distance, 0.5 * env.alpha_j) * mix;
  link.coeff = 1.0 / std::sqrt(link.pathloss);
  link.gain = link.coeff * link.coeff;
  return link;
}

inline A2GLink a2g_link(Point3 jammer, Point2 node, const Environment& env) {
  return a2g_pathloss(jammer.z, distance({jammer.x, jammer.y}, node), env);
}

/// Effective jamming coefficient at Eve once the jammer signals are
/// precoded to cancel at Bob.
inline double interference_coeff(double h_j1e, double h_j2e, double h_j1b, double h_j2b) {
  return h_j1e * h_j2b - h_j2e * h_j1b;
}

/// All link quantities for one Eve position. `s` must be normalized.
inline ChannelSet channel_set(const Scenario& s, Point2 eve) {
  if (distance(eve, s.alice) < s.eve_exclusion_radius()) {
    throw std::domain_error("eve lies inside the exclusion radius around alice");
  }
  const Point3 j1 = jammer_cartesian(s.jammers, s.alice, 1);
  const Point3 j2 = jammer_cartesian(s.jammers, s.alice, 2);
  ChannelSet cs;
  cs.ab = ground_link(s.alice, s.bob, s.env.alpha);
  cs.ae = ground_link(s.alice, eve, s.env.alpha);
  cs.j1b = a2g_link(j1, s.bob, s.env);
  cs.j2b = a2g_link(j2, s.bob, s.env);
  cs.j1e = a2g_link(j1, eve, s.env);
  cs.j2e = a2g_link(j2, eve, s.env);
  cs.h_int = interference_coeff(cs.j1e.coeff, cs.j2e.coeff, cs.j1b.coeff, cs.j2b.coeff);
  cs.g_int = cs.h_int * cs.h_int;
  return cs;
}

}  // namespace uavjam
