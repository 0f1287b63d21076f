#pragma once

// Received-SNR scale factors for both schemes, the closed-form secrecy outage
// probability (SOP) and the secrecy improvement ratio Delta.

#include <cmath>
#include <stdexcept>

#include "uavjam/channel.hpp"
#include "uavjam/scenario.hpp"

namespace uavjam {

/// A point where the no-jamming reference never achieves secrecy
/// (SOP_NJ = 1), so the improvement ratio is undefined.
class DegeneratePointError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// gamma_B = a * g_AB and gamma_E = b * g_AE, without (nj) and with (j)
/// jamming.
struct SnrCoefficients {
  double a_nj = 0.0;
  double b_nj = 0.0;
  double a_j = 0.0;
  double b_j = 0.0;
};

/// Interference-plus-noise to noise ratio at Bob and Eve: a_j = gamma_A / bob,
/// b_j = gamma_A / eve. Kept separately so that gamma_A can go to zero.
struct JammingLoads {
  double bob = 1.0;
  double eve = 1.0;
};

/// Zero-forcing sends one common jamming sequence at the per-jammer power
/// gamma_j1 (== gamma_j2).
inline double zf_jammer_power(const PowerBudget& power) {
  if (power.gamma_j1 != power.gamma_j2) {
    throw std::invalid_argument("zero-forcing precoding needs gamma_j1 == gamma_j2");
  }
  return power.gamma_j1;
}

inline JammingLoads jamming_loads(Scheme scheme, const ChannelSet& ch, const PowerBudget& power) {
  if (scheme == Scheme::Classical) {
    return {1.0 + ch.j1b.gain * power.gamma_j1 + ch.j2b.gain * power.gamma_j2,
            1.0 + ch.j1e.gain * power.gamma_j1 + ch.j2e.gain * power.gamma_j2};
  }
  return {1.0, 1.0 + ch.g_int * zf_jammer_power(power)};
}

inline SnrCoefficients snr_coefficients(Scheme scheme, const ChannelSet& ch, const PowerBudget& power) {
  const JammingLoads loads = jamming_loads(scheme, ch, power);
  SnrCoefficients c;
  c.a_nj = power.gamma_a;
  c.b_nj = power.gamma_a;
  c.a_j = scheme == Scheme::ZeroForcing ? power.gamma_a : power.gamma_a / loads.bob;
  c.b_j = power.gamma_a / loads.eve;
  return c;
}

/// Probability of achieving secrecy, 1 - SOP, for exponential ground gains
/// with rates omega_ab, omega_ae:
///   exp(-(omega_ab / a)(2^rs - 1)) / (2^rs (omega_ab / omega_ae)(b / a) + 1)
inline double secrecy_success(double a, double b, double omega_ab, double omega_ae, double rs) {
  if (!(a > 0.0) || !(b > 0.0)) throw std::domain_error("SNR scale factors must be > 0");
  if (!(omega_ab > 0.0) || !(omega_ae > 0.0)) throw std::domain_error("link rates must be > 0");
  if (!(rs > 0.0)) throw std::domain_error("secrecy rate must be > 0");
  const double k = std::exp2(rs);
  return std::exp(-(omega_ab / a) * (k - 1.0)) / (k * (omega_ab / omega_ae) * (b / a) + 1.0);
}

inline double sop_closed_form(double a, double b, double omega_ab, double omega_ae, double rs) {
  return 1.0 - secrecy_success(a, b, omega_ab, omega_ae, rs);
}

struct SecrecyPoint {
  double sop_j = 0.0;
  double sop_nj = 0.0;
  double delta = 0.0;
};

/// Ratio of secrecy probabilities with and without jamming. Each
/// probability is taken directly from the closed form so small values keep
/// full relative precision.
inline double secrecy_improvement(const SnrCoefficients& c, double omega_ab, double omega_ae, double rs) {
  const double success_nj = secrecy_success(c.a_nj, c.b_nj, omega_ab, omega_ae, rs);
  if (!(success_nj > 0.0)) throw DegeneratePointError("SOP without jamming is 1; improvement undefined");
  return secrecy_success(c.a_j, c.b_j, omega_ab, omega_ae, rs) / success_nj;
}

inline SecrecyPoint secrecy_point(const SnrCoefficients& c, double omega_ab, double omega_ae, double rs) {
  SecrecyPoint p;
  p.sop_j = sop_closed_form(c.a_j, c.b_j, omega_ab, omega_ae, rs);
  p.sop_nj = sop_closed_form(c.a_nj, c.b_nj, omega_ab, omega_ae, rs);
  p.delta = secrecy_improvement(c, omega_ab, omega_ae, rs);
  return p;
}

/// Sign of the Bob-side exponent in the product form of Delta. `Derived`
/// is what dividing two closed-form SOPs produces; `Printed` is the opposite
/// sign, kept only so the Monte Carlo check can reject it.
enum class ExponentSign { Derived, Printed };

inline const char* to_string(ExponentSign s) {
  return s == ExponentSign::Derived ? "derived_sign" : "printed_sign";
}

/// Product form of Delta for a_nj == b_nj:
///   exp(+-omega_ab (2^rs - 1)(1/a_nj - 1/a_j)) (2^rs r + 1) / (2^rs r (b_j/a_j) + 1)
/// with r = omega_ab / omega_ae.
inline double product_form_delta(const SnrCoefficients& c, double omega_ab, double omega_ae, double rs,
                                 ExponentSign sign = ExponentSign::Derived) {
  const double k = std::exp2(rs);
  const double r = omega_ab / omega_ae;
  double expo = omega_ab * (k - 1.0) * (1.0 / c.a_nj - 1.0 / c.a_j);
  if (sign == ExponentSign::Printed) expo = -expo;
  return std::exp(expo) * (k * r + 1.0) / (k * r * (c.b_j / c.a_j) + 1.0);
}

/// Delta under zero-forcing precoding; gamma_j is the per-jammer SNR. Does not
/// depend on gamma_A and is >= 1.
inline double secrecy_improvement_zf(double omega_ab, double omega_ae, double rs, double g_int, double gamma_j) {
  if (!(g_int >= 0.0) || !(gamma_j >= 0.0)) throw std::domain_error("g_int and gamma_j must be >= 0");
  const double k = std::exp2(rs);
  const double r = omega_ab / omega_ae;
  return (k * r + 1.0) / (k * r * (1.0 / (1.0 + g_int * gamma_j)) + 1.0);
}

/// Bob-side factor of Delta, exp(-omega_ab (2^rs - 1)(bob_load - 1) / gamma_a).
/// Exactly 1 when Bob sees no jamming; tends to 0 as gamma_a -> 0+ otherwise.
inline double delta_bob_factor(double gamma_a, double bob_load, double omega_ab, double rs) {
  const double bob_excess = bob_load - 1.0;
  if (bob_excess == 0.0) return 1.0;
  return std::exp(-omega_ab * (std::exp2(rs) - 1.0) * bob_excess / gamma_a);
}

/// Eve-side factor of Delta; kr = 2^rs omega_ab / omega_ae.
inline double delta_eve_factor(double kr, double bob_load, double eve_load) {
  return (kr + 1.0) / (kr * (bob_load / eve_load) + 1.0);
}

/// Delta written in terms of jamming loads. Equals the SOP ratio for
/// gamma_a > 0 and gives the gamma_a -> 0+ limit at gamma_a = 0 (zero for
/// any jamming at Bob, the zero-forcing value otherwise).
inline double delta_from_loads(double gamma_a, const JammingLoads& loads, double omega_ab, double omega_ae,
                               double rs) {
  const double kr = std::exp2(rs) * (omega_ab / omega_ae);
  return delta_bob_factor(gamma_a, loads.bob, omega_ab, rs) * delta_eve_factor(kr, loads.bob, loads.eve);
}

/// Effective jamming coefficients when the jammer-Bob CSI carries a
/// proportional error: h_hat = h (1 + p).
struct ImperfectCsi {
  double p1 = 0.0;
  double p2 = 0.0;
  double h_int_b_hat = 0.0;
  double h_int_e_hat = 0.0;
};

inline ImperfectCsi imperfect_csi_channels(const ChannelSet& ch, double p1, double p2) {
  ImperfectCsi out;
  out.p1 = p1;
  out.p2 = p2;
  out.h_int_b_hat = ch.j1b.coeff * ch.j2b.coeff * (p2 - p1);
  out.h_int_e_hat = ch.h_int + p2 * ch.j1e.coeff * ch.j2b.coeff - p1 * ch.j2e.coeff * ch.j1b.coeff;
  return out;
}

}  // namespace uavjam
