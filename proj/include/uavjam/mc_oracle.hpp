#pragma once

// Seeded Monte Carlo ground truth: empirical secrecy outage from fading
// draws, a signal-level run of the precoded virtual MIMO chain, and the
// check that settles the sign of the Bob-side exponent in Delta.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "uavjam/channel.hpp"
#include "uavjam/parallel.hpp"
#include "uavjam/scenario.hpp"
#include "uavjam/secrecy.hpp"

namespace uavjam {

/// How ground-link gains are drawn in SOP trials.
enum class GainSampling {
  Exponential,      // g ~ Exp(omega) directly
  ComplexGaussian,  // g = |h|^2, h ~ CN(0, 1/omega)
};

struct McConfig {
  std::uint64_t trials = 100000;
  std::uint64_t seed = 1;
  std::uint64_t symbol_blocks = 64;
  GainSampling sampling = GainSampling::Exponential;
  unsigned workers = 1;
};

struct McResult {
  double empirical_sop = 0.0;
  double stderr_ = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t outages = 0;

  double success() const { return 1.0 - empirical_sop; }
};

/// Thrown when neither or both exponent-sign variants fit the Monte Carlo
/// evidence.
class OracleInconclusiveError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

namespace rng {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed for `block` of `stream` under a master seed. Streams keep separate
/// experiments (e.g. the jammed and unjammed runs) statistically independent.
inline std::uint64_t block_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t block) {
  return splitmix64(splitmix64(splitmix64(seed) ^ stream) ^ block);
}

using Engine = std::mt19937_64;

inline Engine block_engine(std::uint64_t seed, std::uint64_t stream, std::uint64_t block) {
  return Engine(block_seed(seed, stream, block));
}

}  // namespace rng

inline constexpr std::uint64_t kTrialBlock = 8192;
inline constexpr std::size_t kSymbolsPerBlock = 256;

inline double binomial_stderr(double p, std::uint64_t n) {
  return n == 0 ? 0.0 : std::sqrt(p * (1.0 - p) / static_cast<double>(n));
}

/// Circularly-symmetric complex Gaussian coefficient with E|h|^2 = 1/omega.
inline std::complex<double> draw_ground_coeff(rng::Engine& eng, double omega) {
  std::normal_distribution<double> n(0.0, std::sqrt(0.5 / omega));
  const double re = n(eng);
  const double im = n(eng);
  return {re, im};
}

inline double draw_ground_gain(rng::Engine& eng, double omega, GainSampling mode) {
  if (mode == GainSampling::ComplexGaussian) return std::norm(draw_ground_coeff(eng, omega));
  return std::exponential_distribution<double>(omega)(eng);
}

/// Empirical Pr[C_S < rs] with gamma_B = a g_AB, gamma_E = b g_AE and
/// C_S = [log2((1 + gamma_B) / (1 + gamma_E))]^+.
inline McResult simulate_sop_coeffs(double a, double b, double omega_ab, double omega_ae, double rs,
                                    const McConfig& cfg, std::uint64_t stream = 0) {
  if (cfg.trials == 0) throw std::invalid_argument("McConfig.trials must be >= 1");
  if (!(a >= 0.0) || !(b >= 0.0)) throw std::domain_error("SNR scale factors must be >= 0");
  if (!(omega_ab > 0.0) || !(omega_ae > 0.0)) throw std::domain_error("link rates must be > 0");
  const std::uint64_t nblocks = (cfg.trials + kTrialBlock - 1) / kTrialBlock;
  std::vector<std::uint64_t> outages(nblocks, 0);
  parallel_for(nblocks, cfg.workers, [&](std::size_t blk) {
    rng::Engine eng = rng::block_engine(cfg.seed, stream, blk);
    const std::uint64_t begin = blk * kTrialBlock;
    const std::uint64_t end = std::min(cfg.trials, begin + kTrialBlock);
    std::uint64_t count = 0;
    for (std::uint64_t t = begin; t < end; ++t) {
      const double g_ab = draw_ground_gain(eng, omega_ab, cfg.sampling);
      const double g_ae = draw_ground_gain(eng, omega_ae, cfg.sampling);
      const double cs = std::max(std::log2((1.0 + a * g_ab) / (1.0 + b * g_ae)), 0.0);
      if (cs < rs) ++count;
    }
    outages[blk] = count;
  });
  McResult r;
  r.trials = cfg.trials;
  for (std::uint64_t c : outages) r.outages += c;
  r.empirical_sop = static_cast<double>(r.outages) / static_cast<double>(r.trials);
  r.stderr_ = binomial_stderr(r.empirical_sop, r.trials);
  return r;
}

/// Empirical SOP with jamming for Eve at `eve`, under the scenario's scheme.
inline McResult simulate_sop(const Scenario& s, Point2 eve, const McConfig& cfg, std::uint64_t stream = 0) {
  const ChannelSet ch = channel_set(s, eve);
  const SnrCoefficients c = snr_coefficients(s.scheme, ch, s.power);
  return simulate_sop_coeffs(c.a_j, c.b_j, ch.omega_ab(), ch.omega_ae(), s.secrecy_rate_rs, cfg, stream);
}

/// Proportional CSI errors on the jammer-Bob coefficients used by the
/// precoder.
struct CsiError {
  double p1 = 0.0;
  double p2 = 0.0;
};

struct ZfSignalReport {
  double bob_jam_power = 0.0;  // time-averaged |jamming at Bob|^2
  double eve_jam_power = 0.0;
  double bob_jam_stderr = 0.0;  // across symbol blocks
  double eve_jam_stderr = 0.0;
  double bob_jam_gain = 0.0;  // sum |jamming|^2 / sum s_J^2
  double eve_jam_gain = 0.0;
  double g_int = 0.0;
  double p_j = 0.0;
  std::uint64_t symbols = 0;
};

/// Noise-free run of y = H Q P s with H = [h_AB h_J1B h_J2B; h_AE h_J1E h_J2E],
/// P = diag(sqrt(P_A), sqrt(P_J), sqrt(P_J)), Q = diag(1, h^_J2B, -h^_J1B)
/// and a common jamming symbol s_J1 = s_J2 = s_J. Ground coefficients are
/// redrawn per symbol block.
inline ZfSignalReport simulate_zf_signals(const Scenario& s, Point2 eve, const McConfig& cfg,
                                          CsiError csi = {}) {
  if (cfg.symbol_blocks == 0) throw std::invalid_argument("McConfig.symbol_blocks must be >= 1");
  const ChannelSet ch = channel_set(s, eve);
  const double p_a = s.power.gamma_a * s.env.noise_power;
  const double p_j = zf_jammer_power(s.power) * s.env.noise_power;
  const double h1b_hat = ch.j1b.coeff * (1.0 + csi.p1);
  const double h2b_hat = ch.j2b.coeff * (1.0 + csi.p2);

  using Mat23 = Eigen::Matrix<std::complex<double>, 2, 3>;
  using Vec3c = Eigen::Matrix<std::complex<double>, 3, 1>;
  const Eigen::DiagonalMatrix<std::complex<double>, 3> q(1.0, h2b_hat, -h1b_hat);
  const Eigen::DiagonalMatrix<std::complex<double>, 3> p(std::sqrt(p_a), std::sqrt(p_j), std::sqrt(p_j));

  struct BlockStats {
    double bob = 0.0, eve = 0.0, sj2 = 0.0;
  };
  std::vector<BlockStats> blocks(cfg.symbol_blocks);
  parallel_for(cfg.symbol_blocks, cfg.workers, [&](std::size_t blk) {
    rng::Engine eng = rng::block_engine(cfg.seed, 0x5157u, blk);
    Mat23 h;
    h(0, 0) = draw_ground_coeff(eng, ch.omega_ab());
    h(1, 0) = draw_ground_coeff(eng, ch.omega_ae());
    h(0, 1) = ch.j1b.coeff;
    h(0, 2) = ch.j2b.coeff;
    h(1, 1) = ch.j1e.coeff;
    h(1, 2) = ch.j2e.coeff;
    std::normal_distribution<double> sym(0.0, 1.0);
    BlockStats st;
    for (std::size_t m = 0; m < kSymbolsPerBlock; ++m) {
      const double s_a = sym(eng);
      const double s_j = sym(eng);
      const Vec3c x = q * (p * Vec3c(s_a, s_j, s_j));
      const Eigen::Matrix<std::complex<double>, 2, 1> jam = h.rightCols<2>() * x.tail<2>();
      st.bob += std::norm(jam(0));
      st.eve += std::norm(jam(1));
      st.sj2 += s_j * s_j;
    }
    blocks[blk] = st;
  });

  ZfSignalReport r;
  r.g_int = ch.g_int;
  r.p_j = p_j;
  r.symbols = cfg.symbol_blocks * kSymbolsPerBlock;
  const double nb = static_cast<double>(cfg.symbol_blocks);
  const double len = static_cast<double>(kSymbolsPerBlock);
  double bob_sum = 0.0, eve_sum = 0.0, sj2_sum = 0.0;
  for (const BlockStats& b : blocks) {
    bob_sum += b.bob;
    eve_sum += b.eve;
    sj2_sum += b.sj2;
  }
  r.bob_jam_power = bob_sum / (nb * len);
  r.eve_jam_power = eve_sum / (nb * len);
  r.bob_jam_gain = sj2_sum > 0.0 ? bob_sum / sj2_sum : 0.0;
  r.eve_jam_gain = sj2_sum > 0.0 ? eve_sum / sj2_sum : 0.0;
  if (cfg.symbol_blocks > 1) {
    double vb = 0.0, ve = 0.0;
    for (const BlockStats& b : blocks) {
      vb += std::pow(b.bob / len - r.bob_jam_power, 2);
      ve += std::pow(b.eve / len - r.eve_jam_power, 2);
    }
    r.bob_jam_stderr = std::sqrt(vb / (nb - 1.0) / nb);
    r.eve_jam_stderr = std::sqrt(ve / (nb - 1.0) / nb);
  }
  return r;
}

/// One Classical-scheme parameter set and how well each exponent sign of
/// the product form of Delta explains the Monte Carlo estimate.
struct SignDraw {
  SnrCoefficients coeffs;
  double omega_ab = 1.0;
  double omega_ae = 1.0;
  double rs = 1.0;
  double empirical_delta = 0.0;
  double delta_stderr = 0.0;
  double derived = 0.0;
  double printed = 0.0;
  bool derived_fits = false;
  bool printed_fits = false;
  bool applicable = true;  // false when a_j == a_nj: both signs coincide
};

struct SignVerdict {
  ExponentSign verdict = ExponentSign::Derived;
  std::size_t derived_fits = 0;
  std::size_t printed_fits = 0;
  std::size_t applicable = 0;
  std::vector<SignDraw> draws;
};

/// Estimates Delta = (1 - SOP_J) / (1 - SOP_NJ) from two independent runs
/// and compares it with both sign variants at 3 propagated standard errors.
inline SignDraw evaluate_sign_draw(const SnrCoefficients& c, double omega_ab, double omega_ae, double rs,
                                   const McConfig& cfg, std::uint64_t stream) {
  SignDraw d;
  d.coeffs = c;
  d.omega_ab = omega_ab;
  d.omega_ae = omega_ae;
  d.rs = rs;
  const McResult jam = simulate_sop_coeffs(c.a_j, c.b_j, omega_ab, omega_ae, rs, cfg, 2 * stream + 1);
  const McResult ref = simulate_sop_coeffs(c.a_nj, c.b_nj, omega_ab, omega_ae, rs, cfg, 2 * stream + 2);
  const double pj = jam.success();
  const double pn = ref.success();
  d.derived = product_form_delta(c, omega_ab, omega_ae, rs, ExponentSign::Derived);
  d.printed = product_form_delta(c, omega_ab, omega_ae, rs, ExponentSign::Printed);
  d.applicable = c.a_j != c.a_nj;
  if (pn > 0.0) {
    d.empirical_delta = pj / pn;
    const double rel_j = pj > 0.0 ? jam.stderr_ / pj : 0.0;
    const double rel_n = ref.stderr_ / pn;
    d.delta_stderr = d.empirical_delta * std::sqrt(rel_j * rel_j + rel_n * rel_n);
    // A zero count carries no information about the ratio's scale.
    if (pj == 0.0) d.delta_stderr = 1.0 / (pn * static_cast<double>(cfg.trials));
  } else {
    d.empirical_delta = std::numeric_limits<double>::quiet_NaN();
    d.delta_stderr = std::numeric_limits<double>::infinity();
  }
  const double tol = 3.0 * d.delta_stderr;
  d.derived_fits = std::abs(d.empirical_delta - d.derived) <= tol;
  d.printed_fits = std::abs(d.empirical_delta - d.printed) <= tol;
  return d;
}

namespace detail {

/// Random Classical parameter set whose exponent is large enough to tell the
/// two signs apart and whose secrecy probabilities are not vanishingly small.
inline SignDraw random_sign_parameters(rng::Engine& eng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (;;) {
    const double alpha = 0.2 + 0.8 * u(eng);
    const double d_ab = 5.0 + 25.0 * u(eng);
    const double d_ae = 2.0 + 38.0 * u(eng);
    const double gamma_a = 5.0 + 45.0 * u(eng);
    const double rs = 0.25 + 1.25 * u(eng);
    const double bob_load = 1.2 + 1.8 * u(eng);
    const double eve_load = 1.2 + 2.8 * u(eng);
    SignDraw d;
    d.omega_ab = std::pow(d_ab, alpha);
    d.omega_ae = std::pow(d_ae, alpha);
    d.rs = rs;
    d.coeffs = {gamma_a, gamma_a, gamma_a / bob_load, gamma_a / eve_load};
    const double expo = d.omega_ab * (std::exp2(rs) - 1.0) * (bob_load - 1.0) / gamma_a;
    const double succ_nj = secrecy_success(gamma_a, gamma_a, d.omega_ab, d.omega_ae, rs);
    const double succ_j = secrecy_success(d.coeffs.a_j, d.coeffs.b_j, d.omega_ab, d.omega_ae, rs);
    if (expo >= 0.05 && succ_nj >= 0.05 && succ_j >= 0.02) return d;
  }
}

}  // namespace detail

/// Runs `draws` random Classical parameter sets and returns the sign variant
/// that fits on at least 95% of them.
inline SignVerdict resolve_delta_sign(std::size_t draws, const McConfig& cfg) {
  if (draws == 0) throw std::invalid_argument("resolve_delta_sign needs at least one draw");
  rng::Engine eng = rng::block_engine(cfg.seed, 0xd17au, 0);
  std::vector<SignDraw> params(draws);
  for (auto& p : params) p = detail::random_sign_parameters(eng);

  SignVerdict v;
  v.draws.resize(draws);
  McConfig inner = cfg;
  inner.workers = 1;
  parallel_for(draws, cfg.workers, [&](std::size_t i) {
    const SignDraw& p = params[i];
    v.draws[i] = evaluate_sign_draw(p.coeffs, p.omega_ab, p.omega_ae, p.rs, inner, 1000 + i);
  });
  for (const SignDraw& d : v.draws) {
    if (!d.applicable) continue;
    ++v.applicable;
    v.derived_fits += d.derived_fits ? 1 : 0;
    v.printed_fits += d.printed_fits ? 1 : 0;
  }
  const double need = 0.95 * static_cast<double>(v.applicable);
  const bool derived_ok = v.applicable > 0 && static_cast<double>(v.derived_fits) >= need;
  const bool printed_ok = v.applicable > 0 && static_cast<double>(v.printed_fits) >= need;
  if (derived_ok == printed_ok) {
    std::ostringstream msg;
    msg << "exponent sign inconclusive: derived fits " << v.derived_fits << "/" << v.applicable
        << ", printed fits " << v.printed_fits << "/" << v.applicable << " (trials per run " << cfg.trials << ")";
    throw OracleInconclusiveError(msg.str());
  }
  v.verdict = derived_ok ? ExponentSign::Derived : ExponentSign::Printed;
  return v;
}

}  // namespace uavjam
