#pragma once

// Closed-form equilibria for every game variant.

#include <algorithm>
#include <array>
#include <cmath>

#include "cvgame/model.hpp"
#include "cvgame/optics.hpp"
#include "cvgame/payoffs.hpp"

namespace cvgame {

inline EquilibriumReport classical_nash(double k) {
  detail::require(std::isfinite(k) && k > 0.0, "classical nash: k > 0");
  const double q = k / 3.0;
  const auto u = classical_payoffs(q, q, MarketParams::finite(k, 0.0));
  return {{"q1", "q2"}, {Strategy(q), Strategy(q)}, {u.u1, u.u2}};
}

/// Symmetric equilibrium of the mean-photon-number game:
/// x*^2 = 2k cos^2 g / (1 + 2 cos^2 g), u = k^2 cos^2 g / (1 + 2 cos^2 g)^2.
inline EquilibriumReport nash_classical_apparatus(double k, Coupling coupling) {
  detail::require(std::isfinite(k) && k > 0.0, "nash (classical apparatus): k > 0");
  const double C = coupling.cos_sq();
  const double x = std::sqrt(2.0 * k * C / (1.0 + 2.0 * C));
  const double u = k * k * C / ((1.0 + 2.0 * C) * (1.0 + 2.0 * C));
  return {{"x1", "x2"}, {Strategy(x), Strategy(x)}, {u, u}};
}

/// Same as nash_classical_apparatus with the effective margin k - 1.
inline EquilibriumReport nash_quantum_apparatus(double k, Coupling coupling) {
  detail::require(std::isfinite(k) && k >= 1.0, "nash (quantum apparatus): k >= 1");
  if (k == 1.0) return {{"x1", "x2"}, {Strategy(0.0), Strategy(0.0)}, {0.0, 0.0}};
  return nash_classical_apparatus(k - 1.0, coupling);
}

// --- finite market, photon counting ---------------------------------------

struct FiniteOptimum {
  double x_opt = 0.0;
  double u_opt = 0.0;
  int m_max = 0;
  double tail_bound = 0.0;
  double retained_mass = 0.0;
};

/// Maximises the symmetric per-firm payoff of the finite-market
/// photon-counting game over x in [0, 4 sqrt(2k)]: a 129-point scan picks
/// the bracket, golden-section refines it.
inline FiniteOptimum finite_a_optimum(const MarketParams& market, Coupling coupling,
                                      const PoissonTruncation& trunc = PoissonTruncation{}) {
  if (!market.is_finite())
    throw InvalidParameter("finite-a optimum: requires a finite market");
  const double x_hi = 4.0 * std::sqrt(2.0 * market.k());
  auto value = [&](double x) {
    return quantum_apparatus_payoffs_finite(Strategy(x), Strategy(x), coupling, market, trunc).u1;
  };

  constexpr int kScan = 128;
  int best = 0;
  double best_u = value(0.0);
  for (int i = 1; i <= kScan; ++i) {
    const double u = value(x_hi * i / kScan);
    if (u > best_u) {
      best_u = u;
      best = i;
    }
  }
  double lo = x_hi * std::max(best - 1, 0) / kScan;
  double hi = x_hi * std::min(best + 1, kScan) / kScan;

  constexpr double kInvPhi = 0.6180339887498949;
  double c = hi - kInvPhi * (hi - lo);
  double d = lo + kInvPhi * (hi - lo);
  double fc = value(c), fd = value(d);
  while (hi - lo > 1e-10) {
    if (fc >= fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - kInvPhi * (hi - lo);
      fc = value(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + kInvPhi * (hi - lo);
      fd = value(d);
    }
  }
  const double x = 0.5 * (lo + hi);
  TruncatedSum info;
  const auto u = quantum_apparatus_payoffs_finite(Strategy(x), Strategy(x), coupling, market,
                                                  trunc, &info);
  FiniteOptimum out{x, u.u1, std::max(info.m1_max, info.m2_max), trunc.tail_bound(),
                    info.retained_mass};
  if (best_u > out.u_opt) {
    // scan point beat the refined one (non-unimodal payoff); keep the scan point
    const double xs = x_hi * best / kScan;
    quantum_apparatus_payoffs_finite(Strategy(xs), Strategy(xs), coupling, market, trunc, &info);
    out = {xs, best_u, std::max(info.m1_max, info.m2_max), trunc.tail_bound(),
           info.retained_mass};
  }
  return out;
}

// --- asymmetric information --------------------------------------------------

struct RegionLabel {
  Region region = Region::A;
  double boundary_value = 0.0;  // max[(2(c_H - c1) - k) / (k - (c_H - c1)), 0]
};

/// Region A while the high-cost type still produces; B when it is priced out.
/// A tie with cos 2g is classified as B.
inline RegionLabel classify_region(const InfoStructure& info, Coupling coupling) {
  const double gap = info.high_cost_gap();
  const double k = info.k();
  detail::require(k > gap, "region: k > c_H - c1");
  const double b = std::max((2.0 * gap - k) / (k - gap), 0.0);
  const double c2 = coupling.cos2();
  return {b < c2 ? Region::A : Region::B, b};
}

/// Strategies (x1, x2H, x2L) of the Bayes-Nash equilibrium.
inline EquilibriumReport bayes_nash(const InfoStructure& info, Coupling coupling) {
  const double C = coupling.cos_sq();
  const double c2 = coupling.cos2();
  if (std::abs(1.0 - 4.0 * C * C) < 1e-14)
    throw InvalidParameter("bayes nash: gamma too close to pi/4 (1 - 4 cos^4 g below 1e-14)");

  const auto label = classify_region(info, coupling);
  const double k = info.k();
  const double theta = info.theta();
  const double delta = info.delta();

  double X1, XH, XL;
  if (label.region == Region::A) {
    X1 = 2.0 * k * C / (1.0 + 2.0 * C);
    // Equivalent to the (.. )/(1 - 4 cos^4 g) form but without the 0/0 at pi/4.
    XH = info.k_high() - X1 / (2.0 * C);
    XL = info.k_low() - X1 / (2.0 * C);
  } else {
    const double den = theta + c2 * (2.0 + c2);
    X1 = 2.0 * C * (theta * k - theta * (1.0 - theta) * delta + k * c2) / den;
    XH = 0.0;
    XL = 2.0 * C * (theta * delta + (k + theta * delta) * c2) / den;
  }
  X1 = std::max(X1, 0.0);
  XH = std::max(XH, 0.0);
  XL = std::max(XL, 0.0);

  const Strategy x1(std::sqrt(X1)), xh(std::sqrt(XH)), xl(std::sqrt(XL));
  const auto high = bayes_payoffs(x1, xh, coupling, info);
  const auto low = bayes_payoffs(x1, xl, coupling, info);
  const double U1 = theta * high.u1 + (1.0 - theta) * low.u1;
  const double U2 = theta * high.u2H + (1.0 - theta) * low.u2L;
  return {{"x1", "x2H", "x2L"}, {x1, xh, xl}, {U1, U2}, label.region};
}

/// Type-averaged profits at the Bayes-Nash equilibrium, computed from the
/// equilibrium strategies and the per-type payoffs.
inline PayoffPair bayes_average_profits(const InfoStructure& info, Coupling coupling) {
  const auto r = bayes_nash(info, coupling);
  return {r.profits[0], r.profits[1]};
}

/// Closed forms of the average profits: the short region-A
/// expression and the expanded region-B polynomial. Kept as an independent
/// cross-check of bayes_average_profits.
inline PayoffPair bayes_average_profits_closed_form(const InfoStructure& info, Coupling coupling) {
  const auto label = classify_region(info, coupling);
  const double k = info.k();
  const double D = info.delta();
  const double t = info.theta();
  const double c2 = coupling.cos2();
  if (label.region == Region::A) {
    const double xi = D * D * t * (1.0 - t);
    const double den = 8.0 * (2.0 + c2) * (2.0 + c2);
    const double U1 = 4.0 * (k * k - xi) / den + (4.0 * k * k + xi * c2 * (3.0 + c2)) * c2 / den;
    return {U1, U1 + 0.25 * xi};
  }
  const double C = coupling.cos_sq();
  const double S = coupling.sin_sq();
  const double c4 = std::cos(4.0 * coupling.gamma());
  const double den = 4.0 * std::pow(2.0 * t + 4.0 * c2 + c4 + 1.0, 2);
  const double lead = 4.0 * t * ((k + D * (t - 1.0)) * t + k * c2);

  const double U1 =
      C *
      (lead *
           (-2.0 * D * t * t + 2.0 * k * t + 2.0 * D * t + k -
            2.0 * (k * (t - 3.0) + D * (t - 1.0) * t) * c2 + k * c4) *
           C +
       (t - 1.0) * (2.0 * (k * (t - 2.0) + D * t * (t + 1.0)) * c2 +
                    t * (-2.0 * k + D + 2.0 * D * t + D * c4)) *
           (2.0 * (D * (t - 1.0) * t + k * (t + 2.0)) * c2 +
            t * (2.0 * k - D + 2.0 * D * t - D * c4))) /
      den;

  const double U2 =
      C *
      (lead *
           (2.0 * D * t * t + 2.0 * k * t + k - 2.0 * D -
            2.0 * (k * (t - 3.0) + D * (t * t - 5.0 * t + 4.0)) * c2 +
            (k + 2.0 * D * (t - 1.0)) * c4) *
           S -
       (t - 1.0) * std::pow(t * (2.0 * k + D + 2.0 * D * t + D * c4) -
                                2.0 * (k * (t - 2.0) + D * (t - 3.0) * t) * c2,
                            2)) /
      den;
  return {U1, U2};
}

// --- asymmetric photon loss -------------------------------------------------

namespace detail {

struct LossTerms {
  double C, c2, denom;
};

inline LossTerms loss_terms(double gamma, double eta) {
  const double C = std::cos(gamma) * std::cos(gamma);
  const double c2 = std::cos(2.0 * gamma);
  const double c4 = std::cos(4.0 * gamma);
  const double denom =
      1.0 + eta * (6.0 + eta) + 4.0 * eta * c2 - (1.0 - eta) * (1.0 - eta) * c4;
  return {C, c2, denom};
}

}  // namespace detail

/// Profit prefactor of the asymmetric-loss equilibrium profits.
inline double loss_profit_prefactor(double k, double gamma, LossChannel mode2) {
  detail::require_loss_gamma(gamma);
  const double eta = mode2.eta();
  const auto t = detail::loss_terms(gamma, eta);
  return 2.0 * k * k * t.C * ((1.0 + eta) * (1.0 + eta) - (1.0 - eta) * (1.0 - eta) * t.c2 * t.c2) /
         (t.denom * t.denom);
}

/// Equilibrium when firm 2's mode loses photons with transmissivity eta.
/// gamma ranges over the closed interval [0, pi/4].
inline EquilibriumReport asym_loss_nash(double k, double gamma, LossChannel mode2) {
  detail::require(std::isfinite(k) && k > 0.0, "asymmetric loss: k > 0");
  detail::require_loss_gamma(gamma);
  const double eta = mode2.eta();
  const auto t = detail::loss_terms(gamma, eta);
  if (eta == 1.0) {
    // lossless: the symmetric expressions, so the reduction is bit-exact
    const double x = std::sqrt(2.0 * k * t.C / (1.0 + 2.0 * t.C));
    const double u = k * k * t.C / ((1.0 + 2.0 * t.C) * (1.0 + 2.0 * t.C));
    return {{"x1", "x2"}, {Strategy(x), Strategy(x)}, {u, u}};
  }
  const double X1 = 8.0 * k * eta * t.C / t.denom;
  const double X2 = 8.0 * k * t.C / t.denom;
  const double xi = loss_profit_prefactor(k, gamma, mode2);
  const double U1 = xi * (1.0 + eta - (1.0 - eta) * t.c2);
  const double U2 = xi * eta * (1.0 + eta + (1.0 - eta) * t.c2);
  return {{"x1", "x2"}, {Strategy(std::sqrt(X1)), Strategy(std::sqrt(X2))}, {U1, U2}};
}

inline EquilibriumReport asym_loss_nash(double k, Coupling coupling, LossChannel mode2) {
  return asym_loss_nash(k, coupling.gamma(), mode2);
}

/// Scaled profits (U1/k^2, U2/k^2) in the limit eta -> 0. The limit jumps at
/// gamma = 0, so it is tabulated rather than evaluated.
struct LossLimit {
  double u1_over_k2;
  double u2_over_k2;
};

inline constexpr std::array<LossLimit, 2> kEtaToZeroLimit{{
    {1.0 / 9.0, 1.0 / 9.0},  // gamma = 0
    {1.0 / 4.0, 0.0},        // gamma in (0, pi/4]
}};

inline LossLimit eta_to_zero_limit(double gamma) {
  detail::require_loss_gamma(gamma);
  return gamma == 0.0 ? kEtaToZeroLimit[0] : kEtaToZeroLimit[1];
}

// --- symmetric photon loss ----------------------------------------------------

/// Pre-amplifies a strategy so that loss exp(-kappa t) on both modes leaves
/// the measured amplitudes unchanged.
inline Strategy loss_compensation(Strategy x, double kappa_t) {
  detail::require(std::isfinite(kappa_t) && kappa_t >= 0.0, "compensation: kappa t >= 0");
  return Strategy(x.value() * std::exp(0.5 * kappa_t));
}

}  // namespace cvgame
