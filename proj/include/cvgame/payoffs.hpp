#pragma once

#include "cvgame/model.hpp"
#include "cvgame/optics.hpp"

namespace cvgame {

struct PayoffPair {
  double u1 = 0.0;
  double u2 = 0.0;

  double total() const { return u1 + u2; }
};

/// Firm 1's profit and firm 2's profit for each cost type.
struct BayesPayoffs {
  double u1 = 0.0;
  double u2H = 0.0;
  double u2L = 0.0;
};

/// Cournot profits q_i [P(Q) - c] with P(Q) = a - Q, floored at zero for Q > a.
inline PayoffPair classical_payoffs(double q1, double q2, const MarketParams& market) {
  detail::require(std::isfinite(q1) && std::isfinite(q2) && q1 >= 0.0 && q2 >= 0.0,
                  "classical payoffs: q_i >= 0");
  const double Q = q1 + q2;
  if (market.is_finite() && Q > market.a()) return {-market.c() * q1, -market.c() * q2};
  const double margin = market.k() - Q;
  return {q1 * margin, q2 * margin};
}

/// Profits when the firms' quantities are the mean photon numbers n_i.
inline PayoffPair classical_apparatus_payoffs(Strategy x1, Strategy x2, Coupling coupling,
                                              double k) {
  const auto n = expected_quantities(x1, x2, coupling);
  const double margin = k - 0.5 * (x1.squared() + x2.squared());
  return {n.n1 * margin, n.n2 * margin};
}

/// Photon-counting profits in the limit a, c -> infinity; the Poisson
/// variance lowers the effective margin to k - 1.
inline PayoffPair quantum_apparatus_payoffs_limit(Strategy x1, Strategy x2, Coupling coupling,
                                                  const MarketParams& market) {
  if (market.is_finite())
    throw InvalidParameter("quantum apparatus closed form: requires the infinite-limit market");
  return classical_apparatus_payoffs(x1, x2, coupling, market.k() - 1.0);
}

/// Photon-counting profits for a finite market, summed over the truncated
/// Poisson grid. Counts with m1 + m2 > a sell at price zero.
inline PayoffPair quantum_apparatus_payoffs_finite(Strategy x1, Strategy x2, Coupling coupling,
                                                   const MarketParams& market,
                                                   const PoissonTruncation& trunc,
                                                   TruncatedSum* info = nullptr) {
  if (!market.is_finite())
    throw InvalidParameter("quantum apparatus series: requires a finite market");
  const double a = market.a();
  const double c = market.c();
  const double k = market.k();
  auto kernel = [=](int which) {
    return [=](int m1, int m2) {
      const double mi = which == 1 ? m1 : m2;
      const double Q = static_cast<double>(m1) + m2;
      return Q <= a ? mi * (k - Q) : -c * mi;
    };
  };
  const auto n = expected_quantities(x1, x2, coupling);
  const auto s1 = truncated_expectation(kernel(1), n, trunc);
  const auto s2 = truncated_expectation(kernel(2), n, trunc);
  if (info) *info = s1;
  return {s1.value, s2.value};
}

inline BayesPayoffs bayes_payoffs(Strategy x1, Strategy x2, Coupling coupling,
                                  const InfoStructure& info) {
  const auto n = expected_quantities(x1, x2, coupling);
  const double half_total = 0.5 * (x1.squared() + x2.squared());
  return {n.n1 * (info.a() - info.c1() - half_total),
          n.n2 * (info.a() - info.c_high() - half_total),
          n.n2 * (info.a() - info.c_low() - half_total)};
}

/// Profits when firm 2's mode passes a loss channel before measurement;
/// the lossy counts enter the price directly.
inline PayoffPair lossy_payoffs(Strategy x1, Strategy x2, double gamma, LossChannel mode2,
                                double k) {
  const auto n = lossy_quantities(x1, x2, gamma, mode2);
  if (mode2.eta() == 1.0) {
    // Same expression tree as classical_apparatus_payoffs so the lossless
    // case matches it bit for bit.
    const double margin = k - 0.5 * (x1.squared() + x2.squared());
    return {n.n1 * margin, n.n2 * margin};
  }
  const double margin = k - n.n1 - n.n2;
  return {n.n1 * margin, n.n2 * margin};
}

inline PayoffPair lossy_payoffs(Strategy x1, Strategy x2, Coupling coupling, LossChannel mode2,
                                double k) {
  return lossy_payoffs(x1, x2, coupling.gamma(), mode2, k);
}

}  // namespace cvgame
