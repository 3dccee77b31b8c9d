#pragma once

// Iterated best response: an independent numerical route to every
// equilibrium in the library. It only evaluates payoff functionals and
// never looks at the closed forms.

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cvgame/model.hpp"
#include "cvgame/payoffs.hpp"

namespace cvgame {

struct OracleConfig {
  double tol_x = 1e-10;  // fixed point: max strategy change per round
  double tol_u = 1e-12;  // golden-section stops once payoff differences reach this scale
  int max_iters = 10'000;
  std::optional<double> x_hi;  // overrides the game's bracket
  int scan_points = 2048;      // grid for the final deviation scan
};

/// A game as a bundle of payoff functionals over a strategy vector.
/// Slot i is chosen to maximise objectives[i] with the other slots fixed.
struct Game {
  std::vector<std::string> labels;
  std::vector<std::function<double(std::span<const double>)>> objectives;
  /// Reported per-firm profits for a strategy vector.
  std::function<std::vector<double>(std::span<const double>)> profits;
  double x_hi = 1.0;
  double payoff_scale = 1.0;  // k^2, used by callers to scale tolerances
};

class OracleNonConvergence : public NumericalFailure {
 public:
  OracleNonConvergence(const std::string& what, EquilibriumReport last)
      : NumericalFailure(what), last_(std::move(last)) {}
  const EquilibriumReport& last_iterate() const { return last_; }

 private:
  EquilibriumReport last_;
};

namespace detail {

// Maximiser of a unimodal f on [lo, hi]. Golden-section narrows the bracket
// until payoff differences approach tol_u; bisection on the sign of a
// central-difference slope then finishes below the value-noise floor.
template <class F>
double line_search(F&& f, double lo, double hi, double tol_u) {
  constexpr double kInvPhi = 0.6180339887498949;
  const double span0 = hi - lo;
  const double stop = std::sqrt(tol_u) * std::max(1.0, span0);
  double c = hi - kInvPhi * (hi - lo);
  double d = lo + kInvPhi * (hi - lo);
  double fc = f(c), fd = f(d);
  while (hi - lo > stop) {
    if (fc >= fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - kInvPhi * (hi - lo);
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + kInvPhi * (hi - lo);
      fd = f(d);
    }
  }

  // strategies are non-negative: one-sided difference at the edge
  auto slope = [&](double x) {
    const double h = 1e-6 * std::max(1.0, std::abs(x));
    if (x < h) return (f(x + h) - f(x)) / h;
    return (f(x + h) - f(x - h)) / (2.0 * h);
  };
  // under indifference (flat payoff) the lower quantity wins
  if (slope(hi) > 0.0) return hi;
  if (lo > 0.0 && slope(lo) <= 0.0) return lo;
  for (int i = 0; i < 80 && hi - lo > 1e-15 * std::max(1.0, hi); ++i) {
    const double mid = 0.5 * (lo + hi);
    if (slope(mid) > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return lo == 0.0 && f(0.0) >= f(hi) ? 0.0 : 0.5 * (lo + hi);
}

inline double objective_at(const Game& g, std::size_t slot, std::vector<double>& x, double v) {
  const double saved = x[slot];
  x[slot] = v;
  const double u = g.objectives[slot](x);
  x[slot] = saved;
  return u;
}

}  // namespace detail

/// Largest payoff gain any slot can find by deviating alone to a point of
/// a uniform grid on [0, x_hi]. Zero at an exact equilibrium.
inline double unilateral_improvement(const Game& game, std::span<const double> strategies,
                                     int scan_points = 2048, std::optional<double> x_hi = {}) {
  const double hi = x_hi.value_or(game.x_hi);
  std::vector<double> x(strategies.begin(), strategies.end());
  double worst = 0.0;
  for (std::size_t s = 0; s < x.size(); ++s) {
    const double base = game.objectives[s](x);
    for (int i = 0; i <= scan_points; ++i) {
      const double u = detail::objective_at(game, s, x, hi * i / scan_points);
      worst = std::max(worst, u - base);
    }
  }
  return worst;
}

inline EquilibriumReport best_response_oracle(const Game& game, const OracleConfig& config = {},
                                              std::span<const double> start = {}) {
  detail::require(config.tol_x > 0.0 && config.tol_u > 0.0, "oracle: tolerances > 0");
  detail::require(config.max_iters >= 1, "oracle: max_iters >= 1");
  const std::size_t n = game.objectives.size();
  detail::require(n >= 1 && game.labels.size() == n, "oracle: one label per strategy slot");
  const double hi = config.x_hi.value_or(game.x_hi);
  detail::require(hi > 0.0, "oracle: x_hi > 0");

  std::vector<double> x(n, 0.5 * hi);
  if (!start.empty()) {
    detail::require(start.size() == n, "oracle: start has one value per slot");
    for (std::size_t i = 0; i < n; ++i) x[i] = std::clamp(start[i], 0.0, hi);
  }

  auto report = [&](int iters) {
    EquilibriumReport r;
    r.labels = game.labels;
    for (double v : x) r.x_star.emplace_back(v);
    r.profits = game.profits(x);
    r.source = Source::Oracle;
    r.iterations = iters;
    r.residual = unilateral_improvement(game, x, config.scan_points, hi);
    return r;
  };

  for (int it = 1; it <= config.max_iters; ++it) {
    double change = 0.0;
    for (std::size_t s = 0; s < n; ++s) {
      auto f = [&](double v) { return detail::objective_at(game, s, x, v); };
      const double next = detail::line_search(f, 0.0, hi, config.tol_u);
      change = std::max(change, std::abs(next - x[s]));
      x[s] = next;
    }
    if (change < config.tol_x) return report(it);
  }
  throw OracleNonConvergence("oracle: no fixed point within " +
                                 std::to_string(config.max_iters) + " rounds",
                             report(config.max_iters));
}

// --- game bundles -------------------------------------------------------------

/// Cournot game in quantities q_i.
inline Game classical_cournot_game(double k) {
  detail::require(k > 0.0, "cournot game: k > 0");
  const auto market = MarketParams::finite(k, 0.0);
  Game g;
  g.labels = {"q1", "q2"};
  g.objectives = {
      [market](std::span<const double> q) { return classical_payoffs(q[0], q[1], market).u1; },
      [market](std::span<const double> q) { return classical_payoffs(q[0], q[1], market).u2; }};
  g.profits = [market](std::span<const double> q) {
    const auto u = classical_payoffs(q[0], q[1], market);
    return std::vector<double>{u.u1, u.u2};
  };
  g.x_hi = 4.0 * std::sqrt(2.0 * k);
  g.payoff_scale = k * k;
  return g;
}

inline Game classical_apparatus_game(double k, Coupling coupling) {
  detail::require(k > 0.0, "classical apparatus game: k > 0");
  auto pay = [k, coupling](std::span<const double> x) {
    return classical_apparatus_payoffs(Strategy(x[0]), Strategy(x[1]), coupling, k);
  };
  Game g;
  g.labels = {"x1", "x2"};
  g.objectives = {[pay](std::span<const double> x) { return pay(x).u1; },
                  [pay](std::span<const double> x) { return pay(x).u2; }};
  g.profits = [pay](std::span<const double> x) {
    const auto u = pay(x);
    return std::vector<double>{u.u1, u.u2};
  };
  g.x_hi = 4.0 * std::sqrt(2.0 * k);
  g.payoff_scale = k * k;
  return g;
}

inline Game quantum_apparatus_game(double k, Coupling coupling) {
  const auto market = MarketParams::infinite_limit(k);
  auto pay = [market, coupling](std::span<const double> x) {
    return quantum_apparatus_payoffs_limit(Strategy(x[0]), Strategy(x[1]), coupling, market);
  };
  Game g;
  g.labels = {"x1", "x2"};
  g.objectives = {[pay](std::span<const double> x) { return pay(x).u1; },
                  [pay](std::span<const double> x) { return pay(x).u2; }};
  g.profits = [pay](std::span<const double> x) {
    const auto u = pay(x);
    return std::vector<double>{u.u1, u.u2};
  };
  g.x_hi = 4.0 * std::sqrt(2.0 * k);
  g.payoff_scale = k * k;
  return g;
}

/// Three slots (x1, x2H, x2L). Firm 1 maximises its expected payoff over
/// firm 2's cost type; each type of firm 2 maximises its own payoff.
inline Game bayes_game(const InfoStructure& info, Coupling coupling) {
  const double theta = info.theta();
  Game g;
  g.labels = {"x1", "x2H", "x2L"};
  g.objectives = {
      [=](std::span<const double> x) {
        return theta * bayes_payoffs(Strategy(x[0]), Strategy(x[1]), coupling, info).u1 +
               (1.0 - theta) * bayes_payoffs(Strategy(x[0]), Strategy(x[2]), coupling, info).u1;
      },
      [=](std::span<const double> x) {
        return bayes_payoffs(Strategy(x[0]), Strategy(x[1]), coupling, info).u2H;
      },
      [=](std::span<const double> x) {
        return bayes_payoffs(Strategy(x[0]), Strategy(x[2]), coupling, info).u2L;
      }};
  g.profits = [=](std::span<const double> x) {
    const auto high = bayes_payoffs(Strategy(x[0]), Strategy(x[1]), coupling, info);
    const auto low = bayes_payoffs(Strategy(x[0]), Strategy(x[2]), coupling, info);
    return std::vector<double>{theta * high.u1 + (1.0 - theta) * low.u1,
                               theta * high.u2H + (1.0 - theta) * low.u2L};
  };
  g.x_hi = 4.0 * std::sqrt(2.0 * info.k());
  g.payoff_scale = info.k() * info.k();
  return g;
}

/// Firm 2's counts pass a loss channel; its bracket widens by 1/sqrt(eta)
/// since it compensates for the loss.
inline Game asym_loss_game(double k, double gamma, LossChannel mode2) {
  detail::require(k > 0.0, "asymmetric loss game: k > 0");
  detail::require_loss_gamma(gamma);
  auto pay = [=](std::span<const double> x) {
    return lossy_payoffs(Strategy(x[0]), Strategy(x[1]), gamma, mode2, k);
  };
  Game g;
  g.labels = {"x1", "x2"};
  g.objectives = {[pay](std::span<const double> x) { return pay(x).u1; },
                  [pay](std::span<const double> x) { return pay(x).u2; }};
  g.profits = [pay](std::span<const double> x) {
    const auto u = pay(x);
    return std::vector<double>{u.u1, u.u2};
  };
  g.x_hi = 4.0 * std::sqrt(2.0 * k / mode2.eta());
  g.payoff_scale = k * k;
  return g;
}

}  // namespace cvgame
