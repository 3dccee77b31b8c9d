#pragma once

// Parameter sweeps over the closed-form equilibria, CSV output and
// detection of slope discontinuities in the resulting profit curves.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <optional>
#include <ostream>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cvgame/equilibrium.hpp"
#include "cvgame/model.hpp"
#include "cvgame/oracle.hpp"

namespace cvgame {

inline constexpr int kSweepSchemaVersion = 1;

enum class GameKind { SymmetricClassical, SymmetricQuantum, Bayes, AsymLoss };
enum class SweepVariable { Gamma, DeltaOverK, Eta };

inline const char* to_string(GameKind g) {
  switch (g) {
    case GameKind::SymmetricClassical: return "symmetric_classical";
    case GameKind::SymmetricQuantum: return "symmetric_quantum";
    case GameKind::Bayes: return "bayes";
    case GameKind::AsymLoss: return "asym_loss";
  }
  return "?";
}

inline const char* to_string(SweepVariable v) {
  switch (v) {
    case SweepVariable::Gamma: return "gamma";
    case SweepVariable::DeltaOverK: return "delta_over_k";
    case SweepVariable::Eta: return "eta";
  }
  return "?";
}

/// Accepts both '-' and '_' as word separators.
inline std::optional<GameKind> parse_game_kind(std::string_view s) {
  std::string n(s);
  std::replace(n.begin(), n.end(), '-', '_');
  if (n == "symmetric_classical") return GameKind::SymmetricClassical;
  if (n == "symmetric_quantum") return GameKind::SymmetricQuantum;
  if (n == "bayes") return GameKind::Bayes;
  if (n == "asym_loss") return GameKind::AsymLoss;
  return std::nullopt;
}

inline std::optional<SweepVariable> parse_sweep_variable(std::string_view s) {
  std::string n(s);
  std::replace(n.begin(), n.end(), '-', '_');
  if (n == "gamma") return SweepVariable::Gamma;
  if (n == "delta_over_k" || n == "dk") return SweepVariable::DeltaOverK;
  if (n == "eta") return SweepVariable::Eta;
  return std::nullopt;
}

struct GameParams {
  double k = 1.0;
  double theta = 0.5;
  double gamma = 0.0;
  double delta_over_k = 0.5;
  double eta = 1.0;

  double& operator[](SweepVariable v) {
    switch (v) {
      case SweepVariable::Gamma: return gamma;
      case SweepVariable::DeltaOverK: return delta_over_k;
      case SweepVariable::Eta: return eta;
    }
    return gamma;
  }
};

struct SweepSpec {
  GameKind game = GameKind::SymmetricClassical;
  SweepVariable variable = SweepVariable::Gamma;
  double lo = 0.0;
  double hi = kQuarterPi - kDefaultLimitOffset;
  int steps = 201;
  GameParams fixed;
  /// Optional second axis: one curve per value.
  std::optional<SweepVariable> series;
  std::vector<double> series_values;
};

/// Closed-form equilibrium of one game at one parameter point.
/// For the Bayesian game delta/k = 0 is the degenerate symmetric game.
inline EquilibriumReport evaluate_point(GameKind game, const GameParams& p) {
  switch (game) {
    case GameKind::SymmetricClassical:
      return nash_classical_apparatus(p.k, Coupling(p.gamma));
    case GameKind::SymmetricQuantum:
      return nash_quantum_apparatus(p.k, Coupling(p.gamma));
    case GameKind::Bayes: {
      if (p.delta_over_k == 0.0) {
        auto r = nash_classical_apparatus(p.k, Coupling(p.gamma));
        return {{"x1", "x2H", "x2L"}, {r.x_star[0], r.x_star[1], r.x_star[1]}, r.profits,
                Region::A};
      }
      return bayes_nash(InfoStructure::from_ratio(p.theta, p.delta_over_k, p.k),
                        Coupling(p.gamma));
    }
    case GameKind::AsymLoss:
      return asym_loss_nash(p.k, p.gamma, LossChannel::from_eta(p.eta));
  }
  throw InvalidParameter("unknown game");
}

/// Oracle-side game bundle for the same parameter point.
inline Game make_game(GameKind game, const GameParams& p) {
  switch (game) {
    case GameKind::SymmetricClassical: return classical_apparatus_game(p.k, Coupling(p.gamma));
    case GameKind::SymmetricQuantum: return quantum_apparatus_game(p.k, Coupling(p.gamma));
    case GameKind::Bayes: {
      // delta/k = 0 is not a valid info structure; use a vanishing asymmetry
      const double dk = p.delta_over_k == 0.0 ? 1e-12 : p.delta_over_k;
      return bayes_game(InfoStructure::from_ratio(p.theta, dk, p.k), Coupling(p.gamma));
    }
    case GameKind::AsymLoss:
      return asym_loss_game(p.k, p.gamma, LossChannel::from_eta(p.eta));
  }
  throw InvalidParameter("unknown game");
}

namespace detail {

inline void check_value(GameKind game, SweepVariable v, double x, double theta) {
  switch (v) {
    case SweepVariable::Gamma:
      if (game == GameKind::AsymLoss)
        require(x >= 0.0 && x <= kQuarterPi, "sweep: gamma in [0, pi/4]");
      else
        require(x >= 0.0 && x < kQuarterPi, "sweep: gamma in [0, pi/4)");
      return;
    case SweepVariable::DeltaOverK:
      require(game == GameKind::Bayes, "sweep: delta_over_k only applies to the bayes game");
      require(x >= 0.0 && (1.0 - theta) * x < 1.0, "sweep: delta_over_k in [0, 1/(1 - theta))");
      return;
    case SweepVariable::Eta:
      require(game == GameKind::AsymLoss, "sweep: eta only applies to the asym_loss game");
      require(x > 0.0 && x <= 1.0, "sweep: eta in (0, 1]");
      return;
  }
}

}  // namespace detail

inline void validate(const SweepSpec& spec) {
  detail::require(spec.steps >= 2, "sweep: steps >= 2");
  detail::require(std::isfinite(spec.lo) && std::isfinite(spec.hi) && spec.lo < spec.hi,
                  "sweep: lo < hi");
  detail::require(spec.fixed.k > 0.0, "sweep: k > 0");
  if (spec.game == GameKind::SymmetricQuantum)
    detail::require(spec.fixed.k >= 1.0, "sweep: k >= 1 for the quantum apparatus");
  detail::require(spec.fixed.theta > 0.0 && spec.fixed.theta < 1.0, "sweep: theta in (0, 1)");
  detail::check_value(spec.game, spec.variable, spec.lo, spec.fixed.theta);
  detail::check_value(spec.game, spec.variable, spec.hi, spec.fixed.theta);
  if (spec.series) {
    detail::require(*spec.series != spec.variable, "sweep: series axis differs from the sweep axis");
    detail::require(!spec.series_values.empty(), "sweep: series needs at least one value");
    for (double v : spec.series_values)
      detail::check_value(spec.game, *spec.series, v, spec.fixed.theta);
  }
}

inline std::vector<double> sweep_grid(const SweepSpec& spec) {
  std::vector<double> g(spec.steps);
  for (int i = 0; i < spec.steps; ++i)
    g[i] = i + 1 == spec.steps ? spec.hi : spec.lo + (spec.hi - spec.lo) * i / (spec.steps - 1);
  return g;
}

struct SweepRow {
  double series_value = 0.0;
  double value = 0.0;
  std::vector<double> x_star;
  double u1_over_k2 = 0.0;
  double u2_over_k2 = 0.0;
  Region region = Region::NotApplicable;
  GameParams params;

  double total_over_k2() const { return u1_over_k2 + u2_over_k2; }
};

struct SweepResult {
  std::vector<std::string> x_labels;
  std::vector<SweepRow> rows;  // series-major, grid order within a series
};

inline SweepResult run_sweep(const SweepSpec& spec) {
  validate(spec);
  const auto grid = sweep_grid(spec);
  const std::vector<double> series =
      spec.series ? spec.series_values : std::vector<double>{0.0};
  SweepResult out;
  out.rows.reserve(series.size() * grid.size());
  for (double s : series) {
    for (double v : grid) {
      GameParams p = spec.fixed;
      if (spec.series) p[*spec.series] = s;
      p[spec.variable] = v;
      const auto r = evaluate_point(spec.game, p);
      if (out.x_labels.empty()) out.x_labels = r.labels;
      SweepRow row;
      row.series_value = s;
      row.value = v;
      for (const auto& x : r.x_star) row.x_star.push_back(x.value());
      const double k2 = p.k * p.k;
      row.u1_over_k2 = r.profits[0] / k2;
      row.u2_over_k2 = r.profits[1] / k2;
      row.region = r.region;
      row.params = p;
      out.rows.push_back(std::move(row));
    }
  }
  return out;
}

/// Locale-independent shortest-form formatting with 12 significant digits.
inline std::string format_number(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 12);
  return std::string(buf, res.ptr);
}

inline void write_csv(std::ostream& os, const SweepSpec& spec, const SweepResult& result) {
  os << "# schema_version=" << kSweepSchemaVersion << " game=" << to_string(spec.game) << '\n';
  if (spec.series) os << to_string(*spec.series) << ',';
  os << to_string(spec.variable);
  for (const auto& l : result.x_labels) os << ',' << l;
  os << ",u1_over_k2,u2_over_k2,total_over_k2,region\n";
  for (const auto& r : result.rows) {
    if (spec.series) os << format_number(r.series_value) << ',';
    os << format_number(r.value);
    for (double x : r.x_star) os << ',' << format_number(x);
    os << ',' << format_number(r.u1_over_k2) << ',' << format_number(r.u2_over_k2) << ','
       << format_number(r.total_over_k2()) << ',' << to_string(r.region) << '\n';
  }
}

// --- kink detection -------------------------------------------------------------

struct TransitionOptions {
  double factor = 10.0;  // jump must exceed factor x local median jump
  int window = 5;        // half-width of the neighbourhood for the local median
};

struct TransitionReport {
  double location = 0.0;
  double left_slope = 0.0;
  double right_slope = 0.0;
  double jump = 0.0;
  double threshold = 0.0;
  std::string curve;
  double series_value = 0.0;
};

/// Finds points where a sampled curve's slope jumps. At every interior
/// sample the one-sided slopes are compared; a sample is flagged when the
/// jump exceeds `factor` times the median jump of its neighbourhood
/// (excluding its immediate neighbours, which share a kink's spike).
/// Adjacent flags merge into one report located by splitting the kink cell
/// in proportion to the two neighbouring jumps.
inline std::vector<TransitionReport> detect_transition(std::span<const double> xs,
                                                       std::span<const double> ys,
                                                       const TransitionOptions& opt = {}) {
  detail::require(xs.size() == ys.size(), "transition: xs and ys have equal length");
  detail::require(xs.size() >= 5, "transition: at least 5 samples");
  const std::size_t n = xs.size();
  const double h = (xs[n - 1] - xs[0]) / static_cast<double>(n - 1);
  detail::require(h > 0.0, "transition: increasing grid");
  for (std::size_t i = 1; i < n; ++i)
    detail::require(std::abs(xs[i] - xs[i - 1] - h) <= 1e-6 * h,
                    "transition: uniform grid");

  // slope[i] is the slope of cell [i, i+1]; jump[i] lives at sample i (1..n-2)
  std::vector<double> slope(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) slope[i] = (ys[i + 1] - ys[i]) / h;
  std::vector<double> jump(n, 0.0);
  double max_slope = 0.0;
  for (double s : slope) max_slope = std::max(max_slope, std::abs(s));
  for (std::size_t i = 1; i + 1 < n; ++i) jump[i] = std::abs(slope[i] - slope[i - 1]);
  // absolute floor: a flat curve's rounding noise must not register
  double max_abs = 0.0;
  for (double y : ys) max_abs = std::max(max_abs, std::abs(y));
  const double span = xs[n - 1] - xs[0];
  const double floor = 1e-6 * (max_slope + max_abs / span) + 1e-12 / h;

  std::vector<char> flagged(n, 0);
  std::vector<double> thresholds(n, 0.0);
  std::vector<double> nb;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    nb.clear();
    const std::size_t lo = i > static_cast<std::size_t>(opt.window) + 1 ? i - opt.window : 1;
    const std::size_t hi = std::min(n - 2, i + opt.window);
    for (std::size_t j = lo; j <= hi; ++j)
      if (j + 1 < i || j > i + 1) nb.push_back(jump[j]);
    double median = 0.0;
    if (!nb.empty()) {
      std::nth_element(nb.begin(), nb.begin() + nb.size() / 2, nb.end());
      median = nb[nb.size() / 2];
    }
    thresholds[i] = std::max(opt.factor * median, floor);
    flagged[i] = jump[i] > thresholds[i];
  }

  std::vector<TransitionReport> out;
  for (std::size_t i = 1; i + 1 < n;) {
    if (!flagged[i]) {
      ++i;
      continue;
    }
    std::size_t end = i;
    while (end + 1 < n - 1 && flagged[end + 1]) ++end;
    std::size_t peak = i;
    for (std::size_t j = i; j <= end; ++j)
      if (jump[j] > jump[peak]) peak = j;

    // the kink lies in cell [a, a + 1]: peak and its larger-jump neighbour
    const std::size_t a =
        peak + 2 < n && (peak == 1 || jump[peak + 1] >= jump[peak - 1]) ? peak : peak - 1;
    const double ja = jump[a], jb = jump[a + 1];
    TransitionReport r;
    r.threshold = thresholds[peak];
    r.location = xs[a] + h * (ja + jb > 0.0 ? jb / (ja + jb) : 0.5);
    r.left_slope = slope[a - 1];
    r.right_slope = slope[a + 1];
    r.jump = std::abs(r.right_slope - r.left_slope);
    out.push_back(r);
    i = end + 1;
  }
  return out;
}

/// Runs detect_transition on each scaled-profit curve of every series.
inline std::vector<TransitionReport> sweep_transitions(const SweepSpec& spec,
                                                       const SweepResult& result,
                                                       const TransitionOptions& opt = {}) {
  std::vector<TransitionReport> out;
  const std::size_t per = static_cast<std::size_t>(spec.steps);
  for (std::size_t start = 0; start + per <= result.rows.size(); start += per) {
    std::vector<double> xs(per), u1(per), u2(per), tot(per);
    for (std::size_t i = 0; i < per; ++i) {
      const auto& r = result.rows[start + i];
      xs[i] = r.value;
      u1[i] = r.u1_over_k2;
      u2[i] = r.u2_over_k2;
      tot[i] = r.total_over_k2();
    }
    const double s = result.rows[start].series_value;
    for (auto [name, ys] : {std::pair{"u1_over_k2", &u1}, std::pair{"u2_over_k2", &u2},
                            std::pair{"total_over_k2", &tot}}) {
      for (auto t : detect_transition(xs, *ys, opt)) {
        t.curve = name;
        t.series_value = s;
        out.push_back(t);
      }
    }
  }
  return out;
}

/// Re-checks a seeded random subsample of sweep rows with the deviation
/// scan. Returns the largest unilateral gain found, divided by k^2.
inline double spot_check(const SweepSpec& spec, const SweepResult& result,
                         double fraction = 0.05, unsigned seed = 20240601u,
                         int scan_points = 2048) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  for (const auto& row : result.rows) {
    if (u(rng) >= fraction) continue;
    const auto game = make_game(spec.game, row.params);
    worst = std::max(worst, unilateral_improvement(game, row.x_star, scan_points) /
                                (row.params.k * row.params.k));
  }
  return worst;
}

// --- figure presets -------------------------------------------------------------

/// Preset sweeps for the standard figures ("1", "2", "3a", "3b", "4").
/// Open limits use kDefaultLimitOffset.
inline SweepSpec figure_spec(std::string_view fig) {
  constexpr double pi = std::numbers::pi;
  constexpr double eps = kDefaultLimitOffset;
  SweepSpec s;
  s.fixed.theta = 0.5;
  s.fixed.k = 1.0;
  if (fig == "1" || fig == "3b") {
    s.game = GameKind::Bayes;
    s.variable = SweepVariable::DeltaOverK;
    s.lo = 0.0;
    s.hi = 2.0 - eps;
    s.series = SweepVariable::Gamma;
    s.series_values = {0.0, pi / 16, pi / 8, 3 * pi / 16, pi / 4 - eps};
  } else if (fig == "2" || fig == "3a") {
    s.game = GameKind::Bayes;
    s.variable = SweepVariable::Gamma;
    s.lo = 0.0;
    s.hi = pi / 4 - eps;
    s.series = SweepVariable::DeltaOverK;
    s.series_values = {0.0, 0.5, 1.0, 1.5, 2.0 - eps};
  } else if (fig == "4") {
    s.game = GameKind::AsymLoss;
    s.variable = SweepVariable::Gamma;
    s.lo = 0.0;
    s.hi = pi / 4 - eps;
    s.series = SweepVariable::Eta;
    for (int j = 1; j <= 201; ++j) s.series_values.push_back(j / 201.0);
  } else {
    throw InvalidParameter("figure: one of 1, 2, 3a, 3b, 4");
  }
  return s;
}

// --- analysis ---------------------------------------------------------------------

/// Locates the delta/k at which the type-averaged profit of firm 1 switches
/// from rising to falling as gamma leaves 0. The first derivative vanishes at
/// gamma = 0, so the sign of U1(h) - U1(0) is bisected over delta/k.
inline double locate_cooperation_threshold(double theta, double lo = 0.05, double hi = 1.3,
                                           double h = 1e-3) {
  auto gain = [&](double dk) {
    const auto info = InfoStructure::from_ratio(theta, dk, 1.0);
    return bayes_average_profits(info, Coupling(h)).u1 -
           bayes_average_profits(info, Coupling(0.0)).u1;
  };
  double glo = gain(lo);
  detail::require(glo > 0.0 && gain(hi) < 0.0, "threshold: no sign change in [lo, hi]");
  for (int i = 0; i < 60; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (gain(mid) > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace cvgame
