#pragma once

// Command-line front end. `run` is the whole program minus process
// plumbing so it can be driven from tests.
//
// Exit codes: 0 success, 1 I/O failure, 2 invalid input, 3 numerical failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cvgame/equilibrium.hpp"
#include "cvgame/model.hpp"
#include "cvgame/optics.hpp"
#include "cvgame/oracle.hpp"
#include "cvgame/payoffs.hpp"
#include "cvgame/sweep.hpp"

namespace cvgame::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitIo = 1;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitNumerical = 3;
inline constexpr int kJsonSchemaVersion = 1;

using nlohmann::json;

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

/// Parses "key = value" lines; '#' and ';' start comments.
inline std::vector<std::pair<std::string, std::string>> read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file: " + path);
  std::vector<std::pair<std::string, std::string>> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto c = line.find_first_of("#;"); c != std::string::npos) line.erase(c);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw InvalidParameter("config " + path + ":" + std::to_string(lineno) +
                             ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    if (key.rfind("--", 0) == 0) key.erase(0, 2);
    out.emplace_back(key, trim(line.substr(eq + 1)));
  }
  return out;
}

inline bool truthy(const std::string& v) {
  return v == "1" || v == "true" || v == "yes" || v == "on";
}

inline double strict_number(const std::string& tok) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(tok, &used);
  } catch (const std::exception&) {
    throw InvalidParameter("cannot parse value: " + tok);
  }
  if (used != tok.size()) throw InvalidParameter("cannot parse value: " + tok);
  return v;
}

/// Number, "pi"-expression ("pi/8", "3pi/16") or "limit" (upper open limit).
inline double parse_value(std::string tok, double limit_value) {
  tok = trim(tok);
  if (tok == "limit") return limit_value;
  const auto p = tok.find("pi");
  if (p == std::string::npos) return strict_number(tok);
  const std::string coef = tok.substr(0, p);
  const std::string rest = tok.substr(p + 2);
  double v = std::numbers::pi * (coef.empty() ? 1.0 : strict_number(coef));
  if (!rest.empty()) {
    if (rest[0] != '/') throw InvalidParameter("cannot parse value: " + tok);
    v /= strict_number(rest.substr(1));
  }
  return v;
}

/// Lets numeric options take pi-expressions by rewriting them to plain numbers.
inline CLI::Validator pi_expression() {
  return CLI::Validator(
      [](std::string& s) {
        if (s.find("pi") == std::string::npos) return std::string();
        try {
          char buf[32];
          auto res = std::to_chars(buf, buf + sizeof buf, parse_value(s, 0.0));
          s.assign(buf, res.ptr);
        } catch (const InvalidParameter& e) {
          return std::string(e.what());
        }
        return std::string();
      },
      "", "PI_EXPR");
}

inline std::vector<double> parse_list(const std::string& s, double limit_value) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(parse_value(tok, limit_value));
  return out;
}

inline json strategies_json(const EquilibriumReport& r) {
  json j = json::object();
  for (std::size_t i = 0; i < r.x_star.size(); ++i) j[r.labels[i]] = r.x_star[i].value();
  return j;
}

inline json report_json(const EquilibriumReport& r) {
  json j;
  j["source"] = to_string(r.source);
  j["x_star"] = strategies_json(r);
  j["profits"] = {{"u1", r.profits.at(0)}, {"u2", r.profits.at(1)}};
  if (r.region != Region::NotApplicable) j["region"] = to_string(r.region);
  j["residual"] = r.residual;
  if (r.source == Source::Oracle) j["iterations"] = r.iterations;
  return j;
}

}  // namespace detail

/// Options shared by the game-level subcommands.
struct PointOptions {
  std::string game;
  double k = 1.0;
  double gamma = 0.0;
  bool gamma_limit = false;
  double limit_offset = kDefaultLimitOffset;
  double eta = 1.0;
  double theta = 0.5;
  std::optional<double> dk;
  std::optional<double> a, c, c_high, c_low;

  double resolved_gamma() const { return gamma_limit ? kQuarterPi - limit_offset : gamma; }

  InfoStructure info() const {
    if (c_high || c_low) {
      if (!(a && c_high && c_low))
        throw InvalidParameter("bayes: --a, --ch and --cl must be given together");
      return InfoStructure::make(theta, *c_high, *c_low, *a);
    }
    if (!dk) throw InvalidParameter("bayes: give --dk (with --k) or --a/--ch/--cl");
    return InfoStructure::from_ratio(theta, *dk, k);
  }
};

inline void add_point_options(CLI::App* sub, PointOptions& o, bool need_game = true) {
  auto* g = sub->add_option("--game", o.game,
                            "classical-cournot | symmetric-classical | symmetric-quantum | "
                            "quantum-finite | bayes | asym-loss");
  if (need_game) g->required();
  sub->add_option("--k", o.k, "margin k = a - c");
  sub->add_option("--gamma", o.gamma, "beam-splitter angle in radians (pi/8 style accepted)")
      ->transform(detail::pi_expression());
  sub->add_flag("--gamma-limit", o.gamma_limit, "use gamma = pi/4 - limit-offset");
  sub->add_option("--limit-offset", o.limit_offset, "offset for open limits (default 1e-9)");
  sub->add_option("--eta", o.eta, "transmissivity of firm 2's channel (asym-loss)");
  sub->add_option("--theta", o.theta, "probability of the high-cost type (bayes)");
  sub->add_option("--dk", o.dk, "Delta / k (bayes)");
  sub->add_option("--a", o.a, "price intercept");
  sub->add_option("--c", o.c, "unit cost");
  sub->add_option("--ch", o.c_high, "high unit cost (bayes)");
  sub->add_option("--cl", o.c_low, "low unit cost (bayes)");
}

inline int cmd_equilibrium(const PointOptions& o, bool with_oracle, std::ostream& out,
                           std::ostream& err) {
  json j;
  j["schema_version"] = kJsonSchemaVersion;
  j["command"] = "equilibrium";
  j["game"] = o.game;
  const double gamma = o.resolved_gamma();

  EquilibriumReport closed;
  std::optional<Game> game;
  json params = {{"gamma", gamma}};
  const std::string name = [&] {
    std::string n = o.game;
    std::replace(n.begin(), n.end(), '_', '-');
    return n;
  }();

  if (name == "classical-cournot") {
    closed = classical_nash(o.k);
    game = classical_cournot_game(o.k);
    params = {{"k", o.k}};
  } else if (name == "symmetric-classical") {
    closed = nash_classical_apparatus(o.k, Coupling(gamma));
    game = classical_apparatus_game(o.k, Coupling(gamma));
    params["k"] = o.k;
  } else if (name == "symmetric-quantum") {
    closed = nash_quantum_apparatus(o.k, Coupling(gamma));
    game = quantum_apparatus_game(o.k, Coupling(gamma));
    params["k"] = o.k;
  } else if (name == "bayes") {
    const auto info = o.info();
    closed = bayes_nash(info, Coupling(gamma));
    game = bayes_game(info, Coupling(gamma));
    const auto label = classify_region(info, Coupling(gamma));
    params.update({{"k", info.k()},
                   {"theta", info.theta()},
                   {"a", info.a()},
                   {"c1", info.c1()},
                   {"c_high", info.c_high()},
                   {"c_low", info.c_low()},
                   {"delta", info.delta()},
                   {"delta_over_k", info.delta() / info.k()},
                   {"asymmetry_degree", info.asymmetry_degree()}});
    j["boundary_value"] = label.boundary_value;
    j["region"] = to_string(label.region);
  } else if (name == "asym-loss") {
    const auto loss = LossChannel::from_eta(o.eta);
    closed = asym_loss_nash(o.k, gamma, loss);
    game = asym_loss_game(o.k, gamma, loss);
    params.update({{"k", o.k}, {"eta", o.eta}});
    j["loss_profit_prefactor"] = loss_profit_prefactor(o.k, gamma, loss);
  } else {
    throw InvalidParameter("equilibrium: unknown --game '" + o.game + "'");
  }
  j["params"] = params;
  j["closed_form"] = detail::report_json(closed);

  if (with_oracle && game) {
    EquilibriumReport r;
    bool converged = true;
    try {
      r = best_response_oracle(*game);
    } catch (const OracleNonConvergence& e) {
      r = e.last_iterate();
      converged = false;
    }
    auto oj = detail::report_json(r);
    oj["converged"] = converged;
    double diff = 0.0;
    for (std::size_t i = 0; i < r.x_star.size(); ++i)
      diff = std::max(diff, std::abs(r.x_star[i].value() - closed.x_star[i].value()));
    oj["max_strategy_diff"] = diff;
    j["oracle"] = oj;
    if (!converged) {
      out << j.dump(2) << '\n';
      err << "error: best-response oracle did not converge\n";
      return kExitNumerical;
    }
  }
  out << j.dump(2) << '\n';
  return kExitOk;
}

struct PayoffOptions {
  PointOptions point;
  double x1 = 0.0, x2 = 0.0;
  double tail_bound = 1e-12;
};

inline int cmd_payoff(const PayoffOptions& p, std::ostream& out) {
  const auto& o = p.point;
  const double gamma = o.resolved_gamma();
  std::string name = o.game;
  std::replace(name.begin(), name.end(), '_', '-');
  json j;
  j["schema_version"] = kJsonSchemaVersion;
  j["command"] = "payoff";
  j["game"] = o.game;
  j["params"] = {{"x1", p.x1}, {"x2", p.x2}, {"gamma", gamma}};

  auto put = [&](PayoffPair u) { j["payoffs"] = {{"u1", u.u1}, {"u2", u.u2}}; };
  const Strategy x1(p.x1), x2(p.x2);
  if (name == "classical-cournot") {
    const auto market = o.a && o.c ? MarketParams::finite(*o.a, *o.c) : MarketParams::finite(o.k, 0.0);
    put(classical_payoffs(p.x1, p.x2, market));
  } else if (name == "symmetric-classical") {
    put(classical_apparatus_payoffs(x1, x2, Coupling(gamma), o.k));
  } else if (name == "symmetric-quantum") {
    put(quantum_apparatus_payoffs_limit(x1, x2, Coupling(gamma), MarketParams::infinite_limit(o.k)));
  } else if (name == "quantum-finite") {
    if (!o.a || !o.c) throw InvalidParameter("quantum-finite: --a and --c are required");
    TruncatedSum info;
    put(quantum_apparatus_payoffs_finite(x1, x2, Coupling(gamma), MarketParams::finite(*o.a, *o.c),
                                         PoissonTruncation(p.tail_bound), &info));
    j["truncation"] = {{"m1_max", info.m1_max},
                       {"m2_max", info.m2_max},
                       {"tail_bound", info.tail_bound},
                       {"retained_mass", info.retained_mass}};
  } else if (name == "bayes") {
    const auto u = bayes_payoffs(x1, x2, Coupling(gamma), o.info());
    j["payoffs"] = {{"u1", u.u1}, {"u2H", u.u2H}, {"u2L", u.u2L}};
  } else if (name == "asym-loss") {
    put(lossy_payoffs(x1, x2, gamma, LossChannel::from_eta(o.eta), o.k));
  } else {
    throw InvalidParameter("payoff: unknown --game '" + o.game + "'");
  }
  out << j.dump(2) << '\n';
  return kExitOk;
}

struct SweepOptions {
  std::string figure;
  std::string game = "bayes";
  std::string variable = "gamma";
  double lo = 0.0;
  std::optional<double> hi;
  bool hi_limit = false;
  int steps = 201;
  double k = 1.0, theta = 0.5, gamma = 0.0, dk = 0.5, eta = 1.0;
  bool gamma_limit = false;
  double limit_offset = kDefaultLimitOffset;
  std::string series_variable;
  std::string series_values;
  std::string out_path = "-";
  std::string transitions_path;
  bool verify = false;
  double kink_factor = 10.0;
};

inline double upper_limit(SweepVariable v, const SweepOptions& o) {
  switch (v) {
    case SweepVariable::Gamma: return kQuarterPi - o.limit_offset;
    case SweepVariable::DeltaOverK: return 1.0 / (1.0 - o.theta) - o.limit_offset;
    case SweepVariable::Eta: return 1.0;
  }
  return 0.0;
}

inline SweepSpec build_sweep_spec(const SweepOptions& o, const CLI::App& sub) {
  SweepSpec s;
  if (!o.figure.empty()) s = figure_spec(o.figure);
  auto given = [&](const char* name) { return sub.count(name) > 0; };

  if (o.figure.empty() || given("--game")) {
    const auto g = parse_game_kind(o.game);
    if (!g) throw InvalidParameter("sweep: unknown --game '" + o.game + "'");
    s.game = *g;
  }
  if (o.figure.empty() || given("--variable")) {
    const auto v = parse_sweep_variable(o.variable);
    if (!v) throw InvalidParameter("sweep: unknown --variable '" + o.variable + "'");
    s.variable = *v;
  }
  if (o.figure.empty() || given("--lo")) s.lo = o.lo;
  if (o.hi_limit) s.hi = upper_limit(s.variable, o);
  else if (o.hi) s.hi = *o.hi;
  else if (o.figure.empty()) s.hi = upper_limit(s.variable, o);
  if (o.figure.empty() || given("--steps")) s.steps = o.steps;

  if (o.figure.empty() || given("--k")) s.fixed.k = o.k;
  if (o.figure.empty() || given("--theta")) s.fixed.theta = o.theta;
  s.fixed.gamma = o.gamma_limit ? kQuarterPi - o.limit_offset : o.gamma;
  s.fixed.delta_over_k = o.dk;
  s.fixed.eta = o.eta;

  if (!o.series_variable.empty()) {
    const auto v = parse_sweep_variable(o.series_variable);
    if (!v) throw InvalidParameter("sweep: unknown --series-variable '" + o.series_variable + "'");
    s.series = *v;
    s.series_values.clear();
  }
  if (!o.series_values.empty()) {
    if (!s.series) throw InvalidParameter("sweep: --series-values needs --series-variable");
    s.series_values = detail::parse_list(o.series_values, upper_limit(*s.series, o));
  }
  return s;
}

inline json transitions_json(const std::vector<TransitionReport>& ts) {
  json arr = json::array();
  for (const auto& t : ts)
    arr.push_back({{"curve", t.curve},
                   {"series_value", t.series_value},
                   {"location", t.location},
                   {"left_slope", t.left_slope},
                   {"right_slope", t.right_slope},
                   {"jump", t.jump},
                   {"threshold", t.threshold}});
  return arr;
}

inline int cmd_sweep(const SweepOptions& o, const CLI::App& sub, std::ostream& out,
                     std::ostream& err) {
  const auto spec = build_sweep_spec(o, sub);
  const auto result = run_sweep(spec);
  const auto transitions =
      sweep_transitions(spec, result, TransitionOptions{o.kink_factor, 5});

  if (o.out_path == "-") {
    write_csv(out, spec, result);
  } else {
    std::ofstream f(o.out_path, std::ios::binary);
    if (!f) throw IoError("cannot write " + o.out_path);
    write_csv(f, spec, result);
    if (!f) throw IoError("write failed: " + o.out_path);
  }

  json side;
  side["schema_version"] = kJsonSchemaVersion;
  side["game"] = to_string(spec.game);
  side["variable"] = to_string(spec.variable);
  if (spec.series) side["series_variable"] = to_string(*spec.series);
  side["transitions"] = transitions_json(transitions);
  if (o.verify) side["spot_check_max_gain_over_k2"] = spot_check(spec, result);

  for (const auto& t : transitions)
    err << "transition: curve=" << t.curve << " series=" << format_number(t.series_value)
        << " location=" << format_number(t.location) << " jump=" << format_number(t.jump)
        << '\n';
  if (o.verify)
    err << "spot-check: max unilateral gain / k^2 = "
        << side["spot_check_max_gain_over_k2"].get<double>() << '\n';

  std::string side_path = o.transitions_path;
  if (side_path.empty() && o.out_path != "-") side_path = o.out_path + ".transitions.json";
  if (!side_path.empty()) {
    std::ofstream f(side_path, std::ios::binary);
    if (!f) throw IoError("cannot write " + side_path);
    f << side.dump(2) << '\n';
  }
  return kExitOk;
}

struct FiniteOptions {
  double a = 0.0, c = 0.0;
  double gamma = 0.0;
  bool gamma_limit = false;
  double limit_offset = kDefaultLimitOffset;
  double tail_bound = 1e-12;
};

inline int cmd_finite_a_optimum(const FiniteOptions& o, std::ostream& out) {
  const auto market = make_market(o.a, o.c);
  const Coupling coupling = o.gamma_limit ? Coupling::limit(o.limit_offset) : Coupling(o.gamma);
  const auto r = finite_a_optimum(market, coupling, PoissonTruncation(o.tail_bound));
  json j;
  j["schema_version"] = kJsonSchemaVersion;
  j["command"] = "finite-a-optimum";
  j["params"] = {{"a", o.a}, {"c", o.c}, {"k", market.k()}, {"gamma", coupling.gamma()}};
  j["x_opt"] = r.x_opt;
  j["u_opt"] = r.u_opt;
  j["m_max"] = r.m_max;
  j["tail_bound"] = r.tail_bound;
  j["retained_mass"] = r.retained_mass;
  out << j.dump(2) << '\n';
  return kExitOk;
}

/// Entry point; args excludes the program name.
inline int run(std::vector<std::string> args, std::ostream& out = std::cout,
               std::ostream& err = std::cerr) {
  CLI::App app{"cvgame: entanglement-free continuous-variable Cournot duopoly"};
  app.name("cvgame");
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  std::string config_path;
  app.add_option("--config", config_path, "key = value file mirroring the flags; flags win");

  PointOptions eq;
  bool no_oracle = false;
  auto* s_eq = app.add_subcommand("equilibrium", "closed-form equilibrium plus oracle check (JSON)");
  add_point_options(s_eq, eq);
  s_eq->add_flag("--no-oracle", no_oracle, "skip the best-response oracle");

  PayoffOptions pay;
  auto* s_pay = app.add_subcommand("payoff", "payoffs at a strategy profile (JSON)");
  add_point_options(s_pay, pay.point);
  s_pay->add_option("--x1", pay.x1, "firm 1 strategy (quantity for classical-cournot)");
  s_pay->add_option("--x2", pay.x2, "firm 2 strategy");
  s_pay->add_option("--tail-bound", pay.tail_bound, "Poisson tail bound (quantum-finite)");

  SweepOptions sw;
  auto* s_sw = app.add_subcommand("sweep", "parameter sweep to CSV with transition report");
  s_sw->add_option("--figure", sw.figure, "preset: 1, 2, 3a, 3b, 4");
  s_sw->add_option("--game", sw.game, "symmetric-classical | symmetric-quantum | bayes | asym-loss");
  s_sw->add_option("--variable", sw.variable, "gamma | delta_over_k | eta");
  s_sw->add_option("--lo", sw.lo, "lower end of the sweep")->transform(detail::pi_expression());
  s_sw->add_option("--hi", sw.hi, "upper end of the sweep (default: upper limit)")
      ->transform(detail::pi_expression());
  s_sw->add_flag("--hi-limit", sw.hi_limit, "sweep up to the open upper limit");
  s_sw->add_option("--steps", sw.steps, "grid points (default 201)");
  s_sw->add_option("--k", sw.k, "margin k");
  s_sw->add_option("--theta", sw.theta, "probability of the high-cost type");
  s_sw->add_option("--gamma", sw.gamma, "fixed gamma")->transform(detail::pi_expression());
  s_sw->add_flag("--gamma-limit", sw.gamma_limit, "fixed gamma = pi/4 - limit-offset");
  s_sw->add_option("--dk", sw.dk, "fixed Delta / k");
  s_sw->add_option("--eta", sw.eta, "fixed eta");
  s_sw->add_option("--limit-offset", sw.limit_offset, "offset for open limits (default 1e-9)");
  s_sw->add_option("--series-variable", sw.series_variable, "second axis: one curve per value");
  s_sw->add_option("--series-values", sw.series_values,
                   "comma list; accepts pi/8-style values and 'limit'");
  s_sw->add_option("--out", sw.out_path, "CSV path, '-' for stdout");
  s_sw->add_option("--transitions", sw.transitions_path, "JSON sidecar path");
  s_sw->add_flag("--verify", sw.verify, "oracle spot-check on a seeded 5% subsample");
  s_sw->add_option("--kink-factor", sw.kink_factor, "kink threshold over local median (default 10)");

  FiniteOptions fa;
  auto* s_fa = app.add_subcommand("finite-a-optimum", "symmetric optimum of the finite-a photon-counting game");
  s_fa->add_option("--a", fa.a, "price intercept")->required();
  s_fa->add_option("--c", fa.c, "unit cost")->required();
  s_fa->add_option("--gamma", fa.gamma, "beam-splitter angle")->transform(detail::pi_expression());
  s_fa->add_flag("--gamma-limit", fa.gamma_limit, "use gamma = pi/4 - limit-offset");
  s_fa->add_option("--limit-offset", fa.limit_offset, "offset for open limits (default 1e-9)");
  s_fa->add_option("--tail-bound", fa.tail_bound, "certified Poisson tail bound (default 1e-12)");

  for (auto* sub : {s_eq, s_pay, s_sw, s_fa})
    for (auto* opt : sub->get_options())
      if (opt->get_expected_max() <= 1) opt->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  try {
    // Config entries are spliced in right after the subcommand so that
    // explicit flags, which come later, take precedence.
    for (std::size_t i = 0; i < args.size(); ++i) {
      if (args[i] == "--config" && i + 1 < args.size()) {
        config_path = args[i + 1];
        args.erase(args.begin() + i, args.begin() + i + 2);
        break;
      }
      if (args[i].rfind("--config=", 0) == 0) {
        config_path = args[i].substr(9);
        args.erase(args.begin() + i);
        break;
      }
    }
    if (!config_path.empty()) {
      std::size_t pos = 0;
      while (pos < args.size() && args[pos].rfind("-", 0) == 0) ++pos;
      CLI::App* sub = nullptr;
      if (pos < args.size()) sub = app.get_subcommand_no_throw(args[pos]);
      if (!sub) throw InvalidParameter("--config requires a subcommand");
      std::vector<std::string> injected;
      for (const auto& [key, value] : detail::read_config(config_path)) {
        const auto* opt = sub->get_option_no_throw("--" + key);
        if (!opt) throw InvalidParameter("config: unknown key '" + key + "' for " + args[pos]);
        if (opt->get_expected_max() == 0) {
          if (detail::truthy(value)) injected.push_back("--" + key);
        } else {
          injected.push_back("--" + key);
          injected.push_back(value);
        }
      }
      args.insert(args.begin() + pos + 1, injected.begin(), injected.end());
    }

    std::vector<std::string> argv_store{"cvgame"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& a : argv_store) argv.push_back(a.c_str());
    try {
      app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::Success& e) {
      return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
      err << "error: " << e.what() << '\n';
      return kExitInvalid;
    }

    if (*s_eq) return cmd_equilibrium(eq, !no_oracle, out, err);
    if (*s_pay) return cmd_payoff(pay, out);
    if (*s_sw) return cmd_sweep(sw, *s_sw, out, err);
    if (*s_fa) return cmd_finite_a_optimum(fa, out);
    return kExitInvalid;
  } catch (const InvalidParameter& e) {
    err << "invalid input: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const NumericalFailure& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << '\n';
    return kExitIo;
  }
}

}  // namespace cvgame::cli
