#pragma once

// Domain types shared by the whole library. Every type validates on
// construction and is immutable afterwards.

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace cvgame {

/// Thrown when an argument violates a documented invariant. The message
/// names the invariant.
class InvalidParameter : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when a numerical procedure cannot deliver its guarantee
/// (truncation ceiling hit, oracle did not converge).
class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kQuarterPi = std::numbers::pi / 4.0;

/// Offset used to stand in for the open limit gamma -> pi/4 from below.
inline constexpr double kDefaultLimitOffset = 1e-9;

namespace detail {

inline void require(bool ok, const std::string& what) {
  if (!ok) throw InvalidParameter(what);
}

inline bool finite(double v) { return std::isfinite(v); }

}  // namespace detail

/// Linear inverse-demand market P(Q) = a - Q with unit cost c.
///
/// Two modes: a finite market (a, c stored, k = a - c) and the limit
/// a, c -> infinity with k held fixed, where only k is meaningful.
class MarketParams {
 public:
  static MarketParams finite(double a, double c) {
    detail::require(detail::finite(a) && detail::finite(c), "market: a and c must be finite");
    detail::require(c >= 0.0, "market: c >= 0");
    detail::require(a > c, "market: c < a");
    return MarketParams(a, c, a - c, true);
  }

  static MarketParams infinite_limit(double k) {
    detail::require(detail::finite(k), "market: k must be finite");
    detail::require(k >= 1.0, "market: k = a - c >= 1 in the infinite limit");
    return MarketParams(std::numeric_limits<double>::infinity(),
                        std::numeric_limits<double>::infinity(), k, false);
  }

  bool is_finite() const { return finite_; }

  double a() const {
    if (!finite_) throw InvalidParameter("market: a is undefined in the infinite limit");
    return a_;
  }
  double c() const {
    if (!finite_) throw InvalidParameter("market: c is undefined in the infinite limit");
    return c_;
  }
  double k() const { return k_; }

 private:
  MarketParams(double a, double c, double k, bool finite) : a_(a), c_(c), k_(k), finite_(finite) {}

  double a_;
  double c_;
  double k_;
  bool finite_;
};

inline MarketParams make_market(double a, double c) { return MarketParams::finite(a, c); }

/// Displacement magnitude chosen by a firm.
class Strategy {
 public:
  Strategy() = default;
  explicit Strategy(double x) : x_(x) {
    detail::require(detail::finite(x) && x >= 0.0, "strategy: x in [0, inf)");
  }

  double value() const { return x_; }
  double squared() const { return x_ * x_; }

  friend bool operator==(const Strategy&, const Strategy&) = default;

 private:
  double x_ = 0.0;
};

/// Beam-splitter angle gamma in [0, pi/4).
class Coupling {
 public:
  explicit Coupling(double gamma) : gamma_(gamma) {
    detail::require(detail::finite(gamma) && gamma >= 0.0 && gamma < kQuarterPi,
                    "coupling: gamma in [0, pi/4)");
  }

  /// gamma = pi/4 - offset, the stand-in for (pi/4)^-.
  static Coupling limit(double offset = kDefaultLimitOffset) {
    detail::require(offset > 0.0 && offset <= kQuarterPi, "coupling: limit offset in (0, pi/4]");
    return Coupling(kQuarterPi - offset);
  }

  double gamma() const { return gamma_; }
  double cos_sq() const { return std::cos(gamma_) * std::cos(gamma_); }
  double sin_sq() const { return std::sin(gamma_) * std::sin(gamma_); }
  double cos2() const { return std::cos(2.0 * gamma_); }

 private:
  double gamma_;
};

/// Private-cost structure: firm 2 is high-cost with probability theta.
/// Firm 1's cost is the mean c1 = theta c_H + (1 - theta) c_L.
class InfoStructure {
 public:
  static InfoStructure make(double theta, double c_high, double c_low, double a) {
    detail::require(detail::finite(theta) && detail::finite(c_high) && detail::finite(c_low) &&
                        detail::finite(a),
                    "info: parameters must be finite");
    detail::require(theta > 0.0 && theta < 1.0, "info: theta in (0, 1)");
    detail::require(c_low >= 0.0, "info: c_L >= 0");
    detail::require(c_high > c_low, "info: c_H > c_L");
    detail::require(a > c_high, "info: a > c_H");
    return InfoStructure(theta, c_high, c_low, a);
  }

  /// Builds the structure from scaled parameters with c_L = 0, so that
  /// Delta = delta_over_k * k and a = k + c1.
  static InfoStructure from_ratio(double theta, double delta_over_k, double k) {
    detail::require(detail::finite(k) && k > 0.0, "info: k > 0");
    detail::require(detail::finite(delta_over_k) && delta_over_k > 0.0, "info: delta/k > 0");
    detail::require(detail::finite(theta) && theta > 0.0 && theta < 1.0, "info: theta in (0, 1)");
    detail::require((1.0 - theta) * delta_over_k < 1.0,
                    "info: a > c_H, i.e. (1 - theta) delta/k < 1");
    const double delta = delta_over_k * k;
    return make(theta, delta, 0.0, k + theta * delta);
  }

  double theta() const { return theta_; }
  double c_high() const { return c_high_; }
  double c_low() const { return c_low_; }
  double a() const { return a_; }
  double c1() const { return c1_; }
  double delta() const { return c_high_ - c_low_; }
  double k() const { return a_ - c1_; }

  /// Margin of the high-cost type, a - c_H.
  double k_high() const { return a_ - c_high_; }
  /// Margin of the low-cost type, a - c_L.
  double k_low() const { return a_ - c_low_; }
  /// c_H - c1, which equals (1 - theta) Delta.
  double high_cost_gap() const { return c_high_ - c1_; }

  /// Delta^2 theta (1 - theta) / k^2.
  double asymmetry_degree() const {
    const double r = delta() / k();
    return r * r * theta_ * (1.0 - theta_);
  }

 private:
  InfoStructure(double theta, double c_high, double c_low, double a)
      : theta_(theta),
        c_high_(c_high),
        c_low_(c_low),
        a_(a),
        c1_(theta * c_high + (1.0 - theta) * c_low) {}

  double theta_;
  double c_high_;
  double c_low_;
  double a_;
  double c1_;
};

inline InfoStructure make_info_structure(double theta, double c_high, double c_low, double a) {
  return InfoStructure::make(theta, c_high, c_low, a);
}

/// Photon-loss channel with intensity transmissivity eta = exp(-kappa t).
class LossChannel {
 public:
  static LossChannel from_eta(double eta) {
    detail::require(detail::finite(eta) && eta > 0.0 && eta <= 1.0, "loss: eta in (0, 1]");
    return LossChannel(eta, -std::log(eta));
  }

  static LossChannel from_kappa_t(double kappa_t) {
    detail::require(detail::finite(kappa_t) && kappa_t >= 0.0, "loss: kappa t >= 0");
    return LossChannel(std::exp(-kappa_t), kappa_t);
  }

  static LossChannel lossless() { return LossChannel(1.0, 0.0); }

  double eta() const { return eta_; }
  double kappa_t() const { return kappa_t_; }
  /// Amplitude scaling sqrt(eta) = exp(-kappa t / 2).
  double amplitude_factor() const { return std::sqrt(eta_); }

 private:
  LossChannel(double eta, double kappa_t) : eta_(eta), kappa_t_(kappa_t) {}

  double eta_;
  double kappa_t_;
};

enum class Region { A, B, NotApplicable };
enum class Source { ClosedForm, Oracle };

inline const char* to_string(Region r) {
  switch (r) {
    case Region::A: return "A";
    case Region::B: return "B";
    case Region::NotApplicable: return "NA";
  }
  return "NA";
}

inline const char* to_string(Source s) {
  return s == Source::ClosedForm ? "closed_form" : "oracle";
}

struct EquilibriumReport {
  std::vector<std::string> labels;  // one per entry of x_star
  std::vector<Strategy> x_star;
  std::vector<double> profits;  // firm 1, firm 2 (type-averaged where applicable)
  Region region = Region::NotApplicable;
  Source source = Source::ClosedForm;
  double residual = 0.0;
  int iterations = 0;
};

}  // namespace cvgame
