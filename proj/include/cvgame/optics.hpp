#pragma once

// Coherent-state amplitude arithmetic. The game state is always a product of
// two coherent states, so two complex amplitudes describe it exactly.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "cvgame/model.hpp"

namespace cvgame {

struct ModeAmplitudes {
  std::complex<double> alpha1;
  std::complex<double> alpha2;

  double photons1() const { return std::norm(alpha1); }
  double photons2() const { return std::norm(alpha2); }
};

/// Mean photon numbers of the two modes; these are the firms' quantities.
struct PhotonNumbers {
  double n1 = 0.0;
  double n2 = 0.0;

  double total() const { return n1 + n2; }
};

inline ModeAmplitudes encode_strategies(Strategy x1, Strategy x2) {
  constexpr double s = std::numbers::sqrt2 / 2.0;
  return {{s * x1.value(), 0.0}, {s * x2.value(), 0.0}};
}

/// out1 = a1 cos g + i a2 sin g,  out2 = a2 cos g + i a1 sin g.
inline ModeAmplitudes beam_splitter(const ModeAmplitudes& in, Coupling coupling) {
  const double c = std::cos(coupling.gamma());
  const double s = std::sin(coupling.gamma());
  constexpr std::complex<double> i{0.0, 1.0};
  return {in.alpha1 * c + i * in.alpha2 * s, in.alpha2 * c + i * in.alpha1 * s};
}

inline ModeAmplitudes apply_loss(const ModeAmplitudes& in, LossChannel mode1, LossChannel mode2) {
  return {in.alpha1 * mode1.amplitude_factor(), in.alpha2 * mode2.amplitude_factor()};
}

inline PhotonNumbers expected_quantities(Strategy x1, Strategy x2, Coupling coupling) {
  const double c2 = coupling.cos_sq();
  const double s2 = coupling.sin_sq();
  const double X1 = x1.squared();
  const double X2 = x2.squared();
  return {0.5 * (X1 * c2 + X2 * s2), 0.5 * (X2 * c2 + X1 * s2)};
}

namespace detail {

inline void require_loss_gamma(double gamma) {
  require(std::isfinite(gamma) && gamma >= 0.0 && gamma <= kQuarterPi,
          "asymmetric loss: gamma in [0, pi/4]");
}

}  // namespace detail

/// Quantities when only mode 2 passes a loss channel before counting.
/// gamma may equal pi/4 here.
inline PhotonNumbers lossy_quantities(Strategy x1, Strategy x2, double gamma, LossChannel mode2) {
  detail::require_loss_gamma(gamma);
  const double c2 = std::cos(gamma) * std::cos(gamma);
  const double s2 = std::sin(gamma) * std::sin(gamma);
  const double X1 = x1.squared();
  const double X2 = x2.squared();
  return {0.5 * (X1 * c2 + X2 * s2), 0.5 * mode2.eta() * (X2 * c2 + X1 * s2)};
}

inline PhotonNumbers lossy_quantities(Strategy x1, Strategy x2, Coupling coupling,
                                      LossChannel mode2) {
  return lossy_quantities(x1, x2, coupling.gamma(), mode2);
}

inline double poisson_pmf(int m, double lambda) {
  if (m < 0) return 0.0;
  if (lambda == 0.0) return m == 0 ? 1.0 : 0.0;
  return std::exp(m * std::log(lambda) - lambda - std::lgamma(m + 1.0));
}

/// Product-Poisson probability of counting (m1, m2) photons.
inline double poisson_joint_pmf(int m1, int m2, Strategy x1, Strategy x2, Coupling coupling) {
  const auto n = expected_quantities(x1, x2, coupling);
  return poisson_pmf(m1, n.n1) * poisson_pmf(m2, n.n2);
}

/// Chernoff bound on P(M >= m) for M ~ Poisson(lambda); valid for m > lambda.
inline double poisson_upper_tail_bound(double lambda, int m) {
  if (m <= 0) return 1.0;
  if (lambda == 0.0) return 0.0;
  if (m <= lambda) return 1.0;
  return std::exp(-lambda + m * (1.0 + std::log(lambda) - std::log(static_cast<double>(m))));
}

/// Certified truncation of the photon-count grid. Each mode keeps counts
/// 0..cutoff(lambda), where the omitted upper tail is at most tail_bound / 2.
class PoissonTruncation {
 public:
  explicit PoissonTruncation(double tail_bound = 1e-12, int grid_ceiling = 4096)
      : tail_bound_(tail_bound), grid_ceiling_(grid_ceiling) {
    detail::require(tail_bound > 0.0 && tail_bound < 1.0, "truncation: tail bound in (0, 1)");
    detail::require(grid_ceiling >= 1, "truncation: grid ceiling >= 1");
  }

  double tail_bound() const { return tail_bound_; }
  int grid_ceiling() const { return grid_ceiling_; }

  int cutoff(double lambda) const {
    detail::require(std::isfinite(lambda) && lambda >= 0.0, "truncation: lambda >= 0");
    if (lambda == 0.0) return 0;
    const double per_mode = 0.5 * tail_bound_;
    for (int m = static_cast<int>(std::floor(lambda)); m <= grid_ceiling_; ++m) {
      if (poisson_upper_tail_bound(lambda, m + 1) <= per_mode) return m;
    }
    throw NumericalFailure("truncation: tail bound " + std::to_string(tail_bound_) +
                           " unreachable within grid ceiling " + std::to_string(grid_ceiling_) +
                           " (lambda = " + std::to_string(lambda) + ")");
  }

 private:
  double tail_bound_;
  int grid_ceiling_;
};

/// Fixed-order pairwise summation; the result depends only on the input order.
inline double pairwise_sum(std::span<const double> v) {
  if (v.size() <= 8) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  }
  const auto half = v.size() / 2;
  return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

struct TruncatedSum {
  double value = 0.0;
  int m1_max = 0;
  int m2_max = 0;
  double retained_mass = 0.0;
  double tail_bound = 0.0;
};

/// Sum of f(m1, m2) P(m1, m2) over the truncated grid for independent
/// Poisson counts with the given means.
template <class Kernel>
TruncatedSum truncated_expectation(Kernel&& f, PhotonNumbers means,
                                   const PoissonTruncation& trunc) {
  const int M1 = trunc.cutoff(means.n1);
  const int M2 = trunc.cutoff(means.n2);

  std::vector<double> p1(M1 + 1), p2(M2 + 1);
  for (int m = 0; m <= M1; ++m) p1[m] = poisson_pmf(m, means.n1);
  for (int m = 0; m <= M2; ++m) p2[m] = poisson_pmf(m, means.n2);

  std::vector<double> row(M2 + 1), outer(M1 + 1), mass(M1 + 1);
  for (int m1 = 0; m1 <= M1; ++m1) {
    for (int m2 = 0; m2 <= M2; ++m2) row[m2] = static_cast<double>(f(m1, m2)) * p2[m2];
    outer[m1] = p1[m1] * pairwise_sum(row);
  }
  const double mass1 = pairwise_sum(p1);
  const double mass2 = pairwise_sum(p2);
  return {pairwise_sum(outer), M1, M2, mass1 * mass2, trunc.tail_bound()};
}

template <class Kernel>
TruncatedSum truncated_expectation(Kernel&& f, Strategy x1, Strategy x2, Coupling coupling,
                                   const PoissonTruncation& trunc) {
  return truncated_expectation(std::forward<Kernel>(f), expected_quantities(x1, x2, coupling),
                               trunc);
}

}  // namespace cvgame
