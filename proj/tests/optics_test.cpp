#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "cvgame/optics.hpp"

using namespace cvgame;

namespace {

constexpr double pi = std::numbers::pi;

// gamma as close to pi/4 as the half-open Coupling allows
Coupling near_quarter_pi() { return Coupling(std::nextafter(kQuarterPi, 0.0)); }

}  // namespace

TEST(Encode, Examples) {
  auto a = encode_strategies(Strategy(0), Strategy(0));
  EXPECT_EQ(a.alpha1, std::complex<double>(0, 0));
  EXPECT_EQ(a.alpha2, std::complex<double>(0, 0));

  a = encode_strategies(Strategy(2), Strategy(0));
  EXPECT_NEAR(a.alpha1.real(), std::sqrt(2.0), 1e-15);
  EXPECT_EQ(a.alpha1.imag(), 0.0);

  a = encode_strategies(Strategy(std::sqrt(2.0)), Strategy(std::sqrt(2.0)));
  EXPECT_NEAR(a.alpha1.real(), 1.0, 1e-15);
  EXPECT_NEAR(a.alpha2.real(), 1.0, 1e-15);
}

TEST(BeamSplitter, Examples) {
  const ModeAmplitudes in{{std::sqrt(2.0), 0}, {0, 0}};
  auto out = beam_splitter(in, Coupling(0.0));
  EXPECT_EQ(out.alpha1, in.alpha1);
  EXPECT_EQ(out.alpha2, in.alpha2);

  out = beam_splitter(in, near_quarter_pi());
  EXPECT_NEAR(std::abs(out.alpha1 - std::complex<double>(1, 0)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(out.alpha2 - std::complex<double>(0, 1)), 0.0, 1e-14);
  EXPECT_NEAR(out.photons1(), 1.0, 1e-14);
  EXPECT_NEAR(out.photons2(), 1.0, 1e-14);

  for (double g : {0.0, 0.1, pi / 8, 0.7}) {
    const auto o = beam_splitter({{1, 0}, {1, 0}}, Coupling(g));
    EXPECT_NEAR(o.photons1(), 1.0, 1e-14);
    EXPECT_NEAR(o.photons2(), 1.0, 1e-14);
  }
}

TEST(BeamSplitter, ConservesPhotonNumber) {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> re(-5, 5), g(0, kQuarterPi * 0.999999);
  for (int i = 0; i < 2000; ++i) {
    const ModeAmplitudes in{{re(rng), re(rng)}, {re(rng), re(rng)}};
    const auto out = beam_splitter(in, Coupling(g(rng)));
    EXPECT_NEAR(out.photons1() + out.photons2(), in.photons1() + in.photons2(),
                1e-12 * std::max(1.0, in.photons1() + in.photons2()));
  }
}

TEST(ApplyLoss, Examples) {
  auto o = apply_loss({{1, 0}, {1, 0}}, LossChannel::lossless(), LossChannel::lossless());
  EXPECT_EQ(o.alpha1, std::complex<double>(1, 0));
  EXPECT_EQ(o.alpha2, std::complex<double>(1, 0));

  o = apply_loss({{2, 0}, {0, 0}}, LossChannel::from_eta(0.25), LossChannel::lossless());
  EXPECT_DOUBLE_EQ(o.alpha1.real(), 1.0);
  EXPECT_DOUBLE_EQ(std::abs(o.alpha2), 0.0);

  const auto ch = LossChannel::from_kappa_t(1.0);
  o = apply_loss({{1, 0}, {1, 0}}, ch, ch);
  EXPECT_NEAR(o.alpha1.real(), std::exp(-0.5), 1e-15);
  EXPECT_NEAR(o.alpha2.real(), std::exp(-0.5), 1e-15);
}

TEST(ApplyLoss, Monotone) {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> re(-3, 3), eta(0.001, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const ModeAmplitudes in{{re(rng), re(rng)}, {re(rng), re(rng)}};
    const double e1 = eta(rng);
    const auto out = apply_loss(in, LossChannel::from_eta(e1), LossChannel::lossless());
    EXPECT_LE(out.photons1(), in.photons1());
    if (in.photons1() > 0) {
      EXPECT_LT(out.photons1(), in.photons1());
    }
    EXPECT_EQ(out.photons2(), in.photons2());
  }
}

TEST(ExpectedQuantities, Examples) {
  auto n = expected_quantities(Strategy(2), Strategy(0), Coupling(0));
  EXPECT_DOUBLE_EQ(n.n1, 2.0);
  EXPECT_DOUBLE_EQ(n.n2, 0.0);

  n = expected_quantities(Strategy(2), Strategy(0), near_quarter_pi());
  EXPECT_NEAR(n.n1, 1.0, 1e-14);
  EXPECT_NEAR(n.n2, 1.0, 1e-14);

  for (double g : {0.0, 0.3, 0.7}) {
    n = expected_quantities(Strategy(1.7), Strategy(1.7), Coupling(g));
    EXPECT_NEAR(n.n1, 1.7 * 1.7 / 2, 1e-14);
    EXPECT_NEAR(n.n2, 1.7 * 1.7 / 2, 1e-14);
  }
}

TEST(ExpectedQuantities, MatchesAmplitudePath) {
  std::mt19937 rng(9);
  std::uniform_real_distribution<double> x(0, 6), g(0, kQuarterPi * 0.999999);
  for (int i = 0; i < 2000; ++i) {
    const Strategy x1(x(rng)), x2(x(rng));
    const Coupling c(g(rng));
    const auto n = expected_quantities(x1, x2, c);
    const auto amps = beam_splitter(encode_strategies(x1, x2), c);
    EXPECT_NEAR(n.n1, amps.photons1(), 1e-12);
    EXPECT_NEAR(n.n2, amps.photons2(), 1e-12);
    EXPECT_NEAR(n.total(), 0.5 * (x1.squared() + x2.squared()), 1e-12);
  }
}

TEST(LossyQuantities, Examples) {
  const auto a = lossy_quantities(Strategy(1.3), Strategy(0.4), Coupling(0.5), LossChannel::lossless());
  const auto b = expected_quantities(Strategy(1.3), Strategy(0.4), Coupling(0.5));
  EXPECT_EQ(a.n1, b.n1);
  EXPECT_EQ(a.n2, b.n2);

  auto n = lossy_quantities(Strategy(0), Strategy(2), 0.0, LossChannel::from_eta(0.5));
  EXPECT_DOUBLE_EQ(n.n1, 0.0);
  EXPECT_DOUBLE_EQ(n.n2, 1.0);

  n = lossy_quantities(Strategy(2), Strategy(2), pi / 8, LossChannel::from_eta(0.5));
  EXPECT_NEAR(n.n1, 2.0, 1e-14);
  EXPECT_NEAR(n.n2, 1.0, 1e-14);

  EXPECT_NO_THROW(lossy_quantities(Strategy(1), Strategy(1), kQuarterPi, LossChannel::lossless()));
  EXPECT_THROW(lossy_quantities(Strategy(1), Strategy(1), 0.8, LossChannel::lossless()),
               InvalidParameter);
}

TEST(PoissonPmf, Examples) {
  EXPECT_DOUBLE_EQ(poisson_joint_pmf(0, 0, Strategy(0), Strategy(0), Coupling(0.4)), 1.0);
  EXPECT_DOUBLE_EQ(poisson_joint_pmf(1, 0, Strategy(0), Strategy(0), Coupling(0.4)), 0.0);
  // lambda1 = 1, lambda2 = 0
  EXPECT_NEAR(poisson_joint_pmf(1, 0, Strategy(std::sqrt(2.0)), Strategy(0), Coupling(0)),
              std::exp(-1.0), 1e-15);
}

TEST(PoissonPmf, TotalNormalisationFormEqualsProduct) {
  // e^{-(x1^2 + x2^2)/2} n1^m1 / m1! n2^m2 / m2!, written with the joint prefactor
  const Strategy x1(1.9), x2(0.7);
  const Coupling c(0.55);
  const auto n = expected_quantities(x1, x2, c);
  double sum = 0.0;
  for (int m1 = 0; m1 < 40; ++m1) {
    for (int m2 = 0; m2 < 40; ++m2) {
      const double joint = std::exp(-0.5 * (x1.squared() + x2.squared())) *
                           std::pow(n.n1, m1) / std::tgamma(m1 + 1.0) * std::pow(n.n2, m2) /
                           std::tgamma(m2 + 1.0);
      const double p = poisson_joint_pmf(m1, m2, x1, x2, c);
      EXPECT_NEAR(p, joint, 1e-15);
      EXPECT_GE(p, 0.0);
      EXPECT_LE(p, 1.0);
      sum += p;
    }
  }
  EXPECT_NEAR(sum, 1.0, 1e-13);
}

TEST(Truncation, ChernoffBoundDominatesExactTail) {
  for (double lambda : {0.1, 1.0, 4.5, 20.0, 50.0}) {
    for (int m = static_cast<int>(lambda) + 1; m < static_cast<int>(lambda) + 60; m += 3) {
      double below = 0.0;
      for (int j = 0; j < m; ++j) below += poisson_pmf(j, lambda);
      double tail = 0.0;
      for (int j = m; j < m + 400; ++j) tail += poisson_pmf(j, lambda);
      EXPECT_GE(poisson_upper_tail_bound(lambda, m), tail * (1 - 1e-12));
    }
  }
}

TEST(Truncation, Cutoffs) {
  const PoissonTruncation t;
  EXPECT_EQ(t.cutoff(0.0), 0);
  const int m = t.cutoff(5.0);
  EXPECT_LE(poisson_upper_tail_bound(5.0, m + 1), 0.5e-12);
  EXPECT_GT(poisson_upper_tail_bound(5.0, m), 0.5e-12);
  EXPECT_THROW(t.cutoff(5000.0), NumericalFailure);
  EXPECT_THROW(PoissonTruncation(0.0), InvalidParameter);
  EXPECT_THROW(PoissonTruncation(1e-12, 10).cutoff(30.0), NumericalFailure);
}

TEST(TruncatedExpectation, Normalisation) {
  const PoissonTruncation t;
  for (double l : {0.0, 0.3, 2.0, 17.0, 50.0}) {
    const auto s = truncated_expectation([](int, int) { return 1.0; }, PhotonNumbers{l, 0.5 * l}, t);
    EXPECT_LE(s.value, 1.0 + 1e-14);
    EXPECT_GE(s.value, 1.0 - t.tail_bound() - 1e-14);
    EXPECT_GE(s.retained_mass, 1.0 - t.tail_bound() - 1e-14);
    EXPECT_LE(s.retained_mass, 1.0 + 1e-14);
  }
}

TEST(TruncatedExpectation, MomentIdentities) {
  std::mt19937 rng(13);
  std::uniform_real_distribution<double> lam(0.0, 50.0);
  const PoissonTruncation t;
  for (int i = 0; i < 40; ++i) {
    const PhotonNumbers n{lam(rng), lam(rng)};
    const auto m1 = truncated_expectation([](int a, int) { return a; }, n, t).value;
    const auto m1sq = truncated_expectation([](int a, int) { return double(a) * a; }, n, t).value;
    const auto m12 = truncated_expectation([](int a, int b) { return double(a) * b; }, n, t).value;
    const auto m2sq = truncated_expectation([](int, int b) { return double(b) * b; }, n, t).value;
    EXPECT_NEAR(m1, n.n1, 1e-8);
    EXPECT_NEAR(m1sq, n.n1 * n.n1 + n.n1, 1e-8 * std::max(1.0, n.n1 * n.n1));
    EXPECT_NEAR(m2sq, n.n2 * n.n2 + n.n2, 1e-8 * std::max(1.0, n.n2 * n.n2));
    EXPECT_NEAR(m12, n.n1 * n.n2, 1e-8 * std::max(1.0, n.n1 * n.n2));
  }
}

TEST(TruncatedExpectation, CournotKernelReproducesVarianceShift) {
  // <m1 (k - m1 - m2)> = n1 (k - 1 - n1 - n2) by <m^2> = n^2 + n
  const double k = 7.0;
  const PoissonTruncation t;
  for (double g : {0.0, 0.3, 0.7}) {
    const Strategy x1(2.1), x2(1.4);
    const auto n = expected_quantities(x1, x2, Coupling(g));
    const auto s = truncated_expectation([k](int a, int b) { return a * (k - a - b); }, x1, x2,
                                         Coupling(g), t);
    EXPECT_NEAR(s.value, n.n1 * (k - 1 - n.n1 - n.n2), 1e-8);
  }
}

TEST(TruncatedExpectation, Deterministic) {
  const PoissonTruncation t;
  auto f = [](int a, int b) { return std::sin(a + 0.1 * b); };
  const auto a = truncated_expectation(f, PhotonNumbers{12.3, 4.5}, t);
  const auto b = truncated_expectation(f, PhotonNumbers{12.3, 4.5}, t);
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.m1_max, b.m1_max);
}
