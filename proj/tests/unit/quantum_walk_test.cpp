#include "qwalk/quantum_walk.hpp"

#include <cmath>
#include <random>

#include "gtest/gtest.h"
#include "support/oracles.hpp"

namespace qwalk {
namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

Coin Hadamard() { return Coin::unitary(kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2); }

TEST(Evolve, ZeroStepsKeepsInitialQubit) {
  const InitialQubit init(cplx{0.6, 0.0}, cplx{0.0, 0.8});
  const QuantumState s = evolve(Hadamard(), init, 0);
  EXPECT_EQ(s.time, 0);
  EXPECT_EQ(s.amplitude(0)[0], init.left());
  EXPECT_EQ(s.amplitude(0)[1], init.right());
  EXPECT_EQ(distribution(s), (std::map<long, double>{{0, 1.0}}));
}

TEST(Evolve, HadamardOneStep) {
  const auto dist = distribution(evolve(Hadamard(), InitialQubit::symmetric(), 1));
  ASSERT_EQ(dist.size(), 2u);
  EXPECT_NEAR(dist.at(-1), 0.5, 1e-15);
  EXPECT_NEAR(dist.at(1), 0.5, 1e-15);
}

TEST(Evolve, HadamardTwoSteps) {
  const auto dist = distribution(evolve(Hadamard(), InitialQubit::symmetric(), 2));
  ASSERT_EQ(dist.size(), 3u);
  double total = 0.0;
  for (const auto& [x, p] : dist) total += p;
  EXPECT_NEAR(total, 1.0, 1e-15);
  // Paths PQ and QP applied to (1/sqrt2, i/sqrt2) by hand.
  EXPECT_NEAR(dist.at(0), 0.5, 1e-15);
  EXPECT_NEAR(dist.at(-2), 0.25, 1e-15);
  EXPECT_NEAR(dist.at(2), 0.25, 1e-15);
}

TEST(Evolve, RejectsStochasticCoin) {
  EXPECT_THROW(evolve(Coin::stochastic(0.5, 0.5, 0.5, 0.5), InitialQubit::symmetric(), 2),
               KindError);
}

TEST(InitialQubitTest, RejectsUnnormalized) {
  EXPECT_THROW(InitialQubit(cplx{1.0}, cplx{1.0}), DomainError);
}

TEST(ReturnProbabilityExact, DegenerateFamilies) {
  for (long n : {2L, 4L, 10L, 64L}) {
    EXPECT_NEAR(return_probability_exact({Family::QW_K, 0.0, 1.0, n, true}), 1.0, 1e-14) << n;
    EXPECT_NEAR(return_probability_exact({Family::QW_R, 0.0, 1.0, n, true}), 0.0, 1e-14) << n;
  }
}

TEST(ReturnProbabilityExact, OddTimesNeverReturn) {
  for (long n : {1L, 3L, 7L, 101L}) {
    EXPECT_EQ(return_probability_exact({Family::QW_R, 1.0, 0.5, n}), 0.0);
    EXPECT_EQ(return_probability_exact({Family::QW_K, 0.5, 1.0, n}), 0.0);
  }
}

TEST(ReturnProbabilityExact, HadamardSmallTimes) {
  // Independent values from the path oracle.
  const Coin h = Hadamard();
  for (long n : {2L, 4L, 6L, 8L}) {
    EXPECT_NEAR(return_probability(h, n),
                path_sum_bruteforce(h, InitialQubit::symmetric(), n, 0), 1e-14);
  }
  EXPECT_NEAR(return_probability(h, 2), 0.5, 1e-15);
  EXPECT_NEAR(return_probability(h, 4), 0.125, 1e-15);
}

TEST(ReturnProbabilityExact, RejectsClassicalSpec) {
  EXPECT_THROW(return_probability_exact({Family::CRW_R, 1.0, 1.0, 4}), KindError);
}

TEST(PathSum, HadamardTwoStepsAtOrigin) {
  EXPECT_NEAR(path_sum_bruteforce(Hadamard(), InitialQubit::symmetric(), 2, 0), 0.5, 1e-15);
}

TEST(PathSum, ThreeStepsMatchesExplicitWordSum) {
  std::mt19937_64 rng(7);
  const Coin c = testing::random_unitary_coin(rng);
  const auto [p, q] = split(c);
  // Xi_3(2, 1) = Q P^2 + P Q P + P^2 Q
  const Mat2 xi = q * p * p + p * q * p + p * p * q;
  const auto v = xi.apply(InitialQubit::symmetric().vec());
  const double expected = std::norm(v[0]) + std::norm(v[1]);
  EXPECT_NEAR(path_sum_bruteforce(c, InitialQubit::symmetric(), 3, -1), expected, 1e-15);
}

TEST(PathSum, SingleRightStep) {
  std::mt19937_64 rng(11);
  const Coin c = testing::random_unitary_coin(rng);
  const auto v = split(c).right.apply(InitialQubit::symmetric().vec());
  EXPECT_NEAR(path_sum_bruteforce(c, InitialQubit::symmetric(), 1, 1),
              std::norm(v[0]) + std::norm(v[1]), 1e-15);
}

TEST(PathSum, SizeLimit) {
  EXPECT_THROW(path_sum_bruteforce(Hadamard(), InitialQubit::symmetric(), 21, 1), SizeError);
  EXPECT_EQ(path_sum_bruteforce(Hadamard(), InitialQubit::symmetric(), 4, 1), 0.0);
}

// ---- properties ----

TEST(QuantumWalkProperties, NormConservation) {
  const Coin coins[] = {Hadamard(), make_coin({Family::QW_R, 0.5, 1.0, 10000}),
                        make_coin({Family::QW_K, 1.5, 2.0, 10000})};
  for (const Coin& c : coins) {
    for (long k : {1L, 17L, 1000L, 10000L}) {
      const auto dist = distribution(evolve(c, InitialQubit::symmetric(), k));
      double total = 0.0;
      for (const auto& [x, p] : dist) total += p;
      EXPECT_NEAR(total, 1.0, 1e-10) << "k=" << k;
    }
  }
}

TEST(QuantumWalkProperties, SymmetricInitialStateGivesSymmetricLaw) {
  for (Family f : {Family::QW_R, Family::QW_K}) {
    for (double alpha : {0.3, 1.0, 2.0}) {
      for (long n : {20L, 101L, 500L}) {
        const QuantumState s =
            evolve(make_coin({f, alpha, 1.0, n}), InitialQubit::symmetric(), n);
        double worst = 0.0;
        for (long x = 0; x <= n; ++x) {
          worst = std::max(worst, std::abs(s.probability(x) - s.probability(-x)));
        }
        EXPECT_LT(worst, 1e-12) << family_name(f) << " alpha=" << alpha << " n=" << n;
      }
    }
  }
}

TEST(QuantumWalkProperties, ParityOfSupport) {
  std::mt19937_64 rng(3);
  const Coin c = testing::random_unitary_coin(rng);
  for (long k : {5L, 6L}) {
    const QuantumState s = evolve(c, InitialQubit::symmetric(), k);
    for (long x = -k; x <= k; ++x) {
      if ((x + k) % 2 != 0) {
        EXPECT_EQ(s.probability(x), 0.0) << "k=" << k << " x=" << x;
      }
    }
  }
}

TEST(QuantumWalkProperties, EvolveMatchesPathEnumeration) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> angle(0.0, 6.283185307179586);
  for (int trial = 0; trial < 50; ++trial) {
    const Coin c = testing::random_unitary_coin(rng);
    const double theta = angle(rng);
    const InitialQubit init(cplx{std::cos(theta), 0.0}, std::polar(std::sin(theta), angle(rng)));
    for (long k = 0; k <= 12; ++k) {
      const QuantumState s = evolve(c, init, k);
      for (long x = -k; x <= k; x += 2) {
        EXPECT_NEAR(s.probability(x), path_sum_bruteforce(c, init, k, x), 1e-12)
            << "trial=" << trial << " k=" << k << " x=" << x;
      }
    }
  }
}

}  // namespace
}  // namespace qwalk
