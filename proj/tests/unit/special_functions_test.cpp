#include "qwalk/special_functions.hpp"

#include <cmath>
#include <numbers>

#include "gtest/gtest.h"
#include "support/oracles.hpp"

namespace qwalk {
namespace {

TEST(BesselJ, ValuesAtZero) {
  EXPECT_EQ(bessel_j(0, 0.0), 1.0);
  EXPECT_EQ(bessel_j(1, 0.0), 0.0);
}

TEST(BesselJ, AtOne) {
  EXPECT_NEAR(bessel_j(0, 1.0), 0.765197686557967, 1e-15);
  EXPECT_NEAR(bessel_j(0, 1.0), testing::oracle_bessel_j(0, 1.0), 1e-16);
  EXPECT_NEAR(bessel_j(1, 1.0), testing::oracle_bessel_j(1, 1.0), 1e-16);
}

TEST(BesselJ, LeadingLargeArgumentForm) {
  const double x = 100.0;
  const double lead = std::sqrt(2.0 / (std::numbers::pi * x)) * std::cos(x - std::numbers::pi / 4);
  EXPECT_LT(std::abs(bessel_j(0, x) - lead), 1e-3);
}

TEST(BesselJ, SmallArgumentForms) {
  const double x = 1e-3;
  EXPECT_NEAR(bessel_j(0, x), 1.0 - x * x / 4.0 + x * x * x * x / 64.0, 1e-16);
  EXPECT_NEAR(bessel_j(1, x), x / 2.0 - x * x * x / 16.0, 1e-17);
}

TEST(BesselJ, MethodSelection) {
  EXPECT_EQ(bessel_j_eval(0, kBesselJCrossover - 1e-9).method, BesselMethod::Series);
  EXPECT_EQ(bessel_j_eval(0, kBesselJCrossover).method, BesselMethod::AsymptoticExpansion);
}

TEST(BesselJ, Errors) {
  EXPECT_THROW(bessel_j(0, -1.0), DomainError);
  EXPECT_THROW(bessel_j(2, 1.0), DomainError);
}

TEST(BesselJ, AccuracyAgainstExtendedPrecision) {
  // The 320-digit oracle series stays exact up to x ~ 700.
  for (double x = 0.0; x <= 500.0; x += 1.7) {
    for (int order : {0, 1}) {
      const double ref = testing::oracle_bessel_j(order, x);
      EXPECT_LE(std::abs(bessel_j(order, x) - ref), 1e-12 * std::max(1.0, std::abs(ref)))
          << "order=" << order << " x=" << x;
    }
  }
}

TEST(BesselJ, BranchesAgreeAroundCrossover) {
  for (double x = kBesselJCrossover - 2.0; x <= kBesselJCrossover + 2.0; x += 0.125) {
    for (int order : {0, 1}) {
      const double series = static_cast<double>(detail::bessel_power_series(order, x, true));
      const double hankel = detail::bessel_j_hankel(order, x);
      EXPECT_NEAR(series, hankel, 1e-10) << "x=" << x;
    }
  }
}

TEST(BesselJ, BracketEnvelope) {
  for (double x = 0.1; x <= 500.0; x *= 1.3) {
    const double s = bessel_j_bracket(x);
    EXPECT_GT(s, 0.0);
    EXPECT_LE(s, 1.0);
  }
  const double x = 500.0;
  EXPECT_NEAR(bessel_j_bracket(x) / (2.0 / (std::numbers::pi * x)), 1.0, 0.01);
}

TEST(BesselJ, BracketComplement) {
  for (double x : {1e-8, 1e-4, 0.01, 0.3, 1.0, 1.9, 2.0}) {
    const double ref = 1.0 - std::pow(testing::oracle_bessel_j(0, x), 2) -
                       std::pow(testing::oracle_bessel_j(1, x), 2);
    if (x >= 0.3) {
      EXPECT_NEAR(bessel_j_bracket_complement(x), ref, 1e-14 * ref) << x;
    }
    // 1 - J0^2 - J1^2 = x^2/4 - x^4/32 + ...
    if (x <= 1e-2) {
      EXPECT_NEAR(bessel_j_bracket_complement(x) / (x * x / 4.0), 1.0, std::max(x * x, 4e-16));
    }
  }
  EXPECT_NEAR(bessel_j_bracket_complement(5.0), 1.0 - bessel_j_bracket(5.0), 1e-16);
}

TEST(BesselI, ValuesAtZero) {
  EXPECT_EQ(bessel_i(0, 0.0), 1.0);
  EXPECT_EQ(bessel_i(1, 0.0), 0.0);
  EXPECT_EQ(scaled_bessel_i_sum(0.0), 1.0);
}

TEST(BesselI, ScaledSumAtOne) {
  EXPECT_NEAR(scaled_bessel_i_sum(1.0), testing::oracle_scaled_i_sum(1.0), 1e-16);
}

TEST(BesselI, SmallArgument) {
  const double x = 1e-4;
  EXPECT_NEAR(scaled_bessel_i_sum(x), 1.0 - x / 2.0, x * x);
}

TEST(BesselI, LargeArgumentForm) {
  const double x = 200.0;
  const double lead = (1.0 + 1.0 / (8.0 * x)) / std::sqrt(2.0 * std::numbers::pi * x);
  EXPECT_NEAR(scaled_bessel_i(0, x) / lead, 1.0, 1e-4);
  // Combined: e^{-x}(I0 + I1) ~ sqrt(2/(pi x)) (1 - 1/(8x)).
  const double combined = std::sqrt(2.0 / (std::numbers::pi * x)) * (1.0 - 1.0 / (8.0 * x));
  EXPECT_NEAR(scaled_bessel_i_sum(x) / combined, 1.0, 1e-4);
  EXPECT_NEAR(scaled_bessel_i_sum(x), testing::oracle_scaled_i_sum(x), 1e-14);
}

TEST(BesselI, Overflow) {
  EXPECT_NO_THROW(bessel_i(0, 700.0));
  EXPECT_THROW(bessel_i(0, 710.0), OverflowError);
  EXPECT_GT(scaled_bessel_i_sum(1e12), 0.0);
}

TEST(BesselI, ScaledSumIsDecreasingInUnitInterval) {
  double previous = 1.0;
  for (double x = 0.01; x < 1e6; x *= 1.1) {
    const double s = scaled_bessel_i_sum(x);
    EXPECT_LT(s, previous) << x;
    EXPECT_GT(s, 0.0);
    previous = s;
  }
}

TEST(BesselI, AccuracyAgainstExtendedPrecision) {
  for (double x = 0.0; x <= 700.0; x += 2.3) {
    const double ref = testing::oracle_scaled_i_sum(x);
    EXPECT_LE(std::abs(scaled_bessel_i_sum(x) - ref), 1e-13 * ref) << "x=" << x;
    const double unscaled_ref = ref * std::exp(x);
    EXPECT_LE(std::abs(bessel_i(0, x) + bessel_i(1, x) - unscaled_ref), 1e-12 * unscaled_ref);
  }
}

TEST(BesselI, BranchesAgreeAroundCrossover) {
  for (double x = kBesselICrossover - 2.0; x <= kBesselICrossover + 2.0; x += 0.125) {
    for (int order : {0, 1}) {
      const double series = static_cast<double>(std::exp(-static_cast<long double>(x)) *
                                                 detail::bessel_power_series(order, x, false));
      const double hankel = detail::scaled_bessel_i_hankel(order, x);
      EXPECT_NEAR(series, hankel, 1e-10 * series) << "x=" << x;
    }
  }
}

TEST(BesselI, SumComplement) {
  for (double x : {1e-9, 1e-6, 1e-3, 0.5, 1.0, 3.0}) {
    const double ref = 1.0 - testing::oracle_scaled_i_sum(x);
    if (x >= 1e-3) {
      EXPECT_NEAR(scaled_bessel_i_sum_complement(x), ref, 1e-13 * ref) << x;
    } else {
      EXPECT_NEAR(scaled_bessel_i_sum_complement(x) / (x / 2.0), 1.0, 2.0 * x) << x;
    }
  }
}

TEST(BesselI, GeneratingFunctionIdentity) {
  // exp(u (z + 1/z)/2) at z = 1: sum over all m of I_m(u) = e^u.
  for (double u : {0.5, 1.0, 2.0}) {
    const auto seq = bessel_i_sequence(u, 40);
    double sum = seq[0];
    for (int m = 1; m <= 40; ++m) sum += 2.0 * seq[static_cast<std::size_t>(m)];
    EXPECT_NEAR(sum, std::exp(u), 1e-10 * std::exp(u)) << u;
    EXPECT_NEAR(seq[1], bessel_i(1, u), 1e-14 * bessel_i(1, u));
  }
}

}  // namespace
}  // namespace qwalk
