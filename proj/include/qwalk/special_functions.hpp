#pragma once

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "qwalk/errors.hpp"

namespace qwalk {

enum class BesselMethod { Series, AsymptoticExpansion };

struct BesselResult {
  double value;
  BesselMethod method;
};

// Below these arguments the power series is summed in extended precision;
// above them the Hankel expansion's smallest term is under e^{-2x}.
inline constexpr double kBesselJCrossover = 20.0;
inline constexpr double kBesselICrossover = 25.0;

namespace detail {

inline void check_order_and_argument(int order, double x) {
  if (order != 0 && order != 1) throw DomainError("only orders 0 and 1 are provided");
  if (!(x >= 0.0)) throw DomainError("Bessel argument must be nonnegative");
}

// sum_k (sign)^k (x/2)^(2k+order) / (k! (k+order)!)
inline long double bessel_power_series(int order, long double x, bool alternating) {
  const long double half = x / 2.0L;
  const long double q = half * half;
  long double term = order == 0 ? 1.0L : half;
  long double sum = term;
  for (int k = 1; k < 500; ++k) {
    term *= q / (static_cast<long double>(k) * static_cast<long double>(k + order));
    if (alternating) term = -term;
    sum += term;
    if (static_cast<long double>(k) > half &&
        std::fabs(term) <= std::numeric_limits<long double>::epsilon() * std::fabs(sum)) {
      break;
    }
  }
  return sum;
}

// Hankel coefficients a_k(order) / x^k, stopping at the smallest term.
// Calls visit(k, a_k / x^k) for k = 0, 1, ...
template <class Visit>
void hankel_terms(int order, double x, Visit&& visit) {
  const double mu = 4.0 * order * order;
  double term = 1.0;
  visit(0, term);
  for (int k = 1; k < 200; ++k) {
    const double odd = 2.0 * k - 1.0;
    const double next = term * (mu - odd * odd) / (8.0 * k * x);
    if (std::fabs(next) >= std::fabs(term)) break;
    term = next;
    visit(k, term);
    if (std::fabs(term) < 1e-18) break;
  }
}

inline double bessel_j_hankel(int order, double x) {
  double p = 0.0, q = 0.0;
  hankel_terms(order, x, [&](int k, double t) {
    const double sign = ((k / 2) % 2 == 0) ? 1.0 : -1.0;
    if (k % 2 == 0) {
      p += sign * t;
    } else {
      q += sign * t;
    }
  });
  // cos and sin of chi = x - order*pi/2 - pi/4 expanded around x so the
  // phase is never reduced from an inexact x - pi/4.
  const double c = std::cos(x), s = std::sin(x);
  const double r = std::numbers::sqrt2 / 2.0;
  const double cos_chi = order == 0 ? r * (c + s) : r * (s - c);
  const double sin_chi = order == 0 ? r * (s - c) : -r * (s + c);
  return std::sqrt(2.0 / (std::numbers::pi * x)) * (p * cos_chi - q * sin_chi);
}

inline double scaled_bessel_i_hankel(int order, double x) {
  double sum = 0.0;
  hankel_terms(order, x, [&](int k, double t) { sum += (k % 2 == 0) ? t : -t; });
  return sum / std::sqrt(2.0 * std::numbers::pi * x);
}

}  // namespace detail

inline BesselResult bessel_j_eval(int order, double x) {
  detail::check_order_and_argument(order, x);
  if (x < kBesselJCrossover) {
    return {static_cast<double>(detail::bessel_power_series(order, x, true)),
            BesselMethod::Series};
  }
  return {detail::bessel_j_hankel(order, x), BesselMethod::AsymptoticExpansion};
}

inline double bessel_j(int order, double x) { return bessel_j_eval(order, x).value; }

// e^{-x} I_order(x).
inline BesselResult scaled_bessel_i_eval(int order, double x) {
  detail::check_order_and_argument(order, x);
  if (x < kBesselICrossover) {
    const long double series = detail::bessel_power_series(order, x, false);
    return {static_cast<double>(std::exp(-static_cast<long double>(x)) * series),
            BesselMethod::Series};
  }
  return {detail::scaled_bessel_i_hankel(order, x), BesselMethod::AsymptoticExpansion};
}

inline double scaled_bessel_i(int order, double x) { return scaled_bessel_i_eval(order, x).value; }

inline constexpr double kBesselIMaxArgument = 700.0;

inline double bessel_i(int order, double x) {
  detail::check_order_and_argument(order, x);
  if (x > kBesselIMaxArgument) {
    throw OverflowError("I_k(x) overflows for x > 700; use scaled_bessel_i");
  }
  return std::exp(x) * scaled_bessel_i(order, x);
}

// e^{-x} (I_0(x) + I_1(x)); decreases from 1 at x = 0.
inline double scaled_bessel_i_sum(double x) {
  return scaled_bessel_i(0, x) + scaled_bessel_i(1, x);
}

// 1 - e^{-x}(I_0(x) + I_1(x)), accurate when the sum is close to one.
inline double scaled_bessel_i_sum_complement(double x) {
  if (!(x >= 0.0)) throw DomainError("argument must be nonnegative");
  if (x > 1.0) return 1.0 - scaled_bessel_i_sum(x);
  // 1 - e^{-x}(1 + (I_0 - 1) + I_1) = -expm1(-x) - e^{-x}((I_0 - 1) + I_1)
  const long double i0_minus_one = detail::bessel_power_series(0, x, false) - 1.0L;
  const long double i1 = detail::bessel_power_series(1, x, false);
  return static_cast<double>(-std::expm1(-static_cast<long double>(x)) -
                             std::exp(-static_cast<long double>(x)) * (i0_minus_one + i1));
}

inline double bessel_j_bracket(double x) {
  const double j0 = bessel_j(0, x), j1 = bessel_j(1, x);
  return j0 * j0 + j1 * j1;
}

// 1 - J_0(x)^2 - J_1(x)^2 = sum_{j>=1} (-1)^(j+1) (2j)! / ((j!)^4 (j+1)) (x/2)^(2j)
// for small x, where the direct difference would cancel.
inline double bessel_j_bracket_complement(double x) {
  if (!(x >= 0.0)) throw DomainError("argument must be nonnegative");
  if (x > 2.0) return 1.0 - bessel_j_bracket(x);
  const long double q = static_cast<long double>(x) * x / 4.0L;
  long double coeff = 1.0L;  // j = 1
  long double power = q;
  long double sum = coeff * power;
  for (int j = 1; j < 60; ++j) {
    coeff *= -static_cast<long double>((2 * j + 1) * (2 * j + 2)) /
             (static_cast<long double>(j + 1) * (j + 1) * (j + 1) * (j + 2));
    power *= q;
    const long double term = coeff * power;
    sum += term;
    if (std::fabs(term) <= std::numeric_limits<long double>::epsilon() * std::fabs(sum)) break;
  }
  return static_cast<double>(sum);
}

// I_0(u), ..., I_max_order(u) by Miller's backward recurrence
// I_{k-1} = I_{k+1} + (2k/u) I_k, normalized against the series value of I_0.
inline std::vector<double> bessel_i_sequence(double u, int max_order) {
  if (!(u >= 0.0) || u > kBesselIMaxArgument) throw DomainError("argument out of range");
  if (max_order < 0) throw DomainError("max_order must be nonnegative");
  std::vector<double> out(static_cast<std::size_t>(max_order) + 1, 0.0);
  if (u == 0.0) {
    out[0] = 1.0;
    return out;
  }
  const int start = max_order + 40 + static_cast<int>(2.0 * u);
  std::vector<double> raw(static_cast<std::size_t>(start) + 2, 0.0);
  raw[static_cast<std::size_t>(start)] = 1e-30;
  for (int k = start; k >= 1; --k) {
    const auto i = static_cast<std::size_t>(k);
    raw[i - 1] = raw[i + 1] + (2.0 * k / u) * raw[i];
    if (raw[i - 1] > 1e250) {
      for (double& v : raw) v *= 1e-250;
    }
  }
  const double norm = bessel_i(0, u) / raw[0];
  for (int k = 0; k <= max_order; ++k) {
    out[static_cast<std::size_t>(k)] = raw[static_cast<std::size_t>(k)] * norm;
  }
  return out;
}

}  // namespace qwalk
