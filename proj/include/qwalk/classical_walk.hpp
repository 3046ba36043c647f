#pragma once

#include <array>
#include <cmath>
#include <map>
#include <vector>

#include "qwalk/coin.hpp"
#include "qwalk/errors.hpp"

namespace qwalk {

// Joint law of (position, direction of the last move) at time k, on the
// dense interval [-k, k]; index i <-> x = i - k.
struct ClassicalState {
  long time = 0;
  std::vector<double> left;   // last move was to the left
  std::vector<double> right;  // last move was to the right

  double probability(long x) const {
    if (x < -time || x > time) return 0.0;
    const auto i = static_cast<std::size_t>(x + time);
    return left[i] + right[i];
  }
};

// The initial pair is read as a fictitious previous direction, so the coin
// already acts on the very first step, the same as P and Q do for the
// quantum walk.
inline ClassicalState evolve_classical(const Coin& coin, std::array<double, 2> init,
                                       long steps) {
  if (coin.kind() != CoinKind::Stochastic) {
    throw KindError("classical evolution requires a stochastic coin");
  }
  if (steps < 0) throw DomainError("steps must be nonnegative");
  if (init[0] < 0.0 || init[1] < 0.0 || std::abs(init[0] + init[1] - 1.0) > kCoinTolerance) {
    throw DomainError("initial distribution must be nonnegative and sum to 1");
  }

  const double a = coin.a().real(), b = coin.b().real();
  const double c = coin.c().real(), d = coin.d().real();
  const auto width = static_cast<std::size_t>(2 * steps + 1);
  std::vector<double> left(width), right(width), next_left(width), next_right(width);
  const auto origin = static_cast<std::size_t>(steps);
  left[origin] = init[0];
  right[origin] = init[1];

  for (long t = 0; t < steps; ++t) {
    const std::size_t lo = origin - static_cast<std::size_t>(t);
    const std::size_t hi = origin + static_cast<std::size_t>(t);
    for (std::size_t i = lo - 1; i <= hi + 1; ++i) {
      next_left[i] = 0.0;
      next_right[i] = 0.0;
    }
    for (std::size_t i = lo; i <= hi; i += 2) {
      const double l = left[i], r = right[i];
      next_left[i - 1] = a * l + b * r;
      next_right[i + 1] = c * l + d * r;
    }
    std::swap(left, next_left);
    std::swap(right, next_right);
  }
  return ClassicalState{steps, std::move(left), std::move(right)};
}

inline std::map<long, double> distribution(const ClassicalState& state) {
  std::map<long, double> out;
  for (long x = -state.time; x <= state.time; x += 2) {
    out.emplace(x, state.probability(x));
  }
  return out;
}

inline double return_probability_classical(const Coin& coin, long steps,
                                           std::array<double, 2> init = {0.5, 0.5}) {
  if (steps % 2 != 0) {
    if (coin.kind() != CoinKind::Stochastic) {
      throw KindError("classical evolution requires a stochastic coin");
    }
    return 0.0;
  }
  return evolve_classical(coin, init, steps).probability(0);
}

inline double return_probability_classical(const FamilySpec& spec) {
  if (is_quantum(spec.family)) throw KindError("spec is not a classical family");
  return return_probability_classical(make_coin(spec), spec.final_time);
}

}  // namespace qwalk
