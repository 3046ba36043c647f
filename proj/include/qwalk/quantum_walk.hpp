#pragma once

#include <array>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <vector>

#include "qwalk/coin.hpp"
#include "qwalk/errors.hpp"

namespace qwalk {

// Normalized initial chirality state (q_L, q_R).
class InitialQubit {
 public:
  InitialQubit(cplx left, cplx right) : left_(left), right_(right) {
    const double norm = std::norm(left) + std::norm(right);
    if (std::abs(norm - 1.0) > kCoinTolerance) {
      throw DomainError("initial qubit must have unit norm");
    }
  }

  // (1/sqrt2, i/sqrt2): makes the distribution symmetric in x.
  static InitialQubit symmetric() {
    const double h = 1.0 / std::sqrt(2.0);
    return InitialQubit(cplx{h, 0.0}, cplx{0.0, h});
  }

  cplx left() const { return left_; }
  cplx right() const { return right_; }
  std::array<cplx, 2> vec() const { return {left_, right_}; }

 private:
  cplx left_, right_;
};

// Amplitudes at time k on the dense interval [-k, k]; index i <-> x = i - k.
struct QuantumState {
  long time = 0;
  std::vector<cplx> left;
  std::vector<cplx> right;

  std::array<cplx, 2> amplitude(long x) const {
    if (x < -time || x > time) return {cplx{0}, cplx{0}};
    const auto i = static_cast<std::size_t>(x + time);
    return {left[i], right[i]};
  }

  double probability(long x) const {
    const auto amp = amplitude(x);
    return std::norm(amp[0]) + std::norm(amp[1]);
  }
};

inline QuantumState evolve(const Coin& coin, const InitialQubit& init, long steps) {
  if (coin.kind() != CoinKind::Unitary) {
    throw KindError("quantum evolution requires a unitary coin");
  }
  if (steps < 0) throw DomainError("steps must be nonnegative");

  const cplx a = coin.a(), b = coin.b(), c = coin.c(), d = coin.d();
  const auto width = static_cast<std::size_t>(2 * steps + 1);
  // Work on the full [-steps, steps] window; the live support at time t is
  // [-t, t] with parity t, so only that slice is swept.
  std::vector<cplx> left(width), right(width), next_left(width), next_right(width);
  const auto origin = static_cast<std::size_t>(steps);
  left[origin] = init.left();
  right[origin] = init.right();

  for (long t = 0; t < steps; ++t) {
    const std::size_t lo = origin - static_cast<std::size_t>(t);
    const std::size_t hi = origin + static_cast<std::size_t>(t);
    for (std::size_t i = lo - 1; i <= hi + 1; ++i) {
      next_left[i] = cplx{0};
      next_right[i] = cplx{0};
    }
    for (std::size_t i = lo; i <= hi; i += 2) {
      const cplx l = left[i], r = right[i];
      next_left[i - 1] = a * l + b * r;
      next_right[i + 1] = c * l + d * r;
    }
    std::swap(left, next_left);
    std::swap(right, next_right);
  }
  return QuantumState{steps, std::move(left), std::move(right)};
}

inline std::map<long, double> distribution(const QuantumState& state) {
  std::map<long, double> out;
  for (long x = -state.time; x <= state.time; x += 2) {
    out.emplace(x, state.probability(x));
  }
  return out;
}

// P(X_k = 0) for an arbitrary unitary coin applied for k steps.
inline double return_probability(const Coin& coin, long steps,
                                 const InitialQubit& init = InitialQubit::symmetric()) {
  if (steps % 2 != 0) {
    if (coin.kind() != CoinKind::Unitary) {
      throw KindError("quantum evolution requires a unitary coin");
    }
    return 0.0;
  }
  return evolve(coin, init, steps).probability(0);
}

// p_n(0) for a quantum family: the coin is built from the final time n and
// used at every one of the n steps.
inline double return_probability_exact(const FamilySpec& spec,
                                       const InitialQubit& init = InitialQubit::symmetric()) {
  if (!is_quantum(spec.family)) throw KindError("spec is not a quantum family");
  const Coin coin = make_coin(spec);
  return return_probability(coin, spec.final_time, init);
}

inline constexpr long kMaxBruteforceSteps = 20;

// ||Xi_k(l, m) phi||^2 summed literally over every word of l lefts and m
// rights. Test oracle for evolve(); exponential in k.
inline double path_sum_bruteforce(const Coin& coin, const InitialQubit& init, long steps,
                                  long position) {
  if (steps > kMaxBruteforceSteps) throw SizeError("path enumeration limited to k <= 20");
  if (steps < 0) throw DomainError("steps must be nonnegative");
  if (((position + steps) % 2 + 2) % 2 != 0 || position < -steps || position > steps) {
    return 0.0;
  }
  const auto [p, q] = split(coin);
  const auto rights = static_cast<int>((steps + position) / 2);

  Mat2 xi;  // zero
  const std::uint32_t words = std::uint32_t{1} << steps;
  for (std::uint32_t w = 0; w < words; ++w) {
    if (std::popcount(w) != rights) continue;
    // Bit j set: step j + 1 moves right. Later steps multiply on the left.
    Mat2 prod = Mat2::identity();
    for (long j = 0; j < steps; ++j) {
      prod = (((w >> j) & 1u) ? q : p) * prod;
    }
    xi = xi + prod;
  }
  const auto v = xi.apply(init.vec());
  return std::norm(v[0]) + std::norm(v[1]);
}

}  // namespace qwalk
