#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <optional>

#include "qwalk/classical_walk.hpp"
#include "qwalk/coin.hpp"
#include "qwalk/errors.hpp"

namespace qwalk {

// Quantities shared by the K/L sums at one even final time n.
//
// Quantum walks use |a|, |b| and A = |b|/|a| with the alternating weight
// (-A^2)^(gamma-1). Correlated random walks use a, b and B = b/a with the
// positive weight B^(2(gamma-1)).
struct ClosedFormContext {
  long n = 2;
  long m = 1;  // n / 2
  bool quantum = true;
  double abs_a = 0.0;
  double abs_b = 0.0;
  double ratio = 0.0;
  // x_n = (n/tau)^(2 alpha) or y_n = (n/theta)^beta; set only for family coins.
  std::optional<double> x_scale;
};

namespace detail {

inline void check_even_n(long n) {
  if (n % 2 != 0) throw ParityError("closed forms need an even final time");
  if (n < 2) throw DomainError("closed forms need n >= 2");
}

}  // namespace detail

inline ClosedFormContext make_context(const Coin& coin, long n) {
  detail::check_even_n(n);
  ClosedFormContext ctx;
  ctx.n = n;
  ctx.m = n / 2;
  ctx.quantum = coin.kind() == CoinKind::Unitary;
  if (ctx.quantum) {
    ctx.abs_a = std::abs(coin.a());
    ctx.abs_b = std::abs(coin.b());
  } else {
    ctx.abs_a = coin.a().real();
    ctx.abs_b = coin.b().real();
  }
  if (!(ctx.abs_a > 0.0 && ctx.abs_a < 1.0) || !(ctx.abs_b > 0.0)) {
    throw DegenerateCoinError("closed forms need 0 < |a| < 1 and b != 0");
  }
  ctx.ratio = ctx.abs_b / ctx.abs_a;
  if (ctx.quantum) {
    const double unit = ctx.abs_a * ctx.abs_a * (1.0 + ctx.ratio * ctx.ratio);
    if (std::abs(unit - 1.0) > 1e-12) {
      throw DomainError("|a|^2 (1 + A^2) = 1 violated");
    }
  }
  return ctx;
}

inline ClosedFormContext make_context(const FamilySpec& spec) {
  ClosedFormContext ctx = make_context(make_coin(spec), spec.final_time);
  const double n = static_cast<double>(spec.final_time);
  const double power = is_quantum(spec.family) ? 2.0 * spec.exponent : spec.exponent;
  ctx.x_scale = std::pow(n / spec.scale, power);
  return ctx;
}

// |a|^(n-2) sum_{gamma=1}^{m} (+-ratio^2)^(gamma-1) w_gamma C(m-1, gamma-1)^2
// with w_gamma = 1 or 1/gamma. Terms follow the ratio recurrence
// t_{g+1}/t_g = (+-ratio^2) ((m-g)/g)^2 carried in log space, so neither the
// prefactor nor the binomials leave the exponent range. Real may be a
// multiprecision type; alternating sums at large n need one.
template <class Real = double>
Real binomial_square_sum(const ClosedFormContext& ctx, bool alternating, bool harmonic) {
  using std::exp;
  using std::log;
  detail::check_even_n(ctx.n);
  const long m = ctx.m;
  const Real abs_a = ctx.abs_a;
  const Real ratio = ctx.ratio;
  const Real log_ratio_sq = 2 * log(ratio);

  Real log_term = static_cast<Real>(ctx.n - 2) * log(abs_a);
  Real sum = 0;
  int sign = 1;
  for (long g = 1; g <= m; ++g) {
    Real term = exp(log_term);
    if (harmonic) term /= static_cast<Real>(g);
    sum += sign > 0 ? term : Real(-term);
    if (g < m) {
      const Real step = static_cast<Real>(m - g) / static_cast<Real>(g);
      log_term += log_ratio_sq + 2 * log(step);
      if (alternating) sign = -sign;
    }
  }
  return sum;
}

template <class Real = double>
Real k_sum_direct(const ClosedFormContext& ctx, bool alternating) {
  return binomial_square_sum<Real>(ctx, alternating, false);
}

template <class Real = double>
Real k_sum_direct(const ClosedFormContext& ctx) {
  return k_sum_direct<Real>(ctx, ctx.quantum);
}

template <class Real = double>
Real l_sum_direct(const ClosedFormContext& ctx, bool alternating) {
  return binomial_square_sum<Real>(ctx, alternating, true);
}

template <class Real = double>
Real l_sum_direct(const ClosedFormContext& ctx) {
  return l_sum_direct<Real>(ctx, ctx.quantum);
}

// [z^0] and [z^1] of Phi(z) = |a|^(n-2) (1 + s z)^(m-1) (1 + s/z)^(m-1) with
// s = i A (alternating) or s = B.
struct LaurentCoefficients {
  cplx c0;
  cplx c1;
  std::size_t grid = 0;
};

inline std::size_t default_grid_size(long n) {
  std::size_t size = 1;
  while (size < static_cast<std::size_t>(n + 2)) size <<= 1;
  return size;
}

// Averages Phi over N roots of unity. On |z| = 1,
// |a|^2 (1 + s z)(1 + s/z) = |a|^2 - |b|^2 + 2i|a||b|cos(phi) (quantum) or
// a^2 + b^2 + 2ab cos(phi) (classical), both of modulus <= 1, so every sample
// of Phi is bounded by one and the average loses nothing to cancellation.
inline LaurentCoefficients spectral_coefficients(const ClosedFormContext& ctx, bool alternating,
                                                 std::size_t grid = 0) {
  detail::check_even_n(ctx.n);
  if (grid == 0) grid = default_grid_size(ctx.n);
  if (grid < static_cast<std::size_t>(ctx.n + 2)) {
    throw GridError("coefficient extraction needs at least n + 2 grid points");
  }
  const double aa = ctx.abs_a * ctx.abs_a;
  const double bb = ctx.abs_b * ctx.abs_b;
  const double ab2 = 2.0 * ctx.abs_a * ctx.abs_b;
  const double power = static_cast<double>(ctx.m - 1);

  cplx c0{0}, c1{0};
  for (std::size_t j = 0; j < grid; ++j) {
    const double cos_phi =
        std::cos(2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(grid));
    const cplx base = alternating ? cplx{aa - bb, ab2 * cos_phi} : cplx{aa + bb + ab2 * cos_phi, 0.0};
    const cplx phi = std::polar(std::pow(std::abs(base), power), power * std::arg(base));
    c0 += phi;
    // Phi depends on cos(phi) only, so the z^{-1} phase reduces to cos(phi).
    c1 += phi * cos_phi;
  }
  const double inv = 1.0 / static_cast<double>(grid);
  return {c0 * inv, c1 * inv, grid};
}

inline double k_sum_spectral(const ClosedFormContext& ctx, bool alternating, std::size_t grid = 0) {
  return spectral_coefficients(ctx, alternating, grid).c0.real();
}

inline double k_sum_spectral(const ClosedFormContext& ctx) {
  return k_sum_spectral(ctx, ctx.quantum);
}

// L = (2 / (n s)) [z] ((1 + s z) Phi) = (2 / (n s)) ([z] Phi + s [z^0] Phi).
inline double l_sum_spectral(const ClosedFormContext& ctx, bool alternating, std::size_t grid = 0) {
  const auto coeff = spectral_coefficients(ctx, alternating, grid);
  const cplx s = alternating ? cplx{0.0, ctx.ratio} : cplx{ctx.ratio, 0.0};
  const double n = static_cast<double>(ctx.n);
  return (2.0 * coeff.c1 / (n * s) + 2.0 * coeff.c0 / n).real();
}

inline double l_sum_spectral(const ClosedFormContext& ctx) {
  return l_sum_spectral(ctx, ctx.quantum);
}

namespace detail {

inline double checked_probability(double p) {
  if (!(p >= -1e-9 && p <= 1.0 + 1e-9)) {
    throw DomainError("closed form left [0, 1]; the coin is outside its validity range");
  }
  return std::clamp(p, 0.0, 1.0);
}

inline ClosedFormContext lemma1_context(const Coin& coin, long n) {
  if (coin.kind() != CoinKind::Unitary) throw KindError("quantum closed form needs a unitary coin");
  return make_context(coin, n);
}

inline ClosedFormContext lemma2_context(const Coin& coin, long n) {
  if (coin.kind() != CoinKind::Stochastic) throw KindError("classical closed form needs a stochastic coin");
  detail::check_even_n(n);
  if (n < 4) throw SmallNError("the correlated-walk formula is evaluated for n >= 4 only");
  for (cplx v : {coin.a(), coin.b(), coin.c(), coin.d()}) {
    if (!(v.real() > 0.0 && v.real() < 1.0)) {
      throw DegenerateCoinError("the correlated-walk formula needs entries in (0, 1)");
    }
  }
  if (!coin.is_symmetric()) {
    throw DomainError("the correlated-walk formula holds for symmetric matrices (a = d) only");
  }
  return make_context(coin, n);
}

}  // namespace detail

// P(X_n = 0) for the symmetric initial qubit, evaluated term for term as
// |a|^2 A^4 {(n/2)^2 L^2 - n L K + K^2 / (1 - |a|^2)}.
// The braces cancel to O(|a|^2) relative to their terms, so accuracy degrades
// like 1/|a|^2; see p0_via_lemma1_factored for the cancellation-free form.
inline double p0_via_lemma1(const Coin& coin, long n) {
  const ClosedFormContext ctx = detail::lemma1_context(coin, n);
  const double k = k_sum_spectral(ctx, true);
  const double l = l_sum_spectral(ctx, true);
  const double aa = ctx.abs_a * ctx.abs_a;
  const double a4 = std::pow(ctx.ratio, 4);
  const double half = static_cast<double>(n) / 2.0;
  const double braces =
      half * half * l * l - static_cast<double>(n) * l * k + k * k / (1.0 - aa);
  return detail::checked_probability(aa * a4 * braces);
}

// Same quantity after substituting (n/2) L = K - (i/A) [z]Phi into the
// braces: P = |b|^2 (K^2 + |[z]Phi|^2). Both terms are nonnegative.
inline double p0_via_lemma1_factored(const Coin& coin, long n) {
  const ClosedFormContext ctx = detail::lemma1_context(coin, n);
  const auto coeff = spectral_coefficients(ctx, true);
  const double k = coeff.c0.real();
  return detail::checked_probability(ctx.abs_b * ctx.abs_b * (k * k + std::norm(coeff.c1)));
}

// P(Y_n = 0) for the initial distribution (1/2, 1/2):
// (ad)^(n/2-2) {(n/4)(a+d) b c L + (1/2)(ac+bd)(ad-bc) K} with K, L taken
// without their a^(n-2) prefactor.
inline double p0_via_lemma2(const Coin& coin, long n) {
  const ClosedFormContext ctx = detail::lemma2_context(coin, n);
  const double a = coin.a().real(), b = coin.b().real();
  const double c = coin.c().real(), d = coin.d().real();
  const double k = k_sum_spectral(ctx, false);
  const double l = l_sum_spectral(ctx, false);
  const long m = n / 2;
  const double prefactor = std::exp(static_cast<double>(m - 2) * (std::log(a) + std::log(d)) -
                                    static_cast<double>(n - 2) * std::log(a));
  const double braces = static_cast<double>(n) / 4.0 * (a + d) * b * c * l +
                        0.5 * (a * c + b * d) * (a * d - b * c) * k;
  return detail::checked_probability(prefactor * braces);
}

// With a = d and b = c the braces collapse to P = b (K + [z]Phi).
inline double p0_via_lemma2_factored(const Coin& coin, long n) {
  const ClosedFormContext ctx = detail::lemma2_context(coin, n);
  const auto coeff = spectral_coefficients(ctx, false);
  return detail::checked_probability(ctx.abs_b * (coeff.c0.real() + coeff.c1.real()));
}

// Production closed-form route for a family member. Odd n returns 0; the
// classical n = 2 case goes through the dynamic program.
inline double return_probability_closed_form(const FamilySpec& spec) {
  const Coin coin = make_coin(spec);
  const long n = spec.final_time;
  if (n % 2 != 0) return 0.0;
  if (is_quantum(spec.family)) return p0_via_lemma1_factored(coin, n);
  if (n == 2) return return_probability_classical(coin, n);
  return p0_via_lemma2_factored(coin, n);
}

}  // namespace qwalk
