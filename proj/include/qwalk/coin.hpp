#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <string>
#include <string_view>

#include "qwalk/errors.hpp"

namespace qwalk {

using cplx = std::complex<double>;

inline constexpr double kCoinTolerance = 1e-12;

// Dense 2x2 complex matrix, row major: {m00, m01, m10, m11}.
struct Mat2 {
  std::array<cplx, 4> m{};

  cplx operator()(int row, int col) const { return m[2 * row + col]; }
  cplx& operator()(int row, int col) { return m[2 * row + col]; }

  friend Mat2 operator+(const Mat2& x, const Mat2& y) {
    Mat2 r;
    for (int i = 0; i < 4; ++i) r.m[i] = x.m[i] + y.m[i];
    return r;
  }

  friend Mat2 operator*(const Mat2& x, const Mat2& y) {
    Mat2 r;
    r.m[0] = x.m[0] * y.m[0] + x.m[1] * y.m[2];
    r.m[1] = x.m[0] * y.m[1] + x.m[1] * y.m[3];
    r.m[2] = x.m[2] * y.m[0] + x.m[3] * y.m[2];
    r.m[3] = x.m[2] * y.m[1] + x.m[3] * y.m[3];
    return r;
  }

  std::array<cplx, 2> apply(const std::array<cplx, 2>& v) const {
    return {m[0] * v[0] + m[1] * v[1], m[2] * v[0] + m[3] * v[1]};
  }

  friend bool operator==(const Mat2&, const Mat2&) = default;

  static Mat2 identity() { return Mat2{{cplx{1}, cplx{0}, cplx{0}, cplx{1}}}; }
};

enum class CoinKind { Unitary, Stochastic };

// A validated 2x2 coin [[a, b], [c, d]]. Column j is the action on the
// chirality (or previous direction) j, with row 0 = left, row 1 = right.
class Coin {
 public:
  static Coin unitary(cplx a, cplx b, cplx c, cplx d) {
    Coin coin(a, b, c, d, CoinKind::Unitary);
    coin.validate();
    return coin;
  }

  static Coin stochastic(double a, double b, double c, double d) {
    Coin coin(a, b, c, d, CoinKind::Stochastic);
    coin.validate();
    return coin;
  }

  cplx a() const { return a_; }
  cplx b() const { return b_; }
  cplx c() const { return c_; }
  cplx d() const { return d_; }
  CoinKind kind() const { return kind_; }

  Mat2 matrix() const { return Mat2{{a_, b_, c_, d_}}; }

  // True when the matrix is of the form [[p, 1-p], [1-p, p]] or its unitary
  // analogue |a| = |d|, |b| = |c|.
  bool is_symmetric(double tol = kCoinTolerance) const {
    return std::abs(std::abs(a_) - std::abs(d_)) <= tol &&
           std::abs(std::abs(b_) - std::abs(c_)) <= tol;
  }

 private:
  Coin(cplx a, cplx b, cplx c, cplx d, CoinKind kind)
      : a_(a), b_(b), c_(c), d_(d), kind_(kind) {}

  void validate() const {
    if (kind_ == CoinKind::Unitary) {
      // M M^dagger = I entrywise.
      const cplx e00 = a_ * std::conj(a_) + b_ * std::conj(b_);
      const cplx e01 = a_ * std::conj(c_) + b_ * std::conj(d_);
      const cplx e11 = c_ * std::conj(c_) + d_ * std::conj(d_);
      if (std::abs(e00 - 1.0) > kCoinTolerance ||
          std::abs(e11 - 1.0) > kCoinTolerance ||
          std::abs(e01) > kCoinTolerance) {
        throw DomainError("coin is not unitary within 1e-12");
      }
      return;
    }
    for (cplx v : {a_, b_, c_, d_}) {
      if (std::abs(v.imag()) > kCoinTolerance || v.real() < -kCoinTolerance ||
          v.real() > 1.0 + kCoinTolerance) {
        throw DomainError("transition probabilities must lie in [0, 1]");
      }
    }
    if (std::abs(a_.real() + c_.real() - 1.0) > kCoinTolerance ||
        std::abs(b_.real() + d_.real() - 1.0) > kCoinTolerance) {
      throw DomainError("transition matrix columns must sum to 1");
    }
  }

  cplx a_, b_, c_, d_;
  CoinKind kind_;
};

enum class Family { QW_R, QW_K, CRW_R, CRW_K };

inline bool is_quantum(Family f) { return f == Family::QW_R || f == Family::QW_K; }

inline std::string_view family_name(Family f) {
  switch (f) {
    case Family::QW_R: return "qw-r";
    case Family::QW_K: return "qw-k";
    case Family::CRW_R: return "crw-r";
    case Family::CRW_K: return "crw-k";
  }
  return "?";
}

inline Family parse_family(std::string_view name) {
  if (name == "qw-r") return Family::QW_R;
  if (name == "qw-k") return Family::QW_K;
  if (name == "crw-r") return Family::CRW_R;
  if (name == "crw-k") return Family::CRW_K;
  throw DomainError("unknown family '" + std::string(name) + "'");
}

// One member of a parametric coin family at a given final time.
// exponent is alpha (quantum) or beta (classical); scale is tau or theta.
struct FamilySpec {
  Family family = Family::QW_R;
  double exponent = 1.0;
  double scale = 1.0;
  long final_time = 2;
  // Admits exponent == 0, used only for the boundary remarks on the two
  // quantum families (p = 0 for U^R, p = 1 for U^K).
  bool allow_zero_exponent = false;

  FamilySpec with_final_time(long n) const {
    FamilySpec s = *this;
    s.final_time = n;
    return s;
  }
};

namespace detail {

inline void check_family_params(const FamilySpec& spec) {
  if (!(spec.scale > 0.0) || !std::isfinite(spec.scale)) {
    throw DomainError("scale must be positive");
  }
  if (spec.final_time < 1) throw DomainError("final time must be positive");
  if (spec.exponent < 0.0 || !std::isfinite(spec.exponent) ||
      (spec.exponent == 0.0 && !spec.allow_zero_exponent)) {
    throw DomainError(
        "exponent must be positive (exponent 0 requires the degenerate mode)");
  }
}

}  // namespace detail

// (scale / n)^exponent, evaluated in log space.
inline double power_ratio(double scale, double exponent, long n) {
  return std::exp(exponent * (std::log(scale) - std::log(static_cast<double>(n))));
}

inline Coin make_coin_qw_r(const FamilySpec& spec) {
  if (spec.family != Family::QW_R) throw DomainError("spec is not a QW_R family");
  detail::check_family_params(spec);
  if (spec.exponent > 0.0 && static_cast<double>(spec.final_time) < spec.scale) {
    throw DomainError("final time must be at least tau");
  }
  const double r = power_ratio(spec.scale, spec.exponent, spec.final_time);
  const double s = std::sqrt(1.0 - r * r);
  return Coin::unitary(r, s, s, -r);
}

inline Coin make_coin_qw_k(const FamilySpec& spec) {
  if (spec.family != Family::QW_K) throw DomainError("spec is not a QW_K family");
  detail::check_family_params(spec);
  if (spec.exponent > 0.0 && static_cast<double>(spec.final_time) < spec.scale) {
    throw DomainError("final time must be at least tau");
  }
  const double r = power_ratio(spec.scale, spec.exponent, spec.final_time);
  const double s = std::sqrt(1.0 - r * r);
  return Coin::unitary(s, r, r, -s);
}

inline Coin make_coin_crw_r(const FamilySpec& spec) {
  if (spec.family != Family::CRW_R) throw DomainError("spec is not a CRW_R family");
  detail::check_family_params(spec);
  const double r = power_ratio(spec.scale, spec.exponent, spec.final_time);
  if (r > 1.0) throw DomainError("(theta/n)^beta exceeds 1");
  return Coin::stochastic(r, 1.0 - r, 1.0 - r, r);
}

inline Coin make_coin_crw_k(const FamilySpec& spec) {
  if (spec.family != Family::CRW_K) throw DomainError("spec is not a CRW_K family");
  detail::check_family_params(spec);
  const double r = power_ratio(spec.scale, spec.exponent, spec.final_time);
  if (r > 1.0) throw DomainError("(theta/n)^beta exceeds 1");
  return Coin::stochastic(1.0 - r, r, r, 1.0 - r);
}

inline Coin make_coin(const FamilySpec& spec) {
  switch (spec.family) {
    case Family::QW_R: return make_coin_qw_r(spec);
    case Family::QW_K: return make_coin_qw_k(spec);
    case Family::CRW_R: return make_coin_crw_r(spec);
    case Family::CRW_K: return make_coin_crw_k(spec);
  }
  throw DomainError("unknown family");
}

struct CoinSplit {
  Mat2 left;   // P: top row, moves the walker to x - 1
  Mat2 right;  // Q: bottom row, moves the walker to x + 1
};

inline CoinSplit split(const Coin& coin) {
  CoinSplit s;
  s.left.m = {coin.a(), coin.b(), cplx{0}, cplx{0}};
  s.right.m = {cplx{0}, cplx{0}, coin.c(), coin.d()};
  return s;
}

}  // namespace qwalk
