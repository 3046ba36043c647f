#pragma once

#include <cmath>
#include <numbers>
#include <string_view>

#include "qwalk/coin.hpp"
#include "qwalk/errors.hpp"
#include "qwalk/special_functions.hpp"

namespace qwalk {

// All functions here take the physical final time T (even). The large-time
// formulas are written for T = 2n, and the limit constants scale with
// n = T / 2.

enum class Regime { Sub, Critical, Super };

inline std::string_view regime_name(Regime r) {
  switch (r) {
    case Regime::Sub: return "sub";
    case Regime::Critical: return "critical";
    case Regime::Super: return "super";
  }
  return "?";
}

inline Regime regime_of(double exponent) {
  if (!(exponent > 0.0)) throw RegimeError("regimes are defined for positive exponents");
  if (exponent < 1.0) return Regime::Sub;
  if (exponent == 1.0) return Regime::Critical;
  return Regime::Super;
}

namespace detail {

inline void check_asymptote_spec(const FamilySpec& spec, Family expected) {
  if (spec.family != expected) throw DomainError("asymptote called for the wrong family");
  if (!(spec.exponent > 0.0)) throw DomainError("asymptotic formulas need a positive exponent");
  if (!(spec.scale > 0.0)) throw DomainError("scale must be positive");
  if (spec.final_time < 2 || spec.final_time % 2 != 0) {
    throw ParityError("asymptotic formulas are stated for even final times");
  }
}

}  // namespace detail

// tau^alpha T^(1 - alpha) (or theta^beta T^(1 - beta)).
inline double bessel_argument(const FamilySpec& spec) {
  const double t = static_cast<double>(spec.final_time);
  return std::exp(spec.exponent * std::log(spec.scale) + (1.0 - spec.exponent) * std::log(t));
}

inline double asym_qw_r(const FamilySpec& spec) {
  detail::check_asymptote_spec(spec, Family::QW_R);
  return bessel_j_bracket(bessel_argument(spec));
}

inline double asym_qw_k(const FamilySpec& spec) {
  detail::check_asymptote_spec(spec, Family::QW_K);
  const double r = power_ratio(spec.scale, spec.exponent, spec.final_time);
  return r * r * bessel_j_bracket(bessel_argument(spec));
}

inline double asym_crw_r(const FamilySpec& spec) {
  detail::check_asymptote_spec(spec, Family::CRW_R);
  return scaled_bessel_i_sum(bessel_argument(spec));
}

inline double asym_crw_k(const FamilySpec& spec) {
  detail::check_asymptote_spec(spec, Family::CRW_K);
  return power_ratio(spec.scale, spec.exponent, spec.final_time) *
         scaled_bessel_i_sum(bessel_argument(spec));
}

inline double asym(const FamilySpec& spec) {
  switch (spec.family) {
    case Family::QW_R: return asym_qw_r(spec);
    case Family::QW_K: return asym_qw_k(spec);
    case Family::CRW_R: return asym_crw_r(spec);
    case Family::CRW_K: return asym_crw_k(spec);
  }
  throw DomainError("unknown family");
}

// 1 - asym(spec). The R families approach 1 in the super regime, so their
// complement is taken from the series of the bracket rather than by
// subtraction.
inline double asym_complement(const FamilySpec& spec) {
  switch (spec.family) {
    case Family::QW_R:
      detail::check_asymptote_spec(spec, Family::QW_R);
      return bessel_j_bracket_complement(bessel_argument(spec));
    case Family::CRW_R:
      detail::check_asymptote_spec(spec, Family::CRW_R);
      return scaled_bessel_i_sum_complement(bessel_argument(spec));
    default:
      return 1.0 - asym(spec);
  }
}

// lim (T/2)^exponent * p (or * (1 - p) when on_complement) as T -> infinity.
struct LimitConstant {
  double exponent = 0.0;
  double constant = 0.0;
  bool on_complement = false;
};

inline LimitConstant limit_constant(Family family, Regime regime, double exponent, double scale) {
  if (regime_of(exponent) != regime) {
    throw RegimeError("regime does not match the exponent");
  }
  if (!(scale > 0.0)) throw DomainError("scale must be positive");
  const double e = exponent, s = scale;
  const double inv_pi = 1.0 / std::numbers::pi;
  const double inv_sqrt_pi = 1.0 / std::sqrt(std::numbers::pi);
  switch (family) {
    case Family::QW_R:
      switch (regime) {
        case Regime::Sub: return {1.0 - e, inv_pi * std::pow(2.0 / s, e), false};
        case Regime::Critical: return {0.0, bessel_j_bracket(s), false};
        case Regime::Super: return {2.0 * (e - 1.0), std::pow(s / 2.0, 2.0 * e), true};
      }
      break;
    case Family::QW_K:
      switch (regime) {
        case Regime::Sub: return {e + 1.0, inv_pi * std::pow(s / 2.0, e), false};
        case Regime::Critical: return {2.0, (s / 2.0) * (s / 2.0) * bessel_j_bracket(s), false};
        case Regime::Super: return {2.0 * e, std::pow(s / 2.0, 2.0 * e), false};
      }
      break;
    case Family::CRW_R:
      switch (regime) {
        case Regime::Sub: return {(1.0 - e) / 2.0, inv_sqrt_pi * std::pow(2.0 / s, e / 2.0), false};
        case Regime::Critical: return {0.0, scaled_bessel_i_sum(s), false};
        case Regime::Super: return {e - 1.0, std::pow(s / 2.0, e), true};
      }
      break;
    case Family::CRW_K:
      switch (regime) {
        case Regime::Sub: return {(e + 1.0) / 2.0, inv_sqrt_pi * std::pow(s / 2.0, e / 2.0), false};
        case Regime::Critical: return {1.0, s / 2.0 * scaled_bessel_i_sum(s), false};
        case Regime::Super: return {e, std::pow(s / 2.0, e), false};
      }
      break;
  }
  throw RegimeError("unknown family/regime pair");
}

inline LimitConstant limit_constant(const FamilySpec& spec) {
  return limit_constant(spec.family, regime_of(spec.exponent), spec.exponent, spec.scale);
}

// (T/2)^exponent * p, or * (1 - p) where the limit is taken on the complement.
inline double scaled_value(const LimitConstant& lc, long final_time, double p, double one_minus_p) {
  const double n = static_cast<double>(final_time) / 2.0;
  return std::pow(n, lc.exponent) * (lc.on_complement ? one_minus_p : p);
}

struct AsymptoteReport {
  long n = 0;
  double predicted = 0.0;
  Regime regime = Regime::Sub;
  double scaled_limit_constant = 0.0;
};

inline AsymptoteReport evaluate_asymptote(const FamilySpec& spec) {
  const LimitConstant lc = limit_constant(spec);
  return {spec.final_time, asym(spec), regime_of(spec.exponent), lc.constant};
}

}  // namespace qwalk
