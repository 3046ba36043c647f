#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "qwalk/asymptotics.hpp"
#include "qwalk/classical_walk.hpp"
#include "qwalk/closed_form.hpp"
#include "qwalk/coin.hpp"
#include "qwalk/config.hpp"
#include "qwalk/errors.hpp"
#include "qwalk/quantum_walk.hpp"

namespace qwalk {

struct Routes {
  bool exact = true;
  bool closed_form = true;
  bool asymptotic = true;

  bool empty() const { return !exact && !closed_form && !asymptotic; }
};

inline Routes parse_routes(const std::string& text) {
  Routes r{false, false, false};
  for (const std::string& item : ConfigValues::split_list(text)) {
    if (item == "exact") {
      r.exact = true;
    } else if (item == "closed" || item == "closed-form" || item == "closed_form") {
      r.closed_form = true;
    } else if (item == "asym" || item == "asymptotic") {
      r.asymptotic = true;
    } else {
      throw ConfigError("field 'routes': unknown route '" + item + "'");
    }
  }
  return r;
}

enum class OutputFormat { Csv, Json };

inline constexpr long kDefaultExactCeiling = 20000;
inline constexpr double kRouteAgreementTolerance = 1e-8;

struct SweepConfig {
  FamilySpec family;  // final_time is ignored
  std::vector<long> n_values;
  Routes routes;
  OutputFormat format = OutputFormat::Csv;
  std::string out_path;  // empty: stdout
  long exact_ceiling = kDefaultExactCeiling;
  unsigned workers = 0;  // 0: hardware concurrency
};

inline void validate(const SweepConfig& cfg) {
  if (cfg.routes.empty()) throw ConfigError("field 'routes': at least one route is required");
  if (cfg.n_values.empty()) throw ConfigError("field 'n': no final times requested");
  if (!(cfg.family.scale > 0.0)) throw ConfigError("field 'scale': must be positive");
  if (cfg.family.exponent < 0.0 ||
      (cfg.family.exponent == 0.0 && !cfg.family.allow_zero_exponent)) {
    throw ConfigError(
        "field 'exponent': must be positive (0 needs --degenerate-exponent-zero)");
  }
  long previous = 0;
  for (long n : cfg.n_values) {
    if (n < 2 || n % 2 != 0) {
      throw ConfigError("field 'n': final times must be even and >= 2 (got " +
                        std::to_string(n) + ")");
    }
    if (n <= previous) throw ConfigError("field 'n': final times must be strictly ascending");
    if (static_cast<double>(n) < cfg.family.scale) {
      throw ConfigError("field 'n': final time " + std::to_string(n) + " is below the scale");
    }
    previous = n;
  }
  if (cfg.exact_ceiling < 0) throw ConfigError("field 'exact-ceiling': must be nonnegative");
}

// One row of a sweep. fit_quantity is p or 1 - p, whichever the limit
// constant scales; it feeds estimate_rate and is not written out.
struct ReturnReport {
  long n = 0;
  std::optional<double> p_exact;
  std::optional<double> p_closed_form;
  std::optional<double> p_asymptotic;
  std::optional<double> ratio;
  std::optional<double> scaled_value;
  std::optional<Regime> regime;
  std::optional<double> fit_quantity;
};

struct SweepResult {
  std::vector<ReturnReport> rows;
  std::vector<std::string> warnings;
};

namespace detail {

inline double exact_route(const FamilySpec& spec) {
  return is_quantum(spec.family) ? return_probability_exact(spec)
                                 : return_probability_classical(spec);
}

struct RowOutcome {
  ReturnReport row;
  std::vector<std::string> warnings;
};

inline void check_route_agreement(const ReturnReport& row, const FamilySpec& spec) {
  if (!row.p_exact || !row.p_closed_form) return;
  const double diff = std::abs(*row.p_exact - *row.p_closed_form);
  if (diff <= kRouteAgreementTolerance) return;
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "route disagreement at n=%ld (%s, exponent=%.17g, scale=%.17g): "
                "p_exact=%.17g p_closed_form=%.17g |diff|=%.3g > %.0e",
                row.n, std::string(family_name(spec.family)).c_str(), spec.exponent, spec.scale,
                *row.p_exact, *row.p_closed_form, diff, kRouteAgreementTolerance);
  throw RouteDisagreementError(buf);
}

inline RowOutcome compute_row(const SweepConfig& cfg, long n) {
  RowOutcome out;
  ReturnReport& row = out.row;
  const FamilySpec spec = cfg.family.with_final_time(n);
  row.n = n;

  // Validate the coin once so domain errors surface even if every route
  // below is skipped.
  (void)make_coin(spec);

  if (cfg.routes.exact) {
    if (n > cfg.exact_ceiling) {
      out.warnings.push_back("n=" + std::to_string(n) + ": exact route skipped above ceiling " +
                             std::to_string(cfg.exact_ceiling));
    } else {
      row.p_exact = exact_route(spec);
    }
  }
  if (cfg.routes.closed_form) {
    try {
      row.p_closed_form = return_probability_closed_form(spec);
    } catch (const DegenerateCoinError& e) {
      out.warnings.push_back("n=" + std::to_string(n) + ": closed form unavailable: " + e.what());
    }
  }

  std::optional<LimitConstant> lc;
  if (spec.exponent > 0.0) {
    row.regime = regime_of(spec.exponent);
    lc = limit_constant(spec);
  }

  std::optional<double> asym_complement_value;
  if (cfg.routes.asymptotic) {
    if (spec.exponent > 0.0) {
      row.p_asymptotic = asym(spec);
      asym_complement_value = asym_complement(spec);
    } else {
      out.warnings.push_back("n=" + std::to_string(n) +
                             ": asymptotic route needs a positive exponent");
    }
  }

  check_route_agreement(row, spec);

  const std::optional<double> reference = row.p_exact ? row.p_exact : row.p_closed_form;
  if (reference && row.p_asymptotic && *row.p_asymptotic > 0.0) {
    row.ratio = *reference / *row.p_asymptotic;
  }

  // Most precise available p: exact, then closed form, then the formula.
  std::optional<double> p, one_minus_p;
  if (reference) {
    p = reference;
    one_minus_p = 1.0 - *reference;
  } else if (row.p_asymptotic) {
    p = row.p_asymptotic;
    one_minus_p = asym_complement_value;
  }
  if (p && lc) {
    row.scaled_value = scaled_value(*lc, n, *p, *one_minus_p);
    row.fit_quantity = lc->on_complement ? *one_minus_p : *p;
  } else if (p) {
    row.fit_quantity = p;
  }
  return out;
}

}  // namespace detail

// One report per n, in n order. Rows are computed by a worker pool; the
// result does not depend on the worker count. The first failing row (in n
// order) rethrows its error.
inline SweepResult run_sweep(const SweepConfig& cfg) {
  validate(cfg);
  const std::size_t count = cfg.n_values.size();
  std::vector<detail::RowOutcome> outcomes(count);
  std::vector<std::exception_ptr> errors(count);

  unsigned workers = cfg.workers != 0 ? cfg.workers : std::thread::hardware_concurrency();
  workers = std::clamp<unsigned>(workers, 1u, static_cast<unsigned>(count));

  // Largest n first: the exact route is quadratic in n.
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t k = next.fetch_add(1); k < count; k = next.fetch_add(1)) {
      const std::size_t i = count - 1 - k;
      try {
        outcomes[i] = detail::compute_row(cfg, cfg.n_values[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }

  SweepResult result;
  for (std::size_t i = 0; i < count; ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
    result.rows.push_back(std::move(outcomes[i].row));
    for (auto& w : outcomes[i].warnings) result.warnings.push_back(std::move(w));
  }
  return result;
}

struct RateEstimate {
  double slope = 0.0;     // d log q / d log n
  double residual = 0.0;  // RMS of the fit residuals in log space
  std::size_t points = 0;

  double exponent() const { return -slope; }
};

// Least-squares slope of log q against log n over the larger-n half of the
// rows, q being p (or 1 - p where the regime scales the complement).
inline RateEstimate estimate_rate(std::span<const ReturnReport> reports) {
  std::vector<std::pair<double, double>> pts;
  for (const ReturnReport& r : reports) {
    if (r.fit_quantity && *r.fit_quantity > 0.0) {
      pts.emplace_back(std::log(static_cast<double>(r.n)), std::log(*r.fit_quantity));
    }
  }
  if (pts.size() < 4) {
    throw InsufficientDataError("rate estimation needs at least 4 rows with positive values");
  }
  std::sort(pts.begin(), pts.end());
  const std::size_t keep = (pts.size() + 1) / 2;
  const std::span<const std::pair<double, double>> tail(pts.data() + (pts.size() - keep), keep);

  double mx = 0.0, my = 0.0;
  for (const auto& [x, y] : tail) {
    mx += x;
    my += y;
  }
  mx /= static_cast<double>(keep);
  my /= static_cast<double>(keep);
  double sxx = 0.0, sxy = 0.0;
  for (const auto& [x, y] : tail) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
  }
  if (sxx == 0.0) throw InsufficientDataError("rate estimation needs distinct n values");
  RateEstimate est;
  est.slope = sxy / sxx;
  est.points = keep;
  double ss = 0.0;
  for (const auto& [x, y] : tail) {
    const double r = y - (my + est.slope * (x - mx));
    ss += r * r;
  }
  est.residual = std::sqrt(ss / static_cast<double>(keep));
  return est;
}

struct CompareConfig {
  SweepConfig quantum;
  SweepConfig classical;
};

struct CompareReport {
  SweepResult quantum;
  SweepResult classical;
  RateEstimate quantum_rate;
  RateEstimate classical_rate;
  double exponent_ratio = 0.0;  // fitted quantum exponent / classical exponent
};

// Builds the classical partner of a quantum sweep (or the reverse) with
// beta = alpha and theta = tau.
inline CompareConfig make_compare_config(const SweepConfig& base) {
  CompareConfig cc{base, base};
  const bool r_pair = base.family.family == Family::QW_R || base.family.family == Family::CRW_R;
  cc.quantum.family.family = r_pair ? Family::QW_R : Family::QW_K;
  cc.classical.family.family = r_pair ? Family::CRW_R : Family::CRW_K;
  return cc;
}

inline CompareReport compare_models(const CompareConfig& cfg) {
  const FamilySpec& q = cfg.quantum.family;
  const FamilySpec& c = cfg.classical.family;
  const bool paired = (q.family == Family::QW_R && c.family == Family::CRW_R) ||
                      (q.family == Family::QW_K && c.family == Family::CRW_K);
  if (!paired) throw ConfigError("compare needs a QW family and its matching CRW family");
  if (q.exponent != c.exponent) throw ConfigError("compare needs alpha == beta");
  if (q.scale != c.scale) throw ConfigError("compare needs tau == theta");
  if (!(q.exponent > 0.0)) throw ConfigError("compare needs a positive exponent");
  if (q.family == Family::QW_R && regime_of(q.exponent) == Regime::Critical) {
    throw ConfigError("compare: both return probabilities converge to constants at exponent 1; "
                      "the rate ratio is undefined");
  }
  CompareReport out;
  out.quantum = run_sweep(cfg.quantum);
  out.classical = run_sweep(cfg.classical);
  out.quantum_rate = estimate_rate(out.quantum.rows);
  out.classical_rate = estimate_rate(out.classical.rows);
  out.exponent_ratio = out.quantum_rate.exponent() / out.classical_rate.exponent();
  return out;
}

// ---- output ----

inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string format_optional(const std::optional<double>& v) {
  return v ? format_double(*v) : std::string{};
}

inline constexpr const char* kCsvHeader = "n,p_exact,p_closed_form,p_asymptotic,ratio,scaled_value,regime";

inline void write_csv(std::ostream& os, std::span<const ReturnReport> rows) {
  os << kCsvHeader << '\n';
  for (const ReturnReport& r : rows) {
    os << r.n << ',' << format_optional(r.p_exact) << ',' << format_optional(r.p_closed_form)
       << ',' << format_optional(r.p_asymptotic) << ',' << format_optional(r.ratio) << ','
       << format_optional(r.scaled_value) << ','
       << (r.regime ? std::string(regime_name(*r.regime)) : std::string{}) << '\n';
  }
}

inline nlohmann::json to_json(const ReturnReport& r) {
  auto opt = [](const std::optional<double>& v) -> nlohmann::json {
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
  };
  nlohmann::json j;
  j["n"] = r.n;
  j["p_exact"] = opt(r.p_exact);
  j["p_closed_form"] = opt(r.p_closed_form);
  j["p_asymptotic"] = opt(r.p_asymptotic);
  j["ratio"] = opt(r.ratio);
  j["scaled_value"] = opt(r.scaled_value);
  j["regime"] = r.regime ? nlohmann::json(std::string(regime_name(*r.regime)))
                         : nlohmann::json(nullptr);
  return j;
}

inline nlohmann::json to_json(std::span<const ReturnReport> rows) {
  nlohmann::json arr = nlohmann::json::array();
  for (const ReturnReport& r : rows) arr.push_back(to_json(r));
  return arr;
}

inline void write_json(std::ostream& os, std::span<const ReturnReport> rows) {
  os << to_json(rows).dump(2) << '\n';
}

inline void write_reports(std::ostream& os, std::span<const ReturnReport> rows, OutputFormat fmt) {
  if (fmt == OutputFormat::Json) {
    write_json(os, rows);
  } else {
    write_csv(os, rows);
  }
}

// ---- configuration ----

// n list from "n" (comma separated) or n-from / n-to with n-step or n-double.
inline std::vector<long> n_values_from(const ConfigValues& v) {
  if (v.has("n")) return v.get_long_list("n");
  if (!v.has("n-from") || !v.has("n-to")) {
    throw ConfigError("field 'n': give --n or --n-from/--n-to");
  }
  const long from = v.get_long("n-from", 0);
  const long to = v.get_long("n-to", 0);
  const bool doubling = v.get_bool("n-double", false);
  const long step = v.get_long("n-step", 0);
  if (from < 2 || to < from) throw ConfigError("field 'n-from'/'n-to': need 2 <= n-from <= n-to");
  if (doubling == v.has("n-step")) {
    throw ConfigError("field 'n-step': give exactly one of --n-step and --n-double");
  }
  if (!doubling && step <= 0) throw ConfigError("field 'n-step': must be positive");
  std::vector<long> out;
  for (long n = from; n <= to; n = doubling ? 2 * n : n + step) out.push_back(n);
  return out;
}

inline SweepConfig sweep_config_from(const ConfigValues& v) {
  SweepConfig cfg;
  if (!v.has("family")) throw ConfigError("field 'family': required");
  try {
    cfg.family.family = parse_family(v.get_string("family", ""));
  } catch (const DomainError&) {
    throw ConfigValues::error("family", *v.find("family"), "expected qw-r, qw-k, crw-r or crw-k");
  }
  if (!v.has("exponent")) throw ConfigError("field 'exponent': required");
  if (!v.has("scale")) throw ConfigError("field 'scale': required");
  cfg.family.exponent = v.get_double("exponent", 0.0);
  cfg.family.scale = v.get_double("scale", 0.0);
  cfg.family.allow_zero_exponent = v.get_bool("degenerate-exponent-zero", false);
  cfg.n_values = n_values_from(v);
  cfg.routes = parse_routes(v.get_string("routes", "exact,closed,asym"));
  const std::string fmt = v.get_string("format", "csv");
  if (fmt == "csv") {
    cfg.format = OutputFormat::Csv;
  } else if (fmt == "json") {
    cfg.format = OutputFormat::Json;
  } else {
    throw ConfigValues::error("format", *v.find("format"), "expected csv or json");
  }
  cfg.out_path = v.get_string("out", "");
  cfg.exact_ceiling = v.get_long("exact-ceiling", kDefaultExactCeiling);
  const long workers = v.get_long("workers", 0);
  if (workers < 0) throw ConfigError("field 'workers': must be nonnegative");
  cfg.workers = static_cast<unsigned>(workers);
  validate(cfg);
  return cfg;
}

}  // namespace qwalk
