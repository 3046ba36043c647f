// qwalk: return probabilities of final-time dependent quantum and
// correlated random walks.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "qwalk/qwalk.hpp"

namespace {

using namespace qwalk;

constexpr int kExitConfig = 2;
constexpr int kExitDisagreement = 3;
constexpr int kExitDomain = 4;

struct OptionSpec {
  const char* name;
  const char* help;
};

const OptionSpec kValueOptions[] = {
    {"family", "qw-r, qw-k, crw-r or crw-k"},
    {"exponent", "alpha (quantum) or beta (classical)"},
    {"scale", "tau (quantum) or theta (classical)"},
    {"n", "even final time, or a comma separated list"},
    {"n-from", "first final time of a range"},
    {"n-to", "last final time of a range"},
    {"n-step", "arithmetic step of the range"},
    {"routes", "subset of exact,closed,asym (default: all)"},
    {"format", "csv (default) or json"},
    {"out", "output file (default: stdout)"},
    {"exact-ceiling", "largest n for the exact route (default 20000)"},
    {"workers", "worker threads (default: hardware concurrency)"},
};
const OptionSpec kFlagOptions[] = {
    {"n-double", "double the final time instead of stepping"},
    {"degenerate-exponent-zero", "allow exponent 0 (constant coin)"},
};

struct CommonOptions {
  std::map<std::string, std::string> values;
  std::map<std::string, bool> flags;
  std::string config_path;
};

void add_common(CLI::App* app, CommonOptions& opts) {
  for (const auto& [name, help] : kValueOptions) {
    app->add_option(std::string("--") + name, opts.values[name], help);
  }
  for (const auto& [name, help] : kFlagOptions) {
    app->add_flag(std::string("--") + name, opts.flags[name], help);
  }
  app->add_option("--config", opts.config_path, "key = value file; flags override it");
}

ConfigValues collect(const CLI::App* app, const CommonOptions& opts) {
  ConfigValues values;
  if (!opts.config_path.empty()) values = load_config_file(opts.config_path);
  ConfigValues from_flags;
  for (const auto& [name, help] : kValueOptions) {
    if (app->count(std::string("--") + name) > 0) {
      from_flags.set(name, opts.values.at(name), "flag");
    }
  }
  for (const auto& [name, help] : kFlagOptions) {
    if (app->count(std::string("--") + name) > 0) {
      from_flags.set(name, opts.flags.at(name) ? "true" : "false", "flag");
    }
  }
  values.merge_from(from_flags);
  return values;
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw ConfigError("field 'out': cannot open '" + path + "' for writing");
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

void print_warnings(const SweepResult& r) {
  for (const std::string& w : r.warnings) std::cerr << "warning: " << w << '\n';
}

int run_return(const ConfigValues& values, bool quantum) {
  const SweepConfig cfg = sweep_config_from(values);
  if (is_quantum(cfg.family.family) != quantum) {
    throw ConfigError(std::string("field 'family': ") + (quantum ? "qw-return" : "crw-return") +
                      " needs a " + (quantum ? "qw-r or qw-k" : "crw-r or crw-k") + " family");
  }
  const SweepResult r = run_sweep(cfg);
  print_warnings(r);
  Output out(cfg.out_path);
  write_reports(out.stream(), r.rows, cfg.format);
  return 0;
}

int run_sweep_command(const ConfigValues& values) {
  const SweepConfig cfg = sweep_config_from(values);
  const SweepResult r = run_sweep(cfg);
  print_warnings(r);
  Output out(cfg.out_path);
  write_reports(out.stream(), r.rows, cfg.format);
  return 0;
}

nlohmann::json rate_json(const RateEstimate& est) {
  return {{"slope", est.slope},
          {"residual", est.residual},
          {"points", est.points},
          {"exponent", est.exponent()}};
}

int run_rate(const ConfigValues& values) {
  const SweepConfig cfg = sweep_config_from(values);
  const SweepResult r = run_sweep(cfg);
  print_warnings(r);
  const RateEstimate est = estimate_rate(r.rows);
  std::optional<double> expected;
  if (cfg.family.exponent > 0.0) {
    expected = limit_constant(cfg.family.with_final_time(2)).exponent;
  }
  Output out(cfg.out_path);
  std::ostream& os = out.stream();
  if (cfg.format == OutputFormat::Json) {
    nlohmann::json j = rate_json(est);
    j["expected_exponent"] = expected ? nlohmann::json(*expected) : nlohmann::json(nullptr);
    os << j.dump(2) << '\n';
  } else {
    os << "slope,residual,points,exponent,expected_exponent\n"
       << format_double(est.slope) << ',' << format_double(est.residual) << ',' << est.points
       << ',' << format_double(est.exponent()) << ',' << format_optional(expected) << '\n';
  }
  return 0;
}

int run_compare(const ConfigValues& values) {
  const SweepConfig base = sweep_config_from(values);
  const CompareReport rep = compare_models(make_compare_config(base));
  print_warnings(rep.quantum);
  print_warnings(rep.classical);
  Output out(base.out_path);
  std::ostream& os = out.stream();
  if (base.format == OutputFormat::Json) {
    nlohmann::json j;
    j["quantum"] = to_json(rep.quantum.rows);
    j["classical"] = to_json(rep.classical.rows);
    j["quantum_rate"] = rate_json(rep.quantum_rate);
    j["classical_rate"] = rate_json(rep.classical_rate);
    j["exponent_ratio"] = rep.exponent_ratio;
    os << j.dump(2) << '\n';
    return 0;
  }
  os << "n,qw_scaled_value,crw_scaled_value\n";
  for (std::size_t i = 0; i < rep.quantum.rows.size(); ++i) {
    os << rep.quantum.rows[i].n << ',' << format_optional(rep.quantum.rows[i].scaled_value) << ','
       << format_optional(rep.classical.rows[i].scaled_value) << '\n';
  }
  os << "# qw_slope=" << format_double(rep.quantum_rate.slope)
     << " crw_slope=" << format_double(rep.classical_rate.slope)
     << " exponent_ratio=" << format_double(rep.exponent_ratio) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Return probabilities of final-time dependent quantum and correlated random walks"};
  app.require_subcommand(1);

  CommonOptions opts;
  CLI::App* qw = app.add_subcommand("qw-return", "quantum walk return probability");
  CLI::App* crw = app.add_subcommand("crw-return", "correlated random walk return probability");
  CLI::App* sweep = app.add_subcommand("sweep", "all routes over a range of final times");
  CLI::App* compare = app.add_subcommand("compare", "quantum vs classical convergence rates");
  CLI::App* rate = app.add_subcommand("rate", "fitted convergence exponent of a sweep");
  for (CLI::App* sub : {qw, crw, sweep, compare, rate}) add_common(sub, opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  CLI::App* chosen = app.get_subcommands().front();
  try {
    const ConfigValues values = collect(chosen, opts);
    if (chosen == qw) return run_return(values, true);
    if (chosen == crw) return run_return(values, false);
    if (chosen == sweep) return run_sweep_command(values);
    if (chosen == compare) return run_compare(values);
    return run_rate(values);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const RouteDisagreementError& e) {
    std::cerr << "abort: " << e.what() << '\n';
    return kExitDisagreement;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitDomain;
  }
}
