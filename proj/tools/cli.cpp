// Copyright 2026 The ballslab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <CLI11.hpp>
#include <boost/math/special_functions/expint.hpp>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <numbers>
#include <sstream>
#include <variant>

#include "ballslab/bounds.hpp"
#include "ballslab/error.hpp"
#include "ballslab/expectation.hpp"
#include "ballslab/geometry.hpp"
#include "ballslab/random_polytope.hpp"

namespace ballslab::cli {
namespace {

using Json = nlohmann::ordered_json;
using Cell = std::variant<double, std::int64_t, std::uint64_t, std::string, bool>;

constexpr const char* kVersion = "0.1.0";

// A results table: CSV rows, or a JSON array of objects keyed by column.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  int exit_code = kExitOk;
};

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string csv_cell(const Cell& c) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, double>) return format_double(v);
        else if constexpr (std::is_integral_v<T> && !std::is_same_v<T, bool>) return std::to_string(v);
        else if constexpr (std::is_same_v<T, bool>) return v ? "true" : "false";
        else return v;
      },
      c);
}

Json json_cell(const Cell& c) {
  return std::visit(
      [](const auto& v) -> Json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, double>) {
          if (!std::isfinite(v)) return nullptr;
        }
        return v;
      },
      c);
}

// ---------------------------------------------------------------------------
// Resolution of the configuration.

struct Resolved {
  int n = 0;
  double log_N = 0.0;
  /// As given when --N was used, so the echo is exact.
  double N = 0.0;
};

Resolved resolve(const ExperimentConfig& c) {
  if (!c.n) throw ConfigError("--n is required for '" + c.command + "'");
  if (c.N && c.log_N) throw ConfigError("give either --N or --log-N, not both");
  if (!c.N && !c.log_N) throw ConfigError("--N or --log-N is required for '" + c.command + "'");
  Resolved r;
  r.n = *c.n;
  if (c.N) {
    if (!(*c.N > 1.0) || !std::isfinite(*c.N)) throw ConfigError("--N must be a finite number > 1");
    r.log_N = std::log(*c.N);
    r.N = *c.N;
  } else {
    r.log_N = *c.log_N;
    r.N = std::exp(r.log_N);
  }
  return r;
}

ApproxParams params_for(const ExperimentConfig& c, const Resolved& r) {
  return c.t ? ApproxParams::with_width(r.n, r.log_N, *c.t, c.gamma)
             : ApproxParams::analytic(r.n, r.log_N, c.gamma);
}

ConstantSet constant_set(const std::string& name) {
  if (name == "asymptotic") return ConstantSet::Asymptotic;
  if (name == "ten-pow-n") return ConstantSet::TenPowN;
  throw ConfigError("--constants must be 'asymptotic' or 'ten-pow-n'");
}

FacetSchedule schedule_for(const ExperimentConfig& c) {
  if (c.schedule == "power") return FacetSchedule::power(c.base);
  if (c.schedule == "self-power") return FacetSchedule::self_power();
  if (c.schedule == "root-exponent") return FacetSchedule::root_exponent();
  throw ConfigError("--schedule must be 'power', 'self-power' or 'root-exponent'");
}

ExpectationOptions quadrature_options(const ExperimentConfig& c) {
  if (c.max_panels < 1) throw ConfigError("--max-panels must be positive");
  if (!(c.tolerance > 0.0) || !(c.rel_tolerance >= 0.0)) {
    throw ConfigError("--tolerance must be positive and --rel-tolerance non-negative");
  }
  ExpectationOptions o;
  o.tolerance = c.tolerance;
  o.rel_tolerance = c.rel_tolerance;
  o.max_panels = c.max_panels;
  return o;
}

Json config_record(const ExperimentConfig& c) {
  Json j;
  j["command"] = c.command;
  j["n"] = c.n ? Json(*c.n) : Json(nullptr);
  j["N"] = c.N ? Json(*c.N) : Json(nullptr);
  j["log_N"] = c.log_N ? Json(*c.log_N) : Json(nullptr);
  j["gamma"] = c.gamma;
  j["t"] = c.t ? Json(*c.t) : Json("analytic");
  j["seed"] = c.seed;
  j["samples"] = c.samples;
  j["realizations"] = c.realizations;
  j["format"] = c.format == Format::Csv ? "csv" : "json";
  j["constants"] = c.constants;
  j["schedule"] = c.schedule;
  j["base"] = c.base;
  j["dims"] = c.dims;
  j["tolerance"] = c.tolerance;
  j["rel_tolerance"] = c.rel_tolerance;
  j["max_panels"] = c.max_panels;
  return j;
}

// ---------------------------------------------------------------------------
// Commands.

Table cmd_constants() {
  const RateConstants k = rate_constants();
  Table t;
  t.columns = {"I", "II", "I_plus_II", "gamma_star", "surface_constant", "ldiv_upper",
               "ldiv_lower"};
  t.rows.push_back({k.inner, k.outer, k.sum(), k.gamma_star, k.surface_constant(), k.ldiv_upper,
                    k.ldiv_lower});
  return t;
}

Table cmd_expectation(const ExperimentConfig& c) {
  const Resolved r = resolve(c);
  const ApproxParams p = params_for(c, r);
  const ExpectationBreakdown b = expected_sym_diff(p, quadrature_options(c));
  Table t;
  t.columns = {"n", "N", "gamma", "t", "inner_deficit", "outer_excess", "total", "normalized",
               "err_bound"};
  t.rows.push_back({std::int64_t{p.n}, r.N, p.gamma, p.t, b.inner_deficit, b.outer_excess,
                    b.total, b.normalized, b.quadrature_error_bound});
  if (!b.converged) t.exit_code = kExitUnconverged;
  return t;
}

Table cmd_montecarlo(const ExperimentConfig& c) {
  const Resolved r = resolve(c);
  const double N = r.N;
  const auto facets = static_cast<std::int64_t>(std::llround(N));
  if (std::fabs(N - static_cast<double>(facets)) > 1e-6 * N || facets % 2 != 0) {
    throw ConfigError("montecarlo needs an even integer facet count N");
  }
  const ApproxParams p = params_for(c, {r.n, std::log(static_cast<double>(facets)), N});

  EnsembleOptions o;
  o.realizations = c.realizations;
  o.samples = c.samples;
  o.seed = c.seed;
  o.threads = c.threads;
  const EnsembleEstimate e = estimate_ensemble(p.n, facets, p.t, o);
  const ExpectationBreakdown exact = expected_sym_diff(p, quadrature_options(c));

  Table t;
  t.columns = {"n", "N", "t", "seed", "realizations", "samples", "unbounded", "clip_warnings",
               "sym_diff", "sym_diff_se", "surface_deviation", "surface_deviation_se",
               "inner_deficit", "inner_deficit_se", "outer_excess", "outer_excess_se",
               "cone_volume_residual", "cone_volume_residual_se", "expected_sym_diff"};
  t.rows.push_back({std::int64_t{p.n}, facets, p.t, c.seed,
                    static_cast<std::int64_t>(e.realizations), static_cast<std::int64_t>(c.samples),
                    static_cast<std::int64_t>(e.unbounded),
                    static_cast<std::int64_t>(e.clip_warnings), e.sym_diff.value,
                    e.sym_diff.std_error, e.surface_deviation.value, e.surface_deviation.std_error,
                    e.inner_deficit.value, e.inner_deficit.std_error, e.outer_excess.value,
                    e.outer_excess.std_error, e.cone_volume_residual.value,
                    e.cone_volume_residual.std_error, exact.total});
  if (!exact.converged) t.exit_code = kExitUnconverged;
  return t;
}

Table cmd_bounds(const ExperimentConfig& c) {
  const Resolved r = resolve(c);
  const BoundsReport b = bounds_report(r.n, r.log_N, constant_set(c.constants));
  Table t;
  t.columns = {"n", "N", "constants", "upper_volume", "upper_volume_band", "upper_surface",
               "upper_surface_band", "lower_volume", "in_regime", "upper_volume_normalized",
               "upper_surface_normalized", "lower_volume_normalized", "ldiv_upper", "ldiv_lower"};
  t.rows.push_back({std::int64_t{r.n}, r.N, c.constants, b.upper_volume.value,
                    b.upper_volume.band, b.upper_surface.value, b.upper_surface.band,
                    b.lower_volume.value, b.upper_volume.in_regime, b.upper_volume_normalized,
                    b.upper_surface_normalized, b.lower_volume_normalized, b.ldiv_upper,
                    b.ldiv_lower});
  return t;
}

std::vector<int> default_dims(const FacetSchedule& s) {
  switch (s.kind) {
    case FacetSchedule::Kind::Power: return {6, 8, 10, 12, 14};
    case FacetSchedule::Kind::SelfPower: return {20, 30, 40, 60, 80};
    case FacetSchedule::Kind::RootExponent: return {100, 200, 400};
  }
  return {};
}

Table cmd_sweep(const ExperimentConfig& c) {
  const FacetSchedule s = schedule_for(c);
  const std::vector<int> dims = c.dims.empty() ? default_dims(s) : c.dims;
  const std::vector<SweepRow> rows = regime_sweep(dims, s, quadrature_options(c), c.threads);
  Table t;
  t.columns = {"schedule", "n", "log_N", "t", "volume_ratio", "normalized", "converged"};
  for (const SweepRow& row : rows) {
    t.rows.push_back({s.name(), std::int64_t{row.n}, row.log_N, row.t, row.volume_ratio,
                      row.normalized, row.converged});
    if (!row.converged) t.exit_code = kExitUnconverged;
  }
  return t;
}

// ---------------------------------------------------------------------------
// Invariant suite.

struct Check {
  std::string name;
  bool passed = false;
  double measured = 0.0;
  double limit = 0.0;
};

// Ein(x) = sum_{k>=1} (-1)^{k+1} x^k / (k k!).
double ein_series(double x) {
  double term = 1.0, sum = 0.0;
  for (int k = 1; k < 60; ++k) {
    term *= x / k;
    sum += (k % 2 ? 1.0 : -1.0) * term / k;
  }
  return sum;
}

Check check_closed_form_alpha(int n) {
  double worst = 0.0;
  const BallGeometry g = BallGeometry::of(n);
  for (int i = 0; i < 10; ++i) {
    for (int j = 0; j < 10; ++j) {
      const double t = 0.05 + 0.09 * j;
      const double r = t + 0.01 + 0.3 * i;
      const double exact = n == 2 ? 2.0 * std::acos(t / r) / std::numbers::pi : 1.0 - t / r;
      worst = std::max(worst, std::fabs(alpha(g, r, t) - exact));
    }
  }
  return {"closed_form_alpha_n" + std::to_string(n), worst <= 1e-12, worst, 1e-12};
}

Check check_cap_two_paths() {
  double worst = 0.0;
  for (int n : {2, 3, 7, 20, 50, 200}) {
    for (double a : {0.05, 0.3, 0.5, 0.9, 0.99}) {
      const double beta = cap_integral(n, a);
      const double quad = cap_integral_quadrature(n, a).value;
      worst = std::max(worst, std::fabs(beta - quad) / quad);
    }
  }
  return {"cap_integral_two_paths", worst <= 1e-10, worst, 1e-10};
}

Check check_constants() {
  const RateConstants k = rate_constants();
  const double oracle = ein_series(kLn2) + boost::math::expint(1, kLn2);
  const double worst = std::max(std::fabs(k.gamma_star - kLn2), std::fabs(k.sum() - oracle));
  return {"constants_against_series", worst <= 1e-10, worst, 1e-10};
}

Check check_mc_vs_quadrature(std::uint64_t seed, unsigned threads) {
  const int n = 3;
  const std::int64_t facets = 64;
  const double t = 0.8;
  EnsembleOptions o;
  o.realizations = 100;
  o.samples = 4000;
  o.seed = seed;
  o.surface = false;
  o.threads = threads;
  const EnsembleEstimate e = estimate_ensemble(n, facets, t, o);
  const double exact =
      expected_sym_diff(ApproxParams::with_width(n, std::log(double(facets)), t)).total;
  const double z = std::fabs(e.sym_diff.value - exact) / e.sym_diff.std_error;
  return {"monte_carlo_vs_quadrature_z", z <= 3.0, z, 3.0};
}

Check check_bound_ordering() {
  double worst = -1.0;
  bool ok = true;
  for (int n = 4; n <= 16; ++n) {
    const double log_N = n * std::log(10.0);
    const double exact = expected_sym_diff(ApproxParams::analytic(n, log_N)).total;
    const double lower = lower_bound_volume(n, log_N).value;
    const double upper = kOrderingSlack * upper_bound_volume(n, log_N).value;
    ok = ok && lower <= exact && exact <= upper;
    worst = std::max(worst, exact / upper);
  }
  return {"bound_ordering_ratio_to_slack_upper", ok, worst, 1.0};
}

Table cmd_validate(const ExperimentConfig& c) {
  const std::vector<Check> checks = {check_closed_form_alpha(2), check_closed_form_alpha(3),
                                     check_cap_two_paths(), check_constants(),
                                     check_mc_vs_quadrature(c.seed, c.threads),
                                     check_bound_ordering()};
  Table t;
  t.columns = {"check", "passed", "measured", "limit"};
  for (const Check& k : checks) {
    t.rows.push_back({k.name, k.passed, k.measured, k.limit});
    if (!k.passed) t.exit_code = kExitValidationFailure;
  }
  return t;
}

Table dispatch(const ExperimentConfig& c) {
  if (c.command == "constants") return cmd_constants();
  if (c.command == "expectation") return cmd_expectation(c);
  if (c.command == "montecarlo") return cmd_montecarlo(c);
  if (c.command == "bounds") return cmd_bounds(c);
  if (c.command == "sweep") return cmd_sweep(c);
  if (c.command == "validate") return cmd_validate(c);
  throw ConfigError("unknown command '" + c.command + "'");
}

void write_csv(const Table& t, std::ostream& out) {
  for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << t.columns[i];
  out << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_cell(row[i]);
    out << '\n';
  }
}

void write_json(const Table& t, const ExperimentConfig& c, std::ostream& out) {
  Json rows = Json::array();
  for (const auto& row : t.rows) {
    Json obj;
    for (std::size_t i = 0; i < row.size(); ++i) obj[t.columns[i]] = json_cell(row[i]);
    rows.push_back(std::move(obj));
  }
  Json doc;
  doc["config"] = config_record(c);
  doc["results"] = rows.size() == 1 ? rows[0] : rows;
  // Wall-clock time would break reproducibility; only an explicit epoch is recorded.
  const char* epoch = std::getenv("SOURCE_DATE_EPOCH");
  doc["provenance"] = {{"seed", c.seed},
                       {"timestamp", epoch ? Json(epoch) : Json(nullptr)},
                       {"version", kVersion},
                       {"schema", "ballslab." + c.command + "/" + std::to_string(kSchemaVersion)}};
  out << doc.dump(2) << '\n';
}

}  // namespace

std::optional<ExperimentConfig> parse_args(int argc, const char* const* argv, std::ostream& log) {
  ExperimentConfig c;
  CLI::App app{"Random slab polytopes approximating the Euclidean ball"};
  app.set_config("--config", "", "key=value configuration file; flags override it");
  app.add_option("command", c.command,
                 "constants | expectation | montecarlo | bounds | sweep | validate")
      ->required();
  app.add_option("--n", c.n, "dimension");
  app.add_option("--N", c.N, "facet budget N");
  app.add_option("--log-N", c.log_N, "natural log of the facet budget");
  app.add_option("--gamma", c.gamma, "width calibration constant (default ln 2)");
  app.add_option("--t", c.t, "slab half-width (default: analytic width)");
  app.add_option("--seed", c.seed, "master seed");
  app.add_option("--samples", c.samples, "directions per realization");
  app.add_option("--realizations", c.realizations, "independent polytope realizations");
  std::string format = "csv";
  app.add_option("--format", format, "csv | json");
  app.add_option("--out", c.out, "output path (default: stdout)");
  app.add_option("--constants", c.constants, "asymptotic | ten-pow-n");
  app.add_option("--schedule", c.schedule, "power | self-power | root-exponent");
  app.add_option("--base", c.base, "A for the power schedule N = A^n");
  app.add_option("--dims", c.dims, "dimensions for sweep");
  app.add_option("--threads", c.threads, "worker threads (0 = hardware)");
  app.add_option("--tolerance", c.tolerance, "quadrature tolerance, in units of N^{-2/(n-1)} |D_n|");
  app.add_option("--rel-tolerance", c.rel_tolerance, "relative quadrature tolerance");
  app.add_option("--max-panels", c.max_panels, "quadrature panel budget per integral");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    log << app.help();
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    throw ConfigError(e.what());
  }
  if (format == "csv") c.format = Format::Csv;
  else if (format == "json") c.format = Format::Json;
  else throw ConfigError("--format must be 'csv' or 'json'");
  return c;
}

int run(const ExperimentConfig& config, std::ostream& out, std::ostream& log) {
  Table table;
  try {
    table = dispatch(config);
  } catch (const ConfigError& e) {
    log << "error: " << e.what() << '\n';
    return kExitBadConfig;
  } catch (const FacetBudgetError& e) {
    log << "error: " << e.what() << '\n';
    return kExitBadConfig;
  } catch (const InvalidArgument& e) {
    log << "error: " << e.what() << '\n';
    return kExitBadConfig;
  } catch (const NumericError& e) {
    log << "error: " << e.what() << '\n';
    return kExitUnconverged;
  }
  if (config.format == Format::Csv) write_csv(table, out);
  else write_json(table, config, out);
  if (table.exit_code == kExitUnconverged) log << "warning: result did not converge\n";
  if (table.exit_code == kExitValidationFailure) log << "validation failed\n";
  return table.exit_code;
}

int main(int argc, const char* const* argv) {
  std::optional<ExperimentConfig> config;
  try {
    config = parse_args(argc, argv, std::cout);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitBadConfig;
  }
  if (!config) return kExitOk;
  if (config->out.empty()) return run(*config, std::cout, std::cerr);

  // Render fully before touching the file so a failed run leaves no partial output.
  std::ostringstream buffer;
  const int code = run(*config, buffer, std::cerr);
  std::ofstream file(config->out, std::ios::binary);
  if (!file) {
    std::cerr << "error: cannot open " << config->out << '\n';
    return kExitBadConfig;
  }
  file << buffer.str();
  return code;
}

}  // namespace ballslab::cli
