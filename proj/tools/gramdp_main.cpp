//
// Copyright 2026 The GramDP Authors
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
//
// gramdp command line: run one DP query over a CSV column, run an epsilon
// sweep, inspect the privacy-level presets, or manage a budget session.
//
// Contract: stdout carries exactly one JSON document for `run`; every
// diagnostic goes to stderr. Exit codes: 0 success, 1 runtime/data/budget
// error, 2 usage error.

#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gramdp/accountant.hpp"
#include "gramdp/bench.hpp"
#include "gramdp/errors.hpp"
#include "gramdp/ingest.hpp"
#include "gramdp/queries.hpp"
#include "gramdp/rng.hpp"
#include "json.hpp"

namespace {

using nlohmann::json;

// Usage problems CLI11 cannot express directly (cross-flag constraints).
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunOptions {
  std::string data_path;
  std::string column;
  std::string query;
  std::optional<double> epsilon;
  std::string level;
  std::optional<double> lower;
  std::optional<double> upper;
  std::optional<std::uint64_t> seed;
  std::string budget_file;
};

struct SweepOptions {
  std::string data_path;
  std::string column;
  std::string query;
  double eps_start = 0.01;
  double eps_stop = 0.49;
  double eps_step = 0.02;
  int iterations = 100;
  std::optional<std::uint64_t> seed;
  std::optional<double> lower;
  std::optional<double> upper;
  std::string out_path;
  std::string format = "csv";
  bool stamp = false;
  bool serial = false;
};

gramdp::QueryKind parse_query_kind(const std::string& name) {
  if (name == "count") return gramdp::QueryKind::kCount;
  if (name == "sum") return gramdp::QueryKind::kSum;
  if (name == "mean") return gramdp::QueryKind::kMean;
  if (name == "var") return gramdp::QueryKind::kVariance;
  throw UsageError("unknown query \"" + name +
                   "\" (expected count|sum|mean|var)");
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag_seed) {
  if (flag_seed) return *flag_seed;
  if (const char* env = std::getenv("GRAMDP_SEED")) {
    try {
      std::size_t used = 0;
      const std::uint64_t seed = std::stoull(env, &used);
      if (used != std::string(env).size()) throw std::invalid_argument(env);
      return seed;
    } catch (const std::exception&) {
      throw UsageError(std::string("GRAMDP_SEED is not an unsigned integer: ") +
                       env);
    }
  }
  std::random_device device;
  return (static_cast<std::uint64_t>(device()) << 32) ^ device();
}

// Loads the column and fills in bounds. Count queries never need bounds;
// for the others, omitting both --lower and --upper switches to inference
// from the data, with a warning because data-derived bounds leak.
gramdp::QuerySpec prepare_spec(gramdp::QueryKind kind,
                               const gramdp::NumericColumn& column,
                               const std::optional<double>& lower,
                               const std::optional<double>& upper) {
  if (lower.has_value() != upper.has_value()) {
    throw UsageError(
        "provide both --lower and --upper, or neither (omitting both infers "
        "bounds from the data)");
  }
  gramdp::QuerySpec spec;
  spec.kind = kind;
  if (kind == gramdp::QueryKind::kCount) {
    return spec;
  }
  if (lower) {
    spec.bounds = gramdp::BoundedDomain(*lower, *upper);
    spec.bounds_were_inferred = false;
  } else {
    spec.bounds = gramdp::infer_bounds(column);
    spec.bounds_were_inferred = true;
    std::fprintf(stderr,
                 "warning: bounds inferred from the data (lower=%.12g, "
                 "upper=%.12g); data-derived bounds leak information about "
                 "the dataset\n",
                 spec.bounds->lower, spec.bounds->upper);
  }
  return spec;
}

json result_to_json(const gramdp::DpResult& result,
                    const std::string& column_name) {
  json j;
  j["value"] = result.value;
  j["epsilon_spent"] = result.epsilon_spent;
  j["query"] = gramdp::query_kind_name(result.query);
  j["column"] = column_name;
  if (result.bounds_used) {
    j["bounds"] = json{{"lower", result.bounds_used->lower},
                       {"upper", result.bounds_used->upper}};
  } else {
    j["bounds"] = nullptr;
  }
  j["bounds_were_inferred"] = result.bounds_were_inferred;
  j["true_value_withheld"] = result.true_value_withheld;
  return j;
}

int cmd_run(const RunOptions& options) {
  if (options.epsilon.has_value() == !options.level.empty()) {
    throw UsageError("provide exactly one of --epsilon or --level");
  }
  const gramdp::QueryKind kind = parse_query_kind(options.query);
  const gramdp::Table table = gramdp::load_csv(options.data_path);
  const gramdp::NumericColumn column =
      gramdp::select_numeric_column(table, options.column);

  gramdp::QuerySpec spec =
      prepare_spec(kind, column, options.lower, options.upper);
  if (options.epsilon) {
    spec.privacy = gramdp::PrivacyParams(*options.epsilon);
  } else {
    const auto level = gramdp::parse_privacy_level(options.level);
    if (!level) {
      throw UsageError("unknown privacy level \"" + options.level + "\"");
    }
    spec.privacy = *level;
  }

  // Charge the budget before releasing anything; an exhausted budget must
  // not leak even a noisy answer.
  const double epsilon_spent = gramdp::resolve_privacy(spec).epsilon();
  if (!options.budget_file.empty()) {
    const std::string label =
        std::string(gramdp::query_kind_name(kind)) + ":" + column.name;
    const double remaining = gramdp::charge_ledger_file(
        options.budget_file, label, epsilon_spent);
    std::fprintf(stderr, "budget: charged %.12g, remaining %.12g\n",
                 epsilon_spent, remaining);
  }

  gramdp::RngStream rng(resolve_seed(options.seed));
  const gramdp::DpResult result = gramdp::run_query(column.values, spec, rng);
  std::printf("%s\n", result_to_json(result, column.name).dump().c_str());
  return 0;
}

int cmd_sweep(const SweepOptions& options) {
  if (!(options.eps_step > 0.0)) {
    throw UsageError("--eps-step must be > 0");
  }
  if (!(options.eps_start > 0.0) || options.eps_stop < options.eps_start) {
    throw UsageError("epsilon grid requires 0 < --eps-start <= --eps-stop");
  }
  if (options.iterations < 1) {
    throw UsageError("--iterations must be >= 1");
  }
  if (options.format != "csv" && options.format != "json") {
    throw UsageError("--format must be csv or json");
  }

  std::vector<double> grid;
  if (options.eps_start == 0.01 && options.eps_stop == 0.49 &&
      options.eps_step == 0.02) {
    grid = gramdp::default_epsilon_grid();
  } else {
    // Integer stepping keeps long grids from drifting.
    for (int k = 0;; ++k) {
      const double eps = options.eps_start + k * options.eps_step;
      if (eps > options.eps_stop + options.eps_step * 1e-9) break;
      grid.push_back(eps);
    }
  }

  const gramdp::QueryKind kind = parse_query_kind(options.query);
  const gramdp::Table table = gramdp::load_csv(options.data_path);
  const gramdp::NumericColumn column =
      gramdp::select_numeric_column(table, options.column);
  const gramdp::QuerySpec spec =
      prepare_spec(kind, column, options.lower, options.upper);

  std::fprintf(stderr,
               "note: benchmark mode; outputs are not privacy releases and "
               "no budget is charged\n");

  const gramdp::SweepConfig config(grid, options.iterations, spec,
                                   resolve_seed(options.seed));
  gramdp::SweepReport report = options.serial
                                   ? gramdp::run_sweep_serial(column, config)
                                   : gramdp::run_sweep(column, config);
  if (options.stamp) {
    report.timestamp = gramdp::iso8601_utc_now();
  }
  for (const gramdp::SweepRecord& record : report.records) {
    if (!record.metrics) {
      std::fprintf(stderr,
                   "warning: true value is 0 at epsilon %.12g; scaled error "
                   "metrics omitted for that row\n",
                   record.epsilon);
    }
  }
  gramdp::emit_report(report,
                      options.format == "csv" ? gramdp::ReportFormat::kCsv
                                              : gramdp::ReportFormat::kJson,
                      options.out_path);
  std::printf("sweep: %zu epsilons x %d iterations (%s on \"%s\") -> %s\n",
              report.records.size(), report.iterations,
              gramdp::query_kind_name(report.query), report.column_name.c_str(),
              options.out_path.c_str());
  return 0;
}

int cmd_levels() {
  for (gramdp::PrivacyLevel level : gramdp::kPrivacyLevelsStrongestFirst) {
    std::printf("%-10s %.12g\n", gramdp::privacy_level_name(level),
                gramdp::level_to_epsilon(level).epsilon());
  }
  return 0;
}

int cmd_budget_init(const std::string& file, double total) {
  gramdp::init_ledger_file(file, total);
  std::printf("initialized budget ledger %s with total %.12g\n", file.c_str(),
              total);
  return 0;
}

int cmd_budget_status(const std::string& file) {
  const gramdp::BudgetLedger ledger = gramdp::load_ledger_file(file);
  std::printf("total %.12g\n", ledger.total());
  std::printf("spent %.12g\n", ledger.spent());
  std::printf("remaining %.12g\n", ledger.remaining());
  return 0;
}

void print_error_json(const char* code, const std::string& message) {
  json j;
  j["error"] = code;
  j["message"] = message;
  std::fprintf(stderr, "%s\n", j.dump().c_str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Differential-privacy statistics over CSV columns"};
  app.require_subcommand(1);

  RunOptions run_options;
  CLI::App* run = app.add_subcommand(
      "run", "Answer one DP query and print the result as JSON");
  run->add_option("--data", run_options.data_path, "CSV file path")
      ->required();
  run->add_option("--column", run_options.column, "Column name")->required();
  run->add_option("--query", run_options.query, "count|sum|mean|var")
      ->required()
      ->check(CLI::IsMember({"count", "sum", "mean", "var"}));
  run->add_option("--epsilon", run_options.epsilon, "Privacy parameter");
  run->add_option("--level", run_options.level,
                  "Named privacy level (see `gramdp levels`)");
  run->add_option("--lower", run_options.lower, "Domain lower bound");
  run->add_option("--upper", run_options.upper, "Domain upper bound");
  run->add_option("--seed", run_options.seed,
                  "RNG seed (fallback: GRAMDP_SEED)");
  run->add_option("--budget-file", run_options.budget_file,
                  "Charge this session ledger before releasing");

  SweepOptions sweep_options;
  CLI::App* sweep = app.add_subcommand(
      "sweep", "Run an epsilon sweep and write an error-metrics report");
  sweep->add_option("--data", sweep_options.data_path, "CSV file path")
      ->required();
  sweep->add_option("--column", sweep_options.column, "Column name")
      ->required();
  sweep->add_option("--query", sweep_options.query, "count|sum|mean|var")
      ->required()
      ->check(CLI::IsMember({"count", "sum", "mean", "var"}));
  sweep->add_option("--eps-start", sweep_options.eps_start,
                    "First epsilon (default 0.01)");
  sweep->add_option("--eps-stop", sweep_options.eps_stop,
                    "Last epsilon (default 0.49)");
  sweep->add_option("--eps-step", sweep_options.eps_step,
                    "Grid step (default 0.02)");
  sweep->add_option("--iterations", sweep_options.iterations,
                    "Trials per epsilon (default 100)");
  sweep->add_option("--seed", sweep_options.seed,
                    "Master seed (fallback: GRAMDP_SEED)");
  sweep->add_option("--lower", sweep_options.lower, "Domain lower bound");
  sweep->add_option("--upper", sweep_options.upper, "Domain upper bound");
  sweep->add_option("--out", sweep_options.out_path, "Report file path")
      ->required();
  sweep->add_option("--format", sweep_options.format, "csv|json (default csv)");
  sweep->add_flag("--stamp", sweep_options.stamp,
                  "Record the wall-clock time in the report (breaks "
                  "reproducibility)");
  sweep->add_flag("--serial", sweep_options.serial,
                  "Use the serial reference implementation");

  CLI::App* levels =
      app.add_subcommand("levels", "Print the privacy-level presets");

  CLI::App* budget = app.add_subcommand("budget", "Manage a budget ledger");
  budget->require_subcommand(1);
  std::string budget_file;
  double budget_total = 0.0;
  CLI::App* budget_init =
      budget->add_subcommand("init", "Create a new ledger file");
  budget_init->add_option("--total", budget_total, "Total epsilon budget")
      ->required();
  budget_init->add_option("--file", budget_file, "Ledger path")->required();
  CLI::App* budget_status =
      budget->add_subcommand("status", "Print remaining budget");
  budget_status->add_option("--file", budget_file, "Ledger path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp" ||
        e.get_name() == "CallForVersion") {
      return app.exit(e);
    }
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return 2;
  }

  try {
    if (run->parsed()) return cmd_run(run_options);
    if (sweep->parsed()) return cmd_sweep(sweep_options);
    if (levels->parsed()) return cmd_levels();
    if (budget->parsed()) {
      if (budget_init->parsed()) return cmd_budget_init(budget_file,
                                                        budget_total);
      if (budget_status->parsed()) return cmd_budget_status(budget_file);
    }
  } catch (const UsageError& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return 2;
  } catch (const gramdp::Error& e) {
    print_error_json(e.code_name(), e.what());
    return 1;
  } catch (const std::exception& e) {
    print_error_json("InternalError", e.what());
    return 1;
  }
  return 2;
}
