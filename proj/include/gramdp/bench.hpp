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
// Epsilon-sweep benchmark harness: repeated DP trials per epsilon, three
// error metrics per epsilon, plot-ready CSV/JSON reports. Benchmark runs are
// explicitly non-release: no budget is charged and reports say so.
//
// Trials are embarrassingly parallel. Each (epsilon index, iteration index)
// pair gets its own RNG substream derived from the master seed, and metric
// accumulation always walks trials in configured order, so the OpenMP kernel
// in run_sweep produces byte-identical reports to the serial reference
// implementation run_sweep_serial regardless of thread count.

#ifndef GRAMDP_BENCH_HPP_
#define GRAMDP_BENCH_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gramdp/ingest.hpp"
#include "gramdp/queries.hpp"

namespace gramdp {

struct ErrorMetrics {
  // (1/K) * sum (r_i - t) / |t|. Signed, so it doubles as a bias indicator.
  double mean_scaled_error = 0.0;
  // (1/K) * sum (r_i - t)^2.
  double mse = 0.0;
  // 100 * sqrt((1/K) * sum ((r_i - t) / t)^2).
  double rmspe_percent = 0.0;
  bool operator==(const ErrorMetrics&) const = default;
};

// Errors: EmptyResults; TrueValueZero (the scaled metrics divide by t).
ErrorMetrics error_metrics(double true_value, std::span<const double> results);

// [0.01, 0.03, ..., 0.49]: 25 values, built by integer stepping
// (1 + 2k)/100 so there is no accumulated floating-point drift.
std::vector<double> default_epsilon_grid();

// Validated at construction: epsilons strictly increasing and positive,
// iterations >= 1. Any privacy setting inside `query` is ignored; the sweep
// substitutes each grid epsilon in turn.
struct SweepConfig {
  SweepConfig(std::vector<double> epsilons, int iterations, QuerySpec query,
              std::uint64_t master_seed);

  std::vector<double> epsilons;
  int iterations;
  QuerySpec query;
  std::uint64_t master_seed;
};

struct SweepRecord {
  double epsilon = 0.0;
  double mean_dp_value = 0.0;
  // Empty when the non-private aggregate is 0 (scaled errors undefined);
  // the sweep keeps going and the report carries the hole.
  std::optional<ErrorMetrics> metrics;
  int iterations = 0;
  bool operator==(const SweepRecord&) const = default;
};

struct SweepReport {
  std::vector<SweepRecord> records;  // one per epsilon, grid order
  QueryKind query = QueryKind::kCount;
  std::string column_name;
  std::optional<BoundedDomain> bounds_used;
  bool bounds_were_inferred = false;
  std::uint64_t master_seed = 0;
  int iterations = 0;
  // Wall-clock stamps break reproducibility, so this stays empty unless the
  // caller explicitly stamps the report (CLI: --stamp).
  std::string timestamp;
  bool operator==(const SweepReport&) const = default;
};

// Runs cfg.iterations trials of the query per epsilon and aggregates the
// error metrics against the non-private aggregate. Trial (e, i) draws from
// RngStream(derive_seed(master_seed, e, i)). Parallelized with OpenMP when
// available; byte-identical to run_sweep_serial either way.
SweepReport run_sweep(const NumericColumn& column, const SweepConfig& cfg);

// Serial reference implementation, kept for testing and benchmarking the
// parallel kernel against.
SweepReport run_sweep_serial(const NumericColumn& column,
                             const SweepConfig& cfg);

enum class ReportFormat { kCsv, kJson };

// CSV: header `epsilon,mean_dp,mean_scaled_error,mse,rmspe_percent,
// iterations`, one row per epsilon, 12 significant digits, `nan` for metric
// holes. JSON: the full report with metadata; parse_report inverts it
// exactly.
std::string report_to_csv(const SweepReport& report);
std::string report_to_json(const SweepReport& report);
SweepReport parse_report_json(const std::string& text);
void emit_report(const SweepReport& report, ReportFormat format,
                 const std::string& path);

// Deterministic synthetic column: n uniform integers in [lo, hi], the
// standard workload for sweep trend checks and the kernel benchmark.
std::vector<double> synthetic_uniform_ints(std::size_t n, int lo, int hi,
                                           std::uint64_t seed);

}  // namespace gramdp

#endif  // GRAMDP_BENCH_HPP_
