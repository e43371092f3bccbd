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

#include "gramdp/bench.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <utility>

#include "gramdp/errors.hpp"
#include "gramdp/rng.hpp"
#include "json.hpp"

namespace gramdp {
namespace {

using nlohmann::json;

// One DP trial. Trial (e, i) always draws from the same derived substream,
// so the values are identical no matter which thread runs the trial.
double run_trial(std::span<const double> column, const QuerySpec& base,
                 double epsilon, std::size_t eps_index, std::size_t iteration,
                 std::uint64_t master_seed) {
  RngStream rng(derive_seed(master_seed, eps_index, iteration));
  QuerySpec spec = base;
  spec.privacy = PrivacyParams(epsilon);
  return run_query(column, spec, rng).value;
}

// All trials, flattened as values[e * iterations + i]. `parallel` selects
// the OpenMP kernel; the serial loop is the reference implementation.
std::vector<double> sweep_trials(const NumericColumn& column,
                                 const SweepConfig& cfg, bool parallel) {
  const std::size_t n_eps = cfg.epsilons.size();
  const std::size_t iters = static_cast<std::size_t>(cfg.iterations);
  std::vector<double> values(n_eps * iters);

  // Validate once up front (bounds, emptiness, row minimums) so the trial
  // loop itself cannot throw mid-kernel.
  (void)plain_aggregate(cfg.query.kind, column.values, cfg.query.bounds,
                        cfg.query.clamp_inputs);

  const long long total = static_cast<long long>(n_eps * iters);
  if (parallel) {
#pragma omp parallel for schedule(static)
    for (long long t = 0; t < total; ++t) {
      const std::size_t e = static_cast<std::size_t>(t) / iters;
      const std::size_t i = static_cast<std::size_t>(t) % iters;
      values[static_cast<std::size_t>(t)] = run_trial(
          column.values, cfg.query, cfg.epsilons[e], e, i, cfg.master_seed);
    }
  } else {
    for (long long t = 0; t < total; ++t) {
      const std::size_t e = static_cast<std::size_t>(t) / iters;
      const std::size_t i = static_cast<std::size_t>(t) % iters;
      values[static_cast<std::size_t>(t)] = run_trial(
          column.values, cfg.query, cfg.epsilons[e], e, i, cfg.master_seed);
    }
  }
  return values;
}

// Metric accumulation walks trials in configured order regardless of how
// they were computed, which keeps parallel and serial reports byte-equal.
SweepReport assemble_report(const NumericColumn& column,
                            const SweepConfig& cfg,
                            std::span<const double> values) {
  const std::size_t iters = static_cast<std::size_t>(cfg.iterations);
  const double true_value = plain_aggregate(
      cfg.query.kind, column.values, cfg.query.bounds, cfg.query.clamp_inputs);

  SweepReport report;
  report.query = cfg.query.kind;
  report.column_name = column.name;
  report.bounds_used =
      cfg.query.kind == QueryKind::kCount ? std::nullopt : cfg.query.bounds;
  report.bounds_were_inferred = cfg.query.kind != QueryKind::kCount &&
                                cfg.query.bounds_were_inferred;
  report.master_seed = cfg.master_seed;
  report.iterations = cfg.iterations;
  report.records.reserve(cfg.epsilons.size());

  for (std::size_t e = 0; e < cfg.epsilons.size(); ++e) {
    const std::span<const double> row = values.subspan(e * iters, iters);
    SweepRecord record;
    record.epsilon = cfg.epsilons[e];
    record.iterations = cfg.iterations;
    double sum = 0.0;
    for (double v : row) sum += v;
    record.mean_dp_value = sum / static_cast<double>(iters);
    if (true_value != 0.0) {
      record.metrics = error_metrics(true_value, row);
    }
    report.records.push_back(std::move(record));
  }
  return report;
}

void append_csv_field(std::string* out, double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.12g", value);
  *out += buffer;
}

json bounds_to_json(const std::optional<BoundedDomain>& bounds) {
  if (!bounds) return nullptr;
  return json{{"lower", bounds->lower}, {"upper", bounds->upper}};
}

}  // namespace

ErrorMetrics error_metrics(double true_value,
                           std::span<const double> results) {
  if (results.empty()) {
    throw Error(Errc::empty_results, "EmptyResults: no trial results");
  }
  if (true_value == 0.0) {
    throw Error(Errc::true_value_zero,
                "TrueValueZero: scaled error metrics are undefined");
  }
  const double k = static_cast<double>(results.size());
  double scaled_sum = 0.0;
  double squared_sum = 0.0;
  double squared_pct_sum = 0.0;
  for (double r : results) {
    const double err = r - true_value;
    scaled_sum += err / std::abs(true_value);
    squared_sum += err * err;
    const double pct = err / true_value;
    squared_pct_sum += pct * pct;
  }
  ErrorMetrics metrics;
  metrics.mean_scaled_error = scaled_sum / k;
  metrics.mse = squared_sum / k;
  metrics.rmspe_percent = 100.0 * std::sqrt(squared_pct_sum / k);
  return metrics;
}

std::vector<double> default_epsilon_grid() {
  std::vector<double> grid;
  grid.reserve(25);
  for (int k = 0; k < 25; ++k) {
    grid.push_back(static_cast<double>(1 + 2 * k) / 100.0);
  }
  return grid;
}

SweepConfig::SweepConfig(std::vector<double> epsilons_in, int iterations_in,
                         QuerySpec query_in, std::uint64_t master_seed_in)
    : epsilons(std::move(epsilons_in)),
      iterations(iterations_in),
      query(std::move(query_in)),
      master_seed(master_seed_in) {
  if (epsilons.empty()) {
    throw Error(Errc::invalid_argument, "SweepConfig: epsilon grid is empty");
  }
  double previous = 0.0;
  for (double eps : epsilons) {
    if (!(eps > previous) || !std::isfinite(eps)) {
      throw Error(Errc::invalid_argument,
                  "SweepConfig: epsilons must be positive and strictly "
                  "increasing");
    }
    previous = eps;
  }
  if (iterations < 1) {
    throw Error(Errc::invalid_argument, "SweepConfig: iterations must be >= 1");
  }
}

SweepReport run_sweep(const NumericColumn& column, const SweepConfig& cfg) {
  const std::vector<double> values = sweep_trials(column, cfg, true);
  return assemble_report(column, cfg, values);
}

SweepReport run_sweep_serial(const NumericColumn& column,
                             const SweepConfig& cfg) {
  const std::vector<double> values = sweep_trials(column, cfg, false);
  return assemble_report(column, cfg, values);
}

std::string report_to_csv(const SweepReport& report) {
  std::string out =
      "epsilon,mean_dp,mean_scaled_error,mse,rmspe_percent,iterations\n";
  for (const SweepRecord& record : report.records) {
    append_csv_field(&out, record.epsilon);
    out += ',';
    append_csv_field(&out, record.mean_dp_value);
    out += ',';
    if (record.metrics) {
      append_csv_field(&out, record.metrics->mean_scaled_error);
      out += ',';
      append_csv_field(&out, record.metrics->mse);
      out += ',';
      append_csv_field(&out, record.metrics->rmspe_percent);
    } else {
      out += "nan,nan,nan";
    }
    out += ',';
    out += std::to_string(record.iterations);
    out += '\n';
  }
  return out;
}

std::string report_to_json(const SweepReport& report) {
  json j;
  j["query"] = query_kind_name(report.query);
  j["column"] = report.column_name;
  j["bounds"] = bounds_to_json(report.bounds_used);
  j["bounds_were_inferred"] = report.bounds_were_inferred;
  j["seed"] = report.master_seed;
  j["iterations"] = report.iterations;
  j["timestamp"] = report.timestamp;
  j["non_release_benchmark"] = true;
  json records = json::array();
  for (const SweepRecord& record : report.records) {
    json r;
    r["epsilon"] = record.epsilon;
    r["mean_dp"] = record.mean_dp_value;
    r["iterations"] = record.iterations;
    if (record.metrics) {
      r["mean_scaled_error"] = record.metrics->mean_scaled_error;
      r["mse"] = record.metrics->mse;
      r["rmspe_percent"] = record.metrics->rmspe_percent;
    } else {
      r["mean_scaled_error"] = nullptr;
      r["mse"] = nullptr;
      r["rmspe_percent"] = nullptr;
    }
    records.push_back(std::move(r));
  }
  j["records"] = std::move(records);
  return j.dump(2) + "\n";
}

SweepReport parse_report_json(const std::string& text) {
  json j = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded() || !j.is_object()) {
    throw Error(Errc::io_error, "IoError: report is not valid JSON");
  }
  SweepReport report;
  const std::string kind = j.at("query").get<std::string>();
  bool found = false;
  for (QueryKind candidate :
       {QueryKind::kCount, QueryKind::kSum, QueryKind::kMean,
        QueryKind::kVariance}) {
    if (kind == query_kind_name(candidate)) {
      report.query = candidate;
      found = true;
    }
  }
  if (!found) {
    throw Error(Errc::io_error, "IoError: unknown query kind " + kind);
  }
  report.column_name = j.at("column").get<std::string>();
  if (!j.at("bounds").is_null()) {
    report.bounds_used = BoundedDomain(j["bounds"].at("lower").get<double>(),
                                       j["bounds"].at("upper").get<double>());
  }
  report.bounds_were_inferred = j.at("bounds_were_inferred").get<bool>();
  report.master_seed = j.at("seed").get<std::uint64_t>();
  report.iterations = j.at("iterations").get<int>();
  report.timestamp = j.at("timestamp").get<std::string>();
  for (const json& r : j.at("records")) {
    SweepRecord record;
    record.epsilon = r.at("epsilon").get<double>();
    record.mean_dp_value = r.at("mean_dp").get<double>();
    record.iterations = r.at("iterations").get<int>();
    if (!r.at("mse").is_null()) {
      ErrorMetrics metrics;
      metrics.mean_scaled_error = r.at("mean_scaled_error").get<double>();
      metrics.mse = r.at("mse").get<double>();
      metrics.rmspe_percent = r.at("rmspe_percent").get<double>();
      record.metrics = metrics;
    }
    report.records.push_back(std::move(record));
  }
  return report;
}

void emit_report(const SweepReport& report, ReportFormat format,
                 const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error(Errc::io_error, "IoError: cannot open " + path +
                                    " for writing");
  }
  out << (format == ReportFormat::kCsv ? report_to_csv(report)
                                       : report_to_json(report));
  if (!out) {
    throw Error(Errc::io_error, "IoError: short write to " + path);
  }
}

std::vector<double> synthetic_uniform_ints(std::size_t n, int lo, int hi,
                                           std::uint64_t seed) {
  if (hi < lo) {
    throw Error(Errc::invalid_argument,
                "synthetic_uniform_ints: hi must be >= lo");
  }
  RngStream rng(seed);
  const double span = static_cast<double>(hi - lo + 1);
  std::vector<double> values;
  values.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double draw =
        static_cast<double>(lo) + std::floor(rng.next_open01() * span);
    values.push_back(std::min(draw, static_cast<double>(hi)));
  }
  return values;
}

}  // namespace gramdp
