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
// Benchmark comparing the OpenMP sweep kernel against the serial reference
// implementation on a synthetic workload, and checking that both produce
// identical reports.
//
//   sweep_bench [rows] [iterations] [repetitions]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "gramdp/bench.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double time_best_of(int repetitions, const gramdp::NumericColumn& column,
                    const gramdp::SweepConfig& config, bool serial,
                    gramdp::SweepReport* last_report) {
  double best_ms = 1e300;
  for (int rep = 0; rep < repetitions; ++rep) {
    const auto start = Clock::now();
    *last_report = serial ? gramdp::run_sweep_serial(column, config)
                          : gramdp::run_sweep(column, config);
    const auto elapsed = Clock::now() - start;
    const double ms =
        std::chrono::duration<double, std::milli>(elapsed).count();
    if (ms < best_ms) best_ms = ms;
  }
  return best_ms;
}

}  // namespace

int main(int argc, char** argv) {
  const std::size_t rows =
      argc > 1 ? static_cast<std::size_t>(std::atoll(argv[1])) : 20000;
  const int iterations = argc > 2 ? std::atoi(argv[2]) : 400;
  const int repetitions = argc > 3 ? std::atoi(argv[3]) : 3;

  gramdp::NumericColumn column;
  column.name = "synthetic_age";
  column.values = gramdp::synthetic_uniform_ints(rows, 18, 90, 42);
  column.source_row_count = rows;

  gramdp::QuerySpec spec;
  spec.kind = gramdp::QueryKind::kMean;
  spec.bounds = gramdp::BoundedDomain(18.0, 90.0);
  const gramdp::SweepConfig config(gramdp::default_epsilon_grid(), iterations,
                                   spec, 7);

#ifdef _OPENMP
  const int threads = omp_get_max_threads();
#else
  const int threads = 1;
#endif
  std::printf("workload: mean sweep, %zu rows, %zu epsilons x %d iterations, "
              "best of %d\n",
              rows, config.epsilons.size(), iterations, repetitions);

  gramdp::SweepReport serial_report;
  gramdp::SweepReport parallel_report;
  const double serial_ms =
      time_best_of(repetitions, column, config, true, &serial_report);
  const double parallel_ms =
      time_best_of(repetitions, column, config, false, &parallel_report);

  std::printf("%-20s %10s %12s\n", "kernel", "threads", "wall ms");
  std::printf("%-20s %10d %12.2f\n", "serial reference", 1, serial_ms);
  std::printf("%-20s %10d %12.2f\n", "openmp", threads, parallel_ms);
  std::printf("speedup: %.2fx\n", serial_ms / parallel_ms);

  if (!(serial_report == parallel_report)) {
    std::fprintf(stderr,
                 "FAIL: serial and parallel sweeps produced different "
                 "reports\n");
    return 1;
  }
  std::printf("reports identical: yes\n");
  return 0;
}
