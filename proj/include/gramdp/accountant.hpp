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

#ifndef GRAMDP_ACCOUNTANT_HPP_
#define GRAMDP_ACCOUNTANT_HPP_

#include <string>
#include <vector>

namespace gramdp {

struct Charge {
  std::string label;
  double epsilon = 0.0;
  std::string timestamp;  // ISO-8601 UTC; empty for in-memory charges
  bool operator==(const Charge&) const = default;
};

// Sequential-composition budget ledger: total privacy loss of a sequence of
// pure-epsilon releases is the sum of their epsilons. The ledger refuses any
// charge that would push the sum past the total, so repeated queries against
// one dataset cannot silently exceed the budget. Charges are append-only and
// a refused charge leaves the ledger untouched.
class BudgetLedger {
 public:
  explicit BudgetLedger(double total_epsilon);

  // Appends the charge iff spent + epsilon <= total (tolerance 1e-12).
  // Throws BudgetExhausted otherwise, without mutating anything.
  void charge(const std::string& label, double epsilon,
              const std::string& timestamp = "");

  double total() const { return total_; }
  double spent() const;
  double remaining() const;
  const std::vector<Charge>& charges() const { return charges_; }

 private:
  double total_;
  std::vector<Charge> charges_;
};

// File-backed session ledger, one JSON object per line:
//   {"total_epsilon": <number>}                                (header line)
//   {"label": <text>, "epsilon": <number>, "ts": <ISO-8601>}   (one per charge)
// Appends hold an exclusive lock on the file so concurrent sessions cannot
// interleave a read-check-append; loads take a shared lock.

// Creates the ledger file. Refuses to overwrite an existing file.
void init_ledger_file(const std::string& path, double total_epsilon);

// Parses the full ledger. Errors: FileNotFound, MalformedLedger.
BudgetLedger load_ledger_file(const std::string& path);

// Atomic check-and-append against the file; returns the remaining budget
// after the charge. Throws BudgetExhausted (file untouched) when the charge
// does not fit.
double charge_ledger_file(const std::string& path, const std::string& label,
                          double epsilon);

// "2026-08-10T12:00:00Z"-style timestamp.
std::string iso8601_utc_now();

}  // namespace gramdp

#endif  // GRAMDP_ACCOUNTANT_HPP_
