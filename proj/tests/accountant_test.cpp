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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <unistd.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "gramdp/accountant.hpp"
#include "gramdp/errors.hpp"
#include "gramdp/rng.hpp"

using gramdp::BudgetLedger;
using gramdp::Errc;
using gramdp::Error;

namespace {

class TempPath {
 public:
  TempPath() {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("gramdp_ledger_test_" + std::to_string(::getpid()) + "_" +
             std::to_string(counter++) + ".jsonl");
  }
  ~TempPath() { std::filesystem::remove(path_); }
  std::string str() const { return path_.string(); }

 private:
  std::filesystem::path path_;
};

}  // namespace

TEST_CASE("fresh ledgers") {
  CHECK(BudgetLedger(1.0).remaining() == 1.0);
  CHECK(BudgetLedger(0.5).remaining() == 0.5);
  CHECK_THROWS_AS(BudgetLedger(0.0), Error);
  CHECK_THROWS_AS(BudgetLedger(-1.0), Error);
}

TEST_CASE("charging against the budget") {
  BudgetLedger ledger(0.5);
  ledger.charge("first", 0.3);
  CHECK(ledger.remaining() == doctest::Approx(0.2).epsilon(1e-12));
  CHECK_THROWS_AS(ledger.charge("second", 0.3), Error);
  CHECK(ledger.remaining() == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(ledger.charges().size() == 1);

  // Exact exhaustion is allowed.
  BudgetLedger exact(0.5);
  exact.charge("all", 0.5);
  CHECK(exact.remaining() == 0.0);

  BudgetLedger zero(1.0);
  CHECK_THROWS_AS(zero.charge("nothing", 0.0), Error);
  CHECK_THROWS_AS(zero.charge("negative", -0.1), Error);
}

TEST_CASE("a failed charge leaves the ledger byte-identical") {
  BudgetLedger ledger(1.0);
  ledger.charge("a", 0.25);
  ledger.charge("b", 0.5);
  const auto snapshot = ledger.charges();
  const double remaining = ledger.remaining();
  CHECK_THROWS_AS(ledger.charge("too-much", 0.5), Error);
  CHECK(ledger.charges() == snapshot);
  CHECK(ledger.remaining() == remaining);
}

TEST_CASE("random charge sequences keep the invariants") {
  gramdp::RngStream rng(606);
  for (int trial = 0; trial < 1000; ++trial) {
    const double total = 0.1 + 5.0 * rng.next_open01();
    BudgetLedger ledger(total);
    const int attempts = 1 + static_cast<int>(rng.next_open01() * 20);
    for (int i = 0; i < attempts; ++i) {
      const double eps = rng.next_open01() * total * 0.4;
      if (eps <= 0.0) continue;
      const auto before = ledger.charges();
      try {
        ledger.charge("q" + std::to_string(i), eps);
      } catch (const Error& e) {
        CHECK(e.code() == Errc::budget_exhausted);
        CHECK(ledger.charges() == before);
      }
      CHECK(ledger.remaining() >= 0.0);
      CHECK(std::abs(ledger.remaining() + ledger.spent() - total) < 1e-12);
    }
  }
}

TEST_CASE("ledger file: init, load, charge, reload") {
  TempPath path;
  gramdp::init_ledger_file(path.str(), 1.0);
  CHECK(gramdp::load_ledger_file(path.str()).remaining() == 1.0);

  CHECK(gramdp::charge_ledger_file(path.str(), "mean:age", 0.25) ==
        doctest::Approx(0.75).epsilon(1e-12));
  const BudgetLedger reloaded = gramdp::load_ledger_file(path.str());
  CHECK(reloaded.remaining() == doctest::Approx(0.75).epsilon(1e-12));
  REQUIRE(reloaded.charges().size() == 1);
  CHECK(reloaded.charges()[0].label == "mean:age");
  CHECK(reloaded.charges()[0].epsilon == 0.25);
  CHECK(!reloaded.charges()[0].timestamp.empty());

  // Over-budget charge fails and appends nothing.
  CHECK_THROWS_AS(gramdp::charge_ledger_file(path.str(), "big", 2.0), Error);
  CHECK(gramdp::load_ledger_file(path.str()).charges().size() == 1);
}

TEST_CASE("ledger file: error paths") {
  CHECK_THROWS_AS(gramdp::load_ledger_file("/nonexistent/ledger.jsonl"),
                  Error);

  TempPath path;
  gramdp::init_ledger_file(path.str(), 1.0);
  CHECK_THROWS_AS(gramdp::init_ledger_file(path.str(), 1.0), Error);

  TempPath corrupt;
  {
    std::ofstream out(corrupt.str());
    out << "not json\n";
  }
  CHECK_THROWS_AS(gramdp::load_ledger_file(corrupt.str()), Error);

  TempPath overspent;
  {
    std::ofstream out(overspent.str());
    out << "{\"total_epsilon\": 0.5}\n";
    out << "{\"label\": \"a\", \"epsilon\": 0.4, \"ts\": \"\"}\n";
    out << "{\"label\": \"b\", \"epsilon\": 0.4, \"ts\": \"\"}\n";
  }
  try {
    gramdp::load_ledger_file(overspent.str());
    FAIL("expected MalformedLedger");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::malformed_ledger);
  }
}

TEST_CASE("timestamps look like ISO-8601 UTC") {
  const std::string ts = gramdp::iso8601_utc_now();
  REQUIRE(ts.size() == 20);
  CHECK(ts[4] == '-');
  CHECK(ts[7] == '-');
  CHECK(ts[10] == 'T');
  CHECK(ts[13] == ':');
  CHECK(ts[16] == ':');
  CHECK(ts[19] == 'Z');
}
