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

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>

#include "gramdp/errors.hpp"
#include "gramdp/ingest.hpp"
#include "gramdp/rng.hpp"

using gramdp::Errc;
using gramdp::Error;
using gramdp::Table;

namespace {

// Writes contents to a unique temp file and loads it.
class TempCsv {
 public:
  explicit TempCsv(const std::string& contents) {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("gramdp_ingest_test_" + std::to_string(::getpid()) + "_" +
             std::to_string(counter++) + ".csv");
    std::ofstream out(path_, std::ios::binary);
    out << contents;
  }
  ~TempCsv() { std::filesystem::remove(path_); }
  std::string path() const { return path_.string(); }

 private:
  std::filesystem::path path_;
};

Errc code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected a gramdp::Error");
  return Errc::io_error;
}

}  // namespace

TEST_CASE("a minimal two-line file parses") {
  TempCsv file("age\n30\n");
  const Table t = gramdp::load_csv(file.path());
  CHECK(t.header == std::vector<std::string>{"age"});
  REQUIRE(t.rows.size() == 1);
  CHECK(t.rows[0][0] == "30");
}

TEST_CASE("missing trailing newline is tolerated") {
  TempCsv file("age,city\n30,leeds");
  const Table t = gramdp::load_csv(file.path());
  REQUIRE(t.rows.size() == 1);
  CHECK(t.rows[0][1] == "leeds");
}

TEST_CASE("CRLF line endings are folded") {
  TempCsv file("age,city\r\n30,leeds\r\n41,york\r\n");
  const Table t = gramdp::load_csv(file.path());
  REQUIRE(t.rows.size() == 2);
  CHECK(t.rows[1][0] == "41");
}

TEST_CASE("quoted cells keep commas, quotes and newlines") {
  TempCsv file("name,note\nalice,\"a,b\"\nbob,\"say \"\"hi\"\"\"\n"
               "carol,\"two\nlines\"\n");
  const Table t = gramdp::load_csv(file.path());
  REQUIRE(t.rows.size() == 3);
  CHECK(t.rows[0][1] == "a,b");
  CHECK(t.rows[1][1] == "say \"hi\"");
  CHECK(t.rows[2][1] == "two\nlines");
}

TEST_CASE("ragged rows are rejected with their line number") {
  TempCsv file("a,b\n1,2,3\n");
  const Errc code = code_of([&] { gramdp::load_csv(file.path()); });
  CHECK(code == Errc::ragged_row);
  try {
    gramdp::load_csv(file.path());
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
}

TEST_CASE("malformed quoting is rejected") {
  TempCsv stray("a,b\n1,2\"2\n");
  CHECK(code_of([&] { gramdp::load_csv(stray.path()); }) ==
        Errc::malformed_csv);
  TempCsv unterminated("a,b\n1,\"open\n");
  CHECK(code_of([&] { gramdp::load_csv(unterminated.path()); }) ==
        Errc::malformed_csv);
  TempCsv empty("");
  CHECK(code_of([&] { gramdp::load_csv(empty.path()); }) ==
        Errc::malformed_csv);
}

TEST_CASE("missing files are reported as such") {
  CHECK(code_of([] { gramdp::load_csv("/nonexistent/nope.csv"); }) ==
        Errc::file_not_found);
}

TEST_CASE("write then load is the identity on tables") {
  // Randomized cells exercising quoting: commas, quotes, newlines, spaces.
  gramdp::RngStream rng(321);
  const std::string alphabet = "ab,\"\n x9.";
  for (int trial = 0; trial < 50; ++trial) {
    Table t;
    const int cols = 1 + static_cast<int>(rng.next_open01() * 4);
    for (int c = 0; c < cols; ++c) {
      t.header.push_back("col" + std::to_string(c));
    }
    const int rows = static_cast<int>(rng.next_open01() * 6);
    for (int r = 0; r < rows; ++r) {
      std::vector<std::string> row;
      for (int c = 0; c < cols; ++c) {
        std::string cell;
        const int len = static_cast<int>(rng.next_open01() * 8);
        for (int i = 0; i < len; ++i) {
          cell.push_back(
              alphabet[static_cast<std::size_t>(rng.next_open01() * 9)]);
        }
        row.push_back(std::move(cell));
      }
      t.rows.push_back(std::move(row));
    }

    std::ostringstream out;
    gramdp::write_csv(t, out);
    TempCsv file(out.str());
    CHECK(gramdp::load_csv(file.path()) == t);
  }
}

TEST_CASE("arbitrary bytes either parse or raise a typed error") {
  gramdp::RngStream rng(777);
  const std::string alphabet = "a,\"\n\r0.;x ";
  for (int trial = 0; trial < 300; ++trial) {
    std::string contents;
    const int len = static_cast<int>(rng.next_open01() * 40);
    for (int i = 0; i < len; ++i) {
      contents.push_back(
          alphabet[static_cast<std::size_t>(rng.next_open01() * 10)]);
    }
    TempCsv file(contents);
    try {
      const Table t = gramdp::load_csv(file.path());
      for (const auto& row : t.rows) {
        CHECK(row.size() == t.header.size());
      }
    } catch (const Error& e) {
      const Errc code = e.code();
      CHECK((code == Errc::malformed_csv || code == Errc::ragged_row));
    }
  }
}

TEST_CASE("numeric column extraction") {
  TempCsv file("age,city\n18,leeds\n25,york\n40,hull\n");
  const Table t = gramdp::load_csv(file.path());
  const auto column = gramdp::select_numeric_column(t, "age");
  CHECK(column.name == "age");
  CHECK(column.values == std::vector<double>{18.0, 25.0, 40.0});
  CHECK(column.source_row_count == 3);
}

TEST_CASE("numeric extraction refuses bad cells") {
  TempCsv file("v\n1\n2\nabc\n");
  const Table t = gramdp::load_csv(file.path());
  CHECK(code_of([&] { gramdp::select_numeric_column(t, "missing"); }) ==
        Errc::no_such_column);
  CHECK(code_of([&] { gramdp::select_numeric_column(t, "v"); }) ==
        Errc::non_numeric_cell);
  try {
    gramdp::select_numeric_column(t, "v");
  } catch (const Error& e) {
    const std::string what = e.what();
    CHECK(what.find("row 3") != std::string::npos);
    CHECK(what.find("abc") != std::string::npos);
  }

  TempCsv gaps("v\n1\n\n3\n");
  const Table t2 = gramdp::load_csv(gaps.path());
  CHECK(code_of([&] { gramdp::select_numeric_column(t2, "v"); }) ==
        Errc::empty_cell);

  TempCsv inf_cell("v\ninf\n");
  const Table t3 = gramdp::load_csv(inf_cell.path());
  CHECK(code_of([&] { gramdp::select_numeric_column(t3, "v"); }) ==
        Errc::non_numeric_cell);
  TempCsv nan_cell("v\nnan\n");
  const Table t4 = gramdp::load_csv(nan_cell.path());
  CHECK(code_of([&] { gramdp::select_numeric_column(t4, "v"); }) ==
        Errc::non_numeric_cell);
}

TEST_CASE("negative and scientific notation parse") {
  TempCsv file("v\n-2.5\n1e3\n0.125\n");
  const Table t = gramdp::load_csv(file.path());
  const auto column = gramdp::select_numeric_column(t, "v");
  CHECK(column.values == std::vector<double>{-2.5, 1000.0, 0.125});
}

TEST_CASE("bounds inference") {
  gramdp::NumericColumn column;
  column.name = "age";
  column.values = {18.0, 25.0, 90.0};
  column.source_row_count = 3;
  const auto bounds = gramdp::infer_bounds(column);
  CHECK(bounds.lower == 18.0);
  CHECK(bounds.upper == 90.0);
  for (double v : column.values) {
    CHECK(v >= bounds.lower);
    CHECK(v <= bounds.upper);
  }

  gramdp::NumericColumn constant;
  constant.values = {5.0, 5.0, 5.0};
  constant.source_row_count = 3;
  const auto widened = gramdp::infer_bounds(constant);
  CHECK(widened.lower == 4.5);
  CHECK(widened.upper == 5.5);

  gramdp::NumericColumn empty;
  CHECK(code_of([&] { gramdp::infer_bounds(empty); }) == Errc::empty_column);
}

TEST_CASE("clamping to bounds") {
  gramdp::NumericColumn column;
  column.name = "v";
  column.values = {10.0, 50.0, 100.0};
  column.source_row_count = 3;
  const gramdp::BoundedDomain domain(18.0, 90.0);

  const auto clamped = gramdp::clamp_to_bounds(column, domain);
  CHECK(clamped.values == std::vector<double>{18.0, 50.0, 90.0});
  CHECK(clamped.source_row_count == 3);

  gramdp::NumericColumn inside;
  inside.values = {20.0, 30.0};
  inside.source_row_count = 2;
  CHECK(gramdp::clamp_to_bounds(inside, domain).values == inside.values);
}
