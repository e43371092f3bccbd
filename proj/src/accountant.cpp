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

#include "gramdp/accountant.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstring>
#include <ctime>
#include <filesystem>
#include <sstream>
#include <string>

#include "gramdp/errors.hpp"
#include "json.hpp"

namespace gramdp {
namespace {

using nlohmann::json;

constexpr double kBudgetTolerance = 1e-12;

// RAII wrapper: exclusive or shared flock for the lifetime of the handle.
class LockedFile {
 public:
  LockedFile(const std::string& path, int open_flags, int lock_op)
      : path_(path) {
    fd_ = ::open(path.c_str(), open_flags, 0644);
    if (fd_ < 0) {
      if (errno == ENOENT) {
        throw Error(Errc::file_not_found, "FileNotFound: " + path);
      }
      throw Error(Errc::io_error,
                  "IoError: cannot open " + path + ": " + std::strerror(errno));
    }
    if (::flock(fd_, lock_op) != 0) {
      ::close(fd_);
      throw Error(Errc::io_error, "IoError: cannot lock " + path);
    }
  }
  ~LockedFile() {
    if (fd_ >= 0) {
      ::flock(fd_, LOCK_UN);
      ::close(fd_);
    }
  }
  LockedFile(const LockedFile&) = delete;
  LockedFile& operator=(const LockedFile&) = delete;

  std::string read_all() const {
    std::string contents;
    char buffer[4096];
    ::lseek(fd_, 0, SEEK_SET);
    ssize_t got;
    while ((got = ::read(fd_, buffer, sizeof(buffer))) > 0) {
      contents.append(buffer, static_cast<std::size_t>(got));
    }
    if (got < 0) {
      throw Error(Errc::io_error, "IoError: read failed on " + path_);
    }
    return contents;
  }

  void append_line(const std::string& line) const {
    ::lseek(fd_, 0, SEEK_END);
    const std::string with_newline = line + "\n";
    const char* data = with_newline.data();
    std::size_t left = with_newline.size();
    while (left > 0) {
      const ssize_t wrote = ::write(fd_, data, left);
      if (wrote < 0) {
        throw Error(Errc::io_error, "IoError: append failed on " + path_);
      }
      data += wrote;
      left -= static_cast<std::size_t>(wrote);
    }
  }

 private:
  std::string path_;
  int fd_ = -1;
};

json parse_ledger_line(const std::string& path, const std::string& line,
                       std::size_t line_number) {
  json parsed = json::parse(line, nullptr, /*allow_exceptions=*/false);
  if (parsed.is_discarded() || !parsed.is_object()) {
    throw Error(Errc::malformed_ledger,
                "MalformedLedger: " + path + " line " +
                    std::to_string(line_number) + " is not a JSON object");
  }
  return parsed;
}

BudgetLedger parse_ledger(const std::string& path,
                          const std::string& contents) {
  std::istringstream in(contents);
  std::string line;
  std::size_t line_number = 0;
  double total = 0.0;
  bool have_header = false;
  std::vector<Charge> charges;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty()) continue;
    json record = parse_ledger_line(path, line, line_number);
    if (!have_header) {
      if (!record.contains("total_epsilon") ||
          !record["total_epsilon"].is_number()) {
        throw Error(Errc::malformed_ledger,
                    "MalformedLedger: " + path +
                        " is missing the total_epsilon header line");
      }
      total = record["total_epsilon"].get<double>();
      have_header = true;
      continue;
    }
    if (!record.contains("label") || !record["label"].is_string() ||
        !record.contains("epsilon") || !record["epsilon"].is_number()) {
      throw Error(Errc::malformed_ledger,
                  "MalformedLedger: " + path + " line " +
                      std::to_string(line_number) +
                      " is not a charge record");
    }
    Charge charge;
    charge.label = record["label"].get<std::string>();
    charge.epsilon = record["epsilon"].get<double>();
    if (record.contains("ts") && record["ts"].is_string()) {
      charge.timestamp = record["ts"].get<std::string>();
    }
    charges.push_back(std::move(charge));
  }
  if (!have_header) {
    throw Error(Errc::malformed_ledger,
                "MalformedLedger: " + path + " has no header line");
  }
  BudgetLedger ledger(total);
  for (const Charge& c : charges) {
    // Replaying a corrupt file that overspends must fail loudly, not
    // silently truncate.
    try {
      ledger.charge(c.label, c.epsilon, c.timestamp);
    } catch (const Error&) {
      throw Error(Errc::malformed_ledger,
                  "MalformedLedger: " + path +
                      " contains charges exceeding the recorded total");
    }
  }
  return ledger;
}

std::string charge_line(const std::string& label, double epsilon,
                        const std::string& timestamp) {
  json record;
  record["label"] = label;
  record["epsilon"] = epsilon;
  record["ts"] = timestamp;
  return record.dump();
}

}  // namespace

BudgetLedger::BudgetLedger(double total_epsilon) : total_(total_epsilon) {
  if (!(total_epsilon > 0.0) || !std::isfinite(total_epsilon)) {
    throw Error(Errc::invalid_argument,
                "BudgetLedger: total epsilon must be finite and > 0, got " +
                    std::to_string(total_epsilon));
  }
}

void BudgetLedger::charge(const std::string& label, double epsilon,
                          const std::string& timestamp) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw Error(Errc::invalid_argument,
                "BudgetLedger::charge: epsilon must be finite and > 0");
  }
  const double spent_now = spent();
  if (spent_now + epsilon > total_ + kBudgetTolerance) {
    std::ostringstream message;
    message << "BudgetExhausted: requested " << epsilon << ", remaining "
            << (total_ - spent_now);
    throw Error(Errc::budget_exhausted, message.str());
  }
  charges_.push_back(Charge{label, epsilon, timestamp});
}

double BudgetLedger::spent() const {
  double sum = 0.0;
  for (const Charge& c : charges_) sum += c.epsilon;
  return sum;
}

double BudgetLedger::remaining() const {
  // Exhausting the budget exactly can leave a tiny negative residue from
  // floating-point summation; snap it to zero.
  return std::max(0.0, total_ - spent());
}

void init_ledger_file(const std::string& path, double total_epsilon) {
  BudgetLedger validate(total_epsilon);  // reuse the > 0 check
  (void)validate;
  if (std::filesystem::exists(path)) {
    throw Error(Errc::io_error,
                "IoError: refusing to overwrite existing ledger " + path);
  }
  const int fd = ::open(path.c_str(), O_CREAT | O_EXCL | O_WRONLY, 0644);
  if (fd < 0) {
    throw Error(Errc::io_error, "IoError: cannot create " + path + ": " +
                                    std::strerror(errno));
  }
  json header;
  header["total_epsilon"] = total_epsilon;
  const std::string line = header.dump() + "\n";
  const ssize_t wrote = ::write(fd, line.data(), line.size());
  ::close(fd);
  if (wrote != static_cast<ssize_t>(line.size())) {
    throw Error(Errc::io_error, "IoError: short write to " + path);
  }
}

BudgetLedger load_ledger_file(const std::string& path) {
  LockedFile file(path, O_RDONLY, LOCK_SH);
  return parse_ledger(path, file.read_all());
}

double charge_ledger_file(const std::string& path, const std::string& label,
                          double epsilon) {
  // Exclusive lock across read-check-append: two sessions cannot both pass
  // the remaining-budget check against the same bytes.
  LockedFile file(path, O_RDWR, LOCK_EX);
  BudgetLedger ledger = parse_ledger(path, file.read_all());
  const std::string timestamp = iso8601_utc_now();
  ledger.charge(label, epsilon, timestamp);  // throws before any write
  file.append_line(charge_line(label, epsilon, timestamp));
  return ledger.remaining();
}

std::string iso8601_utc_now() {
  const std::time_t now = std::time(nullptr);
  std::tm utc{};
  gmtime_r(&now, &utc);
  char buffer[32];
  std::strftime(buffer, sizeof(buffer), "%Y-%m-%dT%H:%M:%SZ", &utc);
  return buffer;
}

}  // namespace gramdp
