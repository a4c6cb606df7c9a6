// Copyright 2026 The EpiKG Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <chrono>
#include <compare>
#include <string>
#include <string_view>

namespace epikg {

// Calendar date at day precision. Stored as days since the civil epoch so
// that ordering and differences are plain integer operations.
class Date {
 public:
  constexpr Date() = default;
  explicit Date(std::chrono::sys_days d) : days_(d.time_since_epoch().count()) {}
  Date(int year, unsigned month, unsigned day);

  // Accepts YYYY-MM-DD; throws std::invalid_argument otherwise.
  static Date parse(std::string_view iso);

  std::string iso() const;
  std::chrono::sys_days sys_days() const {
    return std::chrono::sys_days{std::chrono::days{days_}};
  }
  long days_since_epoch() const { return days_; }

  auto operator<=>(const Date&) const = default;

 private:
  long days_ = 0;
};

// Second-precision UTC timestamp.
class Timestamp {
 public:
  constexpr Timestamp() = default;
  explicit Timestamp(long long seconds_since_epoch) : seconds_(seconds_since_epoch) {}
  static Timestamp at_midnight(Date d);
  static Timestamp now();

  // Accepts YYYY-MM-DDTHH:MM:SS with an optional trailing 'Z', or a bare
  // date (interpreted as midnight).
  static Timestamp parse(std::string_view iso);

  std::string iso() const;  // YYYY-MM-DDTHH:MM:SSZ
  long long seconds_since_epoch() const { return seconds_; }
  Date date() const;

  auto operator<=>(const Timestamp&) const = default;

 private:
  long long seconds_ = 0;
};

}  // namespace epikg
