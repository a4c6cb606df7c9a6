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

#include "epikg/core/dates.hpp"

#include <charconv>
#include <cstdio>
#include <stdexcept>

namespace epikg {
namespace {

int parse_fixed(std::string_view s, std::size_t pos, std::size_t len, std::string_view whole) {
  if (pos + len > s.size()) throw std::invalid_argument("truncated date/time: " + std::string(whole));
  int value = 0;
  auto* first = s.data() + pos;
  auto [ptr, ec] = std::from_chars(first, first + len, value);
  if (ec != std::errc{} || ptr != first + len)
    throw std::invalid_argument("malformed date/time: " + std::string(whole));
  return value;
}

void expect(std::string_view s, std::size_t pos, char c, std::string_view whole) {
  if (pos >= s.size() || s[pos] != c)
    throw std::invalid_argument("malformed date/time: " + std::string(whole));
}

}  // namespace

Date::Date(int year, unsigned month, unsigned day) {
  std::chrono::year_month_day ymd{std::chrono::year{year}, std::chrono::month{month},
                                  std::chrono::day{day}};
  if (!ymd.ok()) throw std::invalid_argument("invalid calendar date");
  days_ = std::chrono::sys_days{ymd}.time_since_epoch().count();
}

Date Date::parse(std::string_view iso) {
  if (iso.size() != 10) throw std::invalid_argument("expected YYYY-MM-DD: " + std::string(iso));
  int y = parse_fixed(iso, 0, 4, iso);
  expect(iso, 4, '-', iso);
  int m = parse_fixed(iso, 5, 2, iso);
  expect(iso, 7, '-', iso);
  int d = parse_fixed(iso, 8, 2, iso);
  if (m < 1 || m > 12 || d < 1 || d > 31) throw std::invalid_argument("invalid date: " + std::string(iso));
  return Date(y, static_cast<unsigned>(m), static_cast<unsigned>(d));
}

std::string Date::iso() const {
  std::chrono::year_month_day ymd{sys_days()};
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
  return buf;
}

Timestamp Timestamp::at_midnight(Date d) {
  return Timestamp(static_cast<long long>(d.days_since_epoch()) * 86400LL);
}

Timestamp Timestamp::now() {
  auto s = std::chrono::time_point_cast<std::chrono::seconds>(std::chrono::system_clock::now());
  return Timestamp(s.time_since_epoch().count());
}

Timestamp Timestamp::parse(std::string_view iso) {
  if (iso.size() == 10) return at_midnight(Date::parse(iso));
  if (iso.size() != 19 && !(iso.size() == 20 && iso.back() == 'Z'))
    throw std::invalid_argument("expected YYYY-MM-DDTHH:MM:SS: " + std::string(iso));
  Date d = Date::parse(iso.substr(0, 10));
  expect(iso, 10, 'T', iso);
  int hh = parse_fixed(iso, 11, 2, iso);
  expect(iso, 13, ':', iso);
  int mm = parse_fixed(iso, 14, 2, iso);
  expect(iso, 16, ':', iso);
  int ss = parse_fixed(iso, 17, 2, iso);
  if (hh > 23 || mm > 59 || ss > 60) throw std::invalid_argument("invalid time: " + std::string(iso));
  return Timestamp(at_midnight(d).seconds_ + hh * 3600LL + mm * 60LL + ss);
}

Date Timestamp::date() const {
  long long days = seconds_ >= 0 ? seconds_ / 86400 : -((-seconds_ + 86399) / 86400);
  return Date(std::chrono::sys_days{std::chrono::days{days}});
}

std::string Timestamp::iso() const {
  Date d = date();
  long long rem = seconds_ - static_cast<long long>(d.days_since_epoch()) * 86400LL;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%sT%02lld:%02lld:%02lldZ", d.iso().c_str(), rem / 3600,
                (rem / 60) % 60, rem % 60);
  return buf;
}

}  // namespace epikg
