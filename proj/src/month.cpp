#include "obscorr/month.hpp"

#include <charconv>
#include <cstdio>

#include "obscorr/error.hpp"

namespace obscorr {

namespace {

bool leap(int y) { return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0; }

int days_in_month(int y, int m) {
  static constexpr int kDays[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  return m == 2 && leap(y) ? 29 : kDays[m - 1];
}

// Days since 1970-01-01 for a proleptic Gregorian date.
std::int64_t days_from_civil(int y, int m, int d) {
  y -= m <= 2;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const std::int64_t yoe = y - era * 400;
  const std::int64_t doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const std::int64_t doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + doe - 719468;
}

struct Civil {
  int y;
  int m;
  int d;
};

Civil civil_from_days(std::int64_t z) {
  z += 719468;
  const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const std::int64_t doe = z - era * 146097;
  const std::int64_t yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const std::int64_t doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const std::int64_t mp = (5 * doy + 2) / 153;
  const int d = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
  const int m = static_cast<int>(mp < 10 ? mp + 3 : mp - 9);
  return {static_cast<int>(yoe + era * 400 + (m <= 2)), m, d};
}

int field(std::string_view label, std::size_t pos, std::size_t len) {
  if (pos + len > label.size()) throw ParseError("truncated time label", std::string(label));
  int value = 0;
  const char* first = label.data() + pos;
  auto [ptr, ec] = std::from_chars(first, first + len, value);
  if (ec != std::errc{} || ptr != first + len) {
    throw ParseError("bad numeric field in time label", std::string(label));
  }
  return value;
}

void expect(std::string_view label, std::size_t pos, char c) {
  if (pos >= label.size() || label[pos] != c) {
    throw ParseError(std::string("expected '") + c + "' in time label", std::string(label));
  }
}

struct DateTime {
  int year;
  int month;
  int day;
  int seconds;  // within the day
};

DateTime parse_date_time(std::string_view label) {
  if (label.size() != 10 && label.size() != 19) {
    throw ParseError("time label must be YYYY-MM-DD or YYYY-MM-DDTHH:MM:SS", std::string(label));
  }
  month_index(label.substr(0, 7));
  DateTime dt{field(label, 0, 4), field(label, 5, 2), 0, 0};
  expect(label, 7, '-');
  dt.day = field(label, 8, 2);
  if (dt.day < 1 || dt.day > days_in_month(dt.year, dt.month)) {
    throw ParseError("day out of range", std::string(label));
  }
  if (label.size() == 19) {
    expect(label, 10, 'T');
    const int hh = field(label, 11, 2);
    expect(label, 13, ':');
    const int mm = field(label, 14, 2);
    expect(label, 16, ':');
    const int ss = field(label, 17, 2);
    if (hh > 23 || mm > 59 || ss > 59) throw ParseError("time out of range", std::string(label));
    dt.seconds = hh * 3600 + mm * 60 + ss;
  }
  return dt;
}

}  // namespace

int month_index(std::string_view label) {
  if (label.size() != 7) throw ParseError("month label must be YYYY-MM", std::string(label));
  const int y = field(label, 0, 4);
  expect(label, 4, '-');
  const int m = field(label, 5, 2);
  if (m < 1 || m > 12) throw ParseError("month out of range", std::string(label));
  return (y - 1970) * 12 + (m - 1);
}

double month_coordinate(std::string_view label) {
  if (label.size() == 7) return month_index(label) + 0.5;
  const auto dt = parse_date_time(label);
  const double month_seconds = days_in_month(dt.year, dt.month) * 86400.0;
  return month_index(label.substr(0, 7)) + ((dt.day - 1) * 86400.0 + dt.seconds) / month_seconds;
}

std::int64_t epoch_microseconds(std::string_view label) {
  const auto dt = parse_date_time(label);
  const std::int64_t days = days_from_civil(dt.year, dt.month, dt.day);
  return (days * 86400 + dt.seconds) * 1'000'000;
}

std::string utc_label(std::int64_t microseconds) {
  std::int64_t secs = microseconds / 1'000'000;
  if (microseconds % 1'000'000 < 0) --secs;
  std::int64_t days = secs / 86400;
  std::int64_t rem = secs % 86400;
  if (rem < 0) {
    rem += 86400;
    --days;
  }
  const auto c = civil_from_days(days);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02d:%02d", c.y, c.m, c.d,
                static_cast<int>(rem / 3600), static_cast<int>(rem / 60 % 60), static_cast<int>(rem % 60));
  return buf;
}

std::string month_label(int year, int month, int offset) {
  const int idx = (year * 12 + (month - 1)) + offset;
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02d", idx / 12, idx % 12 + 1);
  return buf;
}

}  // namespace obscorr
