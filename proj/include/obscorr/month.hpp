#pragma once

// Real-valued month coordinates: months elapsed since 1970-01-01T00:00.
//
//   "YYYY-MM"               -> the month's center (start + 0.5)
//   "YYYY-MM-DD"            -> start of that day, as a fraction of its month
//   "YYYY-MM-DDTHH:MM:SS"   -> same, to the second

#include <cstdint>
#include <string>
#include <string_view>

namespace obscorr {

/// Throws ParseError on anything else.
double month_coordinate(std::string_view label);

/// "YYYY-MM" for the month `offset` months after year-month (y, m).
std::string month_label(int year, int month, int offset = 0);

/// Microseconds since the Unix epoch for "YYYY-MM-DD[THH:MM:SS]" (UTC).
std::int64_t epoch_microseconds(std::string_view label);

/// Inverse of epoch_microseconds to the second: "YYYY-MM-DDTHH:MM:SS".
std::string utc_label(std::int64_t microseconds);

/// Parses "YYYY-MM" strictly; returns months since 1970-01.
int month_index(std::string_view label);

}  // namespace obscorr
