#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace trust {

// Proleptic Gregorian calendar date, serialized as YYYY-MM-DD.
struct Date {
  int year = 1970;
  int month = 1;
  int day = 1;

  auto operator<=>(const Date&) const = default;

  static std::optional<Date> parse(std::string_view text);
  std::string to_string() const;

  // Days since 1970-01-01.
  long days_since_epoch() const;
  static Date from_days_since_epoch(long days);

  static Date today_utc();
};

// Number of completed anniversaries from `from` to `to`; 0 if `to` precedes `from`.
int whole_years_between(const Date& from, const Date& to);

bool is_valid_date(int year, int month, int day);

}  // namespace trust
