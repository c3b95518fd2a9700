#include <doctest.h>

#include <random>

#include "trust/date.hpp"

using trust::Date;

TEST_CASE("dates parse only as YYYY-MM-DD calendar dates") {
  CHECK(Date::parse("2024-02-29").has_value());
  CHECK(Date::parse("2000-02-29").has_value());
  CHECK_FALSE(Date::parse("2023-02-29").has_value());
  CHECK_FALSE(Date::parse("1900-02-29").has_value());
  CHECK_FALSE(Date::parse("2020-13-40").has_value());
  CHECK_FALSE(Date::parse("2020-04-31").has_value());
  CHECK_FALSE(Date::parse("2020-1-01").has_value());
  CHECK_FALSE(Date::parse("2020-01-01Z").has_value());
  CHECK_FALSE(Date::parse(" 2020-01-01").has_value());
  CHECK_FALSE(Date::parse("").has_value());
  CHECK_FALSE(Date::parse("abcd-ef-gh").has_value());

  auto d = Date::parse("2021-03-15");
  REQUIRE(d);
  CHECK(d->year == 2021);
  CHECK(d->month == 3);
  CHECK(d->day == 15);
  CHECK(d->to_string() == "2021-03-15");
}

TEST_CASE("epoch day conversion round-trips") {
  CHECK(Date{1970, 1, 1}.days_since_epoch() == 0);
  CHECK(Date{2000, 3, 1}.days_since_epoch() == 11017);
  CHECK(Date::from_days_since_epoch(-1) == Date{1969, 12, 31});

  std::mt19937_64 rng(5);
  for (int i = 0; i < 2000; ++i) {
    const long days = static_cast<long>(rng() % 200000) - 100000;
    const Date d = Date::from_days_since_epoch(days);
    CHECK(trust::is_valid_date(d.year, d.month, d.day));
    CHECK(d.days_since_epoch() == days);
    CHECK(Date::parse(d.to_string()).value_or(Date{}) == d);
  }
}

TEST_CASE("whole years count completed anniversaries") {
  CHECK(trust::whole_years_between({2020, 5, 10}, {2023, 5, 9}) == 2);
  CHECK(trust::whole_years_between({2020, 5, 10}, {2023, 5, 10}) == 3);
  CHECK(trust::whole_years_between({2020, 2, 29}, {2021, 2, 28}) == 0);
  CHECK(trust::whole_years_between({2020, 2, 29}, {2021, 3, 1}) == 1);
  CHECK(trust::whole_years_between({2024, 1, 1}, {2023, 1, 1}) == 0);
  CHECK(trust::whole_years_between({2024, 1, 1}, {2024, 1, 1}) == 0);
}
