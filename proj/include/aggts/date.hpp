#ifndef AGGTS_DATE_HPP
#define AGGTS_DATE_HPP

#include <cstdint>
#include <compare>
#include <string>
#include <string_view>

namespace aggts {

/// Calendar date stored as a serial day count (days since 1970-01-01,
/// proleptic Gregorian). Plain value type; arithmetic is day arithmetic.
struct Date {
    std::int64_t serial = 0;

    auto operator<=>(const Date&) const = default;

    Date operator+(std::int64_t days) const { return Date{serial + days}; }
    Date operator-(std::int64_t days) const { return Date{serial - days}; }
    std::int64_t operator-(Date other) const { return serial - other.serial; }
};

/// Serial day count for a civil date (Howard Hinnant's days_from_civil).
std::int64_t days_from_civil(int y, unsigned m, unsigned d);

/// Inverse of days_from_civil.
void civil_from_days(std::int64_t z, int& y, unsigned& m, unsigned& d);

Date make_date(int year, unsigned month, unsigned day);

/// Parses strict "YYYY-MM-DD". Throws DataError on malformed input.
Date parse_date(std::string_view iso);

/// Formats as "YYYY-MM-DD".
std::string format_date(Date d);

/// Weekday index with Monday = 0 ... Sunday = 6.
int weekday_monday0(Date d);

} // namespace aggts

#endif
