#include "aggts/date.hpp"
#include "aggts/errors.hpp"

#include <charconv>
#include <cstdio>

namespace aggts {

std::int64_t days_from_civil(int y, unsigned m, unsigned d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, int& y, unsigned& m, unsigned& d) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t yr = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    d = doy - (153 * mp + 2) / 5 + 1;
    m = mp + (mp < 10 ? 3 : -9);
    y = static_cast<int>(yr + (m <= 2));
}

Date make_date(int year, unsigned month, unsigned day) {
    return Date{days_from_civil(year, month, day)};
}

namespace {

bool parse_uint(std::string_view s, unsigned& out) {
    if (s.empty()) return false;
    unsigned v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size()) return false;
    out = v;
    return true;
}

} // namespace

Date parse_date(std::string_view iso) {
    if (iso.size() != 10 || iso[4] != '-' || iso[7] != '-')
        throw DataError("unparseable date '" + std::string(iso) + "' (expected YYYY-MM-DD)");
    unsigned y = 0, m = 0, d = 0;
    if (!parse_uint(iso.substr(0, 4), y) || !parse_uint(iso.substr(5, 2), m) ||
        !parse_uint(iso.substr(8, 2), d))
        throw DataError("unparseable date '" + std::string(iso) + "'");
    if (m < 1 || m > 12 || d < 1 || d > 31)
        throw DataError("invalid calendar date '" + std::string(iso) + "'");
    Date date = make_date(static_cast<int>(y), m, d);
    // round-trip check rejects impossible days such as Feb 30
    int yy;
    unsigned mm, dd;
    civil_from_days(date.serial, yy, mm, dd);
    if (yy != static_cast<int>(y) || mm != m || dd != d)
        throw DataError("invalid calendar date '" + std::string(iso) + "'");
    return date;
}

std::string format_date(Date d) {
    int y;
    unsigned m, dd;
    civil_from_days(d.serial, y, m, dd);
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", y, m, dd);
    return buf;
}

int weekday_monday0(Date d) {
    // serial 0 = 1970-01-01, a Thursday
    std::int64_t w = (d.serial + 3) % 7;
    if (w < 0) w += 7;
    return static_cast<int>(w);
}

} // namespace aggts
