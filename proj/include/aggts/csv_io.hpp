#ifndef AGGTS_CSV_IO_HPP
#define AGGTS_CSV_IO_HPP

#include "aggts/daily_series.hpp"

#include <string>

namespace aggts {

/// Reads a daily series from a CSV file with a header row.
///
/// Dates must be ISO-8601 (YYYY-MM-DD); rows are sorted by date and days
/// absent from the file become missing entries. Duplicate dates are an
/// error. Empty value fields and the literals NA/NaN/nan mark a present
/// date with a missing value.
DailySeries load_series(const std::string& path,
                        const std::string& date_column = "date",
                        const std::string& value_column = "value");

/// Writes the non-missing entries of a series as CSV (date, value columns).
/// Values use shortest round-trip formatting, so a load/write cycle
/// preserves them bit-exactly. The write is atomic (temp file + rename).
void write_series_csv(const std::string& path, const DailySeries& series,
                      const std::string& date_column = "date",
                      const std::string& value_column = "value");

/// Shortest decimal string that parses back to exactly the same double.
std::string format_double(double v);

/// Atomically replaces `path` with `content` (temp file in the same
/// directory, then rename).
void atomic_write_text(const std::string& path, const std::string& content);

} // namespace aggts

#endif
