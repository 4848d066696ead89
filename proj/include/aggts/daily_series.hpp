#ifndef AGGTS_DAILY_SERIES_HPP
#define AGGTS_DAILY_SERIES_HPP

#include "aggts/date.hpp"
#include "aggts/errors.hpp"

#include <cstddef>
#include <limits>
#include <string>
#include <vector>

namespace aggts {

/// Contiguous daily-indexed real-valued sequence with a missing-value mask.
/// Index t corresponds to exactly start + t days: no gaps, no duplicates.
/// Missing positions carry NaN in values and true in missing.
struct DailySeries {
    Date start;
    std::vector<double> values;
    std::vector<char> missing; // same length as values; nonzero = missing

    DailySeries() = default;
    DailySeries(Date start_date, std::vector<double> vals);
    DailySeries(Date start_date, std::vector<double> vals, std::vector<char> miss);

    std::size_t size() const { return values.size(); }
    bool is_missing(std::size_t i) const { return missing[i] != 0; }
    Date date_at(std::size_t i) const { return start + static_cast<std::int64_t>(i); }
    Date end_date() const { return start + static_cast<std::int64_t>(size()) - 1; }

    void set_missing(std::size_t i);
    std::size_t count_present() const;

    /// Longest run [first, last) of consecutive non-missing entries.
    std::pair<std::size_t, std::size_t> longest_present_run() const;

    static constexpr double na = std::numeric_limits<double>::quiet_NaN();
};

/// Aligned response/exposure pair covering the same date range.
struct Dataset {
    DailySeries response;
    DailySeries exposure;
    std::string label;
};

/// Truncates both series to the intersection of their date ranges.
/// Throws DataError if the ranges are disjoint.
Dataset align(const DailySeries& response, const DailySeries& exposure,
              std::string label = "");

} // namespace aggts

#endif
