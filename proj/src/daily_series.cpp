#include "aggts/daily_series.hpp"

#include <algorithm>
#include <cmath>

namespace aggts {

DailySeries::DailySeries(Date start_date, std::vector<double> vals)
    : start(start_date), values(std::move(vals)), missing(values.size(), 0) {
    for (std::size_t i = 0; i < values.size(); ++i)
        if (std::isnan(values[i])) missing[i] = 1;
}

DailySeries::DailySeries(Date start_date, std::vector<double> vals, std::vector<char> miss)
    : start(start_date), values(std::move(vals)), missing(std::move(miss)) {
    if (values.size() != missing.size())
        throw DataError("series values and missing mask differ in length");
}

void DailySeries::set_missing(std::size_t i) {
    values[i] = na;
    missing[i] = 1;
}

std::size_t DailySeries::count_present() const {
    return static_cast<std::size_t>(
        std::count(missing.begin(), missing.end(), static_cast<char>(0)));
}

std::pair<std::size_t, std::size_t> DailySeries::longest_present_run() const {
    std::size_t best_b = 0, best_e = 0, b = 0;
    for (std::size_t i = 0; i <= size(); ++i) {
        if (i == size() || missing[i]) {
            if (i - b > best_e - best_b) {
                best_b = b;
                best_e = i;
            }
            b = i + 1;
        }
    }
    return {best_b, best_e};
}

Dataset align(const DailySeries& response, const DailySeries& exposure, std::string label) {
    const Date lo{std::max(response.start.serial, exposure.start.serial)};
    const Date hi{std::min(response.end_date().serial, exposure.end_date().serial)};
    if (lo > hi) throw DataError("series date ranges do not overlap");

    auto slice = [&](const DailySeries& s) {
        const auto off = static_cast<std::size_t>(lo - s.start);
        const auto len = static_cast<std::size_t>(hi - lo + 1);
        DailySeries out;
        out.start = lo;
        out.values.assign(s.values.begin() + off, s.values.begin() + off + len);
        out.missing.assign(s.missing.begin() + off, s.missing.begin() + off + len);
        return out;
    };
    return Dataset{slice(response), slice(exposure), std::move(label)};
}

} // namespace aggts
