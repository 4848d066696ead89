#ifndef AGGTS_CALENDAR_HPP
#define AGGTS_CALENDAR_HPP

#include "aggts/daily_series.hpp"

#include <Eigen/Core>
#include <array>
#include <string>

namespace aggts {

/// Treatment-coded day-of-week indicators, reference level Monday.
/// Column j is 1 on rows whose weekday is the (j+1)-th weekday after
/// Monday (Tuesday ... Sunday), so each row sums to 0 (Monday) or 1.
Eigen::MatrixXd day_of_week_indicators(const DailySeries& series);

/// Column labels matching day_of_week_indicators.
const std::array<std::string, 6>& day_of_week_labels();

} // namespace aggts

#endif
