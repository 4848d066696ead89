#ifndef AGGTS_DETREND_HPP
#define AGGTS_DETREND_HPP

#include "aggts/daily_series.hpp"

#include <vector>

namespace aggts {

/// Least-squares trend (intercept + natural cubic spline in the day index
/// with round(df_per_year * n/365.25) degrees of freedom, clamped to >= 2),
/// fitted on the rows where fit_mask is nonzero and the series is observed,
/// and evaluated at every day. A constant series yields a constant trend.
std::vector<double> fit_time_trend(const DailySeries& series, double df_per_year,
                                   const std::vector<char>& fit_mask);

/// fit_time_trend over all observed rows.
std::vector<double> fit_time_trend(const DailySeries& series, double df_per_year);

/// Residuals of the series after removing the fitted trend. Missing entries
/// stay missing; residuals over observed rows have mean zero.
DailySeries detrend(const DailySeries& series, double df_per_year);

} // namespace aggts

#endif
