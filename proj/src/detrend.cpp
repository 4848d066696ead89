#include "aggts/detrend.hpp"
#include "aggts/errors.hpp"
#include "aggts/splines.hpp"

#include <Eigen/Dense>

namespace aggts {

std::vector<double> fit_time_trend(const DailySeries& series, double df_per_year,
                                   const std::vector<char>& fit_mask) {
    const auto n = static_cast<int>(series.size());
    if (fit_mask.size() != series.size())
        throw ConfigError("trend fit mask length does not match the series");

    std::vector<int> rows;
    rows.reserve(series.size());
    for (int t = 0; t < n; ++t)
        if (fit_mask[static_cast<std::size_t>(t)] && !series.is_missing(static_cast<std::size_t>(t)))
            rows.push_back(t);
    if (rows.size() < 2) throw DataError("insufficient data to fit a trend");

    // knots at quantiles of the fitted day indices: every knot interval
    // carries data, so masked fits (cv holes) interpolate across gaps
    // instead of leaving unsupported wiggle room; outside the fitted range
    // the natural basis extends linearly
    const int df =
        static_cast<int>(std::lround(df_per_year * static_cast<double>(n) / 365.25));
    if (df < 2) throw ConfigError("time trend needs at least 2 degrees of freedom");
    SplineSpec spec;
    spec.degree = 3;
    spec.natural = true;
    spec.boundary_low = static_cast<double>(rows.front());
    spec.boundary_high = static_cast<double>(rows.back());
    const int n_interior = df - 1;
    std::vector<double> day_index(rows.begin(), rows.end());
    for (int j = 1; j <= n_interior; ++j) {
        const double q = quantile_sorted(day_index, static_cast<double>(j) / (n_interior + 1));
        if (q > spec.boundary_low && q < spec.boundary_high &&
            (spec.interior_knots.empty() || q > spec.interior_knots.back()))
            spec.interior_knots.push_back(q);
    }
    const SplineBasis basis(spec);
    const auto k = static_cast<Eigen::Index>(basis.cols()) + 1;

    Eigen::MatrixXd x(static_cast<Eigen::Index>(rows.size()), k);
    Eigen::VectorXd y(static_cast<Eigen::Index>(rows.size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        x(static_cast<Eigen::Index>(i), 0) = 1.0;
        x.row(static_cast<Eigen::Index>(i)).tail(k - 1) = basis.row(rows[i]);
        y(static_cast<Eigen::Index>(i)) = series.values[static_cast<std::size_t>(rows[i])];
    }

    // minimum-norm least squares also copes with degenerate (constant) input
    const Eigen::VectorXd coef =
        x.bdcSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(y);

    std::vector<double> trend(series.size());
    for (int t = 0; t < n; ++t)
        trend[static_cast<std::size_t>(t)] =
            coef(0) + basis.row(t).dot(coef.tail(k - 1));
    return trend;
}

std::vector<double> fit_time_trend(const DailySeries& series, double df_per_year) {
    return fit_time_trend(series, df_per_year, std::vector<char>(series.size(), 1));
}

DailySeries detrend(const DailySeries& series, double df_per_year) {
    const auto trend = fit_time_trend(series, df_per_year);
    DailySeries out = series;
    for (std::size_t t = 0; t < out.size(); ++t)
        if (!out.is_missing(t)) out.values[t] -= trend[t];
    return out;
}

} // namespace aggts
