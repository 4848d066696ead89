#ifndef AGGTS_SPLINES_HPP
#define AGGTS_SPLINES_HPP

#include "aggts/daily_series.hpp"

#include <Eigen/Core>
#include <span>
#include <vector>

namespace aggts {

/// Knot layout and degree of a (possibly natural) spline basis.
struct SplineSpec {
    std::vector<double> interior_knots; // strictly increasing, inside boundaries
    double boundary_low = 0.0;
    double boundary_high = 1.0;
    int degree = 3;
    bool natural = false; // natural implies degree 3

    void validate() const; // throws ConfigError

    /// interior + degree + 1 columns, or interior + 1 when natural.
    int n_columns() const;
};

/// A realized spline basis: full knot vector plus, for natural splines, the
/// constraint projection. Evaluation is row-wise and thread-safe.
class SplineBasis {
public:
    explicit SplineBasis(SplineSpec spec);

    const SplineSpec& spec() const { return spec_; }
    int cols() const;

    /// Basis row at x. Non-natural bases reject x outside the boundary
    /// knots; natural bases extrapolate linearly.
    Eigen::RowVectorXd row(double x) const;

    /// d-th derivative row at x (natural: constant slope outside bounds).
    Eigen::RowVectorXd derivative_row(double x, int order) const;

    Eigen::MatrixXd evaluate(std::span<const double> x) const;

private:
    SplineSpec spec_;
    std::vector<double> knots_;   // boundary knots repeated degree+1 times
    Eigen::MatrixXd natural_map_; // (raw_cols-1) x (interior+1), natural only

    Eigen::RowVectorXd raw_row(double x, int deriv) const;
};

/// B-spline (or reduced natural) basis evaluated at the given points.
Eigen::MatrixXd bspline_basis(std::span<const double> x, const SplineSpec& spec);

/// Natural cubic basis in the day index 0..n_days-1 with
/// round(df_per_year * n_days/365.25) columns (minimum 2); interior knots at
/// equally spaced quantiles of the day index.
Eigen::MatrixXd natural_time_basis(int n_days, double df_per_year);

/// The SplineSpec underlying natural_time_basis (exposed for trend
/// evaluation at arbitrary days).
SplineSpec natural_time_spec(int n_days, double df_per_year);

/// Empirical quantile with linear interpolation between order statistics at
/// position (n-1)*p + 1 (1-based). `sorted` must be ascending and non-empty.
double quantile_sorted(std::span<const double> sorted, double p);

/// Empirical quantiles of the non-missing exposure values at the given
/// percentiles (each in (0,100), strictly increasing).
std::vector<double> default_knots(const DailySeries& exposure,
                                  std::span<const double> percentiles);

/// Interior knots equally spaced on a log scale over [1, L]:
/// knot_j = exp(j * log(L) / (n_knots+1)), j = 1..n_knots.
std::vector<double> lag_knots_log(int max_lag, int n_knots);

} // namespace aggts

#endif
