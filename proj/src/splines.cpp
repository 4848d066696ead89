#include "aggts/splines.hpp"
#include "aggts/errors.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

namespace aggts {

namespace {

/// All B-spline basis functions of the given degree on `knots`, evaluated
/// bottom-up (iterative Cox-de Boor with the 0/0 := 0 convention). Returns
/// knots.size() - degree - 1 values.
Eigen::RowVectorXd all_basis_values(const std::vector<double>& knots, int degree,
                                    double x) {
    const auto nk = static_cast<int>(knots.size());
    const double top = knots.back();
    std::vector<double> n0(static_cast<std::size_t>(nk - 1), 0.0);
    for (int i = 0; i < nk - 1; ++i) {
        const bool inside = knots[i] <= x && x < knots[i + 1];
        const bool at_top = x == top && knots[i] < knots[i + 1] && knots[i + 1] == top;
        n0[static_cast<std::size_t>(i)] = (inside || at_top) ? 1.0 : 0.0;
    }
    std::vector<double> cur = std::move(n0);
    for (int k = 1; k <= degree; ++k) {
        std::vector<double> next(static_cast<std::size_t>(nk - k - 1), 0.0);
        for (int i = 0; i < nk - k - 1; ++i) {
            double acc = 0.0;
            const double den1 = knots[i + k] - knots[i];
            if (den1 > 0.0) acc += (x - knots[i]) / den1 * cur[static_cast<std::size_t>(i)];
            const double den2 = knots[i + k + 1] - knots[i + 1];
            if (den2 > 0.0)
                acc += (knots[i + k + 1] - x) / den2 * cur[static_cast<std::size_t>(i + 1)];
            next[static_cast<std::size_t>(i)] = acc;
        }
        cur = std::move(next);
    }
    return Eigen::Map<Eigen::RowVectorXd>(cur.data(), static_cast<Eigen::Index>(cur.size()));
}

/// r-th derivative of every basis function of the given degree.
Eigen::RowVectorXd all_basis_derivs(const std::vector<double>& knots, int degree,
                                    int r, double x) {
    if (r == 0) return all_basis_values(knots, degree, x);
    if (degree == 0)
        return Eigen::RowVectorXd::Zero(static_cast<Eigen::Index>(knots.size()) - 1);
    const Eigen::RowVectorXd lower = all_basis_derivs(knots, degree - 1, r - 1, x);
    const auto n = static_cast<int>(knots.size()) - degree - 1;
    Eigen::RowVectorXd out = Eigen::RowVectorXd::Zero(n);
    for (int i = 0; i < n; ++i) {
        double acc = 0.0;
        const double den1 = knots[i + degree] - knots[i];
        if (den1 > 0.0) acc += lower(i) / den1;
        const double den2 = knots[i + degree + 1] - knots[i + 1];
        if (den2 > 0.0) acc -= lower(i + 1) / den2;
        out(i) = degree * acc;
    }
    return out;
}

} // namespace

void SplineSpec::validate() const {
    if (degree < 0) throw ConfigError("spline degree must be >= 0");
    if (natural && degree != 3) throw ConfigError("natural splines must be cubic");
    if (!(boundary_low < boundary_high))
        throw ConfigError("spline boundary knots must satisfy low < high");
    double prev = boundary_low;
    for (double k : interior_knots) {
        if (!(k > prev))
            throw ConfigError("spline interior knots must be strictly increasing and "
                              "strictly inside the boundary knots");
        prev = k;
    }
    if (!interior_knots.empty() && !(interior_knots.back() < boundary_high))
        throw ConfigError("spline interior knots must lie below the upper boundary");
}

int SplineSpec::n_columns() const {
    const int k = static_cast<int>(interior_knots.size());
    return natural ? k + 1 : k + degree + 1;
}

SplineBasis::SplineBasis(SplineSpec spec) : spec_(std::move(spec)) {
    spec_.validate();
    const int d = spec_.degree;
    knots_.reserve(spec_.interior_knots.size() + 2 * static_cast<std::size_t>(d + 1));
    for (int i = 0; i <= d; ++i) knots_.push_back(spec_.boundary_low);
    knots_.insert(knots_.end(), spec_.interior_knots.begin(), spec_.interior_knots.end());
    for (int i = 0; i <= d; ++i) knots_.push_back(spec_.boundary_high);

    if (spec_.natural) {
        // drop the leading column, then project the rest onto the null space
        // of the boundary second-derivative constraints (QR construction)
        const int raw = static_cast<int>(spec_.interior_knots.size()) + d + 1;
        Eigen::MatrixXd constraints(2, raw - 1);
        constraints.row(0) =
            all_basis_derivs(knots_, d, 2, spec_.boundary_low).tail(raw - 1);
        constraints.row(1) =
            all_basis_derivs(knots_, d, 2, spec_.boundary_high).tail(raw - 1);
        Eigen::HouseholderQR<Eigen::MatrixXd> qr(constraints.transpose());
        Eigen::MatrixXd q = qr.householderQ();
        natural_map_ = q.rightCols(raw - 3);
    }
}

int SplineBasis::cols() const { return spec_.n_columns(); }

Eigen::RowVectorXd SplineBasis::raw_row(double x, int deriv) const {
    return all_basis_derivs(knots_, spec_.degree, deriv, x);
}

Eigen::RowVectorXd SplineBasis::row(double x) const {
    if (!spec_.natural) {
        if (x < spec_.boundary_low || x > spec_.boundary_high)
            throw DataError("value outside the spline boundary knots");
        return raw_row(x, 0);
    }
    const int raw = static_cast<int>(spec_.interior_knots.size()) + spec_.degree + 1;
    if (x < spec_.boundary_low || x > spec_.boundary_high) {
        const double b = x < spec_.boundary_low ? spec_.boundary_low : spec_.boundary_high;
        const Eigen::RowVectorXd v = raw_row(b, 0).tail(raw - 1);
        const Eigen::RowVectorXd s = raw_row(b, 1).tail(raw - 1);
        return (v + (x - b) * s) * natural_map_;
    }
    return raw_row(x, 0).tail(raw - 1) * natural_map_;
}

Eigen::RowVectorXd SplineBasis::derivative_row(double x, int order) const {
    if (!spec_.natural) {
        if (x < spec_.boundary_low || x > spec_.boundary_high)
            throw DataError("value outside the spline boundary knots");
        return raw_row(x, order);
    }
    const int raw = static_cast<int>(spec_.interior_knots.size()) + spec_.degree + 1;
    if (x < spec_.boundary_low || x > spec_.boundary_high) {
        if (order >= 2) return Eigen::RowVectorXd::Zero(cols());
        const double b = x < spec_.boundary_low ? spec_.boundary_low : spec_.boundary_high;
        return raw_row(b, order).tail(raw - 1) * natural_map_;
    }
    return raw_row(x, order).tail(raw - 1) * natural_map_;
}

Eigen::MatrixXd SplineBasis::evaluate(std::span<const double> x) const {
    Eigen::MatrixXd out(static_cast<Eigen::Index>(x.size()), cols());
    for (Eigen::Index i = 0; i < out.rows(); ++i)
        out.row(i) = row(x[static_cast<std::size_t>(i)]);
    return out;
}

Eigen::MatrixXd bspline_basis(std::span<const double> x, const SplineSpec& spec) {
    return SplineBasis(spec).evaluate(x);
}

SplineSpec natural_time_spec(int n_days, double df_per_year) {
    if (n_days < 2) throw ConfigError("time spline needs at least 2 days");
    const int df =
        static_cast<int>(std::lround(df_per_year * static_cast<double>(n_days) / 365.25));
    if (df < 2) throw ConfigError("time spline needs at least 2 degrees of freedom");
    const int n_interior = df - 1;
    if (n_interior + 1 >= n_days)
        throw ConfigError("too many time-spline degrees of freedom for the series length");
    SplineSpec spec;
    spec.degree = 3;
    spec.natural = true;
    spec.boundary_low = 0.0;
    spec.boundary_high = static_cast<double>(n_days - 1);
    spec.interior_knots.resize(static_cast<std::size_t>(n_interior));
    for (int j = 1; j <= n_interior; ++j)
        spec.interior_knots[static_cast<std::size_t>(j - 1)] =
            static_cast<double>(n_days - 1) * j / (n_interior + 1);
    return spec;
}

Eigen::MatrixXd natural_time_basis(int n_days, double df_per_year) {
    const SplineSpec spec = natural_time_spec(n_days, df_per_year);
    std::vector<double> days(static_cast<std::size_t>(n_days));
    for (int t = 0; t < n_days; ++t) days[static_cast<std::size_t>(t)] = t;
    return bspline_basis(days, spec);
}

double quantile_sorted(std::span<const double> sorted, double p) {
    if (sorted.empty()) throw DataError("quantile of an empty sample");
    const auto n = sorted.size();
    if (n == 1) return sorted[0];
    const double pos = static_cast<double>(n - 1) * p;
    const auto i = static_cast<std::size_t>(pos);
    if (i + 1 >= n) return sorted[n - 1];
    const double frac = pos - static_cast<double>(i);
    return sorted[i] + frac * (sorted[i + 1] - sorted[i]);
}

std::vector<double> default_knots(const DailySeries& exposure,
                                  std::span<const double> percentiles) {
    std::vector<double> vals;
    vals.reserve(exposure.size());
    for (std::size_t i = 0; i < exposure.size(); ++i)
        if (!exposure.is_missing(i)) vals.push_back(exposure.values[i]);
    if (vals.size() < 2) throw DataError("too few data for percentile knots");
    double prev = 0.0;
    bool first = true;
    for (double p : percentiles) {
        if (p <= 0.0 || p >= 100.0)
            throw ConfigError("percentiles must lie strictly inside (0, 100)");
        if (!first && p <= prev) throw ConfigError("percentiles must be strictly increasing");
        prev = p;
        first = false;
    }
    std::sort(vals.begin(), vals.end());
    std::vector<double> out;
    out.reserve(percentiles.size());
    for (double p : percentiles) out.push_back(quantile_sorted(vals, p / 100.0));
    return out;
}

std::vector<double> lag_knots_log(int max_lag, int n_knots) {
    if (max_lag < 1) throw ConfigError("log-scale lag knots need max lag >= 1");
    if (n_knots < 1) throw ConfigError("need at least one lag knot");
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(n_knots));
    const double log_l = std::log(static_cast<double>(max_lag));
    for (int j = 1; j <= n_knots; ++j) out.push_back(std::exp(j * log_l / (n_knots + 1)));
    return out;
}

} // namespace aggts
