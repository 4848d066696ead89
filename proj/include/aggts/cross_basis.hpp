#ifndef AGGTS_CROSS_BASIS_HPP
#define AGGTS_CROSS_BASIS_HPP

#include "aggts/daily_series.hpp"
#include "aggts/splines.hpp"

#include <Eigen/Core>
#include <span>
#include <string>
#include <vector>

namespace aggts {

/// Spline specifications for the predictor and lag dimensions of a
/// distributed-lag basis expansion.
struct CrossBasisSpec {
    SplineSpec predictor;
    SplineSpec lag; // over [0, max_lag]
    int max_lag = 21;

    void validate() const;
    int predictor_columns() const;
    int lag_columns() const; // 1 when max_lag == 0
    int n_columns() const { return predictor_columns() * lag_columns(); }

    /// Lag basis evaluated at integer lags 0..L ((L+1) x lag_columns).
    Eigen::MatrixXd lag_basis_matrix() const;
};

/// Named regression design with a complete-case row mask.
struct DesignMatrix {
    Eigen::MatrixXd X;
    std::vector<std::string> names;
    std::vector<char> row_valid; // nonzero = usable row

    Eigen::Index rows() const { return X.rows(); }
    Eigen::Index cols() const { return X.cols(); }
    std::size_t n_valid() const;
    int column_index(const std::string& name) const; // -1 if absent
};

/// Cross-basis design: column (j,k) at row t is
/// sum_{l=0}^{L} B_j(x_{t-l}) * C_k(l). Rows with t < L or touching a
/// missing exposure value are flagged invalid. Columns are named
/// cb_v{j}_l{k} (1-based). Parallelized over rows.
DesignMatrix cross_basis(const DailySeries& exposure, const CrossBasisSpec& spec);

/// Relative-risk surface over (temperature, lag).
struct SurfaceGrid {
    std::vector<double> temp_grid;
    std::vector<int> lag_grid; // 0..L
    Eigen::MatrixXd rr;        // |temp_grid| x |lag_grid|, all > 0
    double reference_temp = 0.0;
};

/// rr[v,l] = exp( sum_{j,k} beta_{jk} (B_j(temp_v) - B_j(ref)) C_k(l) ).
/// beta must have one entry per cross-basis column, in cross_basis column
/// order. The row at the reference temperature is identically 1.
SurfaceGrid rr_surface(const Eigen::VectorXd& beta, const CrossBasisSpec& spec,
                       std::span<const double> temp_grid, double reference_temp);

} // namespace aggts

#endif
