#include "aggts/cross_basis.hpp"
#include "aggts/errors.hpp"

#include <cmath>

namespace aggts {

void CrossBasisSpec::validate() const {
    predictor.validate();
    if (max_lag < 0) throw ConfigError("max lag must be >= 0");
    if (max_lag > 0) {
        lag.validate();
        if (lag.boundary_low != 0.0 || lag.boundary_high != static_cast<double>(max_lag))
            throw ConfigError("lag basis boundary knots must be exactly 0 and max_lag");
    }
}

int CrossBasisSpec::predictor_columns() const { return predictor.n_columns(); }

int CrossBasisSpec::lag_columns() const {
    return max_lag == 0 ? 1 : lag.n_columns();
}

Eigen::MatrixXd CrossBasisSpec::lag_basis_matrix() const {
    if (max_lag == 0) return Eigen::MatrixXd::Ones(1, 1);
    std::vector<double> lags(static_cast<std::size_t>(max_lag) + 1);
    for (int l = 0; l <= max_lag; ++l) lags[static_cast<std::size_t>(l)] = l;
    return bspline_basis(lags, lag);
}

std::size_t DesignMatrix::n_valid() const {
    std::size_t n = 0;
    for (char v : row_valid) n += v != 0;
    return n;
}

int DesignMatrix::column_index(const std::string& name) const {
    for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == name) return static_cast<int>(i);
    return -1;
}

DesignMatrix cross_basis(const DailySeries& exposure, const CrossBasisSpec& spec) {
    spec.validate();
    const auto n = static_cast<Eigen::Index>(exposure.size());
    const int big_l = spec.max_lag;
    if (n <= big_l) throw DataError("exposure series shorter than the maximum lag");

    const SplineBasis pred_basis(spec.predictor);
    const int jc = pred_basis.cols();
    const Eigen::MatrixXd lag_mat = spec.lag_basis_matrix(); // (L+1) x kc
    const int kc = static_cast<int>(lag_mat.cols());

    // predictor basis over the whole series; rows at missing x are unused
    Eigen::MatrixXd bmat = Eigen::MatrixXd::Zero(n, jc);
#pragma omp parallel for schedule(static)
    for (Eigen::Index t = 0; t < n; ++t) {
        if (!exposure.missing[static_cast<std::size_t>(t)])
            bmat.row(t) = pred_basis.row(exposure.values[static_cast<std::size_t>(t)]);
    }

    DesignMatrix out;
    out.X = Eigen::MatrixXd::Zero(n, static_cast<Eigen::Index>(jc) * kc);
    out.row_valid.assign(static_cast<std::size_t>(n), 0);
    out.names.reserve(static_cast<std::size_t>(jc) * static_cast<std::size_t>(kc));
    for (int j = 0; j < jc; ++j)
        for (int k = 0; k < kc; ++k)
            out.names.push_back("cb_v" + std::to_string(j + 1) + "_l" +
                                std::to_string(k + 1));

#pragma omp parallel for schedule(static)
    for (Eigen::Index t = big_l; t < n; ++t) {
        bool ok = true;
        for (int l = 0; l <= big_l; ++l) {
            if (exposure.missing[static_cast<std::size_t>(t - l)]) {
                ok = false;
                break;
            }
        }
        if (!ok) continue;
        for (int j = 0; j < jc; ++j) {
            for (int k = 0; k < kc; ++k) {
                double acc = 0.0;
                for (int l = 0; l <= big_l; ++l) acc += bmat(t - l, j) * lag_mat(l, k);
                out.X(t, static_cast<Eigen::Index>(j) * kc + k) = acc;
            }
        }
        out.row_valid[static_cast<std::size_t>(t)] = 1;
    }
    return out;
}

SurfaceGrid rr_surface(const Eigen::VectorXd& beta, const CrossBasisSpec& spec,
                       std::span<const double> temp_grid, double reference_temp) {
    spec.validate();
    if (beta.size() != spec.n_columns())
        throw ConfigError("coefficient vector does not match the cross-basis columns");
    if (reference_temp < spec.predictor.boundary_low ||
        reference_temp > spec.predictor.boundary_high)
        throw ConfigError("reference temperature outside the predictor boundaries");

    const SplineBasis pred_basis(spec.predictor);
    const Eigen::MatrixXd lag_mat = spec.lag_basis_matrix();
    const int jc = pred_basis.cols();
    const int kc = static_cast<int>(lag_mat.cols());
    const Eigen::RowVectorXd ref_row = pred_basis.row(reference_temp);

    SurfaceGrid grid;
    grid.temp_grid.assign(temp_grid.begin(), temp_grid.end());
    grid.reference_temp = reference_temp;
    for (int l = 0; l <= spec.max_lag; ++l) grid.lag_grid.push_back(l);
    grid.rr.resize(static_cast<Eigen::Index>(grid.temp_grid.size()),
                   static_cast<Eigen::Index>(grid.lag_grid.size()));

    for (std::size_t v = 0; v < grid.temp_grid.size(); ++v) {
        const Eigen::RowVectorXd diff = pred_basis.row(grid.temp_grid[v]) - ref_row;
        for (std::size_t li = 0; li < grid.lag_grid.size(); ++li) {
            const int l = grid.lag_grid[li];
            double exponent = 0.0;
            for (int j = 0; j < jc; ++j)
                for (int k = 0; k < kc; ++k)
                    exponent += beta(static_cast<Eigen::Index>(j) * kc + k) * diff(j) *
                                lag_mat(l, k);
            grid.rr(static_cast<Eigen::Index>(v), static_cast<Eigen::Index>(li)) =
                std::exp(exponent);
        }
    }
    return grid;
}

} // namespace aggts
