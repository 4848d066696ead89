#include "aggts/reference.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>

namespace aggts::reference {

DailySeries aggregate(const DailySeries& series, const WeightVector& weights) {
    const auto n = static_cast<std::ptrdiff_t>(series.size());
    DailySeries out;
    out.start = series.start;
    out.values.assign(series.size(), DailySeries::na);
    out.missing.assign(series.size(), 1);
    for (std::ptrdiff_t t = 0; t < n; ++t) {
        double acc = 0.0;
        bool ok = true;
        for (std::size_t j = 0; j < weights.size(); ++j) {
            const std::ptrdiff_t idx = t + weights.offsets[j];
            if (idx < 0 || idx >= n || series.missing[static_cast<std::size_t>(idx)]) {
                ok = false;
                break;
            }
            acc += weights.weights[j] * series.values[static_cast<std::size_t>(idx)];
        }
        if (ok) {
            out.values[static_cast<std::size_t>(t)] = acc;
            out.missing[static_cast<std::size_t>(t)] = 0;
        }
    }
    return out;
}

DesignMatrix cross_basis(const DailySeries& exposure, const CrossBasisSpec& spec) {
    const SplineBasis pred(spec.predictor);
    const Eigen::MatrixXd lag_mat = spec.lag_basis_matrix();
    const auto n = static_cast<int>(exposure.size());
    const int jc = pred.cols();
    const int kc = static_cast<int>(lag_mat.cols());
    const int big_l = spec.max_lag;

    DesignMatrix out;
    out.X = Eigen::MatrixXd::Zero(n, static_cast<Eigen::Index>(jc) * kc);
    out.row_valid.assign(static_cast<std::size_t>(n), 0);
    for (int j = 0; j < jc; ++j)
        for (int k = 0; k < kc; ++k)
            out.names.push_back("cb_v" + std::to_string(j + 1) + "_l" +
                                std::to_string(k + 1));

    for (int t = 0; t < n; ++t) {
        if (t < big_l) continue;
        bool ok = true;
        for (int l = 0; l <= big_l && ok; ++l)
            if (exposure.is_missing(static_cast<std::size_t>(t - l))) ok = false;
        if (!ok) continue;
        for (int j = 0; j < jc; ++j) {
            for (int k = 0; k < kc; ++k) {
                double acc = 0.0;
                for (int l = 0; l <= big_l; ++l) {
                    const Eigen::RowVectorXd row =
                        pred.row(exposure.values[static_cast<std::size_t>(t - l)]);
                    acc += row(j) * lag_mat(l, k);
                }
                out.X(t, static_cast<Eigen::Index>(j) * kc + k) = acc;
            }
        }
        out.row_valid[static_cast<std::size_t>(t)] = 1;
    }
    return out;
}

double bspline_naive(std::span<const double> knots, int i, int degree, double x) {
    if (degree == 0) {
        const bool inside = knots[static_cast<std::size_t>(i)] <= x &&
                            x < knots[static_cast<std::size_t>(i + 1)];
        const double top = knots[knots.size() - 1];
        const bool at_top = x == top && knots[static_cast<std::size_t>(i)] < top &&
                            knots[static_cast<std::size_t>(i + 1)] == top;
        return (inside || at_top) ? 1.0 : 0.0;
    }
    double acc = 0.0;
    const double den1 =
        knots[static_cast<std::size_t>(i + degree)] - knots[static_cast<std::size_t>(i)];
    if (den1 > 0.0)
        acc += (x - knots[static_cast<std::size_t>(i)]) / den1 *
               bspline_naive(knots, i, degree - 1, x);
    const double den2 = knots[static_cast<std::size_t>(i + degree + 1)] -
                        knots[static_cast<std::size_t>(i + 1)];
    if (den2 > 0.0)
        acc += (knots[static_cast<std::size_t>(i + degree + 1)] - x) / den2 *
               bspline_naive(knots, i + 1, degree - 1, x);
    return acc;
}

double arma_loglik_dense(std::span<const double> series, const ArmaParams& params) {
    const auto n = static_cast<Eigen::Index>(series.size());
    const auto gamma = autocovariance(params, static_cast<int>(n) - 1);
    Eigen::MatrixXd cov(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            cov(i, j) = gamma[static_cast<std::size_t>(std::abs(i - j))];

    const Eigen::LLT<Eigen::MatrixXd> llt(cov);
    const Eigen::Map<const Eigen::VectorXd> y(series.data(), n);
    const Eigen::VectorXd alpha = llt.solve(y);
    double log_det = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) log_det += 2.0 * std::log(llt.matrixL()(i, i));
    const double log2pi = std::log(2.0 * std::numbers::pi);
    return -0.5 * (n * log2pi + log_det + y.dot(alpha));
}

Eigen::VectorXd gls_dense(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                          const Eigen::MatrixXd& cov) {
    const Eigen::LLT<Eigen::MatrixXd> llt(cov);
    const Eigen::MatrixXd xt_vi_x = X.transpose() * llt.solve(X);
    const Eigen::VectorXd xt_vi_y = X.transpose() * llt.solve(y);
    return xt_vi_x.ldlt().solve(xt_vi_y);
}

} // namespace aggts::reference
