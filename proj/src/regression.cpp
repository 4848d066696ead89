#include "aggts/regression.hpp"
#include "aggts/errors.hpp"

#include "nelder_mead.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <numbers>

namespace aggts {

namespace {

constexpr int kMaxEvalsPerFit = 500;
constexpr double kLoglikTol = 1e-8;

std::vector<int> joint_valid_rows(const DesignMatrix& x, const DailySeries& y) {
    if (static_cast<std::size_t>(x.rows()) != y.size())
        throw ConfigError("design and response lengths differ");
    std::vector<int> rows;
    rows.reserve(y.size());
    for (Eigen::Index t = 0; t < x.rows(); ++t)
        if (x.row_valid[static_cast<std::size_t>(t)] && !y.is_missing(static_cast<std::size_t>(t)))
            rows.push_back(static_cast<int>(t));
    return rows;
}

void check_full_rank(const Eigen::ColPivHouseholderQR<Eigen::MatrixXd>& qr,
                     const DesignMatrix& x) {
    if (qr.rank() < x.cols()) {
        const auto perm = qr.colsPermutation().indices();
        const auto bad = static_cast<std::size_t>(perm(qr.rank()));
        throw NumericError("design matrix is rank deficient (column '" + x.names[bad] +
                           "')");
    }
}

/// Longest contiguous run [begin, end) of jointly valid rows.
std::pair<int, int> longest_joint_run(const DesignMatrix& x, const DailySeries& y) {
    const auto n = static_cast<int>(y.size());
    int best_b = 0, best_e = 0, b = 0;
    for (int t = 0; t <= n; ++t) {
        const bool ok = t < n && x.row_valid[static_cast<std::size_t>(t)] &&
                        !y.is_missing(static_cast<std::size_t>(t));
        if (!ok) {
            if (t - b > best_e - best_b) {
                best_b = b;
                best_e = t;
            }
            b = t + 1;
        }
    }
    return {best_b, best_e};
}

ArmaParams unpack_corr(const Eigen::VectorXd& x, const ArmaOrder& order) {
    ArmaParams params;
    params.phi.assign(x.data(), x.data() + order.p);
    params.theta.assign(x.data() + order.p, x.data() + order.p + order.q);
    return params;
}

} // namespace

OlsFit ols_fit(const DesignMatrix& x, const DailySeries& y) {
    const auto rows = joint_valid_rows(x, y);
    if (static_cast<Eigen::Index>(rows.size()) < x.cols())
        throw DataError("fewer complete-case rows than design columns");

    Eigen::MatrixXd xs(static_cast<Eigen::Index>(rows.size()), x.cols());
    Eigen::VectorXd ys(static_cast<Eigen::Index>(rows.size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        xs.row(static_cast<Eigen::Index>(i)) = x.X.row(rows[i]);
        ys(static_cast<Eigen::Index>(i)) = y.values[static_cast<std::size_t>(rows[i])];
    }

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(xs);
    check_full_rank(qr, x);
    OlsFit fit;
    fit.beta = qr.solve(ys);
    fit.n_used = static_cast<int>(rows.size());

    fit.residuals.start = y.start;
    fit.residuals.values.assign(y.size(), DailySeries::na);
    fit.residuals.missing.assign(y.size(), 1);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto t = static_cast<std::size_t>(rows[i]);
        const double r = y.values[t] - x.X.row(rows[i]).dot(fit.beta);
        fit.residuals.values[t] = r;
        fit.residuals.missing[t] = 0;
        fit.rss += r * r;
    }
    return fit;
}

GlmFit quasipoisson_fit(const DesignMatrix& x, const DailySeries& y) {
    const auto rows = joint_valid_rows(x, y);
    if (static_cast<Eigen::Index>(rows.size()) < x.cols())
        throw DataError("fewer complete-case rows than design columns");

    const auto n = static_cast<Eigen::Index>(rows.size());
    Eigen::MatrixXd xs(n, x.cols());
    Eigen::VectorXd ys(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        xs.row(i) = x.X.row(rows[static_cast<std::size_t>(i)]);
        const double v = y.values[static_cast<std::size_t>(rows[static_cast<std::size_t>(i)])];
        if (v < 0.0) throw DataError("negative counts in quasi-Poisson response");
        ys(i) = v;
    }

    auto deviance_of = [&](const Eigen::VectorXd& mu) {
        double dev = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) {
            if (ys(i) > 0.0) dev += ys(i) * std::log(ys(i) / mu(i)) - (ys(i) - mu(i));
            else dev += mu(i);
        }
        return 2.0 * dev;
    };

    Eigen::VectorXd mu = ys.array() + 0.1;
    Eigen::VectorXd eta = mu.array().log();
    GlmFit fit;
    double dev = deviance_of(mu);
    bool converged = false;
    int iter = 0;
    for (; iter < 50; ++iter) {
        const Eigen::VectorXd w = mu.array().sqrt(); // sqrt of IRLS weights
        const Eigen::VectorXd z = eta.array() + (ys - mu).array() / mu.array();
        Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(w.asDiagonal() * xs);
        check_full_rank(qr, x);
        fit.beta = qr.solve((w.array() * z.array()).matrix());
        eta = (xs * fit.beta).cwiseMin(30.0).cwiseMax(-30.0);
        mu = eta.array().exp();
        const double new_dev = deviance_of(mu);
        const bool done = std::abs(new_dev - dev) < 1e-8 * (std::abs(new_dev) + 0.1);
        dev = new_dev;
        if (done) {
            converged = true;
            ++iter;
            break;
        }
    }
    fit.deviance = dev;
    fit.converged = converged;
    fit.n_iterations = iter;

    double pearson = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        const double r = ys(i) - mu(i);
        pearson += r * r / mu(i);
    }
    const auto dof = static_cast<double>(n - x.cols());
    fit.dispersion = dof > 0.0 ? pearson / dof : 1.0;

    fit.fitted.start = y.start;
    fit.fitted.values.assign(y.size(), DailySeries::na);
    fit.fitted.missing.assign(y.size(), 1);
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto t = static_cast<std::size_t>(rows[static_cast<std::size_t>(i)]);
        fit.fitted.values[t] = mu(i);
        fit.fitted.missing[t] = 0;
    }
    return fit;
}

GlsProfile gls_profile(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                       const ArmaParams& corr) {
    const auto n = static_cast<int>(y.size());
    const auto k = x.cols();
    if (x.rows() != y.size()) throw ConfigError("design and response lengths differ");

    const ArmaWhitener filt(corr, n);
    Eigen::MatrixXd xw(n, k);
    Eigen::VectorXd yw(n);
    filt.whiten({y.data(), static_cast<std::size_t>(n)},
                {yw.data(), static_cast<std::size_t>(n)});
#pragma omp parallel for schedule(static)
    for (Eigen::Index j = 0; j < k; ++j) {
        const Eigen::VectorXd col = x.col(j);
        Eigen::VectorXd out(n);
        filt.whiten({col.data(), static_cast<std::size_t>(n)},
                    {out.data(), static_cast<std::size_t>(n)});
        xw.col(j) = out;
    }

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(xw);
    GlsProfile prof;
    prof.beta = qr.solve(yw);
    const Eigen::VectorXd resid = yw - xw * prof.beta;
    const double ssq = resid.squaredNorm();
    prof.sigma2 = ssq / n;
    const double log2pi = std::log(2.0 * std::numbers::pi);
    prof.loglik = prof.sigma2 > 0.0
                      ? -0.5 * (n * (log2pi + 1.0 + std::log(prof.sigma2)) + filt.sum_log_f())
                      : std::numeric_limits<double>::infinity();
    const double scale = n > k ? ssq / static_cast<double>(n - k) : prof.sigma2;
    prof.beta_cov = scale * (xw.transpose() * xw).inverse();
    return prof;
}

RegArmaFit fit_reg_arma(const DesignMatrix& x, const DailySeries& y_agg,
                        const ArmaOrder& order) {
    const auto [blk_b, blk_e] = longest_joint_run(x, y_agg);
    const int n_blk = blk_e - blk_b;
    const auto k = x.cols();
    const int min_rows = 10 * (order.p + order.q + 1 + static_cast<int>(k));
    if (n_blk < min_rows)
        throw DataError("longest contiguous complete-case run (" + std::to_string(n_blk) +
                        " rows) too short for the model (needs " + std::to_string(min_rows) +
                        ")");

    const Eigen::MatrixXd xb = x.X.middleRows(blk_b, n_blk);
    Eigen::VectorXd yb(n_blk);
    for (int i = 0; i < n_blk; ++i) yb(i) = y_agg.values[static_cast<std::size_t>(blk_b + i)];

    // rank check once, on the block
    {
        Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(xb);
        check_full_rank(qr, x);
    }

    auto objective = [&](const Eigen::VectorXd& v) {
        const ArmaParams corr = unpack_corr(v, order);
        if (!check_admissible(corr)) return std::numeric_limits<double>::infinity();
        return -gls_profile(xb, yb, corr).loglik;
    };

    detail::NmResult nm;
    if (order.n_coeffs() == 0) {
        nm.x = Eigen::VectorXd::Zero(0);
        nm.fval = objective(nm.x);
        nm.converged = true;
        nm.n_evals = 1;
    } else {
        // start from the ARMA fit of the OLS residuals on the block
        Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(xb);
        const Eigen::VectorXd r0 = yb - xb * qr.solve(yb);
        Eigen::VectorXd start = Eigen::VectorXd::Zero(order.n_coeffs());
        try {
            const ArmaFit resid_fit =
                fit_arma({r0.data(), static_cast<std::size_t>(n_blk)}, order);
            for (int i = 0; i < order.p; ++i) start(i) = resid_fit.params.phi[static_cast<std::size_t>(i)];
            for (int j = 0; j < order.q; ++j)
                start(order.p + j) = resid_fit.params.theta[static_cast<std::size_t>(j)];
        } catch (const std::exception&) {
            // zero start is always admissible
        }
        nm = detail::nelder_mead(objective, start, 0.1, kLoglikTol, kMaxEvalsPerFit);
        const Eigen::VectorXd zero = Eigen::VectorXd::Zero(order.n_coeffs());
        const double f_zero = objective(zero);
        if (f_zero < nm.fval) {
            nm.x = zero;
            nm.fval = f_zero;
        }
    }
    if (!std::isfinite(nm.fval)) throw NumericError("no admissible ARMA parameters found");

    const ArmaParams corr = unpack_corr(nm.x, order);
    const GlsProfile prof = gls_profile(xb, yb, corr);

    RegArmaFit fit;
    fit.beta = prof.beta;
    fit.beta_names = x.names;
    fit.order = order;
    fit.arma = corr;
    fit.arma.sigma2 = prof.sigma2;
    fit.loglik = prof.loglik;
    fit.aic_value = aic(prof.loglik, order.p + order.q + 1 + static_cast<int>(k));
    fit.beta_cov = prof.beta_cov;
    fit.block_begin = blk_b;
    fit.block_end = blk_e;
    fit.converged = nm.converged;

    const auto n = y_agg.size();
    fit.residuals.start = y_agg.start;
    fit.residuals.values.assign(n, DailySeries::na);
    fit.residuals.missing.assign(n, 1);
    int n_valid = 0;
    for (std::size_t t = 0; t < n; ++t) {
        if (!x.row_valid[t] || y_agg.is_missing(t)) continue;
        ++n_valid;
        fit.residuals.values[t] =
            y_agg.values[t] - x.X.row(static_cast<Eigen::Index>(t)).dot(fit.beta);
        fit.residuals.missing[t] = 0;
    }
    fit.dropped_rows = n_valid - n_blk;

    fit.innovations.start = y_agg.start;
    fit.innovations.values.assign(n, DailySeries::na);
    fit.innovations.missing.assign(n, 1);
    {
        const ArmaWhitener filt(corr, n_blk);
        Eigen::VectorXd eps(n_blk), innov(n_blk);
        for (int i = 0; i < n_blk; ++i)
            eps(i) = fit.residuals.values[static_cast<std::size_t>(blk_b + i)];
        filt.innovations({eps.data(), static_cast<std::size_t>(n_blk)},
                         {innov.data(), static_cast<std::size_t>(n_blk)});
        for (int i = 0; i < n_blk; ++i) {
            fit.innovations.values[static_cast<std::size_t>(blk_b + i)] = innov(i);
            fit.innovations.missing[static_cast<std::size_t>(blk_b + i)] = 0;
        }
    }
    return fit;
}

RegArmaFit two_stage_fit(const DesignMatrix& x, const DailySeries& y_agg, int max_p,
                         int max_q, bool use_bic) {
    const OlsFit ols = ols_fit(x, y_agg);
    const auto [run_b, run_e] = ols.residuals.longest_present_run();
    const std::span<const double> resid{ols.residuals.values.data() + run_b,
                                        run_e - run_b};
    const OrderSelection sel = select_order(resid, max_p, max_q, use_bic);
    return fit_reg_arma(x, y_agg, sel.order);
}

DailySeries fitted_values(const RegArmaFit& fit, const DesignMatrix& x, FittedMode mode) {
    if (x.cols() != fit.beta.size())
        throw ConfigError("design columns do not match the fitted coefficients");
    if (static_cast<std::size_t>(x.rows()) != fit.residuals.size())
        throw ConfigError("design rows do not match the fitted series length");

    DailySeries out;
    out.start = fit.residuals.start;
    out.values.assign(fit.residuals.size(), DailySeries::na);
    out.missing.assign(fit.residuals.size(), 1);
    for (Eigen::Index t = 0; t < x.rows(); ++t) {
        if (!x.row_valid[static_cast<std::size_t>(t)]) continue;
        out.values[static_cast<std::size_t>(t)] = x.X.row(t).dot(fit.beta);
        out.missing[static_cast<std::size_t>(t)] = 0;
    }
    if (mode == FittedMode::OneStep) {
        // one-step error prediction = residual minus filtered innovation
        for (int t = fit.block_begin; t < fit.block_end; ++t) {
            const auto i = static_cast<std::size_t>(t);
            if (out.missing[i] || fit.innovations.missing[i]) continue;
            out.values[i] += fit.residuals.values[i] - fit.innovations.values[i];
        }
    }
    return out;
}

} // namespace aggts
