#include "aggts/arma.hpp"
#include "aggts/errors.hpp"
#include "aggts/rng.hpp"

#include "nelder_mead.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>

namespace aggts {

namespace {

constexpr double kRootMargin = 1e-8;
constexpr int kMaxEvalsPerFit = 500;
constexpr double kLoglikTol = 1e-8;

/// Roots of 1 - sum c_k z^k (sign = -1) or 1 + sum c_k z^k (sign = +1) all
/// strictly outside the unit circle, checked via the reciprocal-root
/// companion matrix.
bool roots_outside_unit_circle(const std::vector<double>& coeffs, double sign) {
    const auto p = static_cast<int>(coeffs.size());
    if (p == 0) return true;
    for (double c : coeffs)
        if (!std::isfinite(c)) return false;
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(p, p);
    for (int i = 0; i < p; ++i) companion(0, i) = sign * coeffs[static_cast<std::size_t>(i)];
    for (int i = 1; i < p; ++i) companion(i, i - 1) = 1.0;
    const Eigen::VectorXcd eig = companion.eigenvalues();
    const double bound = 1.0 / (1.0 + kRootMargin);
    for (Eigen::Index i = 0; i < eig.size(); ++i)
        if (std::abs(eig(i)) >= bound) return false;
    return true;
}

std::vector<double> psi_weights(const ArmaParams& params, int up_to) {
    const auto [p, q] = params.order();
    std::vector<double> psi(static_cast<std::size_t>(up_to) + 1, 0.0);
    psi[0] = 1.0;
    for (int j = 1; j <= up_to; ++j) {
        double v = j <= q ? params.theta[static_cast<std::size_t>(j - 1)] : 0.0;
        for (int i = 1; i <= std::min(j, p); ++i)
            v += params.phi[static_cast<std::size_t>(i - 1)] * psi[static_cast<std::size_t>(j - i)];
        psi[static_cast<std::size_t>(j)] = v;
    }
    return psi;
}

/// Sample autocovariances of a zero-mean series, divisor n.
std::vector<double> sample_autocov(std::span<const double> y, int max_lag) {
    const auto n = static_cast<int>(y.size());
    std::vector<double> c(static_cast<std::size_t>(max_lag) + 1, 0.0);
    for (int k = 0; k <= max_lag; ++k) {
        double acc = 0.0;
        for (int t = k; t < n; ++t) acc += y[static_cast<std::size_t>(t)] * y[static_cast<std::size_t>(t - k)];
        c[static_cast<std::size_t>(k)] = acc / n;
    }
    return c;
}

/// Yule-Walker AR coefficients from sample autocovariances.
std::vector<double> yule_walker(const std::vector<double>& c, int p) {
    if (p == 0) return {};
    Eigen::MatrixXd a(p, p);
    Eigen::VectorXd b(p);
    for (int i = 0; i < p; ++i) {
        b(i) = c[static_cast<std::size_t>(i + 1)];
        for (int j = 0; j < p; ++j) a(i, j) = c[static_cast<std::size_t>(std::abs(i - j))];
    }
    const Eigen::VectorXd phi = a.fullPivLu().solve(b);
    std::vector<double> out(static_cast<std::size_t>(p));
    for (int i = 0; i < p; ++i) out[static_cast<std::size_t>(i)] = phi(i);
    return out;
}

/// Hannan-Rissanen starting values: long-AR residuals, then least squares
/// of y_t on its own lags and lagged residuals. Shrinks toward zero until
/// admissible.
ArmaParams starting_values(std::span<const double> y, const ArmaOrder& order) {
    const auto n = static_cast<int>(y.size());
    const int p = order.p, q = order.q;
    ArmaParams start;
    start.phi.assign(static_cast<std::size_t>(p), 0.0);
    start.theta.assign(static_cast<std::size_t>(q), 0.0);

    const auto cov = sample_autocov(y, std::max({p, q, 1}) + 24);
    if (cov[0] <= 0.0) return start;

    if (q == 0) {
        start.phi = yule_walker(cov, p);
    } else {
        const int long_p = std::min(n / 4, std::max(20, 2 * (p + q)));
        const auto ar_long = yule_walker(cov, long_p);
        std::vector<double> resid(static_cast<std::size_t>(n), 0.0);
        for (int t = long_p; t < n; ++t) {
            double pred = 0.0;
            for (int i = 0; i < long_p; ++i)
                pred += ar_long[static_cast<std::size_t>(i)] * y[static_cast<std::size_t>(t - 1 - i)];
            resid[static_cast<std::size_t>(t)] = y[static_cast<std::size_t>(t)] - pred;
        }
        const int t0 = long_p + std::max(p, q);
        const int rows = n - t0;
        if (rows > p + q + 2) {
            Eigen::MatrixXd x(rows, p + q);
            Eigen::VectorXd z(rows);
            for (int t = t0; t < n; ++t) {
                const int r = t - t0;
                z(r) = y[static_cast<std::size_t>(t)];
                for (int i = 0; i < p; ++i) x(r, i) = y[static_cast<std::size_t>(t - 1 - i)];
                for (int j = 0; j < q; ++j)
                    x(r, p + j) = resid[static_cast<std::size_t>(t - 1 - j)];
            }
            const Eigen::VectorXd coef = x.colPivHouseholderQr().solve(z);
            for (int i = 0; i < p; ++i) start.phi[static_cast<std::size_t>(i)] = coef(i);
            for (int j = 0; j < q; ++j) start.theta[static_cast<std::size_t>(j)] = coef(p + j);
        }
    }

    for (int tries = 0; tries < 64 && !check_admissible(start); ++tries) {
        for (auto& v : start.phi) v *= 0.85;
        for (auto& v : start.theta) v *= 0.85;
    }
    if (!check_admissible(start)) {
        std::fill(start.phi.begin(), start.phi.end(), 0.0);
        std::fill(start.theta.begin(), start.theta.end(), 0.0);
    }
    return start;
}

ArmaParams unpack(const Eigen::VectorXd& x, const ArmaOrder& order) {
    ArmaParams params;
    params.phi.assign(x.data(), x.data() + order.p);
    params.theta.assign(x.data() + order.p, x.data() + order.p + order.q);
    return params;
}

Eigen::VectorXd pack(const ArmaParams& params) {
    Eigen::VectorXd x(params.order().n_coeffs());
    for (std::size_t i = 0; i < params.phi.size(); ++i) x(static_cast<Eigen::Index>(i)) = params.phi[i];
    for (std::size_t j = 0; j < params.theta.size(); ++j)
        x(static_cast<Eigen::Index>(params.phi.size() + j)) = params.theta[j];
    return x;
}

} // namespace

bool check_admissible(const ArmaParams& params) {
    if (!std::isfinite(params.sigma2) || params.sigma2 < 0.0) return false;
    return roots_outside_unit_circle(params.phi, 1.0) &&
           roots_outside_unit_circle(params.theta, -1.0);
}

std::vector<double> autocovariance(const ArmaParams& params, int max_lag) {
    if (max_lag < 0) throw ConfigError("autocovariance needs max_lag >= 0");
    if (!check_admissible(params))
        throw NumericError("inadmissible ARMA parameters in autocovariance");
    const auto [p, q] = params.order();
    const auto psi = psi_weights(params, q);

    auto ma_term = [&](int k) {
        double acc = 0.0;
        for (int j = k; j <= q; ++j) {
            const double theta_j = j == 0 ? 1.0 : params.theta[static_cast<std::size_t>(j - 1)];
            acc += theta_j * psi[static_cast<std::size_t>(j - k)];
        }
        return params.sigma2 * acc;
    };

    // extended Yule-Walker system for gamma(0..p)
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(p + 1, p + 1);
    Eigen::VectorXd b(p + 1);
    for (int k = 0; k <= p; ++k) {
        a(k, k) += 1.0;
        for (int i = 1; i <= p; ++i)
            a(k, std::abs(k - i)) -= params.phi[static_cast<std::size_t>(i - 1)];
        b(k) = ma_term(k);
    }
    const Eigen::VectorXd head = a.fullPivLu().solve(b);

    std::vector<double> gamma(static_cast<std::size_t>(max_lag) + 1, 0.0);
    for (int k = 0; k <= std::min(p, max_lag); ++k) gamma[static_cast<std::size_t>(k)] = head(k);
    for (int k = p + 1; k <= max_lag; ++k) {
        double acc = k <= q ? ma_term(k) : 0.0;
        for (int i = 1; i <= p; ++i)
            acc += params.phi[static_cast<std::size_t>(i - 1)] * gamma[static_cast<std::size_t>(k - i)];
        gamma[static_cast<std::size_t>(k)] = acc;
    }
    return gamma;
}

ArmaWhitener::ArmaWhitener(const ArmaParams& params, int n) : n_(n) {
    if (n < 1) throw ConfigError("whitener needs a positive length");
    ArmaParams unit = params;
    unit.sigma2 = 1.0;
    if (!check_admissible(unit))
        throw NumericError("inadmissible ARMA parameters in whitener");

    const auto [p, q] = params.order();
    m_ = std::max(p, q + 1);
    phi_.assign(static_cast<std::size_t>(m_), 0.0);
    for (int i = 0; i < p; ++i) phi_[static_cast<std::size_t>(i)] = params.phi[static_cast<std::size_t>(i)];
    rvec_.assign(static_cast<std::size_t>(m_), 0.0);
    rvec_[0] = 1.0;
    for (int j = 0; j < q; ++j) rvec_[static_cast<std::size_t>(j + 1)] = params.theta[static_cast<std::size_t>(j)];

    const int m = m_;
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < m; ++i) t(i, 0) = phi_[static_cast<std::size_t>(i)];
    for (int i = 0; i + 1 < m; ++i) t(i, i + 1) = 1.0;
    Eigen::Map<const Eigen::VectorXd> r(rvec_.data(), m);
    const Eigen::MatrixXd rr = r * r.transpose();

    // exact stationary initial covariance: (I - T (x) T) vec(P) = vec(R R')
    const int mm = m * m;
    Eigen::MatrixXd lhs = Eigen::MatrixXd::Identity(mm, mm);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            for (int k = 0; k < m; ++k)
                for (int l = 0; l < m; ++l)
                    lhs(i * m + k, j * m + l) -= t(i, j) * t(k, l);
    Eigen::VectorXd rhs(mm);
    for (int i = 0; i < m; ++i)
        for (int k = 0; k < m; ++k) rhs(i * m + k) = rr(i, k);
    const Eigen::VectorXd vec_p = lhs.fullPivLu().solve(rhs);
    Eigen::MatrixXd cov(m, m);
    for (int i = 0; i < m; ++i)
        for (int k = 0; k < m; ++k) cov(i, k) = vec_p(i * m + k);

    f_.assign(static_cast<std::size_t>(n_), 1.0);
    gains_.resize(m, std::min(n_, 4096));
    sum_log_f_ = 0.0;

    Eigen::VectorXd gain(m), tp0(m);
    Eigen::MatrixXd next(m, m);
    double last_f = -1.0;
    Eigen::VectorXd last_gain = Eigen::VectorXd::Zero(m);
    n_stored_ = 0;
    for (int t_idx = 0; t_idx < n_; ++t_idx) {
        const double f = cov(0, 0);
        if (!(f > 0.0) || !std::isfinite(f))
            throw NumericError("non-positive prediction variance in ARMA filter");

        // T * P column 0
        for (int i = 0; i < m; ++i) {
            double acc = phi_[static_cast<std::size_t>(i)] * cov(0, 0);
            if (i + 1 < m) acc += cov(i + 1, 0);
            tp0(i) = acc;
        }
        gain = tp0 / f;

        const bool frozen = t_idx > 0 && std::abs(f - last_f) < 1e-13 * (1.0 + f) &&
                            (gain - last_gain).lpNorm<Eigen::Infinity>() < 1e-13;
        f_[static_cast<std::size_t>(t_idx)] = f;
        sum_log_f_ += std::log(f);
        if (frozen) {
            // steady state: gains and variances no longer change
            for (int rest = t_idx + 1; rest < n_; ++rest) {
                f_[static_cast<std::size_t>(rest)] = f;
                sum_log_f_ += std::log(f);
            }
            break;
        }
        if (t_idx >= gains_.cols()) gains_.conservativeResize(m, gains_.cols() * 2);
        gains_.col(t_idx) = gain;
        n_stored_ = t_idx + 1;
        last_f = f;
        last_gain = gain;

        // P' = T P T' + R R' - F K K'
        Eigen::MatrixXd tp(m, m);
        for (int c = 0; c < m; ++c) {
            for (int i = 0; i < m; ++i) {
                double acc = phi_[static_cast<std::size_t>(i)] * cov(0, c);
                if (i + 1 < m) acc += cov(i + 1, c);
                tp(i, c) = acc;
            }
        }
        next = rr - f * gain * gain.transpose();
        for (int i = 0; i < m; ++i)
            for (int c = 0; c < m; ++c) {
                double acc = tp(i, 0) * phi_[static_cast<std::size_t>(c)];
                if (c + 1 < m) acc += tp(i, c + 1);
                next(i, c) += acc;
            }
        cov = next;
    }
}

void ArmaWhitener::apply_transition(const double* a, double* out) const {
    const int m = m_;
    const double a0 = a[0];
    for (int i = 0; i + 1 < m; ++i) out[i] = phi_[static_cast<std::size_t>(i)] * a0 + a[i + 1];
    out[m - 1] = phi_[static_cast<std::size_t>(m_ - 1)] * a0;
}

void ArmaWhitener::run(std::span<const double> y, std::span<double> out,
                       bool normalized) const {
    const auto n = static_cast<int>(y.size());
    if (n > n_ || static_cast<int>(out.size()) != n)
        throw ConfigError("whitener length mismatch");
    const int m = m_;
    std::vector<double> a(static_cast<std::size_t>(m), 0.0), tmp(static_cast<std::size_t>(m));
    for (int t = 0; t < n; ++t) {
        const double v = y[static_cast<std::size_t>(t)] - a[0];
        const double f = f_[static_cast<std::size_t>(t)];
        out[static_cast<std::size_t>(t)] = normalized ? v / std::sqrt(f) : v;
        const auto gcol = gains_.col(std::min(t, n_stored_ - 1));
        apply_transition(a.data(), tmp.data());
        for (int i = 0; i < m; ++i) a[static_cast<std::size_t>(i)] = tmp[static_cast<std::size_t>(i)] + gcol(i) * v;
    }
}

void ArmaWhitener::whiten(std::span<const double> y, std::span<double> out) const {
    run(y, out, true);
}

void ArmaWhitener::innovations(std::span<const double> y, std::span<double> out) const {
    run(y, out, false);
}

double arma_loglik(std::span<const double> series, const ArmaOrder& order,
                   const ArmaParams& params) {
    if (params.order() != order)
        throw ConfigError("ARMA parameter lengths do not match the order");
    if (!check_admissible(params) || params.sigma2 <= 0.0)
        return -std::numeric_limits<double>::infinity();
    const auto n = static_cast<int>(series.size());
    if (n == 0) return 0.0;

    const ArmaWhitener filt(params, n);
    std::vector<double> w(series.size());
    filt.whiten(series, w);
    double ssq = 0.0;
    for (double v : w) ssq += v * v;
    const double log2pi = std::log(2.0 * std::numbers::pi);
    return -0.5 * (n * log2pi + n * std::log(params.sigma2) + filt.sum_log_f() +
                   ssq / params.sigma2);
}

namespace {

/// Concentrated (profile) log-likelihood over sigma^2 at fixed (phi, theta).
double concentrated_loglik(std::span<const double> y, const ArmaParams& shape,
                           double* sigma2_out) {
    const auto n = static_cast<int>(y.size());
    const ArmaWhitener filt(shape, n);
    std::vector<double> w(y.size());
    filt.whiten(y, w);
    double ssq = 0.0;
    for (double v : w) ssq += v * v;
    const double sigma2 = ssq / n;
    if (sigma2_out) *sigma2_out = sigma2;
    if (!(sigma2 > 0.0)) return -std::numeric_limits<double>::infinity();
    const double log2pi = std::log(2.0 * std::numbers::pi);
    return -0.5 * (n * (log2pi + 1.0 + std::log(sigma2)) + filt.sum_log_f());
}

} // namespace

ArmaFit fit_arma(std::span<const double> series, const ArmaOrder& order) {
    const auto n = static_cast<int>(series.size());
    if (order.p < 0 || order.q < 0) throw ConfigError("negative ARMA order");
    if (n < 10 * (order.p + order.q + 1))
        throw DataError("series too short for the requested ARMA order");

    ArmaFit fit;
    if (order.n_coeffs() == 0) {
        double sigma2 = 0.0;
        fit.loglik = concentrated_loglik(series, ArmaParams{}, &sigma2);
        fit.params.sigma2 = sigma2;
        fit.n_evaluations = 1;
        return fit;
    }

    auto objective = [&](const Eigen::VectorXd& x) {
        ArmaParams cand = unpack(x, order);
        if (!check_admissible(cand)) return std::numeric_limits<double>::infinity();
        return -concentrated_loglik(series, cand, nullptr);
    };

    const ArmaParams start = starting_values(series, order);
    const auto result = detail::nelder_mead(objective, pack(start), 0.1, kLoglikTol,
                                            kMaxEvalsPerFit);

    // the all-zero point is the nested white-noise model; never do worse
    const Eigen::VectorXd zero = Eigen::VectorXd::Zero(order.n_coeffs());
    const double f_zero = objective(zero);

    Eigen::VectorXd best_x = result.x;
    if (f_zero < result.fval) best_x = zero;

    fit.params = unpack(best_x, order);
    double sigma2 = 0.0;
    fit.loglik = concentrated_loglik(series, fit.params, &sigma2);
    fit.params.sigma2 = sigma2;
    fit.converged = result.converged;
    fit.n_evaluations = result.n_evals + 1;
    return fit;
}

double aic(double loglik, int n_params) {
    if (n_params < 0) throw ConfigError("negative parameter count");
    return -2.0 * loglik + 2.0 * n_params;
}

OrderSelection select_order(std::span<const double> series, int max_p, int max_q,
                            bool use_bic) {
    const auto n = static_cast<int>(series.size());
    if (max_p < 0 || max_q < 0) throw ConfigError("negative ARMA order bound");
    if (n < 10 * (max_p + max_q + 1))
        throw DataError("series too short for order selection");

    const double log_n = std::log(static_cast<double>(n));
    std::map<std::pair<int, int>, double> cache;
    auto criterion = [&](const ArmaOrder& o) {
        const auto key = std::make_pair(o.p, o.q);
        if (auto it = cache.find(key); it != cache.end()) return it->second;
        double value = std::numeric_limits<double>::infinity();
        try {
            const ArmaFit fit = fit_arma(series, o);
            const int k = o.p + o.q + 1;
            value = use_bic ? -2.0 * fit.loglik + k * log_n : aic(fit.loglik, k);
            if (!std::isfinite(value)) value = std::numeric_limits<double>::infinity();
        } catch (const std::exception&) {
            // unfittable candidate: stays at +inf
        }
        cache[key] = value;
        return value;
    };

    auto better = [](const ArmaOrder& a, double va, const ArmaOrder& b, double vb) {
        if (va != vb) return va < vb;
        if (a.p + a.q != b.p + b.q) return a.p + a.q < b.p + b.q;
        return a.p < b.p;
    };

    const ArmaOrder starts[] = {{0, 0}, {1, 0}, {0, 1}, {1, 1}};
    ArmaOrder incumbent{0, 0};
    double inc_value = std::numeric_limits<double>::infinity();
    bool have = false;
    for (const auto& o : starts) {
        if (o.p > max_p || o.q > max_q) continue;
        const double v = criterion(o);
        if (!std::isfinite(v)) continue;
        if (!have || better(o, v, incumbent, inc_value)) {
            incumbent = o;
            inc_value = v;
            have = true;
        }
    }
    if (!have) throw NumericError("no admissible model");

    OrderSelection sel;
    sel.trace.push_back({incumbent, inc_value});
    while (true) {
        const int dp[] = {1, -1, 0, 0, 1, 1, -1, -1};
        const int dq[] = {0, 0, 1, -1, 1, -1, 1, -1};
        ArmaOrder best_nb = incumbent;
        double best_v = std::numeric_limits<double>::infinity();
        bool found = false;
        for (int i = 0; i < 8; ++i) {
            const ArmaOrder nb{incumbent.p + dp[i], incumbent.q + dq[i]};
            if (nb.p < 0 || nb.q < 0 || nb.p > max_p || nb.q > max_q) continue;
            const double v = criterion(nb);
            if (!std::isfinite(v)) continue;
            if (!found || better(nb, v, best_nb, best_v)) {
                best_nb = nb;
                best_v = v;
                found = true;
            }
        }
        if (!found || best_v >= inc_value) break;
        incumbent = best_nb;
        inc_value = best_v;
        sel.trace.push_back({incumbent, inc_value});
    }
    sel.order = incumbent;
    sel.aic = inc_value;
    return sel;
}

std::vector<double> simulate_arma(const ArmaOrder& order, const ArmaParams& params,
                                  int n, std::uint64_t seed) {
    if (params.order() != order)
        throw ConfigError("ARMA parameter lengths do not match the order");
    if (n < 1) throw ConfigError("simulation length must be >= 1");
    if (!check_admissible(params))
        throw NumericError("inadmissible ARMA parameters in simulate_arma");

    const int p = order.p, q = order.q;
    const int burn = 10 * (p + q + 1) + 100;
    const double sd = std::sqrt(params.sigma2);
    Rng rng(seed);

    std::vector<double> x(static_cast<std::size_t>(burn + n), 0.0);
    std::vector<double> e(static_cast<std::size_t>(burn + n), 0.0);
    for (int t = 0; t < burn + n; ++t) {
        e[static_cast<std::size_t>(t)] = sd * rng.normal();
        double v = e[static_cast<std::size_t>(t)];
        for (int i = 1; i <= p; ++i)
            if (t - i >= 0) v += params.phi[static_cast<std::size_t>(i - 1)] * x[static_cast<std::size_t>(t - i)];
        for (int j = 1; j <= q; ++j)
            if (t - j >= 0) v += params.theta[static_cast<std::size_t>(j - 1)] * e[static_cast<std::size_t>(t - j)];
        x[static_cast<std::size_t>(t)] = v;
    }
    return {x.begin() + burn, x.end()};
}

} // namespace aggts
