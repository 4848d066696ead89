#ifndef AGGTS_ARMA_HPP
#define AGGTS_ARMA_HPP

#include <Eigen/Core>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace aggts {

struct ArmaOrder {
    int p = 0;
    int q = 0;

    bool operator==(const ArmaOrder&) const = default;
    int n_coeffs() const { return p + q; }
};

/// ARMA coefficients. Admissible when the AR polynomial 1 - sum phi_k z^k
/// and the MA polynomial 1 + sum theta_l z^l both have all roots strictly
/// outside the unit circle.
struct ArmaParams {
    std::vector<double> phi;
    std::vector<double> theta;
    double sigma2 = 1.0;

    ArmaOrder order() const {
        return {static_cast<int>(phi.size()), static_cast<int>(theta.size())};
    }
};

/// Root-moduli test (> 1 + 1e-8) for stationarity and invertibility.
bool check_admissible(const ArmaParams& params);

/// Theoretical autocovariances gamma(0..max_lag) of the stationary process,
/// from the extended Yule-Walker system. Throws NumericError when params
/// are inadmissible.
std::vector<double> autocovariance(const ArmaParams& params, int max_lag);

/// Exact Gaussian log-likelihood of a zero-mean stationary ARMA series via
/// the state-space prediction-error decomposition with exact stationary
/// initialization. Returns -infinity for inadmissible params (optimizer
/// penalty value).
double arma_loglik(std::span<const double> series, const ArmaOrder& order,
                   const ArmaParams& params);

struct ArmaFit {
    ArmaParams params;
    double loglik = 0.0;
    bool converged = true;
    int n_evaluations = 0;
};

/// Maximizes the exact likelihood over admissible params, Nelder-Mead from
/// Hannan-Rissanen starting values with sigma^2 concentrated out. On
/// reaching the evaluation budget the best-so-far fit is returned with
/// converged = false.
ArmaFit fit_arma(std::span<const double> series, const ArmaOrder& order);

/// Akaike information criterion, -2*loglik + 2*n_params. The parameter
/// count convention is p + q + 1 (sigma^2) plus any regression coefficients.
double aic(double loglik, int n_params);

struct OrderStep {
    ArmaOrder order;
    double aic = 0.0;
};

struct OrderSelection {
    ArmaOrder order;
    double aic = 0.0;
    std::vector<OrderStep> trace; // incumbent after each accepted move
};

/// Stepwise AIC search: start from {(0,0),(1,0),(0,1),(1,1)}, move to the
/// best strictly-improving neighbor among p+-1, q+-1 and diagonal steps,
/// ties broken toward lower p+q then lower p. With use_bic the penalty is
/// k*log(n) instead of 2k.
OrderSelection select_order(std::span<const double> series, int max_p, int max_q,
                            bool use_bic = false);

/// Deterministic ARMA simulation: burn-in of 10(p+q+1)+100 steps discarded,
/// innovations N(0, sigma2) from the named generator.
std::vector<double> simulate_arma(const ArmaOrder& order, const ArmaParams& params,
                                  int n, std::uint64_t seed);

/// Innovations filter for fixed (phi, theta) with unit innovation variance.
/// The covariance recursion (prediction variances F_t and Kalman gains) is
/// data-independent, so it runs once and any number of series can then be
/// whitened against it; whitening is linear, which is what lets regression
/// columns be filtered independently.
class ArmaWhitener {
public:
    /// Throws NumericError when params are inadmissible.
    ArmaWhitener(const ArmaParams& params, int n);

    int length() const { return n_; }
    double sum_log_f() const { return sum_log_f_; }

    /// Innovations v_t of y divided by sqrt(F_t). Squared norm of the
    /// output is the generalized residual sum of squares.
    void whiten(std::span<const double> y, std::span<double> out) const;

    /// Raw one-step prediction errors v_t (original scale).
    void innovations(std::span<const double> y, std::span<double> out) const;

private:
    int n_ = 0;
    int m_ = 0; // state dimension max(p, q+1)
    std::vector<double> phi_;  // padded to m
    std::vector<double> rvec_; // (1, theta...) padded to m
    Eigen::MatrixXd gains_;    // m x n_stored
    std::vector<double> f_;    // prediction variances, length n
    int n_stored_ = 0;         // steps before the recursion froze
    double sum_log_f_ = 0.0;

    void apply_transition(const double* a, double* out) const;
    void run(std::span<const double> y, std::span<double> out, bool normalized) const;
};

} // namespace aggts

#endif
