#ifndef AGGTS_REGRESSION_HPP
#define AGGTS_REGRESSION_HPP

#include "aggts/arma.hpp"
#include "aggts/cross_basis.hpp"
#include "aggts/daily_series.hpp"

#include <Eigen/Core>
#include <optional>
#include <string>

namespace aggts {

struct OlsFit {
    Eigen::VectorXd beta;
    DailySeries residuals; // y - X*beta on valid rows, missing elsewhere
    double rss = 0.0;
    int n_used = 0;
};

/// Least squares via column-pivoted Householder QR over the complete-case
/// rows. Throws NumericError naming the offending column when the design is
/// rank deficient.
OlsFit ols_fit(const DesignMatrix& X, const DailySeries& y);

struct GlmFit {
    Eigen::VectorXd beta;
    double dispersion = 1.0; // Pearson chi-square / (n - k)
    double deviance = 0.0;
    DailySeries fitted; // response scale
    bool converged = true;
    int n_iterations = 0;
};

/// Poisson log-link IRLS with free dispersion, run to relative deviance
/// change < 1e-8 (max 50 iterations). Counts must be non-negative.
GlmFit quasipoisson_fit(const DesignMatrix& X, const DailySeries& y);

/// Joint regression + ARMA-error fit.
struct RegArmaFit {
    Eigen::VectorXd beta;
    std::vector<std::string> beta_names;
    ArmaParams arma;
    ArmaOrder order;
    double loglik = 0.0;
    double aic_value = 0.0; // -2*loglik + 2*(p+q+1+len(beta)) exactly
    DailySeries residuals;   // eps_t = y - X*beta at valid rows
    DailySeries innovations; // filtered one-step errors e_t on the fit block
    Eigen::MatrixXd beta_cov;
    int block_begin = 0; // contiguous rows [begin, end) used for likelihood
    int block_end = 0;
    int dropped_rows = 0; // valid rows outside the chosen block
    bool converged = true;
};

/// Exact Gaussian ML for y = X beta + ARMA(p,q) error at fixed order. For
/// each candidate (phi, theta) the whitened design yields the GLS-profiled
/// beta and concentrated sigma^2; the outer search runs over (phi, theta)
/// only. Uses the longest contiguous run of complete-case rows.
RegArmaFit fit_reg_arma(const DesignMatrix& X, const DailySeries& y_agg,
                        const ArmaOrder& order);

/// OLS residuals -> stepwise order selection -> joint refit at the selected
/// order.
RegArmaFit two_stage_fit(const DesignMatrix& X, const DailySeries& y_agg,
                         int max_p, int max_q, bool use_bic = false);

enum class FittedMode { MeanOnly, OneStep };

/// MeanOnly: X*beta on valid rows. OneStep: additionally adds the ARMA
/// one-step-ahead prediction of the error on the fitted block.
DailySeries fitted_values(const RegArmaFit& fit, const DesignMatrix& X,
                          FittedMode mode);

/// GLS profile at fixed unit-variance correlation parameters: whitened-QR
/// beta, concentrated sigma^2 (ML), exact log-likelihood, and the GLS
/// coefficient covariance (unbiased scale). Exposed so the profiled beta
/// can be checked against a dense-covariance GLS oracle.
struct GlsProfile {
    Eigen::VectorXd beta;
    double sigma2 = 0.0; // ML (RSS/n)
    double loglik = 0.0;
    Eigen::MatrixXd beta_cov;
};

GlsProfile gls_profile(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                       const ArmaParams& corr);

} // namespace aggts

#endif
