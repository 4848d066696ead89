#ifndef AGGTS_REFERENCE_HPP
#define AGGTS_REFERENCE_HPP

#include "aggts/aggregation.hpp"
#include "aggts/arma.hpp"
#include "aggts/cross_basis.hpp"
#include "aggts/daily_series.hpp"

#include <Eigen/Core>
#include <span>

// Serial reference implementations, written straight from the defining
// formulas and kept independent of the optimized code paths. They back the
// unit/acceptance oracles and the serial-vs-parallel benchmarks; nothing in
// the main library links against them.
namespace aggts::reference {

/// Plain serial aggregation loop.
DailySeries aggregate(const DailySeries& series, const WeightVector& weights);

/// Cross-basis by the literal triple loop over (row, predictor, lag).
DesignMatrix cross_basis(const DailySeries& exposure, const CrossBasisSpec& spec);

/// Naive Cox-de Boor recursion: N_{i,0} indicator, then the two-term
/// recurrence, one basis function at a time.
double bspline_naive(std::span<const double> knots, int i, int degree, double x);

/// Dense multivariate-normal log-density with the Toeplitz covariance built
/// from autocovariance(). Cubic in n; for oracle use only.
double arma_loglik_dense(std::span<const double> series, const ArmaParams& params);

/// GLS estimate from an explicitly assembled dense error covariance.
Eigen::VectorXd gls_dense(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                          const Eigen::MatrixXd& cov);

} // namespace aggts::reference

#endif
