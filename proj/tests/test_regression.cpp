#include "aggts/errors.hpp"
#include "aggts/reference.hpp"
#include "aggts/regression.hpp"
#include "aggts/rng.hpp"

#include "test_util.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <doctest.h>

using namespace aggts;

namespace {

DesignMatrix make_design(const Eigen::MatrixXd& x, std::vector<std::string> names) {
    DesignMatrix d;
    d.X = x;
    d.names = std::move(names);
    d.row_valid.assign(static_cast<std::size_t>(x.rows()), 1);
    return d;
}

} // namespace

TEST_CASE("ols recovers an exact linear relation") {
    const int n = 40;
    Eigen::MatrixXd x(n, 1);
    std::vector<double> y(static_cast<std::size_t>(n));
    Rng rng(3);
    for (int t = 0; t < n; ++t) {
        x(t, 0) = rng.normal();
        y[static_cast<std::size_t>(t)] = 2.0 * x(t, 0);
    }
    const OlsFit fit = ols_fit(make_design(x, {"x"}), testutil::series_from(y));
    CHECK(fit.beta(0) == doctest::Approx(2.0).epsilon(1e-12));
    for (std::size_t t = 0; t < y.size(); ++t)
        CHECK(std::abs(fit.residuals.values[t]) < 1e-10);
}

TEST_CASE("intercept-only ols is the mean") {
    const std::vector<double> y = {1.0, 2.0, 3.0, 10.0};
    const OlsFit fit = ols_fit(make_design(Eigen::MatrixXd::Ones(4, 1), {"(Intercept)"}),
                               testutil::series_from(y));
    CHECK(fit.beta(0) == doctest::Approx(4.0).epsilon(1e-14));
}

TEST_CASE("ols matches the normal-equations oracle") {
    Rng rng(17);
    const int n = 50, k = 3;
    Eigen::MatrixXd x(n, k);
    Eigen::VectorXd yv(n);
    for (int t = 0; t < n; ++t) {
        x(t, 0) = 1.0;
        x(t, 1) = rng.normal();
        x(t, 2) = rng.uniform01();
        yv(t) = 0.5 + 1.2 * x(t, 1) - 0.7 * x(t, 2) + 0.3 * rng.normal();
    }
    std::vector<double> y(yv.data(), yv.data() + n);
    const OlsFit fit =
        ols_fit(make_design(x, {"c", "a", "b"}), testutil::series_from(y));
    const Eigen::VectorXd ref = (x.transpose() * x).ldlt().solve(x.transpose() * yv);
    for (int j = 0; j < k; ++j)
        CHECK(fit.beta(j) == doctest::Approx(ref(j)).epsilon(1e-8));
}

TEST_CASE("rank deficiency names the offending column") {
    Eigen::MatrixXd x(20, 3);
    Rng rng(9);
    for (int t = 0; t < 20; ++t) {
        x(t, 0) = 1.0;
        x(t, 1) = rng.normal();
        x(t, 2) = 2.0 * x(t, 1); // duplicate direction
    }
    std::vector<double> y(20, 1.0);
    y[3] = 2.0;
    CHECK_THROWS_WITH_AS(
        ols_fit(make_design(x, {"(Intercept)", "a", "a_copy"}), testutil::series_from(y)),
        doctest::Contains("rank deficient"), NumericError);
}

TEST_CASE("quasi-Poisson intercept-only fit is log of the mean") {
    const std::vector<double> y = {3, 5, 2, 8, 4, 6, 2, 2};
    const GlmFit fit =
        quasipoisson_fit(make_design(Eigen::MatrixXd::Ones(8, 1), {"(Intercept)"}),
                         testutil::series_from(y));
    double mean = 0.0;
    for (double v : y) mean += v;
    mean /= static_cast<double>(y.size());
    CHECK(fit.beta(0) == doctest::Approx(std::log(mean)).epsilon(1e-8));
    CHECK(fit.converged);
}

TEST_CASE("quasi-Poisson deviance vanishes for a constant response") {
    const std::vector<double> y(12, 7.0);
    const GlmFit fit =
        quasipoisson_fit(make_design(Eigen::MatrixXd::Ones(12, 1), {"(Intercept)"}),
                         testutil::series_from(y));
    CHECK(fit.deviance == doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("quasi-Poisson matches an independent IRLS loop") {
    Rng rng(23);
    const int n = 20;
    Eigen::MatrixXd x(n, 2);
    std::vector<double> y(static_cast<std::size_t>(n));
    for (int t = 0; t < n; ++t) {
        x(t, 0) = 1.0;
        x(t, 1) = rng.normal();
        const double mu = std::exp(1.0 + 0.4 * x(t, 1));
        y[static_cast<std::size_t>(t)] = static_cast<double>(rng.poisson(mu));
    }
    const GlmFit fit = quasipoisson_fit(make_design(x, {"c", "x"}), testutil::series_from(y));

    // reference IRLS written straight from the update equations
    Eigen::VectorXd beta = Eigen::VectorXd::Zero(2);
    const Eigen::Map<const Eigen::VectorXd> yv(y.data(), n);
    beta(0) = std::log(yv.mean());
    for (int it = 0; it < 200; ++it) {
        const Eigen::VectorXd eta = x * beta;
        const Eigen::VectorXd mu = eta.array().exp();
        const Eigen::VectorXd z = eta.array() + (yv - mu).array() / mu.array();
        const Eigen::MatrixXd xw = mu.array().sqrt().matrix().asDiagonal() * x;
        const Eigen::VectorXd zw = (mu.array().sqrt() * z.array()).matrix();
        beta = (xw.transpose() * xw).ldlt().solve(xw.transpose() * zw);
    }
    CHECK(fit.beta(0) == doctest::Approx(beta(0)).epsilon(1e-8));
    CHECK(fit.beta(1) == doctest::Approx(beta(1)).epsilon(1e-8));
}

TEST_CASE("negative counts are rejected") {
    const std::vector<double> y = {1.0, -2.0, 3.0};
    CHECK_THROWS_AS(
        quasipoisson_fit(make_design(Eigen::MatrixXd::Ones(3, 1), {"c"}),
                         testutil::series_from(y)),
        DataError);
}

namespace {

struct SimulatedRegression {
    DesignMatrix design;
    DailySeries response;
};

SimulatedRegression simulate_reg(int n, double beta, const ArmaParams& noise,
                                 std::uint64_t seed) {
    Eigen::MatrixXd x(n, 2);
    Rng rng(seed);
    const auto eps = simulate_arma(noise.order(), noise, n, seed + 1);
    std::vector<double> y(static_cast<std::size_t>(n));
    for (int t = 0; t < n; ++t) {
        x(t, 0) = 1.0;
        x(t, 1) = rng.normal();
        y[static_cast<std::size_t>(t)] =
            0.3 + beta * x(t, 1) + eps[static_cast<std::size_t>(t)];
    }
    return {make_design(x, {"(Intercept)", "x"}), testutil::series_from(y)};
}

} // namespace

TEST_CASE("order (0,0) joint fit equals plain least squares") {
    ArmaParams wn;
    wn.sigma2 = 1.0;
    const auto sim = simulate_reg(300, 1.5, wn, 44);
    const RegArmaFit joint = fit_reg_arma(sim.design, sim.response, {0, 0});
    const OlsFit ols = ols_fit(sim.design, sim.response);
    CHECK(joint.beta(0) == doctest::Approx(ols.beta(0)).epsilon(1e-10));
    CHECK(joint.beta(1) == doctest::Approx(ols.beta(1)).epsilon(1e-10));
    CHECK(joint.aic_value ==
          doctest::Approx(aic(joint.loglik, 0 + 0 + 1 + 2)).epsilon(1e-14));
}

TEST_CASE("noise-free joint fit recovers the coefficients exactly") {
    const int n = 200;
    Eigen::MatrixXd x(n, 2);
    std::vector<double> y(static_cast<std::size_t>(n));
    Rng rng(55);
    for (int t = 0; t < n; ++t) {
        x(t, 0) = 1.0;
        x(t, 1) = rng.normal();
        y[static_cast<std::size_t>(t)] = -0.7 + 2.5 * x(t, 1);
    }
    const RegArmaFit fit =
        fit_reg_arma(make_design(x, {"c", "x"}), testutil::series_from(y), {1, 0});
    CHECK(fit.beta(0) == doctest::Approx(-0.7).epsilon(1e-8));
    CHECK(fit.beta(1) == doctest::Approx(2.5).epsilon(1e-8));
    CHECK(fit.arma.sigma2 < 1e-12);
}

TEST_CASE("joint fit recovers beta under AR(1) errors") {
    ArmaParams ar1;
    ar1.phi = {0.6};
    ar1.sigma2 = 1.0;
    const auto sim = simulate_reg(2000, 1.5, ar1, 77);
    const RegArmaFit fit = fit_reg_arma(sim.design, sim.response, {1, 0});
    const double se = std::sqrt(fit.beta_cov(1, 1));
    CHECK(std::abs(fit.beta(1) - 1.5) < 3.0 * se);
    CHECK(std::abs(fit.arma.phi[0] - 0.6) < 0.08);
    CHECK(check_admissible(fit.arma));
    // nesting: the richer model cannot do worse at its optimum
    const RegArmaFit base = fit_reg_arma(sim.design, sim.response, {0, 0});
    CHECK(fit.loglik >= base.loglik - 1e-6);
}

TEST_CASE("profiled beta matches the dense-covariance GLS oracle") {
    ArmaParams corr;
    corr.phi = {0.6};
    corr.sigma2 = 1.0;
    Rng rng(88);
    const int n = 80, k = 3;
    Eigen::MatrixXd x(n, k);
    Eigen::VectorXd y(n);
    const auto eps = simulate_arma({1, 0}, corr, n, 5);
    for (int t = 0; t < n; ++t) {
        x(t, 0) = 1.0;
        x(t, 1) = rng.normal();
        x(t, 2) = std::sin(0.2 * t);
        y(t) = 1.0 - 2.0 * x(t, 1) + 0.5 * x(t, 2) + eps[static_cast<std::size_t>(t)];
    }
    const GlsProfile prof = gls_profile(x, y, corr);

    const auto gamma = autocovariance(corr, n - 1);
    Eigen::MatrixXd cov(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) cov(i, j) = gamma[static_cast<std::size_t>(std::abs(i - j))];
    const Eigen::VectorXd ref = reference::gls_dense(x, y, cov);
    for (int j = 0; j < k; ++j)
        CHECK(prof.beta(j) == doctest::Approx(ref(j)).epsilon(1e-8));
}

TEST_CASE("two-stage fit with zero search bounds reduces to least squares") {
    ArmaParams wn;
    wn.sigma2 = 1.0;
    const auto sim = simulate_reg(400, 1.5, wn, 99);
    const RegArmaFit fit = two_stage_fit(sim.design, sim.response, 0, 0);
    CHECK(fit.order == ArmaOrder{0, 0});
    const OlsFit ols = ols_fit(sim.design, sim.response);
    CHECK(fit.beta(1) == doctest::Approx(ols.beta(1)).epsilon(1e-10));
}

TEST_CASE("two-stage fit finds AR structure in the errors") {
    ArmaParams ar1;
    ar1.phi = {0.6};
    ar1.sigma2 = 1.0;
    const auto sim = simulate_reg(2000, 1.5, ar1, 101);
    const RegArmaFit fit = two_stage_fit(sim.design, sim.response, 3, 3);
    CHECK(fit.order.p >= 1);
}

TEST_CASE("fitted values: mean and one-step agree for uncorrelated errors") {
    ArmaParams wn;
    wn.sigma2 = 1.0;
    const auto sim = simulate_reg(200, 1.0, wn, 111);
    const RegArmaFit fit = fit_reg_arma(sim.design, sim.response, {0, 0});
    const DailySeries mean = fitted_values(fit, sim.design, FittedMode::MeanOnly);
    const DailySeries onestep = fitted_values(fit, sim.design, FittedMode::OneStep);
    for (std::size_t t = 0; t < mean.size(); ++t)
        CHECK(mean.values[t] == doctest::Approx(onestep.values[t]).epsilon(1e-12));
}

TEST_CASE("one-step fitted values follow the AR(1) hand recursion") {
    const int n = 5;
    Eigen::MatrixXd x = Eigen::MatrixXd::Ones(n, 1);
    const std::vector<double> y = {1.0, 2.0, 0.5, 1.5, 3.0};
    const double phi = 0.5, b0 = 1.2;

    RegArmaFit fit;
    fit.beta = Eigen::VectorXd::Constant(1, b0);
    fit.order = {1, 0};
    fit.arma.phi = {phi};
    fit.arma.sigma2 = 1.0;
    fit.block_begin = 0;
    fit.block_end = n;
    fit.residuals = testutil::series_from(y);
    for (int t = 0; t < n; ++t) fit.residuals.values[static_cast<std::size_t>(t)] -= b0;
    fit.innovations = fit.residuals;
    for (int t = n - 1; t >= 1; --t)
        fit.innovations.values[static_cast<std::size_t>(t)] -=
            phi * fit.residuals.values[static_cast<std::size_t>(t - 1)];

    const DailySeries onestep =
        fitted_values(fit, make_design(x, {"c"}), FittedMode::OneStep);
    CHECK(onestep.values[0] == doctest::Approx(b0).epsilon(1e-12));
    for (int t = 1; t < n; ++t) {
        const double expected = b0 + phi * (y[static_cast<std::size_t>(t - 1)] - b0);
        CHECK(onestep.values[static_cast<std::size_t>(t)] ==
              doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("residuals and innovations are consistent with the formulas") {
    ArmaParams ar1;
    ar1.phi = {0.5};
    ar1.sigma2 = 1.0;
    const auto sim = simulate_reg(300, 2.0, ar1, 131);
    const RegArmaFit fit = fit_reg_arma(sim.design, sim.response, {1, 0});
    for (std::size_t t = 0; t < sim.response.size(); ++t) {
        const double expect =
            sim.response.values[t] -
            sim.design.X.row(static_cast<Eigen::Index>(t)).dot(fit.beta);
        CHECK(fit.residuals.values[t] == doctest::Approx(expect).epsilon(1e-10));
    }
    // innovations follow the AR(1) filter of the residuals
    for (std::size_t t = 1; t < sim.response.size(); ++t) {
        const double expect = fit.residuals.values[t] -
                              fit.arma.phi[0] * fit.residuals.values[t - 1];
        CHECK(fit.innovations.values[t] == doctest::Approx(expect).epsilon(1e-10));
    }
}
