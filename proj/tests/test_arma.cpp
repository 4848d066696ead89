#include "aggts/arma.hpp"
#include "aggts/errors.hpp"
#include "aggts/reference.hpp"
#include "aggts/rng.hpp"

#include <cmath>
#include <doctest.h>
#include <numbers>

using namespace aggts;

namespace {

ArmaParams params_of(std::vector<double> phi, std::vector<double> theta, double sigma2) {
    ArmaParams p;
    p.phi = std::move(phi);
    p.theta = std::move(theta);
    p.sigma2 = sigma2;
    return p;
}

/// Random admissible ARMA parameters with orders up to (2,2).
ArmaParams random_admissible(Rng& rng, int max_p, int max_q) {
    while (true) {
        const int p = static_cast<int>(rng.uniform01() * (max_p + 1));
        const int q = static_cast<int>(rng.uniform01() * (max_q + 1));
        ArmaParams cand;
        for (int i = 0; i < p; ++i) cand.phi.push_back(1.6 * rng.uniform01() - 0.8);
        for (int j = 0; j < q; ++j) cand.theta.push_back(1.6 * rng.uniform01() - 0.8);
        cand.sigma2 = 0.25 + 2.0 * rng.uniform01();
        if (check_admissible(cand)) return cand;
    }
}

} // namespace

TEST_CASE("admissibility checks") {
    CHECK(check_admissible(params_of({0.5}, {}, 1.0)));
    CHECK_FALSE(check_admissible(params_of({1.0}, {}, 1.0)));
    CHECK(check_admissible(params_of({0.5, 0.4}, {}, 1.0))); // roots 1.075, -2.325
    CHECK_FALSE(check_admissible(params_of({0.5, 0.5}, {}, 1.0))); // unit root
    CHECK(check_admissible(params_of({}, {0.5}, 1.0)));
    CHECK_FALSE(check_admissible(params_of({}, {1.0}, 1.0)));
    CHECK(check_admissible(params_of({}, {}, 1.0)));
}

TEST_CASE("autocovariance hand values") {
    SUBCASE("AR(1)") {
        const auto g = autocovariance(params_of({0.5}, {}, 1.0), 2);
        CHECK(g[0] == doctest::Approx(4.0 / 3.0).epsilon(1e-12));
        CHECK(g[1] == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
        CHECK(g[2] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    }
    SUBCASE("white noise") {
        const auto g = autocovariance(params_of({}, {}, 2.0), 3);
        CHECK(g[0] == doctest::Approx(2.0).epsilon(1e-14));
        CHECK(g[1] == 0.0);
        CHECK(g[2] == 0.0);
    }
    SUBCASE("MA(1)") {
        const auto g = autocovariance(params_of({}, {0.5}, 1.0), 2);
        CHECK(g[0] == doctest::Approx(1.25).epsilon(1e-14));
        CHECK(g[1] == doctest::Approx(0.5).epsilon(1e-14));
        CHECK(g[2] == 0.0);
    }
    SUBCASE("inadmissible params are rejected") {
        CHECK_THROWS_AS(autocovariance(params_of({1.01}, {}, 1.0), 2), NumericError);
    }
}

TEST_CASE("exact log-likelihood anchors on [0,0]") {
    const std::vector<double> y = {0.0, 0.0};
    const double log2pi = std::log(2.0 * std::numbers::pi);

    CHECK(arma_loglik(y, {0, 0}, params_of({}, {}, 1.0)) ==
          doctest::Approx(-log2pi).epsilon(1e-9));
    CHECK(arma_loglik(y, {1, 0}, params_of({0.5}, {}, 1.0)) ==
          doctest::Approx(-log2pi - 0.5 * std::log(4.0 / 3.0)).epsilon(1e-9));
    CHECK(arma_loglik(y, {0, 1}, params_of({}, {0.5}, 1.0)) ==
          doctest::Approx(-log2pi - 0.5 * std::log(1.3125)).epsilon(1e-9));
    // frozen decimal anchors
    CHECK(arma_loglik(y, {0, 0}, params_of({}, {}, 1.0)) ==
          doctest::Approx(-1.837877).epsilon(1e-6));
    CHECK(arma_loglik(y, {1, 0}, params_of({0.5}, {}, 1.0)) ==
          doctest::Approx(-1.981718).epsilon(1e-6));
    CHECK(arma_loglik(y, {0, 1}, params_of({}, {0.5}, 1.0)) ==
          doctest::Approx(-1.973843).epsilon(1e-6));
}

TEST_CASE("state-space likelihood equals the dense-covariance oracle") {
    Rng rng(2024);
    for (int rep = 0; rep < 100; ++rep) {
        const ArmaParams params = random_admissible(rng, 2, 2);
        const int n = 20 + static_cast<int>(rng.uniform01() * 180);
        const auto y = simulate_arma(params.order(), params, n, 1000 + rep);
        const double fast = arma_loglik(y, params.order(), params);
        const double dense = reference::arma_loglik_dense(y, params);
        CHECK(std::abs(fast - dense) <= 1e-6);
    }
}

TEST_CASE("inadmissible parameters give the penalty value") {
    const std::vector<double> y = {0.1, -0.2, 0.3};
    const double ll = arma_loglik(y, {1, 0}, params_of({1.2}, {}, 1.0));
    CHECK(ll == -std::numeric_limits<double>::infinity());
}

TEST_CASE("simulation is deterministic and respects the model") {
    const ArmaParams ar1 = params_of({0.6}, {}, 1.0);
    const auto a = simulate_arma({1, 0}, ar1, 500, 7);
    const auto b = simulate_arma({1, 0}, ar1, 500, 7);
    CHECK(a == b);
    const auto c = simulate_arma({1, 0}, ar1, 500, 8);
    CHECK(a != c);

    const auto zeros = simulate_arma({1, 0}, params_of({0.6}, {}, 0.0), 100, 7);
    for (double v : zeros) CHECK(v == 0.0);

    const auto big = simulate_arma({1, 0}, ar1, 100000, 99);
    double c0 = 0.0, c1 = 0.0;
    for (std::size_t t = 1; t < big.size(); ++t) {
        c0 += big[t] * big[t];
        c1 += big[t] * big[t - 1];
    }
    CHECK(std::abs(c1 / c0 - 0.6) < 0.01);
}

TEST_CASE("white-noise fit has the analytic solution") {
    Rng rng(31);
    std::vector<double> y(400);
    for (auto& v : y) v = 1.5 * rng.normal();
    const ArmaFit fit = fit_arma(y, {0, 0});
    double msq = 0.0;
    for (double v : y) msq += v * v;
    msq /= static_cast<double>(y.size());
    CHECK(fit.params.sigma2 == doctest::Approx(msq).epsilon(1e-12));
    const double n = static_cast<double>(y.size());
    const double closed =
        -0.5 * n * (std::log(2.0 * std::numbers::pi) + std::log(msq) + 1.0);
    CHECK(fit.loglik == doctest::Approx(closed).epsilon(1e-10));
}

TEST_CASE("AR(1) estimation recovers the coefficient") {
    const auto y = simulate_arma({1, 0}, params_of({0.6}, {}, 1.0), 2000, 11);
    const ArmaFit fit = fit_arma(y, {1, 0});
    CHECK(std::abs(fit.params.phi[0] - 0.6) < 0.06);
    CHECK(check_admissible(fit.params));
    // reported loglik is the likelihood at the returned parameters
    CHECK(fit.loglik ==
          doctest::Approx(arma_loglik(y, {1, 0}, fit.params)).epsilon(1e-9));
}

TEST_CASE("ARMA(1,1) fit beats or matches the white-noise fit") {
    const auto y = simulate_arma({1, 1}, params_of({0.5}, {0.3}, 1.0), 800, 21);
    const ArmaFit small = fit_arma(y, {0, 0});
    const ArmaFit big = fit_arma(y, {1, 1});
    CHECK(big.loglik >= small.loglik - 1e-6);
    CHECK(check_admissible(big.params));
}

TEST_CASE("fit_arma rejects series that are too short") {
    std::vector<double> y(5, 0.1);
    CHECK_THROWS_AS(fit_arma(y, {2, 2}), DataError);
}

TEST_CASE("aic formula") {
    CHECK(aic(-100.0, 3) == 206.0);
    CHECK(aic(0.0, 0) == 0.0);
    CHECK(aic(-1.0, 2) > aic(-1.0, 1));
    Rng rng(5);
    std::vector<double> y(300);
    for (auto& v : y) v = rng.normal();
    const ArmaFit fit = fit_arma(y, {0, 0});
    CHECK(aic(fit.loglik, 1) == doctest::Approx(-2.0 * fit.loglik + 2.0).epsilon(1e-14));
}

TEST_CASE("order selection on an AR(2) series") {
    ArmaParams truth = params_of({1.2, -0.5}, {}, 1.0);
    REQUIRE(check_admissible(truth));
    const auto y = simulate_arma({2, 0}, truth, 2000, 37);
    const OrderSelection sel = select_order(y, 5, 5);
    CHECK(sel.order.p >= 2);
    // the search trace has non-increasing AIC
    for (std::size_t i = 1; i < sel.trace.size(); ++i)
        CHECK(sel.trace[i].aic <= sel.trace[i - 1].aic);
    CHECK(sel.aic == sel.trace.back().aic);
}

TEST_CASE("order selection rejects short series") {
    std::vector<double> y(40, 0.0);
    CHECK_THROWS_AS(select_order(y, 5, 5), DataError);
}

TEST_CASE("whitener is the identity for white noise") {
    const ArmaWhitener filt(params_of({}, {}, 1.0), 10);
    std::vector<double> y(10), out(10);
    Rng rng(8);
    for (auto& v : y) v = rng.normal();
    filt.whiten(y, out);
    for (std::size_t i = 0; i < y.size(); ++i)
        CHECK(out[i] == doctest::Approx(y[i]).epsilon(1e-14));
    CHECK(filt.sum_log_f() == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("whitener innovations match the AR(1) hand recursion") {
    const double phi = 0.5;
    const std::vector<double> eps = {1.0, 0.2, -0.7, 0.4, 0.9};
    const ArmaWhitener filt(params_of({phi}, {}, 1.0), 5);
    std::vector<double> innov(5);
    filt.innovations(eps, innov);
    CHECK(innov[0] == doctest::Approx(eps[0]).epsilon(1e-12));
    for (std::size_t t = 1; t < 5; ++t)
        CHECK(innov[t] == doctest::Approx(eps[t] - phi * eps[t - 1]).epsilon(1e-12));
}
