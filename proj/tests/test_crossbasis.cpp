#include "aggts/cross_basis.hpp"
#include "aggts/errors.hpp"
#include "aggts/reference.hpp"

#include "test_util.hpp"

#include <cmath>
#include <doctest.h>

using namespace aggts;

namespace {

CrossBasisSpec make_spec(double lo, double hi, std::vector<double> var_knots,
                         int var_degree, int max_lag, std::vector<double> lag_knots,
                         int lag_degree) {
    CrossBasisSpec spec;
    spec.max_lag = max_lag;
    spec.predictor.degree = var_degree;
    spec.predictor.boundary_low = lo;
    spec.predictor.boundary_high = hi;
    spec.predictor.interior_knots = std::move(var_knots);
    spec.lag.degree = lag_degree;
    spec.lag.boundary_low = 0.0;
    spec.lag.boundary_high = max_lag;
    spec.lag.interior_knots = std::move(lag_knots);
    return spec;
}

} // namespace

TEST_CASE("constant bases count the lags") {
    const DailySeries x = testutil::random_series(20, 4);
    double lo = 1e300, hi = -1e300;
    for (double v : x.values) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    const CrossBasisSpec spec = make_spec(lo, hi, {}, 0, 2, {}, 0);
    const DesignMatrix d = cross_basis(x, spec);
    REQUIRE(d.cols() == 1);
    CHECK(!d.row_valid[0]);
    CHECK(!d.row_valid[1]);
    for (Eigen::Index t = 2; t < d.rows(); ++t) {
        CHECK(d.row_valid[static_cast<std::size_t>(t)]);
        CHECK(d.X(t, 0) == doctest::Approx(3.0).epsilon(1e-14));
    }
}

TEST_CASE("zero max lag collapses to the predictor basis") {
    const DailySeries x = testutil::random_series(25, 5);
    double lo = 1e300, hi = -1e300;
    for (double v : x.values) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    const CrossBasisSpec spec = make_spec(lo, hi, {}, 3, 0, {}, 0);
    const DesignMatrix d = cross_basis(x, spec);
    const Eigen::MatrixXd direct = bspline_basis(x.values, spec.predictor);
    REQUIRE(d.cols() == direct.cols());
    for (Eigen::Index t = 0; t < d.rows(); ++t) {
        CHECK(d.row_valid[static_cast<std::size_t>(t)]);
        for (Eigen::Index j = 0; j < d.cols(); ++j)
            CHECK(d.X(t, j) == doctest::Approx(direct(t, j)).epsilon(1e-12));
    }
}

TEST_CASE("cross-basis matches the brute-force double sum") {
    // tiny case: 30 points, 2 predictor x 2 lag basis functions
    const DailySeries x = testutil::random_series(30, 6);
    double lo = 1e300, hi = -1e300;
    for (double v : x.values) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    const CrossBasisSpec spec = make_spec(lo, hi, {}, 1, 3, {}, 1);
    REQUIRE(spec.n_columns() == 4);
    const DesignMatrix fast = cross_basis(x, spec);
    const DesignMatrix ref = reference::cross_basis(x, spec);
    REQUIRE(fast.cols() == ref.cols());
    REQUIRE(fast.names == ref.names);
    for (Eigen::Index t = 0; t < fast.rows(); ++t) {
        CHECK(fast.row_valid[static_cast<std::size_t>(t)] ==
              ref.row_valid[static_cast<std::size_t>(t)]);
        for (Eigen::Index j = 0; j < fast.cols(); ++j)
            CHECK(fast.X(t, j) == doctest::Approx(ref.X(t, j)).epsilon(1e-10));
    }
}

TEST_CASE("cross-basis matches the reference on a cubic spec with missing data") {
    DailySeries x = testutil::random_series(60, 7);
    x.set_missing(17);
    double lo = 1e300, hi = -1e300;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x.is_missing(i)) continue;
        lo = std::min(lo, x.values[i]);
        hi = std::max(hi, x.values[i]);
    }
    const CrossBasisSpec spec = make_spec(lo, hi, {-0.2, 0.4}, 3, 5, {2.0}, 3);
    const DesignMatrix fast = cross_basis(x, spec);
    const DesignMatrix ref = reference::cross_basis(x, spec);
    for (Eigen::Index t = 0; t < fast.rows(); ++t) {
        CHECK(fast.row_valid[static_cast<std::size_t>(t)] ==
              ref.row_valid[static_cast<std::size_t>(t)]);
        for (Eigen::Index j = 0; j < fast.cols(); ++j)
            CHECK(fast.X(t, j) == doctest::Approx(ref.X(t, j)).epsilon(1e-10));
    }
    // rows touching the missing exposure are invalid
    for (std::size_t t = 17; t <= 22; ++t) CHECK(!fast.row_valid[t]);
    CHECK(fast.row_valid[23]);
}

TEST_CASE("rr_surface anchors") {
    const CrossBasisSpec spec = make_spec(0.0, 1.0, {0.5}, 3, 3, {}, 1);
    const int nc = spec.n_columns();
    const std::vector<double> grid = {0.0, 0.25, 0.5, 0.75, 1.0};

    SUBCASE("zero coefficients give a flat unit surface") {
        const SurfaceGrid s = rr_surface(Eigen::VectorXd::Zero(nc), spec, grid, 0.5);
        for (Eigen::Index i = 0; i < s.rr.rows(); ++i)
            for (Eigen::Index j = 0; j < s.rr.cols(); ++j) CHECK(s.rr(i, j) == 1.0);
    }

    SUBCASE("reference row is one and entries are positive") {
        Eigen::VectorXd beta(nc);
        for (int i = 0; i < nc; ++i) beta(i) = 0.1 * (i + 1);
        const SurfaceGrid s = rr_surface(beta, spec, grid, 0.5);
        for (Eigen::Index j = 0; j < s.rr.cols(); ++j) {
            CHECK(std::abs(s.rr(2, j) - 1.0) <= 1e-10);
            for (Eigen::Index i = 0; i < s.rr.rows(); ++i) CHECK(s.rr(i, j) > 0.0);
        }
    }

    SUBCASE("log-RR is linear in beta") {
        Eigen::VectorXd beta(nc);
        for (int i = 0; i < nc; ++i) beta(i) = 0.05 * (i - 2);
        const SurfaceGrid s1 = rr_surface(beta, spec, grid, 0.5);
        const SurfaceGrid s2 = rr_surface((2.0 * beta).eval(), spec, grid, 0.5);
        for (Eigen::Index i = 0; i < s1.rr.rows(); ++i)
            for (Eigen::Index j = 0; j < s1.rr.cols(); ++j)
                CHECK(s2.rr(i, j) ==
                      doctest::Approx(s1.rr(i, j) * s1.rr(i, j)).epsilon(1e-10));
    }

    SUBCASE("dimension mismatch is rejected") {
        CHECK_THROWS_AS(rr_surface(Eigen::VectorXd::Zero(nc + 1), spec, grid, 0.5),
                        ConfigError);
    }
}

TEST_CASE("rr_surface hand-computed exponent") {
    // degree-1 predictor on [0,1], single constant lag column: with beta
    // picked so that beta * (B(temp)-B(ref)) * C = 1, the RR is e
    const CrossBasisSpec spec = make_spec(0.0, 1.0, {}, 1, 0, {}, 0);
    REQUIRE(spec.n_columns() == 2);
    Eigen::VectorXd beta(2);
    beta << 2.0, 0.0; // B_1(0) - B_1(0.5) = 1 - 0.5 = 0.5; exponent = 2 * 0.5 = 1
    const std::vector<double> grid = {0.0};
    const SurfaceGrid s = rr_surface(beta, spec, grid, 0.5);
    CHECK(s.rr(0, 0) == doctest::Approx(std::exp(1.0)).epsilon(1e-12));
}
