#include "aggts/aggregation.hpp"
#include "aggts/errors.hpp"
#include "aggts/reference.hpp"

#include "test_util.hpp"

#include <cmath>
#include <doctest.h>

using namespace aggts;

TEST_CASE("moving-average weights are uniform") {
    const WeightVector w = kernel_weights({KernelKind::MovingAverage, 7, WindowMode::Future});
    REQUIRE(w.size() == 7);
    for (std::size_t i = 0; i < 7; ++i) {
        CHECK(w.offsets[i] == static_cast<int>(i));
        CHECK(w.weights[i] == doctest::Approx(1.0 / 7.0).epsilon(1e-14));
    }
}

TEST_CASE("window size one is the identity") {
    for (KernelKind kind : {KernelKind::MovingAverage, KernelKind::Epanechnikov}) {
        const WeightVector w = kernel_weights({kind, 1, WindowMode::Future});
        REQUIRE(w.size() == 1);
        CHECK(w.weights[0] == 1.0);
        const DailySeries y = testutil::random_series(50, 7);
        const DailySeries agg = aggregate(y, w);
        for (std::size_t t = 0; t < y.size(); ++t) CHECK(agg.values[t] == y.values[t]);
    }
}

TEST_CASE("Epanechnikov future weights at H=3 (hand evaluation)") {
    const WeightVector w = kernel_weights({KernelKind::Epanechnikov, 3, WindowMode::Future});
    // K((i+0.5)/3) at i=0,1,2 is proportional to 35/36, 27/36, 11/36
    CHECK(w.weights[0] == doctest::Approx(35.0 / 73.0).epsilon(1e-12));
    CHECK(w.weights[1] == doctest::Approx(27.0 / 73.0).epsilon(1e-12));
    CHECK(w.weights[2] == doctest::Approx(11.0 / 73.0).epsilon(1e-12));
    CHECK(w.weights[0] == doctest::Approx(0.4795).epsilon(1e-3));
    CHECK(w.weights[1] == doctest::Approx(0.3699).epsilon(1e-3));
    CHECK(w.weights[2] == doctest::Approx(0.1507).epsilon(1e-3));
}

TEST_CASE("Michels future weights peak shortly after the current day") {
    const WeightVector w = kernel_weights({KernelKind::Michels, 11, WindowMode::Future});
    std::size_t argmax = 0;
    for (std::size_t i = 1; i < w.size(); ++i)
        if (w.weights[i] > w.weights[argmax]) argmax = i;
    CHECK(argmax == 3);
}

TEST_CASE("kernel weight errors") {
    CHECK_THROWS_AS(kernel_weights({KernelKind::MovingAverage, 0, WindowMode::Future}),
                    ConfigError);
    CHECK_THROWS_AS(kernel_weights({KernelKind::MovingAverage, 4, WindowMode::Centered}),
                    ConfigError);
    CHECK_THROWS_AS(kernel_weights({KernelKind::Michels, 5, WindowMode::Centered}),
                    ConfigError);
}

TEST_CASE("weight normalization and shape across all kernels and windows") {
    for (int h = 1; h <= 30; ++h) {
        for (KernelKind kind :
             {KernelKind::MovingAverage, KernelKind::Epanechnikov, KernelKind::Michels}) {
            std::vector<WindowMode> modes = {WindowMode::Future};
            if (h % 2 == 1 && kind != KernelKind::Michels)
                modes.push_back(WindowMode::Centered);
            for (WindowMode mode : modes) {
                const WeightVector w = kernel_weights({kind, h, mode});
                REQUIRE(w.size() == static_cast<std::size_t>(h));
                double sum = 0.0;
                for (double wi : w.weights) {
                    CHECK(wi >= 0.0);
                    sum += wi;
                }
                CHECK(std::abs(sum - 1.0) <= 1e-12);
                if (kind == KernelKind::MovingAverage)
                    for (double wi : w.weights)
                        CHECK(wi == doctest::Approx(1.0 / h).epsilon(1e-14));
                if (kind == KernelKind::Epanechnikov && mode == WindowMode::Future)
                    for (std::size_t i = 1; i < w.size(); ++i)
                        CHECK(w.weights[i] < w.weights[i - 1]);
                if (kind == KernelKind::Michels && h >= 4) {
                    // exactly one local maximum, at an interior offset
                    int n_peaks = 0;
                    std::size_t peak = 0;
                    for (std::size_t i = 0; i < w.size(); ++i) {
                        const bool up = i == 0 || w.weights[i] > w.weights[i - 1];
                        const bool down =
                            i + 1 == w.size() || w.weights[i] > w.weights[i + 1];
                        if (up && down) {
                            ++n_peaks;
                            peak = i;
                        }
                    }
                    CHECK(n_peaks == 1);
                    CHECK(peak >= 1);
                    CHECK(peak < static_cast<std::size_t>((h + 1) / 2));
                }
            }
        }
    }
}

TEST_CASE("aggregate hand example") {
    const DailySeries y = testutil::series_from({1.0, 2.0, 3.0, 4.0});
    const DailySeries agg =
        aggregate(y, kernel_weights({KernelKind::MovingAverage, 2, WindowMode::Future}));
    CHECK(agg.values[0] == doctest::Approx(1.5).epsilon(1e-14));
    CHECK(agg.values[1] == doctest::Approx(2.5).epsilon(1e-14));
    CHECK(agg.values[2] == doctest::Approx(3.5).epsilon(1e-14));
    CHECK(agg.is_missing(3));
}

TEST_CASE("aggregating a constant preserves it") {
    const DailySeries y = testutil::series_from(std::vector<double>(40, 2.75));
    for (KernelKind kind :
         {KernelKind::MovingAverage, KernelKind::Epanechnikov, KernelKind::Michels}) {
        const DailySeries agg = aggregate(y, kernel_weights({kind, 9, WindowMode::Future}));
        for (std::size_t t = 0; t < agg.size(); ++t)
            if (!agg.is_missing(t))
                CHECK(agg.values[t] == doctest::Approx(2.75).epsilon(1e-14));
        CHECK(agg.count_present() == 40 - 8);
    }
}

TEST_CASE("aggregation is linear where defined") {
    const DailySeries y = testutil::random_series(100, 1);
    const DailySeries z = testutil::random_series(100, 2);
    const double a = 1.7, b = -0.4;
    DailySeries combo = y;
    for (std::size_t t = 0; t < combo.size(); ++t)
        combo.values[t] = a * y.values[t] + b * z.values[t];
    const WeightVector w = kernel_weights({KernelKind::Epanechnikov, 5, WindowMode::Future});
    const DailySeries left = aggregate(combo, w);
    const DailySeries ay = aggregate(y, w);
    const DailySeries az = aggregate(z, w);
    for (std::size_t t = 0; t < left.size(); ++t) {
        if (left.is_missing(t)) continue;
        const double right = a * ay.values[t] + b * az.values[t];
        CHECK(left.values[t] == doctest::Approx(right).epsilon(1e-12));
    }
}

TEST_CASE("windows touching missing values and edges yield missing") {
    DailySeries y = testutil::random_series(30, 3);
    y.set_missing(10);
    const WeightVector w = kernel_weights({KernelKind::MovingAverage, 3, WindowMode::Future});
    const DailySeries agg = aggregate(y, w);
    for (std::size_t t = 8; t <= 10; ++t) CHECK(agg.is_missing(t));
    CHECK(!agg.is_missing(7));
    CHECK(!agg.is_missing(11));
    CHECK(agg.is_missing(28));
    CHECK(agg.is_missing(29));

    const DailySeries centered = aggregate(
        y, kernel_weights({KernelKind::Epanechnikov, 5, WindowMode::Centered}));
    CHECK(centered.is_missing(0));
    CHECK(centered.is_missing(1));
    CHECK(!centered.is_missing(2));
}

TEST_CASE("series shorter than the window is rejected") {
    const DailySeries y = testutil::series_from({1.0, 2.0});
    CHECK_THROWS_AS(
        aggregate(y, kernel_weights({KernelKind::MovingAverage, 3, WindowMode::Future})),
        DataError);
}

TEST_CASE("parallel aggregation matches the serial reference") {
    for (std::uint64_t seed : {11u, 12u, 13u}) {
        const DailySeries y = testutil::random_series(500, seed, 0.05);
        for (const auto& spec :
             {AggregationSpec{KernelKind::MovingAverage, 7, WindowMode::Future},
              AggregationSpec{KernelKind::Epanechnikov, 11, WindowMode::Centered},
              AggregationSpec{KernelKind::Michels, 9, WindowMode::Future}}) {
            const WeightVector w = kernel_weights(spec);
            const DailySeries fast = aggregate(y, w);
            const DailySeries ref = reference::aggregate(y, w);
            REQUIRE(fast.size() == ref.size());
            for (std::size_t t = 0; t < fast.size(); ++t) {
                CHECK(fast.is_missing(t) == ref.is_missing(t));
                if (!fast.is_missing(t))
                    CHECK(fast.values[t] == doctest::Approx(ref.values[t]).epsilon(1e-14));
            }
        }
    }
}
