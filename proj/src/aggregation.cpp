#include "aggts/aggregation.hpp"
#include "aggts/errors.hpp"

#include <cmath>
#include <numeric>

namespace aggts {

KernelKind parse_kernel_kind(const std::string& name) {
    if (name == "ma") return KernelKind::MovingAverage;
    if (name == "epan") return KernelKind::Epanechnikov;
    if (name == "michels") return KernelKind::Michels;
    throw ConfigError("unknown kernel '" + name + "' (expected ma, epan or michels)");
}

std::string kernel_kind_name(KernelKind kind) {
    switch (kind) {
        case KernelKind::MovingAverage: return "ma";
        case KernelKind::Epanechnikov: return "epan";
        case KernelKind::Michels: return "michels";
    }
    return "?";
}

WindowMode parse_window_mode(const std::string& name) {
    if (name == "future") return WindowMode::Future;
    if (name == "centered") return WindowMode::Centered;
    throw ConfigError("unknown window mode '" + name + "' (expected future or centered)");
}

std::string window_mode_name(WindowMode mode) {
    return mode == WindowMode::Future ? "future" : "centered";
}

void AggregationSpec::validate() const {
    if (window < 1) throw ConfigError("aggregation window must be >= 1");
    if (mode == WindowMode::Centered) {
        if (window % 2 == 0)
            throw ConfigError("centered aggregation requires an odd window");
        if (kind == KernelKind::Michels)
            throw ConfigError("the Michels kernel has no centered variant");
    }
}

WeightVector kernel_weights(const AggregationSpec& spec) {
    spec.validate();
    const int h = spec.window;
    WeightVector out;

    if (spec.mode == WindowMode::Future) {
        out.offsets.resize(static_cast<std::size_t>(h));
        std::iota(out.offsets.begin(), out.offsets.end(), 0);
        out.weights.resize(out.offsets.size());
        for (int i = 0; i < h; ++i) {
            const double u = (i + 0.5) / h; // midpoint keeps the last weight positive
            double w = 1.0;
            switch (spec.kind) {
                case KernelKind::MovingAverage: w = 1.0; break;
                case KernelKind::Epanechnikov: w = 0.75 * (1.0 - u * u); break;
                case KernelKind::Michels: w = u * (1.0 - u) * (1.0 - u); break;
            }
            out.weights[static_cast<std::size_t>(i)] = w;
        }
    } else {
        const int half = (h - 1) / 2;
        for (int i = -half; i <= half; ++i) out.offsets.push_back(i);
        out.weights.resize(out.offsets.size());
        for (int i = -half; i <= half; ++i) {
            const double u = static_cast<double>(i) / ((h + 1) / 2);
            double w = 1.0;
            switch (spec.kind) {
                case KernelKind::MovingAverage: w = 1.0; break;
                case KernelKind::Epanechnikov: w = 0.75 * (1.0 - u * u); break;
                case KernelKind::Michels: break; // rejected by validate()
            }
            out.weights[static_cast<std::size_t>(i + half)] = w;
        }
    }

    const double total = std::accumulate(out.weights.begin(), out.weights.end(), 0.0);
    for (auto& w : out.weights) w /= total;
    return out;
}

DailySeries aggregate(const DailySeries& series, const WeightVector& weights) {
    const auto n = static_cast<std::ptrdiff_t>(series.size());
    const auto k = static_cast<std::ptrdiff_t>(weights.size());
    if (k == 0) throw ConfigError("empty weight vector");
    const int lo = weights.min_offset();
    const int hi = weights.max_offset();
    if (n < hi - lo + 1) throw DataError("series shorter than the aggregation window");

    DailySeries out;
    out.start = series.start;
    out.values.assign(static_cast<std::size_t>(n), DailySeries::na);
    out.missing.assign(static_cast<std::size_t>(n), 1);

#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t t = 0; t < n; ++t) {
        if (t + lo < 0 || t + hi >= n) continue;
        double acc = 0.0;
        bool ok = true;
        for (std::ptrdiff_t j = 0; j < k; ++j) {
            const std::ptrdiff_t idx = t + weights.offsets[static_cast<std::size_t>(j)];
            if (series.missing[static_cast<std::size_t>(idx)]) {
                ok = false;
                break;
            }
            acc += weights.weights[static_cast<std::size_t>(j)] *
                   series.values[static_cast<std::size_t>(idx)];
        }
        if (ok) {
            out.values[static_cast<std::size_t>(t)] = acc;
            out.missing[static_cast<std::size_t>(t)] = 0;
        }
    }
    return out;
}

DailySeries aggregate(const DailySeries& series, const AggregationSpec& spec) {
    return aggregate(series, kernel_weights(spec));
}

} // namespace aggts
