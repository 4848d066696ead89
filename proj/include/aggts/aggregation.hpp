#ifndef AGGTS_AGGREGATION_HPP
#define AGGTS_AGGREGATION_HPP

#include "aggts/daily_series.hpp"

#include <string>
#include <vector>

namespace aggts {

enum class KernelKind { MovingAverage, Epanechnikov, Michels };
enum class WindowMode { Future, Centered };

KernelKind parse_kernel_kind(const std::string& name); // "ma" | "epan" | "michels"
std::string kernel_kind_name(KernelKind kind);
WindowMode parse_window_mode(const std::string& name); // "future" | "centered"
std::string window_mode_name(WindowMode mode);

/// Kernel family, window size and window placement for response aggregation.
struct AggregationSpec {
    KernelKind kind = KernelKind::MovingAverage;
    int window = 7;                       // H >= 1; odd when centered
    WindowMode mode = WindowMode::Future; // future: offsets 0..H-1

    void validate() const; // throws ConfigError
};

/// Resolved normalized weights w_i over consecutive offsets i.
struct WeightVector {
    std::vector<int> offsets;
    std::vector<double> weights;

    std::size_t size() const { return offsets.size(); }
    int min_offset() const { return offsets.front(); }
    int max_offset() const { return offsets.back(); }
};

/// Normalized aggregation weights for the spec.
///
/// MA: constant 1/H. Epanechnikov (future): w_i proportional to
/// 0.75*(1 - u^2) at u = (i + 0.5)/H, strictly decreasing. Michels-style
/// (future): w_i proportional to u*(1 - u)^2 at the same midpoints, with an
/// interior mode near i = H/3. Centered mode mirrors the symmetric kernels
/// around 0 with u = i / ((H+1)/2); Michels has no centered variant.
WeightVector kernel_weights(const AggregationSpec& spec);

/// Weighted local aggregation: out[t] = sum_i w_i * y[t+i] wherever every
/// touched value exists; positions whose window exits the series or touches
/// a missing value become missing. Same date indexing as the input.
/// Parallelized over output positions.
DailySeries aggregate(const DailySeries& series, const WeightVector& weights);

DailySeries aggregate(const DailySeries& series, const AggregationSpec& spec);

} // namespace aggts

#endif
