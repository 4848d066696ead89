#include "aggts/model_config.hpp"
#include "aggts/errors.hpp"

#include <algorithm>

namespace aggts {

std::string family_name(Family f) {
    return f == Family::Gaussian ? "gaussian" : "quasipoisson";
}

Family parse_family(const std::string& name) {
    if (name == "gaussian") return Family::Gaussian;
    if (name == "quasipoisson") return Family::QuasiPoisson;
    throw ConfigError("unknown family '" + name + "' (expected gaussian or quasipoisson)");
}

void CrossBasisConfig::validate() const {
    if (max_lag < 0) throw ConfigError("max_lag must be >= 0");
    if (var_degree < 0 || lag_degree < 0) throw ConfigError("spline degree must be >= 0");
    if (n_lag_knots < 0) throw ConfigError("n_lag_knots must be >= 0");
    for (double p : var_percentiles)
        if (p <= 0.0 || p >= 100.0)
            throw ConfigError("cross-basis percentiles must lie in (0, 100)");
    if (!std::is_sorted(var_percentiles.begin(), var_percentiles.end()))
        throw ConfigError("cross-basis percentiles must be increasing");
}

CrossBasisSpec CrossBasisConfig::realize(const DailySeries& exposure) const {
    validate();
    double lo = 0.0, hi = 0.0;
    bool first = true;
    for (std::size_t i = 0; i < exposure.size(); ++i) {
        if (exposure.is_missing(i)) continue;
        const double v = exposure.values[i];
        if (first || v < lo) lo = v;
        if (first || v > hi) hi = v;
        first = false;
    }
    if (first) throw DataError("exposure series has no observed values");

    CrossBasisSpec spec;
    spec.max_lag = max_lag;
    spec.predictor.degree = var_degree;
    spec.predictor.boundary_low = lo;
    spec.predictor.boundary_high = hi;
    if (!var_percentiles.empty())
        spec.predictor.interior_knots = default_knots(exposure, var_percentiles);

    spec.lag.degree = lag_degree;
    spec.lag.boundary_low = 0.0;
    spec.lag.boundary_high = static_cast<double>(max_lag);
    if (max_lag >= 1 && n_lag_knots > 0) {
        auto knots = lag_knots_log(max_lag, n_lag_knots);
        // degenerate log knots (max_lag == 1) collapse; keep only those
        // strictly inside (0, max_lag) and strictly increasing
        std::vector<double> kept;
        for (double k : knots)
            if (k > 0.0 && k < static_cast<double>(max_lag) &&
                (kept.empty() || k > kept.back()))
                kept.push_back(k);
        spec.lag.interior_knots = std::move(kept);
    }
    spec.validate();
    return spec;
}

void ModelConfig::validate() const {
    if (name.empty()) throw ConfigError("model name must not be empty");
    if (aggregation) {
        aggregation->validate();
        if (family != Family::Gaussian)
            throw ConfigError("model '" + name +
                              "': aggregated responses must use the gaussian family");
    } else {
        if (family == Family::Gaussian)
            throw ConfigError("model '" + name +
                              "': the non-aggregated baseline must be quasipoisson");
        if (arma_errors)
            throw ConfigError("model '" + name +
                              "': ARMA errors require an aggregated (gaussian) response");
    }
    if (max_p < 0 || max_q < 0) throw ConfigError("ARMA order bounds must be >= 0");
    if (time_spline_df_per_year <= 0.0)
        throw ConfigError("time spline df per year must be positive");
    cross_basis.validate();
}

} // namespace aggts
