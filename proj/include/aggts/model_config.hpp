#ifndef AGGTS_MODEL_CONFIG_HPP
#define AGGTS_MODEL_CONFIG_HPP

#include "aggts/aggregation.hpp"
#include "aggts/cross_basis.hpp"

#include <optional>
#include <string>
#include <vector>

namespace aggts {

enum class Family { Gaussian, QuasiPoisson };

std::string family_name(Family f);
Family parse_family(const std::string& name);

/// Cross-basis configuration resolved against data at fit time: predictor
/// knots at the given exposure percentiles, lag knots equally spaced on a
/// log scale.
struct CrossBasisConfig {
    std::vector<double> var_percentiles{10.0, 75.0, 90.0};
    int var_degree = 3;
    int lag_degree = 3;
    int n_lag_knots = 3;
    int max_lag = 21;

    void validate() const;
    CrossBasisSpec realize(const DailySeries& exposure) const;
};

/// One model row of an experiment: aggregation scheme (if any), family,
/// covariate switches and ARMA search bounds.
struct ModelConfig {
    std::string name = "model";
    std::optional<AggregationSpec> aggregation;
    Family family = Family::QuasiPoisson;
    bool day_of_week = false;
    bool arma_errors = false; // joint ARMA-error fit vs plain regression
    int max_p = 5;
    int max_q = 5;
    bool use_bic = false;
    CrossBasisConfig cross_basis;
    bool include_time_spline = true; // in-sample confounder control
    double time_spline_df_per_year = 8.0;

    /// Family is determined by whether aggregation is active: aggregated
    /// responses are Gaussian, the non-aggregated baseline is quasi-Poisson.
    void validate() const;

    int aggregation_window() const { return aggregation ? aggregation->window : 1; }
};

} // namespace aggts

#endif
