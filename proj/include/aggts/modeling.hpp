#ifndef AGGTS_MODELING_HPP
#define AGGTS_MODELING_HPP

#include "aggts/model_config.hpp"
#include "aggts/regression.hpp"

#include <optional>

namespace aggts {

/// Design matrix realized for a dataset. The predictor basis sums to one,
/// so the full tensor cross-basis carries one constant combination per lag
/// column; the first predictor block is dropped and an explicit intercept
/// added instead, which spans the same function space with independent
/// columns. The dropped block has no effect on RR surfaces (its
/// contribution is constant in the predictor and cancels against the
/// reference).
struct RealizedDesign {
    CrossBasisSpec cb_spec;
    DesignMatrix design;
    int cb_first = 0;   // first retained cross-basis column in the design
    int cb_count = 0;   // retained cross-basis columns
    int cb_dropped = 0; // leading cross-basis columns dropped (one block)
};

RealizedDesign build_design(const Dataset& data, const ModelConfig& model,
                            bool with_time_spline);

/// Full-data fit of one model: quasi-Poisson for the non-aggregated
/// baseline, Gaussian (optionally with ARMA errors) for aggregated
/// responses. fitted carries response-scale fitted values: GLM mean,
/// X*beta, or one-step values when ARMA errors are modelled.
struct ModelFit {
    ModelConfig config;
    RealizedDesign realized;
    std::optional<RegArmaFit> reg;
    std::optional<GlmFit> glm;
    DailySeries fitted;
    double r2 = 0.0; // against the pre-aggregation response
};

ModelFit fit_model(const Dataset& data, const ModelConfig& model);

/// Cross-basis coefficient block of a fitted model.
Eigen::VectorXd cross_basis_beta(const ModelFit& fit);

} // namespace aggts

#endif
