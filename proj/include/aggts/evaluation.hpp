#ifndef AGGTS_EVALUATION_HPP
#define AGGTS_EVALUATION_HPP

#include "aggts/arma.hpp"
#include "aggts/model_config.hpp"
#include "aggts/daily_series.hpp"

#include <optional>
#include <vector>

namespace aggts {

/// hv-block fold geometry: gap h removed on each side of a validation block
/// of half-width v; validation centers advance by stride.
struct CvPlan {
    int h = 0;
    int v = 0;
    int stride = 1;

    void validate() const;
};

struct Fold {
    int center = 0;
    std::vector<int> validation; // [center-v, center+v]
    std::vector<int> training;   // outside [center-v-h, center+v+h]
};

/// Folds in center order; every training index is at distance > h + v from
/// the center. Requires n > 2(h+v)+1.
std::vector<Fold> hv_block_folds(int n, const CvPlan& plan);

/// Classical sum-of-squares R^2 over jointly valid rows; may be negative.
/// Throws DataError when y is constant over those rows.
double r_squared(const DailySeries& y_original, const DailySeries& fitted);

struct FoldResult {
    int fold = 0;
    int n_points = 0;
    double mse = 0.0;
    bool skipped = false;
    std::string message;
};

struct CvResult {
    double cv_error = 0.0; // mean squared error over all scored points
    double cv_se = 0.0;    // sd of per-fold means / sqrt(n_folds)
    int n_folds = 0;       // scored folds
    int skipped_folds = 0;
    int n_points = 0;
    std::vector<FoldResult> folds;
};

struct CvOptions {
    double detrend_df_per_year = 8.0;
    bool refit_order = true; // re-select (p,q) inside each training fold
    std::optional<ArmaOrder> fixed_order;
};

/// hv-block cross-validation with within-fold aggregation. Per fold the
/// response trend is fitted on training rows only, the detrended response
/// is aggregated separately inside the training and validation blocks (a
/// window leaving its block yields a missing value), the model is fitted on
/// training rows and validation rows are predicted as X*beta. Scored errors
/// compare prediction + trend against the original pre-aggregation
/// response, at validation rows whose within-block aggregated response is
/// defined. Fold fits are Gaussian on the detrended scale for every model;
/// unfittable folds are skipped and counted. Folds run in parallel.
CvResult hv_block_cv(const Dataset& data, const ModelConfig& model,
                     const CvPlan& plan, const CvOptions& options = {});

/// Dependence-horizon default gap: aggregation look-ahead (H-1) plus the
/// cross-basis max lag.
int default_cv_gap(const ModelConfig& model);

} // namespace aggts

#endif
