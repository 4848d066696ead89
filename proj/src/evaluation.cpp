#include "aggts/evaluation.hpp"
#include "aggts/detrend.hpp"
#include "aggts/errors.hpp"
#include "aggts/modeling.hpp"

#include <cmath>
#include <numeric>

namespace aggts {

void CvPlan::validate() const {
    if (h < 0) throw ConfigError("cv gap h must be >= 0");
    if (v < 0) throw ConfigError("cv half-width v must be >= 0");
    if (stride < 1) throw ConfigError("cv stride must be >= 1");
}

std::vector<Fold> hv_block_folds(int n, const CvPlan& plan) {
    plan.validate();
    if (n <= 2 * (plan.h + plan.v) + 1)
        throw DataError("series too short for the cv plan (needs n > 2(h+v)+1)");

    std::vector<Fold> folds;
    for (int c = plan.v; c + plan.v < n; c += plan.stride) {
        Fold fold;
        fold.center = c;
        for (int t = c - plan.v; t <= c + plan.v; ++t) fold.validation.push_back(t);
        const int lo = c - plan.v - plan.h;
        const int hi = c + plan.v + plan.h;
        for (int t = 0; t < n; ++t)
            if (t < lo || t > hi) fold.training.push_back(t);
        folds.push_back(std::move(fold));
    }
    return folds;
}

double r_squared(const DailySeries& y_original, const DailySeries& fitted) {
    if (y_original.size() != fitted.size() || y_original.start != fitted.start)
        throw ConfigError("r_squared requires identically indexed series");

    double sum = 0.0;
    int n = 0;
    for (std::size_t t = 0; t < y_original.size(); ++t) {
        if (y_original.is_missing(t) || fitted.is_missing(t)) continue;
        sum += y_original.values[t];
        ++n;
    }
    if (n < 2) throw DataError("r_squared needs at least two jointly valid points");
    const double mean = sum / n;

    double sse = 0.0, sst = 0.0;
    for (std::size_t t = 0; t < y_original.size(); ++t) {
        if (y_original.is_missing(t) || fitted.is_missing(t)) continue;
        const double err = y_original.values[t] - fitted.values[t];
        const double dev = y_original.values[t] - mean;
        sse += err * err;
        sst += dev * dev;
    }
    if (sst <= 0.0) throw DataError("r_squared undefined for a constant response");
    return 1.0 - sse / sst;
}

int default_cv_gap(const ModelConfig& model) {
    const int h_window = model.aggregation ? model.aggregation->window : 1;
    return (h_window - 1) + model.cross_basis.max_lag;
}

namespace {

DailySeries masked_series(const DailySeries& s, const std::vector<char>& keep) {
    DailySeries out = s;
    for (std::size_t t = 0; t < out.size(); ++t)
        if (!keep[t]) out.set_missing(t);
    return out;
}

} // namespace

CvResult hv_block_cv(const Dataset& data, const ModelConfig& model, const CvPlan& plan,
                     const CvOptions& options) {
    model.validate();
    const auto n = static_cast<int>(data.response.size());
    const auto folds = hv_block_folds(n, plan);

    // exposure-side design is fold-independent; response-side steps
    // (trend, aggregation) are redone inside each fold
    ModelConfig fold_model = model;
    fold_model.include_time_spline = false; // CV detrends instead
    const RealizedDesign realized = build_design(data, fold_model, false);
    const DesignMatrix& design = realized.design;

    WeightVector weights;
    if (model.aggregation) weights = kernel_weights(*model.aggregation);

    std::vector<FoldResult> results(folds.size());

#pragma omp parallel for schedule(dynamic)
    for (std::size_t fi = 0; fi < folds.size(); ++fi) {
        const Fold& fold = folds[fi];
        FoldResult res;
        res.fold = static_cast<int>(fi);
        try {
            std::vector<char> train_mask(static_cast<std::size_t>(n), 0);
            for (int t : fold.training) train_mask[static_cast<std::size_t>(t)] = 1;
            std::vector<char> valid_mask(static_cast<std::size_t>(n), 0);
            for (int t : fold.validation) valid_mask[static_cast<std::size_t>(t)] = 1;

            const auto trend =
                fit_time_trend(data.response, options.detrend_df_per_year, train_mask);
            DailySeries detrended = data.response;
            for (std::size_t t = 0; t < detrended.size(); ++t)
                if (!detrended.is_missing(t)) detrended.values[t] -= trend[t];

            // within-block aggregation: windows may not leave their block
            DailySeries y_train = masked_series(detrended, train_mask);
            DailySeries y_valid = masked_series(detrended, valid_mask);
            if (model.aggregation) {
                y_train = aggregate(y_train, weights);
                y_valid = aggregate(y_valid, weights);
            }

            Eigen::VectorXd beta;
            if (model.arma_errors) {
                RegArmaFit fit;
                if (options.fixed_order) {
                    fit = fit_reg_arma(design, y_train, *options.fixed_order);
                } else if (options.refit_order) {
                    fit = two_stage_fit(design, y_train, model.max_p, model.max_q,
                                        model.use_bic);
                } else {
                    fit = fit_reg_arma(design, y_train, ArmaOrder{0, 0});
                }
                beta = fit.beta;
            } else {
                beta = ols_fit(design, y_train).beta;
            }

            // mean-only prediction + trend, scored against the original
            // pre-aggregation response
            double sq_sum = 0.0;
            int n_points = 0;
            for (int t : fold.validation) {
                const auto i = static_cast<std::size_t>(t);
                if (y_valid.is_missing(i)) continue; // window left the block
                if (!design.row_valid[i] || data.response.is_missing(i)) continue;
                const double pred = design.X.row(t).dot(beta) + trend[i];
                const double err = data.response.values[i] - pred;
                sq_sum += err * err;
                ++n_points;
            }
            if (n_points == 0) {
                res.skipped = true;
                res.message = "no scorable validation points";
            } else {
                res.n_points = n_points;
                res.mse = sq_sum / n_points;
            }
        } catch (const std::exception& e) {
            res.skipped = true;
            res.message = e.what();
        }
        results[fi] = std::move(res);
    }

    CvResult out;
    out.folds = std::move(results);
    double total_sq = 0.0;
    std::vector<double> fold_means;
    for (const auto& res : out.folds) {
        if (res.skipped) {
            ++out.skipped_folds;
            continue;
        }
        total_sq += res.mse * res.n_points;
        out.n_points += res.n_points;
        fold_means.push_back(res.mse);
    }
    out.n_folds = static_cast<int>(fold_means.size());
    if (out.n_folds == 0) throw NumericError("all cv folds were unfittable");
    out.cv_error = total_sq / out.n_points;

    if (out.n_folds > 1) {
        const double mean =
            std::accumulate(fold_means.begin(), fold_means.end(), 0.0) / out.n_folds;
        double ss = 0.0;
        for (double m : fold_means) ss += (m - mean) * (m - mean);
        out.cv_se = std::sqrt(ss / (out.n_folds - 1)) / std::sqrt(out.n_folds);
    }
    return out;
}

} // namespace aggts
