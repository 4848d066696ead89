#include "aggts/experiments.hpp"
#include "aggts/csv_io.hpp"
#include "aggts/errors.hpp"
#include "aggts/splines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace aggts {

void DataSource::validate() const {
    const bool files = response_path.has_value() || exposure_path.has_value();
    if (scenario && files)
        throw ConfigError("data source must be either files or a scenario, not both");
    if (!scenario && !(response_path && exposure_path))
        throw ConfigError("data source needs a scenario or both response and exposure paths");
}

Dataset DataSource::load() const {
    validate();
    if (scenario) return generate_dataset(*scenario);
    const DailySeries y = load_series(*response_path, date_column, value_column);
    const DailySeries x = load_series(*exposure_path, date_column, value_column);
    return align(y, x, "files");
}

CvPlan CvConfig::resolve(const ModelConfig& model) const {
    CvPlan plan;
    plan.h = h >= 0 ? h : default_cv_gap(model);
    plan.v = v;
    plan.stride = stride >= 1 ? stride : 2 * v + 1;
    plan.validate();
    return plan;
}

void ExperimentConfig::validate() const {
    data.validate();
    if (models.empty()) throw ConfigError("experiment needs at least one model");
    std::set<std::string> names;
    for (const auto& m : models) {
        m.validate();
        if (!names.insert(m.name).second)
            throw ConfigError("duplicate model name '" + m.name + "'");
    }
}

namespace {

std::vector<double> exposure_temp_grid(const DailySeries& exposure, int n_temp,
                                       double reference) {
    std::vector<double> vals;
    for (std::size_t i = 0; i < exposure.size(); ++i)
        if (!exposure.is_missing(i)) vals.push_back(exposure.values[i]);
    const auto [lo_it, hi_it] = std::minmax_element(vals.begin(), vals.end());
    const double lo = *lo_it, hi = *hi_it;
    std::vector<double> grid;
    grid.reserve(static_cast<std::size_t>(n_temp) + 1);
    for (int i = 0; i < n_temp; ++i)
        grid.push_back(i == n_temp - 1 ? hi : lo + (hi - lo) * i / (n_temp - 1));
    // the reference value is part of the grid so the unit row is visible
    grid.push_back(reference);
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    return grid;
}

double exposure_median(const DailySeries& exposure) {
    std::vector<double> vals;
    for (std::size_t i = 0; i < exposure.size(); ++i)
        if (!exposure.is_missing(i)) vals.push_back(exposure.values[i]);
    std::sort(vals.begin(), vals.end());
    return quantile_sorted(vals, 0.5);
}

} // namespace

ComparisonReport run_comparison(const ExperimentConfig& config) {
    config.validate();
    const Dataset data = config.data.load();
    const double nan = std::numeric_limits<double>::quiet_NaN();

    ComparisonReport report;
    for (const auto& model : config.models) {
        ComparisonRow row;
        row.model = model.name;
        row.r2 = nan;
        row.cv_error = nan;
        row.cv_se = nan;
        row.aic = nan;
        row.loglik = nan;
        try {
            const ModelFit fit = fit_model(data, model);
            row.r2 = fit.r2;
            if (fit.reg) {
                row.order = fit.reg->order;
                row.aic = fit.reg->aic_value;
                row.loglik = fit.reg->loglik;
                row.dropped_rows = fit.reg->dropped_rows;
            }

            const double reference = config.surface.reference_temp
                                         ? *config.surface.reference_temp
                                         : exposure_median(data.exposure);
            const auto grid =
                exposure_temp_grid(data.exposure, config.surface.n_temp, reference);
            report.surfaces.emplace(
                model.name,
                rr_surface(cross_basis_beta(fit), fit.realized.cb_spec, grid, reference));

            if (config.cv.enabled) {
                CvOptions options;
                options.detrend_df_per_year = config.cv.detrend_df_per_year;
                options.refit_order = config.cv.refit_order;
                if (!config.cv.refit_order && model.arma_errors && fit.reg)
                    options.fixed_order = fit.reg->order; // global order, not re-selected
                const CvResult cv = hv_block_cv(data, model, config.cv.resolve(model), options);
                row.cv_error = cv.cv_error;
                row.cv_se = cv.cv_se;
                row.cv_folds = cv.n_folds;
                row.cv_skipped = cv.skipped_folds;
            }
        } catch (const std::exception& e) {
            row.status = std::string("error: ") + e.what();
        }
        report.rows.push_back(std::move(row));
    }
    return report;
}

std::vector<SweepCell> run_sweep(const ExperimentConfig& config,
                                 std::vector<KernelKind> kernels,
                                 std::vector<int> windows) {
    config.validate();
    if (kernels.empty() || windows.empty())
        throw ConfigError("sweep needs at least one kernel and one window size");
    for (int w : windows)
        if (w < 2 || w > 60) throw ConfigError("sweep windows must lie in [2, 60]");

    std::sort(kernels.begin(), kernels.end());
    kernels.erase(std::unique(kernels.begin(), kernels.end()), kernels.end());
    std::sort(windows.begin(), windows.end());
    windows.erase(std::unique(windows.begin(), windows.end()), windows.end());

    const Dataset data = config.data.load();
    const ModelConfig& base = config.models.front();
    const double nan = std::numeric_limits<double>::quiet_NaN();

    std::vector<SweepCell> cells(kernels.size() * windows.size());

#pragma omp parallel for schedule(dynamic) collapse(2)
    for (std::size_t ki = 0; ki < kernels.size(); ++ki) {
        for (std::size_t wi = 0; wi < windows.size(); ++wi) {
            SweepCell cell;
            cell.kernel = kernels[ki];
            cell.window = windows[wi];
            cell.r2 = nan;
            cell.cv_error = nan;
            cell.cv_se = nan;
            try {
                ModelConfig model = base;
                model.name = kernel_kind_name(cell.kernel) + "_H" +
                             std::to_string(cell.window);
                model.aggregation =
                    AggregationSpec{cell.kernel, cell.window, WindowMode::Future};
                model.family = Family::Gaussian;
                model.arma_errors = true;
                model.day_of_week = false;

                const ModelFit fit = fit_model(data, model);
                cell.r2 = fit.r2;
                if (fit.reg) cell.order = fit.reg->order;

                if (config.cv.enabled) {
                    CvOptions options;
                    options.detrend_df_per_year = config.cv.detrend_df_per_year;
                    options.refit_order = config.cv.refit_order;
                    if (!config.cv.refit_order && fit.reg)
                        options.fixed_order = fit.reg->order;
                    const CvResult cv =
                        hv_block_cv(data, model, config.cv.resolve(model), options);
                    cell.cv_error = cv.cv_error;
                    cell.cv_se = cv.cv_se;
                }
            } catch (const std::exception& e) {
                cell.status = std::string("error: ") + e.what();
            }
            cells[ki * windows.size() + wi] = std::move(cell);
        }
    }
    return cells;
}

} // namespace aggts
