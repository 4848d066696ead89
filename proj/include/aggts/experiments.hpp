#ifndef AGGTS_EXPERIMENTS_HPP
#define AGGTS_EXPERIMENTS_HPP

#include "aggts/evaluation.hpp"
#include "aggts/modeling.hpp"
#include "aggts/synthdata.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace aggts {

/// Where an experiment's data comes from: CSV files or a synthetic scenario.
struct DataSource {
    std::optional<std::string> response_path;
    std::optional<std::string> exposure_path;
    std::string date_column = "date";
    std::string value_column = "value";
    std::optional<ScenarioSpec> scenario;

    void validate() const;
    Dataset load() const;
};

/// CV geometry as configured: h < 0 means the dependence-horizon default
/// (H - 1 + max lag) resolved per model.
struct CvConfig {
    int h = -1;
    int v = 45;
    int stride = -1; // < 0: non-overlapping blocks (2v+1)
    bool refit_order = true;
    double detrend_df_per_year = 8.0;
    bool enabled = true;

    CvPlan resolve(const ModelConfig& model) const;
};

struct SurfaceConfig {
    int n_temp = 40;
    std::optional<double> reference_temp; // default: exposure median
};

struct ExperimentConfig {
    DataSource data;
    std::vector<ModelConfig> models;
    CvConfig cv;
    SurfaceConfig surface;

    void validate() const;
};

struct ComparisonRow {
    std::string model;
    std::string status = "ok"; // failures are data, not crashes
    double r2 = 0.0;
    double cv_error = 0.0;
    double cv_se = 0.0;
    int cv_folds = 0;
    int cv_skipped = 0;
    ArmaOrder order;
    double aic = 0.0;    // NaN for quasi-Poisson rows
    double loglik = 0.0; // NaN for quasi-Poisson rows
    int dropped_rows = 0;
};

struct ComparisonReport {
    std::vector<ComparisonRow> rows;
    std::map<std::string, SurfaceGrid> surfaces; // per model
};

/// Fits every model on the full data, computes in-sample R^2 against the
/// pre-aggregation response, runs hv-block CV and extracts the RR surface.
/// A failing model yields an error row, not an abort.
ComparisonReport run_comparison(const ExperimentConfig& config);

struct SweepCell {
    KernelKind kernel = KernelKind::MovingAverage;
    int window = 0;
    std::string status = "ok";
    double r2 = 0.0;
    double cv_error = 0.0;
    double cv_se = 0.0;
    ArmaOrder order;
};

/// Kernel x window-size grid of aggregated time-series models (two-stage
/// fit + R^2 + CV per cell), merged in deterministic (kernel, H) order.
/// Cells run in parallel; per-cell failures are recorded and the sweep
/// continues. The model template supplies the cross-basis and search
/// bounds; its aggregation is replaced cell by cell.
std::vector<SweepCell> run_sweep(const ExperimentConfig& config,
                                 std::vector<KernelKind> kernels,
                                 std::vector<int> windows);

} // namespace aggts

#endif
