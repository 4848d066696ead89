#include "commands.hpp"
#include "config_json.hpp"

#include "aggts/csv_io.hpp"
#include "aggts/errors.hpp"
#include "aggts/evaluation.hpp"
#include "aggts/experiments.hpp"
#include "aggts/modeling.hpp"
#include "aggts/splines.hpp"
#include "aggts/version.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <sstream>

namespace aggts::cli {

namespace {

std::string csv_number(double v) {
    return std::isfinite(v) ? format_double(v) : std::string{};
}

std::string surface_csv(const SurfaceGrid& grid) {
    std::ostringstream out;
    out << "temp,lag,rr\n";
    for (std::size_t v = 0; v < grid.temp_grid.size(); ++v)
        for (std::size_t l = 0; l < grid.lag_grid.size(); ++l)
            out << format_double(grid.temp_grid[v]) << ',' << grid.lag_grid[l] << ','
                << format_double(grid.rr(static_cast<Eigen::Index>(v),
                                         static_cast<Eigen::Index>(l)))
                << '\n';
    return out.str();
}

json manifest_json(const std::string& subcommand, const json& config_echo) {
    return json{{"tool", "aggts"},
                {"version", kVersion},
                {"subcommand", subcommand},
                {"config", config_echo}};
}

void write_json(const std::string& path, const json& j) {
    atomic_write_text(path, j.dump(2) + "\n");
}

double resolve_reference(const SurfaceConfig& surface, const DailySeries& exposure) {
    if (surface.reference_temp) return *surface.reference_temp;
    std::vector<double> vals;
    for (std::size_t i = 0; i < exposure.size(); ++i)
        if (!exposure.is_missing(i)) vals.push_back(exposure.values[i]);
    std::sort(vals.begin(), vals.end());
    return quantile_sorted(vals, 0.5);
}

std::vector<double> surface_grid_points(const SurfaceConfig& surface,
                                        const DailySeries& exposure, double reference) {
    std::vector<double> vals;
    for (std::size_t i = 0; i < exposure.size(); ++i)
        if (!exposure.is_missing(i)) vals.push_back(exposure.values[i]);
    const auto [lo_it, hi_it] = std::minmax_element(vals.begin(), vals.end());
    std::vector<double> grid;
    for (int i = 0; i < surface.n_temp; ++i)
        grid.push_back(i == surface.n_temp - 1
                           ? *hi_it
                           : *lo_it + (*hi_it - *lo_it) * i / (surface.n_temp - 1));
    grid.push_back(reference);
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    return grid;
}

json fit_report_json(const ModelFit& fit) {
    json beta = json::object();
    const auto& names = fit.realized.design.names;
    if (fit.reg) {
        for (std::size_t i = 0; i < names.size(); ++i)
            beta[names[i]] = fit.reg->beta(static_cast<Eigen::Index>(i));
    } else if (fit.glm) {
        for (std::size_t i = 0; i < names.size(); ++i)
            beta[names[i]] = fit.glm->beta(static_cast<Eigen::Index>(i));
    }

    json report{{"model", fit.config.name},
                {"family", family_name(fit.config.family)},
                {"r2", fit.r2},
                {"beta", beta}};
    if (fit.reg) {
        report["order"] = {{"p", fit.reg->order.p}, {"q", fit.reg->order.q}};
        report["phi"] = fit.reg->arma.phi;
        report["theta"] = fit.reg->arma.theta;
        report["sigma2"] = fit.reg->arma.sigma2;
        report["loglik"] = fit.reg->loglik;
        report["aic"] = fit.reg->aic_value;
        report["dropped_rows"] = fit.reg->dropped_rows;
        report["converged"] = fit.reg->converged;
    }
    if (fit.glm) {
        report["dispersion"] = fit.glm->dispersion;
        report["deviance"] = fit.glm->deviance;
        report["converged"] = fit.glm->converged;
    }
    return report;
}

} // namespace

void cmd_aggregate(const AggregateArgs& args) {
    const DailySeries series = load_series(args.input, args.date_column, args.value_column);
    AggregationSpec spec;
    spec.kind = parse_kernel_kind(args.kernel);
    spec.window = args.window;
    spec.mode = parse_window_mode(args.mode);
    const DailySeries agg = aggregate(series, kernel_weights(spec));
    write_series_csv(args.output, agg);
}

void cmd_simulate(const std::string& config_path, const std::string& output_dir) {
    const json raw = load_json_file(config_path);
    check_keys(raw, {"scenario", "surface"}, "simulate config");
    if (!raw.contains("scenario"))
        throw ConfigError("simulate config needs a 'scenario' section");
    const ScenarioSpec spec = parse_scenario(raw.at("scenario"));
    const SurfaceConfig surface =
        raw.contains("surface") ? parse_surface(raw.at("surface")) : SurfaceConfig{};

    const Dataset data = generate_dataset(spec);
    namespace fs = std::filesystem;
    fs::create_directories(output_dir);
    write_series_csv((fs::path(output_dir) / "exposure.csv").string(), data.exposure);
    write_series_csv((fs::path(output_dir) / "response.csv").string(), data.response);

    const double reference = resolve_reference(surface, data.exposure);
    const auto grid = surface_grid_points(surface, data.exposure, reference);
    const SurfaceGrid truth = truth_surface_grid(spec, grid, reference);
    atomic_write_text((fs::path(output_dir) / "truth_surface.csv").string(),
                      surface_csv(truth));
    write_json((fs::path(output_dir) / "scenario.json").string(), scenario_to_json(spec));
}

void cmd_fit(const std::string& config_path, const std::string& output_path) {
    const json raw = load_json_file(config_path);
    const ExperimentConfig config = parse_experiment(raw, "model");
    const Dataset data = config.data.load();
    const ModelFit fit = fit_model(data, config.models.front());
    write_json(output_path, fit_report_json(fit));
}

void cmd_cv(const std::string& config_path, const std::string& output_dir) {
    const json raw = load_json_file(config_path);
    const ExperimentConfig config = parse_experiment(raw, "model");
    const Dataset data = config.data.load();
    const ModelConfig& model = config.models.front();

    CvOptions options;
    options.detrend_df_per_year = config.cv.detrend_df_per_year;
    options.refit_order = config.cv.refit_order;
    if (!config.cv.refit_order && model.arma_errors) {
        const ModelFit full = fit_model(data, model);
        if (full.reg) options.fixed_order = full.reg->order;
    }
    const CvPlan plan = config.cv.resolve(model);
    const CvResult result = hv_block_cv(data, model, plan, options);

    std::ostringstream folds;
    folds << "fold,n_valid_points,mse\n";
    for (const auto& f : result.folds) {
        if (f.skipped) continue;
        folds << f.fold << ',' << f.n_points << ',' << format_double(f.mse) << '\n';
    }
    namespace fs = std::filesystem;
    fs::create_directories(output_dir);
    atomic_write_text((fs::path(output_dir) / "cv_folds.csv").string(), folds.str());
    write_json((fs::path(output_dir) / "cv_summary.json").string(),
               json{{"cv_error", result.cv_error},
                    {"cv_se", result.cv_se},
                    {"n_folds", result.n_folds},
                    {"skipped_folds", result.skipped_folds},
                    {"n_points", result.n_points},
                    {"plan", {{"h", plan.h}, {"v", plan.v}, {"stride", plan.stride}}}});
}

void cmd_surface(const std::string& config_path, const std::string& output_path) {
    const json raw = load_json_file(config_path);
    const ExperimentConfig config = parse_experiment(raw, "model");
    const Dataset data = config.data.load();
    const ModelFit fit = fit_model(data, config.models.front());
    const double reference = resolve_reference(config.surface, data.exposure);
    const auto grid = surface_grid_points(config.surface, data.exposure, reference);
    const SurfaceGrid surface =
        rr_surface(cross_basis_beta(fit), fit.realized.cb_spec, grid, reference);
    atomic_write_text(output_path, surface_csv(surface));
}

void cmd_compare(const std::string& config_path, const std::string& output_dir) {
    const json raw = load_json_file(config_path);
    const ExperimentConfig config = parse_experiment(raw);
    const ComparisonReport report = run_comparison(config);

    std::ostringstream csv;
    csv << "model,status,r2,cv_error,cv_se,cv_folds,cv_skipped,order_p,order_q,aic,"
           "loglik,dropped_rows\n";
    for (const auto& row : report.rows) {
        csv << row.model << ',' << row.status << ',' << csv_number(row.r2) << ','
            << csv_number(row.cv_error) << ',' << csv_number(row.cv_se) << ','
            << row.cv_folds << ',' << row.cv_skipped << ',' << row.order.p << ','
            << row.order.q << ',' << csv_number(row.aic) << ','
            << csv_number(row.loglik) << ',' << row.dropped_rows << '\n';
    }
    namespace fs = std::filesystem;
    fs::create_directories(fs::path(output_dir) / "surfaces");
    atomic_write_text((fs::path(output_dir) / "comparison.csv").string(), csv.str());
    for (const auto& [name, surface] : report.surfaces)
        atomic_write_text((fs::path(output_dir) / "surfaces" / (name + ".csv")).string(),
                          surface_csv(surface));
    write_json((fs::path(output_dir) / "run_manifest.json").string(),
               manifest_json("compare", raw));
}

void cmd_sweep(const std::string& config_path, const std::string& output_dir) {
    const json raw = load_json_file(config_path);
    const SweepRequest request = parse_sweep(raw);
    const auto cells = run_sweep(request.config, request.kernels, request.windows);

    std::ostringstream csv;
    csv << "kernel,H,status,r2,cv_error,cv_se,order_p,order_q,cv_h,cv_v,cv_stride\n";
    for (const auto& cell : cells) {
        ModelConfig cell_model = request.config.models.front();
        cell_model.aggregation =
            AggregationSpec{cell.kernel, cell.window, WindowMode::Future};
        cell_model.family = Family::Gaussian;
        const CvPlan plan = request.config.cv.resolve(cell_model);
        csv << kernel_kind_name(cell.kernel) << ',' << cell.window << ',' << cell.status
            << ',' << csv_number(cell.r2) << ',' << csv_number(cell.cv_error) << ','
            << csv_number(cell.cv_se) << ',' << cell.order.p << ',' << cell.order.q
            << ',' << plan.h << ',' << plan.v << ',' << plan.stride << '\n';
    }
    namespace fs = std::filesystem;
    fs::create_directories(output_dir);
    atomic_write_text((fs::path(output_dir) / "sweep.csv").string(), csv.str());
    write_json((fs::path(output_dir) / "run_manifest.json").string(),
               manifest_json("sweep", raw));
}

} // namespace aggts::cli
