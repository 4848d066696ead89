#include "commands.hpp"

#include "aggts/errors.hpp"
#include "aggts/version.hpp"

#include <CLI11.hpp>
#include <omp.h>

#include <exception>
#include <iostream>

int main(int argc, char** argv) {
    CLI::App app{"aggts: time-series regression with a temporally aggregated response"};
    app.set_version_flag("--version", aggts::kVersion);
    app.require_subcommand(1);

    int jobs = 0;
    app.add_option("-j,--jobs", jobs, "Worker threads (default: machine parallelism)");

    aggts::cli::AggregateArgs agg;
    auto* aggregate = app.add_subcommand("aggregate", "Apply a kernel aggregation to a series");
    aggregate->add_option("--input", agg.input, "Input series CSV")->required();
    aggregate->add_option("--output", agg.output, "Output CSV (date,value)")->required();
    aggregate->add_option("--kernel", agg.kernel, "Kernel: ma, epan or michels")
        ->check(CLI::IsMember({"ma", "epan", "michels"}));
    aggregate->add_option("--window", agg.window, "Window size H (>= 1)");
    aggregate->add_option("--mode", agg.mode, "Window mode: future or centered")
        ->check(CLI::IsMember({"future", "centered"}));
    aggregate->add_option("--date-column", agg.date_column, "Date column name");
    aggregate->add_option("--value-column", agg.value_column, "Value column name");

    std::string sim_config, sim_out = "out";
    auto* simulate = app.add_subcommand("simulate", "Generate a synthetic dataset");
    simulate->add_option("--config", sim_config, "Scenario config JSON")->required();
    simulate->add_option("--output", sim_out, "Output directory");

    std::string fit_config, fit_out = "fit.json";
    auto* fit = app.add_subcommand("fit", "Fit a single model and write a JSON report");
    fit->add_option("--config", fit_config, "Experiment config JSON")->required();
    fit->add_option("--output", fit_out, "Report path");

    std::string cv_config, cv_out = "out";
    auto* cv = app.add_subcommand("cv", "Run hv-block cross-validation for one model");
    cv->add_option("--config", cv_config, "Experiment config JSON")->required();
    cv->add_option("--output", cv_out, "Output directory");

    std::string surf_config, surf_out = "surface.csv";
    auto* surface = app.add_subcommand("surface", "Write the fitted RR surface as CSV");
    surface->add_option("--config", surf_config, "Experiment config JSON")->required();
    surface->add_option("--output", surf_out, "Output CSV path");

    std::string cmp_config, cmp_out = "out";
    auto* compare = app.add_subcommand("compare", "Fit and evaluate a list of models");
    compare->add_option("--config", cmp_config, "Experiment config JSON")->required();
    compare->add_option("--output", cmp_out, "Output directory");

    std::string sweep_config, sweep_out = "out";
    auto* sweep = app.add_subcommand("sweep", "Kernel-by-window-size performance grid");
    sweep->add_option("--config", sweep_config, "Sweep config JSON")->required();
    sweep->add_option("--output", sweep_out, "Output directory");

    CLI11_PARSE(app, argc, argv);

    if (jobs > 0) omp_set_num_threads(jobs);

    try {
        if (aggregate->parsed()) aggts::cli::cmd_aggregate(agg);
        if (simulate->parsed()) aggts::cli::cmd_simulate(sim_config, sim_out);
        if (fit->parsed()) aggts::cli::cmd_fit(fit_config, fit_out);
        if (cv->parsed()) aggts::cli::cmd_cv(cv_config, cv_out);
        if (surface->parsed()) aggts::cli::cmd_surface(surf_config, surf_out);
        if (compare->parsed()) aggts::cli::cmd_compare(cmp_config, cmp_out);
        if (sweep->parsed()) aggts::cli::cmd_sweep(sweep_config, sweep_out);
    } catch (const aggts::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 1;
    } catch (const aggts::DataError& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return 2;
    } catch (const aggts::NumericError& e) {
        std::cerr << "numerical error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
    return 0;
}
