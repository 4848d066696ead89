#include "config_json.hpp"

#include "aggts/errors.hpp"

#include <algorithm>
#include <fstream>

namespace aggts::cli {

void check_keys(const json& j, const std::vector<std::string>& allowed,
                const std::string& where) {
    if (!j.is_object()) throw ConfigError(where + " must be a JSON object");
    for (const auto& [key, value] : j.items()) {
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
            throw ConfigError("unknown key '" + key + "' in " + where);
    }
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("config '" + path + "' is not valid JSON: " + e.what());
    }
}

ScenarioSpec parse_scenario(const json& j) {
    check_keys(j, {"n_days", "seed", "exposure", "truth", "noise"}, "scenario");
    ScenarioSpec spec = default_scenario();
    spec.n_days = j.value("n_days", spec.n_days);
    spec.seed = j.value("seed", spec.seed);
    if (j.contains("exposure")) {
        const json& e = j.at("exposure");
        check_keys(e, {"seasonal_amplitude", "seasonal_mean", "ar_coef", "noise_sd"},
                   "scenario.exposure");
        spec.exposure.seasonal_amplitude =
            e.value("seasonal_amplitude", spec.exposure.seasonal_amplitude);
        spec.exposure.seasonal_mean = e.value("seasonal_mean", spec.exposure.seasonal_mean);
        spec.exposure.ar_coef = e.value("ar_coef", spec.exposure.ar_coef);
        spec.exposure.noise_sd = e.value("noise_sd", spec.exposure.noise_sd);
    }
    if (j.contains("truth")) {
        const json& t = j.at("truth");
        check_keys(t, {"baseline_rate", "max_lag", "surface"}, "scenario.truth");
        spec.truth.baseline_rate = t.value("baseline_rate", spec.truth.baseline_rate);
        spec.truth.max_lag = t.value("max_lag", spec.truth.max_lag);
        if (t.contains("surface")) {
            const json& s = t.at("surface");
            check_keys(s,
                       {"comfort_low", "comfort_high", "heat_coef", "heat_span",
                        "cold_coef", "cold_peak_lag", "cold_shape", "excess_cap"},
                       "scenario.truth.surface");
            TruthSurface& surf = spec.truth.surface;
            surf.comfort_low = s.value("comfort_low", surf.comfort_low);
            surf.comfort_high = s.value("comfort_high", surf.comfort_high);
            surf.heat_coef = s.value("heat_coef", surf.heat_coef);
            surf.heat_span = s.value("heat_span", surf.heat_span);
            surf.cold_coef = s.value("cold_coef", surf.cold_coef);
            surf.cold_peak_lag = s.value("cold_peak_lag", surf.cold_peak_lag);
            surf.cold_shape = s.value("cold_shape", surf.cold_shape);
            surf.excess_cap = s.value("excess_cap", surf.excess_cap);
        }
    }
    if (j.contains("noise")) {
        const json& n = j.at("noise");
        check_keys(n, {"family", "extra_sd"}, "scenario.noise");
        if (n.contains("family"))
            spec.noise.family = parse_noise_family(n.at("family").get<std::string>());
        spec.noise.extra_sd = n.value("extra_sd", spec.noise.extra_sd);
    }
    spec.validate();
    return spec;
}

json scenario_to_json(const ScenarioSpec& spec) {
    return json{
        {"n_days", spec.n_days},
        {"seed", spec.seed},
        {"exposure",
         {{"seasonal_amplitude", spec.exposure.seasonal_amplitude},
          {"seasonal_mean", spec.exposure.seasonal_mean},
          {"ar_coef", spec.exposure.ar_coef},
          {"noise_sd", spec.exposure.noise_sd}}},
        {"truth",
         {{"baseline_rate", spec.truth.baseline_rate},
          {"max_lag", spec.truth.max_lag},
          {"surface",
           {{"comfort_low", spec.truth.surface.comfort_low},
            {"comfort_high", spec.truth.surface.comfort_high},
            {"heat_coef", spec.truth.surface.heat_coef},
            {"heat_span", spec.truth.surface.heat_span},
            {"cold_coef", spec.truth.surface.cold_coef},
            {"cold_peak_lag", spec.truth.surface.cold_peak_lag},
            {"cold_shape", spec.truth.surface.cold_shape},
            {"excess_cap", spec.truth.surface.excess_cap}}}}},
        {"noise",
         {{"family", noise_family_name(spec.noise.family)},
          {"extra_sd", spec.noise.extra_sd}}}};
}

AggregationSpec parse_aggregation(const json& j) {
    check_keys(j, {"kernel", "window", "mode"}, "aggregation");
    AggregationSpec spec;
    spec.kind = parse_kernel_kind(j.value("kernel", "ma"));
    spec.window = j.value("window", 7);
    if (j.contains("mode")) spec.mode = parse_window_mode(j.at("mode").get<std::string>());
    spec.validate();
    return spec;
}

CrossBasisConfig parse_cross_basis(const json& j) {
    check_keys(j,
               {"var_percentiles", "var_degree", "lag_degree", "n_lag_knots", "max_lag"},
               "cross_basis");
    CrossBasisConfig cb;
    if (j.contains("var_percentiles"))
        cb.var_percentiles = j.at("var_percentiles").get<std::vector<double>>();
    cb.var_degree = j.value("var_degree", cb.var_degree);
    cb.lag_degree = j.value("lag_degree", cb.lag_degree);
    cb.n_lag_knots = j.value("n_lag_knots", cb.n_lag_knots);
    cb.max_lag = j.value("max_lag", cb.max_lag);
    cb.validate();
    return cb;
}

ModelConfig parse_model(const json& j) {
    check_keys(j,
               {"name", "aggregation", "family", "day_of_week", "arma_errors", "max_p",
                "max_q", "use_bic", "cross_basis", "include_time_spline",
                "time_spline_df_per_year"},
               "model");
    ModelConfig model;
    model.name = j.value("name", std::string("model"));
    if (j.contains("aggregation") && !j.at("aggregation").is_null())
        model.aggregation = parse_aggregation(j.at("aggregation"));
    if (j.contains("family"))
        model.family = parse_family(j.at("family").get<std::string>());
    else
        model.family = model.aggregation ? Family::Gaussian : Family::QuasiPoisson;
    model.day_of_week = j.value("day_of_week", model.day_of_week);
    model.arma_errors = j.value("arma_errors", model.arma_errors);
    model.max_p = j.value("max_p", model.max_p);
    model.max_q = j.value("max_q", model.max_q);
    model.use_bic = j.value("use_bic", model.use_bic);
    if (j.contains("cross_basis")) model.cross_basis = parse_cross_basis(j.at("cross_basis"));
    model.include_time_spline = j.value("include_time_spline", model.include_time_spline);
    model.time_spline_df_per_year =
        j.value("time_spline_df_per_year", model.time_spline_df_per_year);
    model.validate();
    return model;
}

DataSource parse_data(const json& j) {
    check_keys(j, {"scenario", "response", "exposure", "date_column", "value_column"},
               "data");
    DataSource data;
    if (j.contains("scenario")) data.scenario = parse_scenario(j.at("scenario"));
    if (j.contains("response")) data.response_path = j.at("response").get<std::string>();
    if (j.contains("exposure")) data.exposure_path = j.at("exposure").get<std::string>();
    data.date_column = j.value("date_column", data.date_column);
    data.value_column = j.value("value_column", data.value_column);
    data.validate();
    return data;
}

CvConfig parse_cv(const json& j) {
    check_keys(j, {"h", "v", "stride", "refit_order", "detrend_df_per_year", "enabled"},
               "cv");
    CvConfig cv;
    if (j.contains("h") && !j.at("h").is_string()) cv.h = j.at("h").get<int>();
    cv.v = j.value("v", cv.v);
    if (j.contains("stride") && !j.at("stride").is_string())
        cv.stride = j.at("stride").get<int>();
    cv.refit_order = j.value("refit_order", cv.refit_order);
    cv.detrend_df_per_year = j.value("detrend_df_per_year", cv.detrend_df_per_year);
    cv.enabled = j.value("enabled", cv.enabled);
    return cv;
}

SurfaceConfig parse_surface(const json& j) {
    check_keys(j, {"n_temp", "reference_temp"}, "surface");
    SurfaceConfig surface;
    surface.n_temp = j.value("n_temp", surface.n_temp);
    if (j.contains("reference_temp") && !j.at("reference_temp").is_null())
        surface.reference_temp = j.at("reference_temp").get<double>();
    return surface;
}

ExperimentConfig parse_experiment(const json& j, const std::string& models_key) {
    check_keys(j, {"data", models_key, "cv", "surface"}, "experiment config");
    ExperimentConfig config;
    if (!j.contains("data")) throw ConfigError("experiment config needs a 'data' section");
    config.data = parse_data(j.at("data"));
    if (!j.contains(models_key))
        throw ConfigError("experiment config needs '" + models_key + "'");
    if (models_key == "models") {
        for (const auto& m : j.at(models_key)) config.models.push_back(parse_model(m));
    } else {
        config.models.push_back(parse_model(j.at(models_key)));
    }
    if (j.contains("cv")) config.cv = parse_cv(j.at("cv"));
    if (j.contains("surface")) config.surface = parse_surface(j.at("surface"));
    config.validate();
    return config;
}

SweepRequest parse_sweep(const json& j) {
    check_keys(j, {"data", "model", "kernels", "windows", "cv"}, "sweep config");
    SweepRequest request;
    if (!j.contains("data")) throw ConfigError("sweep config needs a 'data' section");
    request.config.data = parse_data(j.at("data"));
    if (!j.contains("model")) throw ConfigError("sweep config needs a 'model' template");
    request.config.models.push_back(parse_model(j.at("model")));
    if (j.contains("cv")) request.config.cv = parse_cv(j.at("cv"));

    if (j.contains("kernels")) {
        for (const auto& k : j.at("kernels"))
            request.kernels.push_back(parse_kernel_kind(k.get<std::string>()));
    } else {
        request.kernels = {KernelKind::MovingAverage, KernelKind::Epanechnikov,
                           KernelKind::Michels};
    }

    if (j.contains("windows")) {
        const json& w = j.at("windows");
        if (w.is_array()) {
            for (const auto& h : w) request.windows.push_back(h.get<int>());
        } else {
            check_keys(w, {"from", "to", "step"}, "sweep windows");
            const int from = w.value("from", 3);
            const int to = w.value("to", 30);
            const int step = w.value("step", 1);
            if (step < 1) throw ConfigError("sweep window step must be >= 1");
            for (int h = from; h <= to; h += step) request.windows.push_back(h);
        }
    } else {
        for (int h = 3; h <= 30; ++h) request.windows.push_back(h);
    }
    return request;
}

} // namespace aggts::cli
