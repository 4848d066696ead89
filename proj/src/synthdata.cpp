#include "aggts/synthdata.hpp"
#include "aggts/errors.hpp"
#include "aggts/rng.hpp"

#include <cmath>
#include <numbers>

namespace aggts {

std::string noise_family_name(NoiseFamily f) {
    return f == NoiseFamily::Poisson ? "poisson" : "gaussian";
}

NoiseFamily parse_noise_family(const std::string& name) {
    if (name == "poisson") return NoiseFamily::Poisson;
    if (name == "gaussian") return NoiseFamily::Gaussian;
    throw ConfigError("unknown noise family '" + name + "'");
}

double TruthSurface::log_rr(double temp, int lag) const {
    double out = 0.0;
    if (temp > comfort_high && lag < heat_span) {
        const double excess = std::min((temp - comfort_high) / 10.0, excess_cap);
        out += heat_coef * excess * (1.0 - static_cast<double>(lag) / heat_span);
    }
    if (temp < comfort_low && lag >= 1) {
        const double excess = std::min((comfort_low - temp) / 10.0, excess_cap);
        const double u = static_cast<double>(lag) / cold_peak_lag;
        const double bump = std::pow(u, cold_shape) * std::exp(cold_shape * (1.0 - u));
        out += cold_coef * excess * bump;
    }
    return out;
}

void ScenarioSpec::validate() const {
    if (truth.max_lag < 0) throw ConfigError("scenario max_lag must be >= 0");
    if (n_days <= 10 * truth.max_lag)
        throw ConfigError("scenario needs n_days > 10 * max_lag");
    if (truth.baseline_rate <= 0.0) throw ConfigError("baseline rate must be positive");
    if (exposure.ar_coef <= -1.0 || exposure.ar_coef >= 1.0)
        throw ConfigError("exposure AR coefficient must lie in (-1, 1)");
    if (exposure.noise_sd < 0.0 || noise.extra_sd < 0.0)
        throw ConfigError("noise standard deviations must be >= 0");
}

DailySeries gen_exposure(const ScenarioSpec& spec) {
    spec.validate();
    Rng rng = Rng::stream(spec.seed, 0);
    const double two_pi = 2.0 * std::numbers::pi;

    DailySeries out;
    out.start = make_date(2000, 1, 1);
    out.values.resize(static_cast<std::size_t>(spec.n_days));
    out.missing.assign(static_cast<std::size_t>(spec.n_days), 0);

    double ar = 0.0;
    for (int t = 0; t < spec.n_days; ++t) {
        ar = spec.exposure.ar_coef * ar + spec.exposure.noise_sd * rng.normal();
        const double seasonal =
            spec.exposure.seasonal_amplitude *
            std::cos(two_pi * (static_cast<double>(t) - kSeasonalPeakDay) / 365.25);
        out.values[static_cast<std::size_t>(t)] =
            spec.exposure.seasonal_mean + seasonal + ar;
    }
    return out;
}

DailySeries gen_response(const DailySeries& exposure, const ScenarioSpec& spec) {
    spec.validate();
    const auto n = static_cast<int>(exposure.size());
    const int big_l = spec.truth.max_lag;
    if (n <= big_l) throw DataError("exposure too short for the truth max lag");

    Rng rng = Rng::stream(spec.seed, 1);
    DailySeries out;
    out.start = exposure.start;
    out.values.assign(static_cast<std::size_t>(n), DailySeries::na);
    out.missing.assign(static_cast<std::size_t>(n), 1);

    for (int t = big_l; t < n; ++t) {
        double lag_sum = 0.0;
        bool ok = true;
        for (int l = 0; l <= big_l; ++l) {
            if (exposure.is_missing(static_cast<std::size_t>(t - l))) {
                ok = false;
                break;
            }
            lag_sum +=
                spec.truth.surface.log_rr(exposure.values[static_cast<std::size_t>(t - l)], l);
        }
        if (!ok) continue;
        const double mu = spec.truth.baseline_rate * std::exp(lag_sum);
        double y = spec.noise.family == NoiseFamily::Poisson
                       ? static_cast<double>(rng.poisson(mu))
                       : mu;
        if (spec.noise.extra_sd > 0.0) y += spec.noise.extra_sd * rng.normal();
        out.values[static_cast<std::size_t>(t)] = y;
        out.missing[static_cast<std::size_t>(t)] = 0;
    }
    return out;
}

Dataset generate_dataset(const ScenarioSpec& spec, const std::string& label) {
    Dataset data;
    data.exposure = gen_exposure(spec);
    data.response = gen_response(data.exposure, spec);
    data.label = label;
    return data;
}

SurfaceGrid truth_surface_grid(const ScenarioSpec& spec,
                               std::span<const double> temp_grid,
                               double reference_temp) {
    SurfaceGrid grid;
    grid.temp_grid.assign(temp_grid.begin(), temp_grid.end());
    grid.reference_temp = reference_temp;
    for (int l = 0; l <= spec.truth.max_lag; ++l) grid.lag_grid.push_back(l);
    grid.rr.resize(static_cast<Eigen::Index>(grid.temp_grid.size()),
                   static_cast<Eigen::Index>(grid.lag_grid.size()));
    for (std::size_t v = 0; v < grid.temp_grid.size(); ++v)
        for (std::size_t li = 0; li < grid.lag_grid.size(); ++li) {
            const int l = grid.lag_grid[li];
            grid.rr(static_cast<Eigen::Index>(v), static_cast<Eigen::Index>(li)) =
                std::exp(spec.truth.surface.log_rr(grid.temp_grid[v], l) -
                         spec.truth.surface.log_rr(reference_temp, l));
        }
    return grid;
}

ScenarioSpec default_scenario() {
    ScenarioSpec spec;
    spec.n_days = 1827; // five years
    spec.seed = 20240101;
    spec.exposure = {15.0, 5.0, 0.7, 3.0};
    spec.truth.surface = TruthSurface{};
    spec.truth.baseline_rate = 25.0;
    spec.truth.max_lag = 21;
    spec.noise.family = NoiseFamily::Poisson;
    spec.noise.extra_sd = 0.0;
    return spec;
}

ScenarioSpec short_memory_scenario() {
    ScenarioSpec spec;
    spec.n_days = 1461; // four years
    spec.seed = 20240202;
    spec.exposure = {15.0, 5.0, 0.7, 3.0};
    TruthSurface truth;
    truth.heat_coef = 0.10;
    truth.heat_span = 3;
    truth.cold_coef = 0.08;
    truth.cold_peak_lag = 1.0;
    truth.cold_shape = 2.0;
    spec.truth.surface = truth;
    spec.truth.baseline_rate = 25.0;
    spec.truth.max_lag = 6;
    spec.noise.family = NoiseFamily::Poisson;
    spec.noise.extra_sd = 0.0;
    return spec;
}

} // namespace aggts
