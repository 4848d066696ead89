#ifndef AGGTS_SYNTHDATA_HPP
#define AGGTS_SYNTHDATA_HPP

#include "aggts/cross_basis.hpp"
#include "aggts/daily_series.hpp"

#include <cstdint>
#include <span>
#include <string>

namespace aggts {

/// Piecewise ground-truth log-RR surface: flat comfort zone, an acute heat
/// effect decaying linearly over heat_span lags, and a delayed cold effect
/// shaped as a gamma-like bump peaking at cold_peak_lag.
struct TruthSurface {
    double comfort_low = -10.0;
    double comfort_high = 20.0;
    double heat_coef = 0.10;   // log-RR per 10 degrees above comfort, lag 0
    int heat_span = 3;         // heat effect gone after this many lags
    double cold_coef = 0.08;   // log-RR per 10 degrees below comfort, at peak
    double cold_peak_lag = 7.0;
    double cold_shape = 2.0;   // larger = narrower bump
    double excess_cap = 1.5;   // cap on |excess|/10 in each direction

    double log_rr(double temp, int lag) const;
};

struct ExposureSpec {
    double seasonal_amplitude = 15.0;
    double seasonal_mean = 5.0;
    double ar_coef = 0.7; // in (-1, 1)
    double noise_sd = 3.0;
};

enum class NoiseFamily { Poisson, Gaussian };

std::string noise_family_name(NoiseFamily f);
NoiseFamily parse_noise_family(const std::string& name);

struct TruthSpec {
    TruthSurface surface;
    double baseline_rate = 20.0;
    int max_lag = 21;
};

struct NoiseSpec {
    NoiseFamily family = NoiseFamily::Poisson;
    double extra_sd = 0.0; // additive Gaussian measurement noise
};

/// Deterministic synthetic scenario: exposure model, ground-truth lag
/// surface and response noise. Requires n_days > 10 * max_lag.
struct ScenarioSpec {
    int n_days = 1827;
    std::uint64_t seed = 20240101;
    ExposureSpec exposure;
    TruthSpec truth;
    NoiseSpec noise;

    void validate() const;
};

/// Day of the exposure seasonal peak within the year.
inline constexpr double kSeasonalPeakDay = 198.0;

/// x_t = mean + amplitude*cos(2*pi*(t - peak)/365.25) + AR(1) noise.
/// Deterministic per seed (RNG stream 0).
DailySeries gen_exposure(const ScenarioSpec& spec);

/// mu_t = baseline * exp(sum_l s(x_{t-l}, l)); y_t drawn from the noise
/// family with mean mu_t plus N(0, extra_sd). The first max_lag days are
/// missing. Deterministic per seed (RNG stream 1).
DailySeries gen_response(const DailySeries& exposure, const ScenarioSpec& spec);

Dataset generate_dataset(const ScenarioSpec& spec, const std::string& label = "synthetic");

/// Ground truth on the rr_surface grid format: exp(s(temp,l) - s(ref,l)).
SurfaceGrid truth_surface_grid(const ScenarioSpec& spec,
                               std::span<const double> temp_grid,
                               double reference_temp);

/// Shipped default scenario (noisy Poisson response, lagged heat and
/// delayed cold effects, 5 years).
ScenarioSpec default_scenario();

/// Short-memory variant: both effects die within ~3 lags (for window-size
/// sweeps).
ScenarioSpec short_memory_scenario();

} // namespace aggts

#endif
