#include "aggts/calendar.hpp"

namespace aggts {

Eigen::MatrixXd day_of_week_indicators(const DailySeries& series) {
    const auto n = static_cast<Eigen::Index>(series.size());
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, 6);
    for (Eigen::Index t = 0; t < n; ++t) {
        const int w = weekday_monday0(series.date_at(static_cast<std::size_t>(t)));
        if (w > 0) out(t, w - 1) = 1.0;
    }
    return out;
}

const std::array<std::string, 6>& day_of_week_labels() {
    static const std::array<std::string, 6> labels = {
        "dow_tue", "dow_wed", "dow_thu", "dow_fri", "dow_sat", "dow_sun"};
    return labels;
}

} // namespace aggts
