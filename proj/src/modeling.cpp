#include "aggts/modeling.hpp"
#include "aggts/calendar.hpp"
#include "aggts/errors.hpp"
#include "aggts/evaluation.hpp"
#include "aggts/splines.hpp"

namespace aggts {

RealizedDesign build_design(const Dataset& data, const ModelConfig& model,
                            bool with_time_spline) {
    model.validate();
    const auto n = static_cast<Eigen::Index>(data.response.size());
    if (data.exposure.size() != data.response.size())
        throw DataError("response and exposure are not aligned");

    RealizedDesign out;
    out.cb_spec = model.cross_basis.realize(data.exposure);
    DesignMatrix cb = cross_basis(data.exposure, out.cb_spec);

    const int jc = out.cb_spec.predictor_columns();
    const int kc = out.cb_spec.lag_columns();
    out.cb_dropped = jc > 1 ? kc : 0;
    out.cb_first = 1; // after the intercept
    out.cb_count = jc * kc - out.cb_dropped;

    Eigen::Index extra = 0;
    Eigen::MatrixXd time_basis;
    if (with_time_spline && model.include_time_spline) {
        time_basis = natural_time_basis(static_cast<int>(n), model.time_spline_df_per_year);
        extra += time_basis.cols();
    }
    Eigen::MatrixXd dow;
    if (model.day_of_week) {
        dow = day_of_week_indicators(data.response);
        extra += dow.cols();
    }

    out.design.X.resize(n, 1 + out.cb_count + extra);
    out.design.X.col(0).setOnes();
    out.design.X.middleCols(1, out.cb_count) = cb.X.rightCols(out.cb_count);
    out.design.names.push_back("(Intercept)");
    for (int j = 0; j < out.cb_count; ++j)
        out.design.names.push_back(cb.names[static_cast<std::size_t>(out.cb_dropped + j)]);
    out.design.row_valid = std::move(cb.row_valid);

    Eigen::Index at = 1 + out.cb_count;
    if (time_basis.cols() > 0) {
        out.design.X.middleCols(at, time_basis.cols()) = time_basis;
        for (Eigen::Index j = 0; j < time_basis.cols(); ++j)
            out.design.names.push_back("time_" + std::to_string(j + 1));
        at += time_basis.cols();
    }
    if (model.day_of_week) {
        out.design.X.middleCols(at, dow.cols()) = dow;
        for (const auto& label : day_of_week_labels()) out.design.names.push_back(label);
        at += dow.cols();
    }
    return out;
}

ModelFit fit_model(const Dataset& data, const ModelConfig& model) {
    ModelFit out;
    out.config = model;
    out.realized = build_design(data, model, true);

    DailySeries target = data.response;
    if (model.aggregation) target = aggregate(data.response, *model.aggregation);

    if (model.family == Family::QuasiPoisson) {
        out.glm = quasipoisson_fit(out.realized.design, target);
        out.fitted = out.glm->fitted;
    } else if (model.arma_errors) {
        RegArmaFit fit =
            two_stage_fit(out.realized.design, target, model.max_p, model.max_q,
                          model.use_bic);
        out.fitted = fitted_values(fit, out.realized.design, FittedMode::OneStep);
        out.reg = std::move(fit);
    } else {
        RegArmaFit fit = fit_reg_arma(out.realized.design, target, ArmaOrder{0, 0});
        out.fitted = fitted_values(fit, out.realized.design, FittedMode::MeanOnly);
        out.reg = std::move(fit);
    }
    out.r2 = r_squared(data.response, out.fitted);
    return out;
}

Eigen::VectorXd cross_basis_beta(const ModelFit& fit) {
    const int first = fit.realized.cb_first;
    const int count = fit.realized.cb_count;
    Eigen::VectorXd full =
        Eigen::VectorXd::Zero(fit.realized.cb_dropped + count);
    if (fit.reg)
        full.tail(count) = fit.reg->beta.segment(first, count);
    else if (fit.glm)
        full.tail(count) = fit.glm->beta.segment(first, count);
    else
        throw NumericError("model has no fitted coefficients");
    return full;
}

} // namespace aggts
