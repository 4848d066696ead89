#ifndef AGGTS_NELDER_MEAD_HPP
#define AGGTS_NELDER_MEAD_HPP

#include <Eigen/Core>
#include <algorithm>
#include <functional>
#include <limits>
#include <vector>

namespace aggts::detail {

struct NmResult {
    Eigen::VectorXd x;
    double fval = std::numeric_limits<double>::infinity();
    int n_evals = 0;
    bool converged = false;
};

/// Nelder-Mead minimization with best-ever tracking. Infinite objective
/// values act as rejection penalties; the returned point is the best one
/// ever evaluated, not merely the final simplex vertex.
inline NmResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& f,
                            const Eigen::VectorXd& x0, double step, double ftol,
                            int max_evals) {
    NmResult best;
    int evals = 0;
    auto eval = [&](const Eigen::VectorXd& x) {
        const double v = f(x);
        ++evals;
        if (v < best.fval) {
            best.fval = v;
            best.x = x;
        }
        return v;
    };

    const auto dim = static_cast<int>(x0.size());
    if (dim == 0) {
        best.fval = eval(x0);
        best.x = x0;
        best.n_evals = evals;
        best.converged = true;
        return best;
    }

    std::vector<Eigen::VectorXd> pts;
    std::vector<double> vals;
    pts.push_back(x0);
    vals.push_back(eval(x0));
    for (int i = 0; i < dim; ++i) {
        Eigen::VectorXd p = x0;
        p(i) += step;
        pts.push_back(p);
        vals.push_back(eval(p));
    }

    std::vector<int> idx(pts.size());
    const double alpha = 1.0, gamma = 2.0, rho = 0.5, sigma = 0.5;

    while (evals < max_evals) {
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
        std::sort(idx.begin(), idx.end(), [&](int a, int b) { return vals[static_cast<std::size_t>(a)] < vals[static_cast<std::size_t>(b)]; });
        const int ib = idx.front(), iw = idx.back(), is = idx[idx.size() - 2];

        const double fb = vals[static_cast<std::size_t>(ib)];
        const double fw = vals[static_cast<std::size_t>(iw)];
        if (std::isfinite(fb) && std::isfinite(fw) &&
            fw - fb <= ftol * (std::abs(fb) + ftol)) {
            best.converged = true;
            break;
        }

        Eigen::VectorXd centroid = Eigen::VectorXd::Zero(dim);
        for (int i : idx)
            if (i != iw) centroid += pts[static_cast<std::size_t>(i)];
        centroid /= static_cast<double>(dim);

        const Eigen::VectorXd xr = centroid + alpha * (centroid - pts[static_cast<std::size_t>(iw)]);
        const double fr = eval(xr);
        if (fr < fb) {
            const Eigen::VectorXd xe = centroid + gamma * (xr - centroid);
            const double fe = eval(xe);
            if (fe < fr) {
                pts[static_cast<std::size_t>(iw)] = xe;
                vals[static_cast<std::size_t>(iw)] = fe;
            } else {
                pts[static_cast<std::size_t>(iw)] = xr;
                vals[static_cast<std::size_t>(iw)] = fr;
            }
        } else if (fr < vals[static_cast<std::size_t>(is)]) {
            pts[static_cast<std::size_t>(iw)] = xr;
            vals[static_cast<std::size_t>(iw)] = fr;
        } else {
            const Eigen::VectorXd xc = centroid + rho * (pts[static_cast<std::size_t>(iw)] - centroid);
            const double fc = eval(xc);
            if (fc < vals[static_cast<std::size_t>(iw)]) {
                pts[static_cast<std::size_t>(iw)] = xc;
                vals[static_cast<std::size_t>(iw)] = fc;
            } else {
                for (int i : idx) {
                    if (i == ib) continue;
                    pts[static_cast<std::size_t>(i)] =
                        pts[static_cast<std::size_t>(ib)] +
                        sigma * (pts[static_cast<std::size_t>(i)] - pts[static_cast<std::size_t>(ib)]);
                    vals[static_cast<std::size_t>(i)] = eval(pts[static_cast<std::size_t>(i)]);
                }
            }
        }
    }
    best.n_evals = evals;
    return best;
}

} // namespace aggts::detail

#endif
