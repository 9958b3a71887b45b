#pragma once

/**
 * @file nelder_mead.hpp
 * @brief Derivative-free simplex minimization (reflection 1, expansion 2,
 *        contraction 1/2, shrink 1/2).
 */

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace mollifier {

struct NelderMeadOptions {
    int max_iterations = 2000;
    double diameter_tol = 1e-6;  ///< stop once every vertex is this close (Euclidean) to the best one
    double initial_step = 0.1;   ///< relative edge of the start simplex; |x0_i| (or 1 if zero) scales it
    std::vector<double> steps;   ///< absolute per-coordinate edges; overrides initial_step when non-empty
};

struct NelderMeadResult {
    std::vector<double> x;
    double f = 0.0;
    int iterations = 0;
    int evaluations = 0;
    bool converged = false;        ///< false when the iteration cap was hit
    std::vector<double> history;   ///< best value after each iteration
};

using Objective = std::function<double(const std::vector<double>&)>;

inline NelderMeadResult nelder_mead(const Objective& f, const std::vector<double>& x0,
                                    const NelderMeadOptions& opts = {}) {
    const std::size_t dim = x0.size();
    if (dim == 0) throw std::invalid_argument("nelder_mead needs at least one coordinate");
    if (!opts.steps.empty() && opts.steps.size() != dim) {
        throw std::invalid_argument("nelder_mead: steps must match the dimension");
    }
    constexpr double kReflect = 1.0, kExpand = 2.0, kContract = 0.5, kShrink = 0.5;

    NelderMeadResult res;
    auto eval = [&](const std::vector<double>& x) {
        ++res.evaluations;
        const double v = f(x);
        return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
    };

    std::vector<std::vector<double>> pts(dim + 1, x0);
    for (std::size_t i = 0; i < dim; ++i) {
        const double step = opts.steps.empty() ? opts.initial_step * (x0[i] != 0.0 ? std::abs(x0[i]) : 1.0)
                                               : opts.steps[i];
        pts[i + 1][i] += step;
    }
    std::vector<double> vals(dim + 1);
    for (std::size_t i = 0; i <= dim; ++i) vals[i] = eval(pts[i]);
    if (!std::isfinite(vals[0])) throw std::invalid_argument("nelder_mead: objective not finite at the start point");

    std::vector<std::size_t> order(dim + 1);
    auto sort_vertices = [&] {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
        std::vector<std::vector<double>> p2(dim + 1);
        std::vector<double> v2(dim + 1);
        for (std::size_t i = 0; i <= dim; ++i) {
            p2[i] = std::move(pts[order[i]]);
            v2[i] = vals[order[i]];
        }
        pts = std::move(p2);
        vals = std::move(v2);
    };
    auto diameter = [&] {
        double d = 0.0;
        for (std::size_t i = 1; i <= dim; ++i) {
            double s = 0.0;
            for (std::size_t k = 0; k < dim; ++k) s += (pts[i][k] - pts[0][k]) * (pts[i][k] - pts[0][k]);
            d = std::max(d, std::sqrt(s));
        }
        return d;
    };
    auto along = [&](const std::vector<double>& c, const std::vector<double>& p, double t) {
        std::vector<double> out(dim);
        for (std::size_t k = 0; k < dim; ++k) out[k] = c[k] + t * (p[k] - c[k]);
        return out;
    };

    sort_vertices();
    while (true) {
        if (diameter() < opts.diameter_tol) {
            res.converged = true;
            break;
        }
        if (res.iterations >= opts.max_iterations) break;
        ++res.iterations;

        std::vector<double> centroid(dim, 0.0);
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t k = 0; k < dim; ++k) centroid[k] += pts[i][k] / static_cast<double>(dim);

        const auto xr = along(centroid, pts[dim], -kReflect);
        const double fr = eval(xr);
        bool shrink = false;
        if (fr < vals[0]) {
            const auto xe = along(centroid, xr, kExpand);
            const double fe = eval(xe);
            if (fe < fr) {
                pts[dim] = xe;
                vals[dim] = fe;
            } else {
                pts[dim] = xr;
                vals[dim] = fr;
            }
        } else if (fr < vals[dim - 1]) {
            pts[dim] = xr;
            vals[dim] = fr;
        } else if (fr < vals[dim]) {
            const auto xc = along(centroid, xr, kContract);
            const double fc = eval(xc);
            if (fc <= fr) {
                pts[dim] = xc;
                vals[dim] = fc;
            } else {
                shrink = true;
            }
        } else {
            const auto xc = along(centroid, pts[dim], kContract);
            const double fc = eval(xc);
            if (fc < vals[dim]) {
                pts[dim] = xc;
                vals[dim] = fc;
            } else {
                shrink = true;
            }
        }
        if (shrink) {
            for (std::size_t i = 1; i <= dim; ++i) {
                pts[i] = along(pts[0], pts[i], kShrink);
                vals[i] = eval(pts[i]);
            }
        }
        sort_vertices();
        res.history.push_back(vals[0]);
    }
    res.x = pts[0];
    res.f = vals[0];
    return res;
}

}  // namespace mollifier
