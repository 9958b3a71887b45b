#pragma once

/**
 * @file quadrature.hpp
 * @brief Gauss-Legendre rules on [0,1], tensor products over [0,1]^d, the
 *        triangle {a, b >= 0, a + b <= 1}, and a doubling convergence driver.
 *
 * Integrands are generic in their scalar type: anything closed under `+=` and
 * multiplication by a double works (double, Jet, small matrices of jets).
 */

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "mollifier/error.hpp"

namespace mollifier {

struct QuadratureRule {
    std::vector<double> nodes;    ///< in (0,1), ascending
    std::vector<double> weights;  ///< positive, summing to 1

    std::size_t size() const { return nodes.size(); }
};

inline constexpr int kMaxGaussNodes = 256;

/// n-point Gauss-Legendre rule mapped to [0,1]. Roots of P_n by Newton's
/// method from the Chebyshev-like initial guess, to |dx| < 1e-15.
inline QuadratureRule gauss_rule(int n) {
    if (n < 1 || n > kMaxGaussNodes) {
        throw std::out_of_range("Gauss-Legendre order must be in [1, 256], got " + std::to_string(n));
    }
    QuadratureRule rule;
    rule.nodes.resize(static_cast<std::size_t>(n));
    rule.weights.resize(static_cast<std::size_t>(n));
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        auto legendre = [n](double x, double& deriv) {
            double pn = x, pm = 1.0;
            for (int k = 2; k <= n; ++k) {
                const double pk = ((2.0 * k - 1.0) * x * pn - (k - 1.0) * pm) / k;
                pm = pn;
                pn = pk;
            }
            deriv = n * (x * pn - pm) / (x * x - 1.0);
            return pn;
        };
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            const double dz = legendre(z, dp) / dp;
            z -= dz;
            if (std::abs(dz) < 1e-15) break;
        }
        legendre(z, dp);
        const double w = 1.0 / ((1.0 - z * z) * dp * dp);  // [0,1] weight: half of 2/((1-z^2) P_n'(z)^2)
        const auto lo = static_cast<std::size_t>(i);
        const auto hi = static_cast<std::size_t>(n - 1 - i);
        rule.nodes[lo] = 0.5 * (1.0 - z);
        rule.nodes[hi] = 0.5 * (1.0 + z);
        rule.weights[lo] = w;
        rule.weights[hi] = w;
    }
    if (n % 2 == 1) rule.nodes[static_cast<std::size_t>(n / 2)] = 0.5;
    return rule;
}

/// Process-wide cache of rules; returned references stay valid for the program's lifetime.
inline const QuadratureRule& cached_rule(int n) {
    static std::mutex mutex;
    static std::map<int, std::unique_ptr<QuadratureRule>> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto& slot = cache[n];
    if (!slot) slot = std::make_unique<QuadratureRule>(gauss_rule(n));
    return *slot;
}

namespace detail {
template <int D, int K, class S, class F>
void cube_recurse(const QuadratureRule& rule, F& f, std::array<double, D>& pt, double w, S& acc) {
    for (std::size_t i = 0; i < rule.size(); ++i) {
        pt[K] = rule.nodes[i];
        const double wi = w * rule.weights[i];
        if constexpr (K + 1 == D) {
            acc += f(static_cast<const std::array<double, D>&>(pt)) * wi;
        } else {
            cube_recurse<D, K + 1, S>(rule, f, pt, wi, acc);
        }
    }
}
}  // namespace detail

/// Tensor-product rule over [0,1]^D; f takes `const std::array<double, D>&`.
template <int D, class F>
auto integrate_cube(F&& f, const QuadratureRule& rule) {
    static_assert(D >= 1 && D <= 4, "cube dimension must be 1..4");
    using S = std::decay_t<decltype(f(std::declval<const std::array<double, D>&>()))>;
    S acc{};
    std::array<double, D> pt{};
    detail::cube_recurse<D, 0, S>(rule, f, pt, 1.0, acc);
    return acc;
}

/// Triangle a, b >= 0, a + b <= 1 via b = (1-a)t; f takes (a, b).
template <class F>
auto integrate_simplex2(F&& f, const QuadratureRule& rule) {
    return integrate_cube<2>(
        [&](const std::array<double, 2>& p) {
            const double a = p[0];
            return f(a, (1.0 - a) * p[1]) * (1.0 - a);
        },
        rule);
}

struct ConvergenceStep {
    int nodes = 0;
    double value = 0.0;
    double delta = 0.0;  ///< relative change from the previous step; NaN on the first
};

struct ConvergedValue {
    double value = 0.0;
    std::vector<ConvergenceStep> trace;
};

inline constexpr double kDefaultQuadTol = 1e-10;
inline constexpr int kFirstConvergenceNodes = 16;

inline double relative_change(double prev, double cur) {
    const double diff = std::abs(cur - prev);
    if (diff == 0.0) return 0.0;
    return diff / std::max(std::abs(cur), std::abs(prev));
}

/// Evaluates `eval(n)` for n = 16, 32, 64, ... (capped at max_nodes) until two
/// successive values differ relatively by less than tol.
/// Throws NumericalError carrying the trace when max_nodes is reached first.
template <class Eval>
ConvergedValue converge(Eval&& eval, double tol = kDefaultQuadTol, int max_nodes = kMaxGaussNodes) {
    if (!(tol > 0.0)) throw std::invalid_argument("quadrature tolerance must be positive");
    ConvergedValue out;
    int n = std::min(kFirstConvergenceNodes, max_nodes);
    double prev = 0.0;
    for (;;) {
        const double v = eval(n);
        ConvergenceStep step{n, v, std::nan("")};
        if (!out.trace.empty()) step.delta = relative_change(prev, v);
        out.trace.push_back(step);
        out.value = v;
        if (out.trace.size() > 1 && step.delta < tol) return out;
        if (n >= max_nodes) break;
        prev = v;
        n = std::min(2 * n, max_nodes);
    }
    std::string msg = "quadrature did not converge to " + std::to_string(tol) + ":";
    for (const auto& s : out.trace) msg += " n=" + std::to_string(s.nodes) + " delta=" + std::to_string(s.delta);
    throw NumericalError(msg);
}

/// integrate_converged over [0,1]^D for real integrands.
template <int D, class F>
ConvergedValue integrate_cube_converged(F&& f, double tol = kDefaultQuadTol, int max_nodes = kMaxGaussNodes) {
    return converge([&](int n) { return integrate_cube<D>(f, cached_rule(n)); }, tol, max_nodes);
}

template <class F>
ConvergedValue integrate_simplex2_converged(F&& f, double tol = kDefaultQuadTol, int max_nodes = kMaxGaussNodes) {
    return converge([&](int n) { return integrate_simplex2(f, cached_rule(n)); }, tol, max_nodes);
}

}  // namespace mollifier
