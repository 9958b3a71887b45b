#pragma once

/**
 * @file jets_check.hpp
 * @brief Self-checks of the jet arithmetic: ring axioms, the exponential law,
 *        and mixed partials of random composites against central differences.
 */

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <utility>

#include "mollifier/jet.hpp"
#include "mollifier/poly.hpp"

namespace mollifier::oracle {

template <int MX, int MY>
Jet<MX, MY> random_jet(std::mt19937_64& rng, bool nilpotent = false) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Jet<MX, MY> a;
    for (int i = 0; i <= MX; ++i)
        for (int j = 0; j <= MY; ++j) a(i, j) = u(rng);
    if (nilpotent) a(0, 0) = 0.0;
    return a;
}

template <int MX, int MY>
double max_abs_difference(const Jet<MX, MY>& a, const Jet<MX, MY>& b) {
    double m = 0.0;
    for (std::size_t k = 0; k < a.data().size(); ++k) m = std::max(m, std::abs(a.data()[k] - b.data()[k]));
    return m;
}

/// Largest violation of associativity, commutativity and distributivity over
/// `trials` random triples of (2,2)-jets.
inline double ring_axiom_defect(std::uint64_t seed = 7, int trials = 100) {
    std::mt19937_64 rng(seed);
    double worst = 0.0;
    for (int t = 0; t < trials; ++t) {
        const auto a = random_jet<2, 2>(rng), b = random_jet<2, 2>(rng), c = random_jet<2, 2>(rng);
        worst = std::max({worst, max_abs_difference((a * b) * c, a * (b * c)), max_abs_difference(a * b, b * a),
                          max_abs_difference(a * (b + c), a * b + a * c), max_abs_difference((a + b) + c, a + (b + c))});
    }
    return worst;
}

/// Largest |exp(a + b) - exp(a) exp(b)| coefficient over random (2,2)-jets.
inline double exp_law_defect(std::uint64_t seed = 11, int trials = 100) {
    std::mt19937_64 rng(seed);
    double worst = 0.0;
    for (int t = 0; t < trials; ++t) {
        const auto a = random_jet<2, 2>(rng), b = random_jet<2, 2>(rng);
        worst = std::max(worst, max_abs_difference(exp(a + b), exp(a) * exp(b)));
    }
    return worst;
}

/// f(x, y) = w0 exp(l0) P(l1) + w1 P(l2) P'(l3) with random linear forms l_k
/// and a random cubic P. Generic in the scalar so the same composite can be
/// evaluated on jets and on plain numbers.
struct RandomComposite {
    std::array<std::array<double, 3>, 4> forms{};  ///< (constant, x-slope, y-slope)
    std::array<double, 2> weights{};
    Polynomial P, dP;

    static RandomComposite draw(std::mt19937_64& rng) {
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        RandomComposite f;
        for (auto& l : f.forms)
            for (auto& v : l) v = u(rng);
        for (auto& w : f.weights) w = u(rng);
        f.P = Polynomial{u(rng), u(rng), u(rng), u(rng)};
        f.dP = f.P.derivative();
        return f;
    }

    template <class T>
    T operator()(const T& x, const T& y) const {
        using std::exp;
        auto form = [&](std::size_t k) { return forms[k][0] + forms[k][1] * x + forms[k][2] * y; };
        return weights[0] * exp(form(0)) * P(form(1)) + weights[1] * P(form(2)) * dP(form(3));
    }
};

/// d^{i+j} f / dx^i dy^j at 0 for i, j <= 2 by the tensor product of
/// fourth-order central stencils.
template <class F>
double central_difference(const F& f, int i, int j, double h) {
    static constexpr std::array<std::array<double, 5>, 3> stencil{{
        {0.0, 0.0, 1.0, 0.0, 0.0},
        {1.0 / 12.0, -8.0 / 12.0, 0.0, 8.0 / 12.0, -1.0 / 12.0},
        {-1.0 / 12.0, 16.0 / 12.0, -30.0 / 12.0, 16.0 / 12.0, -1.0 / 12.0},
    }};
    double sum = 0.0;
    for (int a = 0; a < 5; ++a) {
        const double wa = stencil[static_cast<std::size_t>(i)][static_cast<std::size_t>(a)];
        if (wa == 0.0) continue;
        for (int b = 0; b < 5; ++b) {
            const double wb = stencil[static_cast<std::size_t>(j)][static_cast<std::size_t>(b)];
            if (wb == 0.0) continue;
            sum += wa * wb * f((a - 2) * h, (b - 2) * h);
        }
    }
    return sum / (std::pow(h, i) * std::pow(h, j));
}

/// Worst relative disagreement between jet partials (1,1), (2,0), (0,2) and
/// central differences at h = 1e-3, over `count` random composites.
inline double composite_partial_defect(std::uint64_t seed = 13, int count = 50) {
    std::mt19937_64 rng(seed);
    constexpr double h = 1e-3;
    double worst = 0.0;
    for (int t = 0; t < count; ++t) {
        const auto f = RandomComposite::draw(rng);
        const Jet22 jet = f(Jet22::x(), Jet22::y());
        for (auto [i, j] : {std::pair{1, 1}, std::pair{2, 0}, std::pair{0, 2}}) {
            const double exact = mixed_partial(jet, i, j);
            const double fd = central_difference([&](double x, double y) { return f(x, y); }, i, j, h);
            const double scale = std::max(std::abs(exact), 1.0);
            worst = std::max(worst, std::abs(exact - fd) / scale);
        }
    }
    return worst;
}

}  // namespace mollifier::oracle
