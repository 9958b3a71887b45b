#pragma once

/**
 * @file mellin.hpp
 * @brief The Mellin representation of the smoothed coefficient P1(log(y/n)/log y)
 *        as a vertical-line integral on Re s = 1.
 *
 *   P1[n] = sum_i a_i i!/(log y)^i (1/2 pi i) int_{(1)} (y/n)^s ds/s^{i+1},
 * which equals P1(log(y/n)/log y) for n <= y and 0 for n > y.
 */

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <stdexcept>

#include "mollifier/jet.hpp"
#include "mollifier/poly.hpp"
#include "mollifier/quadrature.hpp"

namespace mollifier::oracle {

struct MellinReport {
    double integral = 0.0;    ///< truncated line integral
    double expected = 0.0;
    double error = 0.0;
    double tail_bound = 0.0;  ///< bound on the part of the line with |Im s| > height
};

struct MellinOptions {
    double height = 1000.0;     ///< integrate Im s over [-height, height]
    double panel_width = 0.5;
    int panel_nodes = 16;
};

inline MellinReport check_mellin_pair(const Polynomial& P1, double y, double n, const MellinOptions& opt = {}) {
    if (!(n >= 1.0)) throw std::invalid_argument("n must be >= 1");
    if (!(y > 1.0)) throw std::invalid_argument("y must exceed 1");
    if (P1.coeff(0) != 0.0) throw std::invalid_argument("P1 must vanish at 0");
    const double Ly = std::log(y);
    const double Lq = std::log(y / n);
    const int deg = P1.degree();
    std::vector<double> weight(static_cast<std::size_t>(deg) + 1, 0.0);
    for (int i = 1; i <= deg; ++i) weight[static_cast<std::size_t>(i)] = P1.coeff(static_cast<std::size_t>(i)) * factorial(i) / std::pow(Ly, i);

    // The integrand at -t is the conjugate of the one at t, so
    // (1/2 pi i) int_{(1)} = (1/pi) Re int_0^height f(1 + it) dt.
    auto integrand = [&](double t) {
        const std::complex<double> s{1.0, t};
        const std::complex<double> qs = std::exp(s * Lq);
        std::complex<double> sum{0.0, 0.0};
        std::complex<double> inv = 1.0 / s;
        std::complex<double> power = inv;  // s^{-1}
        for (int i = 1; i <= deg; ++i) {
            power *= inv;  // s^{-(i+1)}
            sum += weight[static_cast<std::size_t>(i)] * power;
        }
        return (qs * sum).real();
    };
    const QuadratureRule& rule = cached_rule(opt.panel_nodes);
    const auto panels = static_cast<std::size_t>(std::ceil(opt.height / opt.panel_width));
    const double width = opt.height / static_cast<double>(panels);
    double total = 0.0;
    for (std::size_t p = 0; p < panels; ++p) {
        const double t0 = width * static_cast<double>(p);
        double part = 0.0;
        for (std::size_t k = 0; k < rule.size(); ++k) part += rule.weights[k] * integrand(t0 + width * rule.nodes[k]);
        total += part * width;
    }

    MellinReport rep;
    rep.integral = total / std::numbers::pi;
    rep.expected = n <= y ? P1(Lq / Ly) : 0.0;
    rep.error = std::abs(rep.integral - rep.expected);
    // Each term g(t) = q^{1+it}/(1+it)^{i+1} has |g| <= q/T^{i+1} beyond T and
    // int_T^inf |g'| <= q/T^{i+1}; one integration by parts against e^{it log q}
    // bounds a one-sided tail by 2q/(|log q| T^{i+1}). Without oscillation
    // (q = 1) the plain bound is q/(i T^i).
    const double q = std::exp(Lq);
    const double T = opt.height;
    for (int i = 1; i <= deg; ++i) {
        const double w = std::abs(weight[static_cast<std::size_t>(i)]);
        const double plain = q / (i * std::pow(T, i));
        const double oscillating = Lq != 0.0 ? 2.0 * q / (std::abs(Lq) * std::pow(T, i + 1)) : plain;
        rep.tail_bound += w * 2.0 * std::min(plain, oscillating) / (2.0 * std::numbers::pi);
    }
    return rep;
}

}  // namespace mollifier::oracle
