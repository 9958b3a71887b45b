#pragma once

/**
 * @file identities.hpp
 * @brief Exact contour-integral identities: each check evaluates a circle
 *        integral of a rational-times-exponential integrand numerically and
 *        compares it with an independently computed closed form.
 *
 *  - single-pole pair:  (1/2 pi i) oint q^s (alpha+s)(s-beta) s^{-i-1} ds
 *                       = (1/i!) d^2/dxdy [e^{alpha x - beta y}(x + y + log q)^i] at 0
 *  - double reciprocal: 4 (1/2 pi i) oint q^u / ((alpha+u)(u-beta) u^{j-1}) du
 *                       = 4 (log q)^j/(j-2)! int_{a+b<=1} (1-a-b)^{j-2} q^{-a alpha + b beta}
 *  - residue at infinity: (1/2 pi i) oint_{|s|=1} q^s (beta+s)^2/((alpha+s) s^{i-1}) ds
 *                       = d^2/dx^2 [(x + log q)^{i-1}/(i-2)! int_0^1 (1-u)^{i-2} e^{x(beta - alpha u)} q^{-alpha u} du] at 0
 *  - two-pole residues of x^u / ((u+s)^{j+1} u^{k+1}).
 */

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

#include "mollifier/jet.hpp"
#include "mollifier/oracle/contour.hpp"
#include "mollifier/quadrature.hpp"

namespace mollifier::oracle {

struct IdentityReport {
    cplx lhs;   ///< contour integral
    cplx rhs;   ///< closed form
    double error = 0.0;
};

inline IdentityReport make_report(cplx lhs, cplx rhs) { return IdentityReport{lhs, rhs, std::abs(lhs - rhs)}; }

inline double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    double r = 1.0;
    for (int t = 1; t <= k; ++t) r = r * (n - k + t) / t;
    return r;
}

inline constexpr int kIdentityContourPoints = 256;

// ---------------------------------------------------------------------------

struct PolePairParams {
    int i = 1;
    double alpha = 0.0;
    double beta = 0.0;
    double log_q = 1.0;  ///< log of the ratio q > 1
};

/// -alpha beta l^i/i! + (alpha - beta) l^{i-1}/(i-1)! + l^{i-2}/(i-2)!, with 1/(-1)! = 0.
inline double pole_pair_residue(const PolePairParams& p) {
    const double l = p.log_q;
    double r = -p.alpha * p.beta * std::pow(l, p.i) / factorial(p.i);
    r += (p.alpha - p.beta) * std::pow(l, p.i - 1) / factorial(p.i - 1);
    if (p.i >= 2) r += std::pow(l, p.i - 2) / factorial(p.i - 2);
    return r;
}

inline IdentityReport check_pole_pair(const PolePairParams& p, int n_points = kIdentityContourPoints) {
    if (p.i < 1) throw std::invalid_argument("pole-pair identity needs i >= 1");
    if (!(p.log_q > 0.0)) throw std::invalid_argument("pole-pair identity needs q > 1");
    const double l = p.log_q;
    auto f = [&](cplx s) { return std::exp(l * s) * (p.alpha + s) * (s - p.beta) / std::pow(s, p.i + 1); };
    const double radius = std::clamp((p.i + 1) / l, 0.05, 4.0);
    const cplx lhs = contour_circle(f, ContourSpec{{0.0, 0.0}, radius, n_points});

    const Jet11 x = Jet11::x();
    const Jet11 y = Jet11::y();
    Jet11 power(1.0);
    const Jet11 base = x + y + l;
    for (int k = 0; k < p.i; ++k) power = power * base;
    const double rhs = mixed_partial(exp(p.alpha * x - p.beta * y) * power, 1, 1) / factorial(p.i);
    return make_report(lhs, rhs);
}

// ---------------------------------------------------------------------------

struct DoubleReciprocalParams {
    int j = 3;
    double alpha = 0.0;
    double beta = 0.0;
    double log_q = 1.0;
};

inline double double_reciprocal_integral(const DoubleReciprocalParams& p) {
    const double l = p.log_q;
    auto f = [&](double a, double b) {
        return std::pow(1.0 - a - b, p.j - 2) * std::exp(l * (-a * p.alpha + b * p.beta));
    };
    const double area = integrate_simplex2_converged(f, 1e-14).value;
    return 4.0 * std::pow(l, p.j) / factorial(p.j - 2) * area;
}

inline IdentityReport check_double_reciprocal(const DoubleReciprocalParams& p, int n_points = kIdentityContourPoints) {
    if (p.j < 3) throw std::invalid_argument("double-reciprocal identity needs j >= 3");
    if (!(p.log_q > 0.0)) throw std::invalid_argument("double-reciprocal identity needs q > 1");
    const double l = p.log_q;
    auto f = [&](cplx u) {
        return 4.0 * std::exp(l * u) / ((p.alpha + u) * (u - p.beta) * std::pow(u, p.j - 1));
    };
    const double radius = std::max((p.j + 1) / l, 2.0 * std::max(std::abs(p.alpha), std::abs(p.beta)));
    const cplx lhs = contour_circle(f, ContourSpec{{0.0, 0.0}, radius, n_points});
    return make_report(lhs, double_reciprocal_integral(p));
}

// ---------------------------------------------------------------------------

struct InfinityResidueParams {
    int i = 3;
    double alpha = 0.0;
    double beta = 0.0;
    double log_q = 1.0;
};

inline double infinity_residue_closed_form(const InfinityResidueParams& p) {
    using J = Jet<2, 0>;
    const J x = J::x();
    const double l = p.log_q;
    const QuadratureRule& rule = cached_rule(32);
    const J inner = integrate_cube<1>(
        [&](const std::array<double, 1>& pt) {
            const double u = pt[0];
            return exp(x * (p.beta - p.alpha * u) - p.alpha * u * l) * std::pow(1.0 - u, p.i - 2);
        },
        rule);
    J power(1.0);
    for (int k = 0; k < p.i - 1; ++k) power = power * (x + l);
    return mixed_partial(power * inner, 2, 0) / factorial(p.i - 2);
}

inline IdentityReport check_infinity_residue(const InfinityResidueParams& p, int n_points = kIdentityContourPoints) {
    if (p.i < 3) throw std::invalid_argument("residue-at-infinity identity needs i >= 3");
    if (!(p.log_q > 0.0)) throw std::invalid_argument("residue-at-infinity identity needs q > 1");
    if (!(std::abs(p.alpha) < 1.0)) throw std::invalid_argument("the pole -alpha must lie inside the unit circle");
    const double l = p.log_q;
    auto f = [&](cplx s) {
        return std::exp(l * s) * (p.beta + s) * (p.beta + s) / ((p.alpha + s) * std::pow(s, p.i - 1));
    };
    const cplx lhs = contour_circle(f, ContourSpec{{0.0, 0.0}, 1.0, n_points});
    return make_report(lhs, infinity_residue_closed_form(p));
}

// ---------------------------------------------------------------------------
// Residues of x^u / ((u+s)^{j+1} u^{k+1}).
// ---------------------------------------------------------------------------

struct TwoPoleParams {
    int j = 0;
    int k = 0;
    cplx s{1.0, 0.0};
    double log_x = 1.0;
};

/// Residue at u = 0: sum_{l<=k} c_{j,k,l} (log x)^{k-l} / s^{j+l+1},
/// c_{j,k,l} = (-1)^l binom(j+l, j)/(k-l)!.
inline cplx two_pole_residue_at_zero(const TwoPoleParams& p) {
    cplx sum{0.0, 0.0};
    for (int l = 0; l <= p.k; ++l) {
        const double c = (l % 2 == 0 ? 1.0 : -1.0) * binomial(p.j + l, p.j) / factorial(p.k - l);
        sum += c * std::pow(p.log_x, p.k - l) / std::pow(p.s, p.j + l + 1);
    }
    return sum;
}

/// Residue at u = -s: x^{-s} sum_{l<=j} d_{j,k,l} (log x)^{j-l} / s^{k+l+1},
/// d_{j,k,l} = (-1)^{k+1} binom(k+l, k)/(j-l)!.
/// (Shifting u -> u - s turns (u+s)^{-j-1} u^{-k-1} into u^{-j-1} (u-s)^{-k-1},
/// and (u-s)^{-k-1} = (-1)^{k+1} s^{-k-1} sum_l binom(k+l, k) (u/s)^l.)
inline cplx two_pole_residue_at_minus_s(const TwoPoleParams& p) {
    cplx sum{0.0, 0.0};
    const double sign = (p.k + 1) % 2 == 0 ? 1.0 : -1.0;
    for (int l = 0; l <= p.j; ++l) {
        const double d = sign * binomial(p.k + l, p.k) / factorial(p.j - l);
        sum += d * std::pow(p.log_x, p.j - l) / std::pow(p.s, p.k + l + 1);
    }
    return std::exp(-p.s * p.log_x) * sum;
}

/// The u = -s residue with the u = 0 constants and j, k exchanged, i.e.
/// d_{j,k,l} = (-1)^l binom(k+l, k)/(j-l)!. Kept to document how it differs
/// from the direct computation above by the factor (-1)^{k+1-l}.
inline cplx two_pole_residue_at_minus_s_swapped(const TwoPoleParams& p) {
    cplx sum{0.0, 0.0};
    for (int l = 0; l <= p.j; ++l) {
        const double d = (l % 2 == 0 ? 1.0 : -1.0) * binomial(p.k + l, p.k) / factorial(p.j - l);
        sum += d * std::pow(p.log_x, p.j - l) / std::pow(p.s, p.k + l + 1);
    }
    return std::exp(-p.s * p.log_x) * sum;
}

struct TwoPoleReport {
    IdentityReport at_zero;     ///< small circle around 0 vs c-sum
    IdentityReport at_minus_s;  ///< small circle around -s vs d-sum
    IdentityReport enclosing;   ///< circle around both poles vs c-sum + d-sum
    IdentityReport swapped;     ///< small circle around -s vs the exchanged-index reading
    double max_error() const { return std::max({at_zero.error, at_minus_s.error, enclosing.error}); }
};

inline TwoPoleReport check_two_pole_residues(const TwoPoleParams& p, int n_points = kIdentityContourPoints) {
    if (p.j < 0 || p.k < 0) throw std::invalid_argument("two-pole residues need j, k >= 0");
    if (std::abs(p.s) == 0.0) throw std::invalid_argument("two-pole residues need s != 0");
    const double l = p.log_x;
    auto f = [&](cplx u) { return std::exp(l * u) / (std::pow(u + p.s, p.j + 1) * std::pow(u, p.k + 1)); };
    const double small = 0.5 * std::abs(p.s);
    const cplx around_zero = contour_circle(f, ContourSpec{{0.0, 0.0}, small, n_points});
    const cplx around_minus_s = contour_circle(f, ContourSpec{-p.s, small, n_points});
    const cplx around_both = contour_circle(f, ContourSpec{{0.0, 0.0}, 2.0 * std::abs(p.s), n_points});
    const cplx c_part = two_pole_residue_at_zero(p);
    const cplx d_part = two_pole_residue_at_minus_s(p);
    return TwoPoleReport{make_report(around_zero, c_part), make_report(around_minus_s, d_part),
                         make_report(around_both, c_part + d_part),
                         make_report(around_minus_s, two_pole_residue_at_minus_s_swapped(p))};
}

}  // namespace mollifier::oracle
