#pragma once

/**
 * @file moments.hpp
 * @brief The mollified second-moment constants c1, c12, c2, their sum c and
 *        the critical-line proportion bound kappa = 1 - log(c)/R.
 *
 * Every constant is a quadratic form in the mollifier coefficients: c1 in P1,
 * c12 bilinear in (P1, P2), c2 in P2. The integration kernels below therefore
 * take lists of P1 / P2 polynomials and return the full matrix of pairings in
 * one pass over the nodes. A single evaluation is the 1x1 case; the optimizer
 * passes monomial bases.
 *
 * The x/y derivatives at zero are taken exactly with truncated Taylor jets, so
 * the only approximation is the Gauss-Legendre quadrature.
 */

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "mollifier/error.hpp"
#include "mollifier/jet.hpp"
#include "mollifier/parallel.hpp"
#include "mollifier/poly.hpp"
#include "mollifier/quadrature.hpp"

namespace mollifier {

inline constexpr double kMaxTheta1 = 4.0 / 7.0;
inline constexpr double kMaxTheta2 = 0.5;
inline constexpr double kThetaSlack = 1e-9;

enum class ZeroMode { all_zeros, simple_zeros };

inline const char* to_string(ZeroMode m) { return m == ZeroMode::all_zeros ? "all_zeros" : "simple_zeros"; }

struct MollifierConfig {
    double theta1 = kMaxTheta1;
    double theta2 = kMaxTheta2;
    double R = 1.0;
    Polynomial Q{1.0};
    Polynomial P1{0.0, 1.0};
    Polynomial P2{};
    ZeroMode mode = ZeroMode::all_zeros;
};

struct QuadOptions {
    double tol = kDefaultQuadTol;
    int max_nodes = kMaxGaussNodes;
};

/// Range checks on (theta1, theta2, R) shared by every constant.
inline void validate_parameters(double theta1, double theta2, double R) {
    if (!(theta2 <= kMaxTheta2 + kThetaSlack)) throw ConfigError("theta2 must be < 1/2");
    if (!(theta2 > 0.0)) throw ConfigError("theta2 must be > 0");
    if (!(theta2 < theta1)) throw ConfigError("theta2 must be < theta1");
    if (!(theta1 <= kMaxTheta1 + kThetaSlack)) throw ConfigError("theta1 must be < 4/7");
    if (!(R >= 0.0) || !std::isfinite(R)) throw ConfigError("R must be finite and non-negative");
}

/// Full admissibility check for a parameter point, run before evaluate().
inline void validate(const MollifierConfig& cfg) {
    validate_parameters(cfg.theta1, cfg.theta2, cfg.R);
    if (!(cfg.R > 0.0)) throw ConfigError("R must be > 0");
    if (cfg.mode == ZeroMode::simple_zeros && cfg.Q.degree() > 1) {
        throw ConfigError("simple_zeros mode requires Q of degree <= 1");
    }
    const double q0 = cfg.Q(0.0);
    if (std::abs(q0 - 1.0) > kQ0VerbatimTolerance) {
        throw ConfigError("Q(0) must equal 1 (got " + std::to_string(q0) + ")");
    }
    make_q(cfg.Q);
    if (cfg.P1.coeff(0) != 0.0) throw ConfigError("P1 must have zero constant term");
    if (std::abs(cfg.P1(1.0) - 1.0) > kP1Tolerance) {
        throw ConfigError("P1(1) must equal 1 (got " + std::to_string(cfg.P1(1.0)) + ")");
    }
    require_p2_shape(cfg.P2);
}

/// Dense row-major matrix over a scalar ring, closed under += and * double so
/// that it can be a quadrature accumulator.
template <class S>
struct Grid {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<S> cells;

    Grid() = default;
    Grid(std::size_t r, std::size_t c) : rows(r), cols(c), cells(r * c, S{}) {}

    S& operator()(std::size_t i, std::size_t j) { return cells[i * cols + j]; }
    const S& operator()(std::size_t i, std::size_t j) const { return cells[i * cols + j]; }

    Grid& operator+=(const Grid& o) {
        if (cells.empty()) return *this = o;
        for (std::size_t k = 0; k < cells.size(); ++k) cells[k] += o.cells[k];
        return *this;
    }
    friend Grid operator*(Grid g, double s) {
        for (auto& c : g.cells) c *= s;
        return g;
    }
};

using RealGrid = Grid<double>;

// ---------------------------------------------------------------------------
// Kernels: one pass of a fixed rule, all pairings at once.
// ---------------------------------------------------------------------------

/// M[i][k] = (1/theta1) * int int e^{2Rv} g_i g_k du dv, with
/// g(u, v) = Q(v) P'(u) + theta1 Q'(v) P(u) + theta1 R Q(v) P(u).
/// c1(P) = 1 + M for the single-polynomial case.
inline RealGrid c1_kernel(const Polynomial& Q, double R, double theta1, const std::vector<Polynomial>& p1s,
                          const QuadratureRule& rule) {
    const std::size_t m = p1s.size();
    std::vector<Polynomial> dp1s;
    for (const auto& p : p1s) dp1s.push_back(p.derivative());
    const Polynomial dQ = Q.derivative();
    const std::size_t n = rule.size();

    auto row = [&](std::size_t iv) {
        const double v = rule.nodes[iv];
        const double qv = Q(v);
        const double slope = theta1 * (dQ(v) + R * qv);
        const double ev = std::exp(2.0 * R * v) * rule.weights[iv];
        RealGrid acc(m, m);
        std::vector<double> g(m);
        for (std::size_t iu = 0; iu < n; ++iu) {
            const double u = rule.nodes[iu];
            for (std::size_t i = 0; i < m; ++i) g[i] = qv * dp1s[i](u) + slope * p1s[i](u);
            const double w = ev * rule.weights[iu];
            for (std::size_t i = 0; i < m; ++i)
                for (std::size_t k = 0; k < m; ++k) acc(i, k) += w * g[i] * g[k];
        }
        return acc;
    };
    RealGrid sum = ordered_sum<RealGrid>(n, row, RealGrid(m, m));
    return sum * (1.0 / theta1);
}

/// K[i][j] = c12 pairing of p1s[i] with p2s[j]:
///   4 theta2^2/theta1^2 e^R d^2/dxdy [ int_{a+b<=1} int_0^1 u^2 (1-u)
///     exp(R(theta1 (y-x) + u theta2 (a-b))) Q(-theta1 x + a u theta2)
///     Q(1 + theta1 y - b u theta2) P1(x + y + 1 - (1-u) theta2/theta1)
///     P2''((1-a-b) u) du da db ] at x = y = 0.
inline RealGrid c12_kernel(const Polynomial& Q, double R, double theta1, double theta2,
                           const std::vector<Polynomial>& p1s, const std::vector<Polynomial>& p2s,
                           const QuadratureRule& rule) {
    const std::size_t m1 = p1s.size();
    const std::size_t m2 = p2s.size();
    std::vector<Polynomial> ddp2s;
    for (const auto& p : p2s) ddp2s.push_back(p.derivative().derivative());
    const std::size_t n = rule.size();
    const Jet11 x = Jet11::x();
    const Jet11 y = Jet11::y();
    const Jet11 shift = exp(R * theta1 * (y - x));
    const Jet11 q_left_base = -theta1 * x;
    const Jet11 q_right_base = 1.0 + theta1 * y;

    auto slice = [&](std::size_t iu) {
        const double u = rule.nodes[iu];
        const double wu = rule.weights[iu];
        const Jet11 p1_arg = x + y + (1.0 - (1.0 - u) * theta2 / theta1);
        std::vector<Jet11> p1_vals;
        for (const auto& p : p1s) p1_vals.push_back(p(p1_arg));
        const Jet11 u_part = shift * (u * u * (1.0 - u) * wu);
        Grid<Jet11> acc(m1, m2);
        std::vector<double> p2_vals(m2);
        for (std::size_t ia = 0; ia < n; ++ia) {
            const double a = rule.nodes[ia];
            const double wa = rule.weights[ia] * (1.0 - a);
            const Jet11 q_left = Q(q_left_base + a * u * theta2);
            for (std::size_t it = 0; it < n; ++it) {
                const double b = (1.0 - a) * rule.nodes[it];
                const double w = wa * rule.weights[it];
                const Jet11 common =
                    u_part * q_left * Q(q_right_base - b * u * theta2) * std::exp(R * u * theta2 * (a - b));
                const double s = (1.0 - a - b) * u;
                for (std::size_t j = 0; j < m2; ++j) p2_vals[j] = w * ddp2s[j](s);
                for (std::size_t i = 0; i < m1; ++i) {
                    const Jet11 ci = common * p1_vals[i];
                    for (std::size_t j = 0; j < m2; ++j) acc(i, j).add_scaled(p2_vals[j], ci);
                }
            }
        }
        return acc;
    };
    const Grid<Jet11> sum = ordered_sum<Grid<Jet11>>(n, slice, Grid<Jet11>(m1, m2));
    const double scale = 4.0 * theta2 * theta2 / (theta1 * theta1) * std::exp(R);
    RealGrid out(m1, m2);
    for (std::size_t k = 0; k < sum.cells.size(); ++k) out.cells[k] = scale * mixed_partial(sum.cells[k], 1, 1);
    return out;
}

/// K[j][l] = c2 pairing of p2s[j] with p2s[l]:
///   (2/3) d^4/dx^2dy^2 [ int_[0,1]^4 (1-r)^4 (1/theta2 + E) exp(-theta2 R E)
///     Q(theta2(-y + u(x+r)) + t G) Q(theta2(-x + v(y+r)) + t G) exp(2 R t G)
///     (x+r)(y+r) P2''((1-u)(x+r)) P2''((1-v)(y+r)) dt dr du dv ] at x = y = 0,
/// where E = x + y - v(y+r) - u(x+r) and G = 1 + theta2 E.
inline RealGrid c2_kernel(const Polynomial& Q, double R, double theta2, const std::vector<Polynomial>& p2s,
                          const QuadratureRule& rule) {
    const std::size_t m = p2s.size();
    std::vector<Polynomial> ddp2s;
    for (const auto& p : p2s) ddp2s.push_back(p.derivative().derivative());
    const std::size_t n = rule.size();
    const Jet22 x = Jet22::x();
    const Jet22 y = Jet22::y();

    auto slice = [&](std::size_t ir) {
        const double r = rule.nodes[ir];
        const double wr = rule.weights[ir];
        const Jet22 xr = x + r;
        const Jet22 yr = y + r;
        const double one_minus_r = 1.0 - r;
        const Jet22 r_part = xr * yr * (one_minus_r * one_minus_r * one_minus_r * one_minus_r * wr);
        Grid<Jet22> acc(m, m);
        std::vector<Jet22> left(m), right(m), weighted(m);
        for (std::size_t iu = 0; iu < n; ++iu) {
            const double u = rule.nodes[iu];
            const double wu = rule.weights[iu];
            for (std::size_t j = 0; j < m; ++j) left[j] = ddp2s[j]((1.0 - u) * xr);
            const Jet22 q_left_arg = theta2 * (u * xr - y);
            for (std::size_t iv = 0; iv < n; ++iv) {
                const double v = rule.nodes[iv];
                const double wv = rule.weights[iv];
                for (std::size_t l = 0; l < m; ++l) right[l] = ddp2s[l]((1.0 - v) * yr);
                const Jet22 q_right_arg = theta2 * (v * yr - x);
                const Jet22 E = x + y - v * yr - u * xr;
                const Jet22 G = 1.0 + theta2 * E;
                // exp(2RtG) = exp(2Rt G(0)) * sum_k (2Rt theta2)^k N^k / k!, N = E - E(0).
                std::array<Jet22, 5> nil_powers;
                nil_powers[0] = Jet22(1.0);
                nil_powers[1] = E - E.value();
                for (std::size_t k = 2; k < nil_powers.size(); ++k) nil_powers[k] = nil_powers[k - 1] * nil_powers[1];
                Jet22 t_integral;
                for (std::size_t it = 0; it < n; ++it) {
                    const double t = rule.nodes[it];
                    const Jet22 tG = t * G;
                    const double rate = 2.0 * R * t * theta2;
                    Jet22 growth;
                    double coef = std::exp(2.0 * R * t * G.value());
                    for (std::size_t k = 0; k < nil_powers.size(); ++k) {
                        growth.add_scaled(coef, nil_powers[k]);
                        coef *= rate / static_cast<double>(k + 1);
                    }
                    t_integral.add_scaled(rule.weights[it],
                                          growth * taylor_eval(Q, q_left_arg + tG) * taylor_eval(Q, q_right_arg + tG));
                }
                const Jet22 base = r_part * (1.0 / theta2 + E) * exp(-theta2 * R * E) * t_integral * (wu * wv);
                for (std::size_t j = 0; j < m; ++j) weighted[j] = base * left[j];
                for (std::size_t j = 0; j < m; ++j)
                    for (std::size_t l = 0; l < m; ++l) acc(j, l) += weighted[j] * right[l];
            }
        }
        return acc;
    };
    const Grid<Jet22> sum = ordered_sum<Grid<Jet22>>(n, slice, Grid<Jet22>(m, m));
    RealGrid out(m, m);
    for (std::size_t k = 0; k < sum.cells.size(); ++k) out.cells[k] = 2.0 / 3.0 * mixed_partial(sum.cells[k], 2, 2);
    return out;
}

// ---------------------------------------------------------------------------
// Single constants.
// ---------------------------------------------------------------------------

inline double c1_at(const MollifierConfig& cfg, const QuadratureRule& rule) {
    validate_parameters(cfg.theta1, cfg.theta2, cfg.R);
    return 1.0 + c1_kernel(cfg.Q, cfg.R, cfg.theta1, {cfg.P1}, rule)(0, 0);
}

inline double c12_at(const MollifierConfig& cfg, const QuadratureRule& rule) {
    validate_parameters(cfg.theta1, cfg.theta2, cfg.R);
    if (cfg.P2.is_zero()) return 0.0;
    return c12_kernel(cfg.Q, cfg.R, cfg.theta1, cfg.theta2, {cfg.P1}, {cfg.P2}, rule)(0, 0);
}

inline double c2_at(const MollifierConfig& cfg, const QuadratureRule& rule) {
    validate_parameters(cfg.theta1, cfg.theta2, cfg.R);
    if (cfg.P2.is_zero()) return 0.0;
    return c2_kernel(cfg.Q, cfg.R, cfg.theta2, {cfg.P2}, rule)(0, 0);
}

/// Constant value after quadrature doubling, with its convergence trace.
using ConstantResult = ConvergedValue;

inline ConstantResult compute_c1(const MollifierConfig& cfg, const QuadOptions& opt = {}) {
    return converge([&](int n) { return c1_at(cfg, cached_rule(n)); }, opt.tol, opt.max_nodes);
}

inline ConstantResult compute_c12(const MollifierConfig& cfg, const QuadOptions& opt = {}) {
    if (cfg.P2.is_zero()) return ConstantResult{0.0, {}};
    return converge([&](int n) { return c12_at(cfg, cached_rule(n)); }, opt.tol, opt.max_nodes);
}

inline ConstantResult compute_c2(const MollifierConfig& cfg, const QuadOptions& opt = {}) {
    if (cfg.P2.is_zero()) return ConstantResult{0.0, {}};
    return converge([&](int n) { return c2_at(cfg, cached_rule(n)); }, opt.tol, opt.max_nodes);
}

inline double compute_kappa(double c, double R) {
    if (!(R > 0.0)) throw ConfigError("R must be > 0");
    if (!(c > 0.0)) throw NumericalError("c must be positive to take its logarithm (got " + std::to_string(c) + ")");
    return 1.0 - std::log(c) / R;
}

struct MomentValues {
    double c1 = 0.0;
    double c12 = 0.0;
    double c2 = 0.0;
    double c = 0.0;
    double kappa = 0.0;
};

struct KappaReport {
    MollifierConfig config;        ///< as supplied (Q not rescaled)
    MomentValues values;           ///< evaluated with Q / Q(0)
    std::optional<MomentValues> verbatim;  ///< Q substituted as supplied; present only when Q(0) != 1
    ConstantResult c1_trace, c12_trace, c2_trace;
};

/// Q(0) differences below this are treated as rounding, not as a different Q.
inline constexpr double kQ0ExactTolerance = 1e-12;

/// The formulas assume Q(0) = 1. The moment integral is homogeneous of degree
/// two in Q, so a supplied Q with Q(0) != 1 is evaluated as Q / Q(0).
inline MollifierConfig with_unit_q0(MollifierConfig cfg) {
    const double q0 = cfg.Q(0.0);
    if (std::abs(q0 - 1.0) > kQ0ExactTolerance) cfg.Q = (1.0 / q0) * cfg.Q;
    return cfg;
}

inline MomentValues assemble(double c1, double c12, double c2, double R) {
    MomentValues v{c1, c12, c2, c1 + 2.0 * c12 + c2, 0.0};
    v.kappa = compute_kappa(v.c, R);
    return v;
}

/// All three constants at a fixed rule (no convergence loop).
inline MomentValues evaluate_at(const MollifierConfig& cfg, const QuadratureRule& rule) {
    return assemble(c1_at(cfg, rule), c12_at(cfg, rule), c2_at(cfg, rule), cfg.R);
}

inline KappaReport evaluate(const MollifierConfig& cfg, const QuadOptions& opt = {}) {
    validate(cfg);
    KappaReport rep;
    rep.config = cfg;
    const MollifierConfig unit = with_unit_q0(cfg);
    rep.c1_trace = compute_c1(unit, opt);
    rep.c12_trace = compute_c12(unit, opt);
    rep.c2_trace = compute_c2(unit, opt);
    rep.values = assemble(rep.c1_trace.value, rep.c12_trace.value, rep.c2_trace.value, cfg.R);
    const double q0 = cfg.Q(0.0);
    if (std::abs(q0 - 1.0) > kQ0ExactTolerance) {
        // Each integral is quadratic in Q; only the leading 1 of c1 does not scale.
        const double s = q0 * q0;
        rep.verbatim = assemble(1.0 + s * (rep.values.c1 - 1.0), s * rep.values.c12, s * rep.values.c2, cfg.R);
    }
    return rep;
}

}  // namespace mollifier
