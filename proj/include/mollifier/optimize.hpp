#pragma once

/**
 * @file optimize.hpp
 * @brief Maximizing kappa over the mollifier parameterization.
 *
 * For fixed (Q, R, theta1, theta2) the total constant is
 *     c(w) = 1 + w^T M w,   w = (P1 coefficients of x^1..x^d1, P2 coefficients of x^3..x^d2),
 * so the best P1, P2 under P1(1) = 1 solve a linear KKT system. The outer search
 * over R and the odd-basis coefficients of Q is Nelder-Mead on -kappa.
 */

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "mollifier/error.hpp"
#include "mollifier/moments.hpp"
#include "mollifier/nelder_mead.hpp"
#include "mollifier/poly.hpp"
#include "mollifier/presets.hpp"
#include "mollifier/quadrature.hpp"

namespace mollifier {

struct GramSystem {
    Eigen::MatrixXd M;  ///< blocks [[c1 part, c12 part], [c12 part^T, c2 part]]
    Eigen::VectorXd e;  ///< e^T w = P1(1)
    int p1_degree = 0;  ///< P1 basis x^1..x^p1_degree
    int p2_degree = 0;  ///< P2 basis x^3..x^p2_degree; 0 when P2 is off
    double offset = 1.0;

    std::size_t p1_size() const { return static_cast<std::size_t>(p1_degree); }
    std::size_t p2_size() const { return p2_degree >= 3 ? static_cast<std::size_t>(p2_degree - 2) : 0; }
    double total(const Eigen::VectorXd& w) const { return offset + w.dot(M * w); }
};

namespace detail {
inline void check_degrees(int d1, int d2) {
    if (d1 < 1) throw ConfigError("P1 degree must be >= 1");
    if (d2 != 0 && d2 < 3) throw ConfigError("P2 degree must be >= 3 (or 0 to switch P2 off)");
}
inline std::vector<Polynomial> monomials(int from, int to) {
    std::vector<Polynomial> out;
    for (int k = from; k <= to; ++k) out.push_back(Polynomial::monomial(k));
    return out;
}
}  // namespace detail

/// Gram system from one pass of a fixed rule; every entry comes from the basis-resolved kernels.
inline GramSystem build_gram(const Polynomial& Q, double R, double theta1, double theta2, int d1, int d2,
                             const QuadratureRule& rule) {
    detail::check_degrees(d1, d2);
    validate_parameters(theta1, theta2, R);
    GramSystem sys;
    sys.p1_degree = d1;
    sys.p2_degree = d2;
    const std::size_t m1 = sys.p1_size();
    const std::size_t m2 = sys.p2_size();
    const auto b1 = detail::monomials(1, d1);
    sys.M = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(m1 + m2), static_cast<Eigen::Index>(m1 + m2));
    sys.e = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(m1 + m2));
    sys.e.head(static_cast<Eigen::Index>(m1)).setOnes();

    const RealGrid k1 = c1_kernel(Q, R, theta1, b1, rule);
    for (std::size_t i = 0; i < m1; ++i)
        for (std::size_t k = 0; k < m1; ++k) sys.M(i, k) = 0.5 * (k1(i, k) + k1(k, i));
    if (m2 > 0) {
        const auto b2 = detail::monomials(3, d2);
        const RealGrid k12 = c12_kernel(Q, R, theta1, theta2, b1, b2, rule);
        const RealGrid k2 = c2_kernel(Q, R, theta2, b2, rule);
        for (std::size_t i = 0; i < m1; ++i)
            for (std::size_t j = 0; j < m2; ++j) sys.M(i, m1 + j) = sys.M(m1 + j, i) = k12(i, j);
        for (std::size_t j = 0; j < m2; ++j)
            for (std::size_t l = 0; l < m2; ++l) sys.M(m1 + j, m1 + l) = 0.5 * (k2(j, l) + k2(l, j));
    }
    return sys;
}

struct ConvergedGram {
    GramSystem system;
    std::vector<ConvergenceStep> trace;  ///< value: max |M_ij|, delta: max |change| / max |M_ij|
};

inline ConvergedGram build_gram_converged(const Polynomial& Q, double R, double theta1, double theta2, int d1,
                                          int d2, const QuadOptions& opt = {}) {
    ConvergedGram out;
    int n = std::min(kFirstConvergenceNodes, opt.max_nodes);
    for (;;) {
        GramSystem sys = build_gram(Q, R, theta1, theta2, d1, d2, cached_rule(n));
        const double scale = sys.M.cwiseAbs().maxCoeff();
        ConvergenceStep step{n, scale, std::nan("")};
        if (!out.trace.empty()) {
            const double diff = (sys.M - out.system.M).cwiseAbs().maxCoeff();
            step.delta = diff == 0.0 ? 0.0 : diff / scale;
        }
        out.trace.push_back(step);
        out.system = std::move(sys);
        if (out.trace.size() > 1 && step.delta < opt.tol) return out;
        if (n >= opt.max_nodes) break;
        n = std::min(2 * n, opt.max_nodes);
    }
    throw NumericalError("Gram matrix did not converge by n = " + std::to_string(opt.max_nodes));
}

/// Same matrix from whole-constant evaluations only:
/// M_st = (c(w_s + w_t) - c(w_s - w_t)) / 4 on basis vectors w_s, w_t.
inline GramSystem build_gram_polarized(const Polynomial& Q, double R, double theta1, double theta2, int d1, int d2,
                                       const QuadratureRule& rule) {
    detail::check_degrees(d1, d2);
    GramSystem sys;
    sys.p1_degree = d1;
    sys.p2_degree = d2;
    const std::size_t m1 = sys.p1_size();
    const std::size_t m = m1 + sys.p2_size();
    std::vector<Polynomial> basis = detail::monomials(1, d1);
    if (d2 >= 3) {
        for (auto& p : detail::monomials(3, d2)) basis.push_back(p);
    }
    auto total = [&](const std::vector<double>& w) {
        MollifierConfig cfg;
        cfg.theta1 = theta1;
        cfg.theta2 = theta2;
        cfg.R = R;
        cfg.Q = Q;
        cfg.P1 = Polynomial{};
        cfg.P2 = Polynomial{};
        for (std::size_t k = 0; k < m; ++k) {
            if (w[k] == 0.0) continue;
            if (k < m1) {
                cfg.P1 = cfg.P1 + w[k] * basis[k];
            } else {
                cfg.P2 = cfg.P2 + w[k] * basis[k];
            }
        }
        return c1_at(cfg, rule) + 2.0 * c12_at(cfg, rule) + c2_at(cfg, rule);
    };
    sys.M = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
    sys.e = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(m));
    sys.e.head(static_cast<Eigen::Index>(m1)).setOnes();
    for (std::size_t s = 0; s < m; ++s) {
        for (std::size_t t = s; t < m; ++t) {
            std::vector<double> plus(m, 0.0), minus(m, 0.0);
            plus[s] += 1.0;
            plus[t] += 1.0;
            minus[s] += 1.0;
            minus[t] -= 1.0;
            sys.M(s, t) = sys.M(t, s) = 0.25 * (total(plus) - total(minus));
        }
    }
    return sys;
}

struct ConstrainedMinimum {
    Eigen::VectorXd w;
    double c_min = 0.0;
    double multiplier = 0.0;
    bool positive_definite = true;  ///< M restricted to e^T w = 0 is positive definite
    bool used_direct_search = false;
    double kkt_residual = 0.0;      ///< max |2 M w + lambda e| over all coordinates
};

/// Minimizes 1 + w^T M w subject to e^T w = 1 from the KKT system
///   [2M e; e^T 0] [w; lambda] = [0; 1].
/// If M is not positive definite on the constraint surface, the stationary point
/// is not a minimum; the result is flagged and, when allowed, refined by
/// Nelder-Mead on the constraint surface.
inline ConstrainedMinimum solve_constrained(const GramSystem& sys, bool allow_direct_search = true) {
    const Eigen::Index m = sys.M.rows();
    Eigen::MatrixXd K = Eigen::MatrixXd::Zero(m + 1, m + 1);
    K.topLeftCorner(m, m) = 2.0 * sys.M;
    K.topRightCorner(m, 1) = sys.e;
    K.bottomLeftCorner(1, m) = sys.e.transpose();
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m + 1);
    rhs(m) = 1.0;
    const Eigen::FullPivLU<Eigen::MatrixXd> lu(K);
    if (!lu.isInvertible()) throw NumericalError("singular KKT system");
    const Eigen::VectorXd sol = lu.solve(rhs);

    ConstrainedMinimum out;
    out.w = sol.head(m);
    out.multiplier = sol(m);
    out.c_min = sys.total(out.w);
    out.kkt_residual = (2.0 * sys.M * out.w + out.multiplier * sys.e).cwiseAbs().maxCoeff();

    const Eigen::MatrixXd Z = Eigen::FullPivLU<Eigen::MatrixXd>(sys.e.transpose()).kernel();
    if (Z.cols() > 0 && Z.norm() > 0.0) {
        const Eigen::MatrixXd H = Z.transpose() * sys.M * Z;
        const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(0.5 * (H + H.transpose()));
        out.positive_definite = eig.eigenvalues().minCoeff() > 0.0;
    }
    if (!out.positive_definite && allow_direct_search) {
        const Eigen::VectorXd base = out.w;
        auto along_surface = [&](const std::vector<double>& z) {
            const Eigen::VectorXd w = base + Z * Eigen::Map<const Eigen::VectorXd>(z.data(), Z.cols());
            return sys.total(w);
        };
        NelderMeadOptions nm;
        nm.steps.assign(static_cast<std::size_t>(Z.cols()), 0.1);
        const auto r = nelder_mead(along_surface, std::vector<double>(static_cast<std::size_t>(Z.cols()), 0.0), nm);
        out.w = base + Z * Eigen::Map<const Eigen::VectorXd>(r.x.data(), Z.cols());
        out.c_min = sys.total(out.w);
        out.used_direct_search = true;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Outer search.
// ---------------------------------------------------------------------------

struct OptimizeOptions {
    double theta1 = kMaxTheta1;
    double theta2 = kMaxTheta2;
    int d1 = 5;
    int d2 = 5;             ///< ignored when use_p2 is false
    int q_degree = 7;       ///< odd, 1..7; forced to 1 in simple_zeros mode
    ZeroMode mode = ZeroMode::all_zeros;
    bool use_p2 = true;
    int search_nodes = 12;  ///< fixed rule used inside the search
    int seeds = 4;          ///< preset seed plus up to 3 perturbed seeds
    NelderMeadOptions search;
    QuadOptions final_quad;
};

struct SeedRun {
    std::vector<double> start;  ///< (R, Q odd-basis coefficients)
    double start_kappa = 0.0;
    std::vector<double> best;
    double best_kappa = 0.0;
    int iterations = 0;
    int evaluations = 0;
    bool converged = false;
    std::vector<double> history;  ///< best kappa after each outer iteration
};

struct OptimizeResult {
    KappaReport report;
    double R = 0.0;
    QSpec q;
    std::vector<double> p1_coeffs;  ///< from x^1
    std::vector<double> p2_coeffs;  ///< from x^3
    ConstrainedMinimum inner;
    std::vector<ConvergenceStep> gram_trace;
    std::vector<SeedRun> runs;
    int best_seed = 0;
};

/// Starting points: the built-in preset for the mode (Q rescaled to Q(0) = 1,
/// truncated or padded to q_degree), then fixed perturbations of it.
inline std::vector<std::vector<double>> optimize_seeds(ZeroMode mode, int q_degree, int count) {
    const std::size_t k = static_cast<std::size_t>((q_degree + 1) / 2);
    const Preset base = mode == ZeroMode::simple_zeros || q_degree == 1 ? preset_kappa_star() : preset_kappa();
    const Polynomial unit_q = (1.0 / base.config.Q(0.0)) * base.config.Q;
    std::vector<double> odd = q_to_spec(unit_q).odd_coeffs;
    odd.resize(k, 0.0);
    std::vector<double> seed{base.config.R};
    seed.insert(seed.end(), odd.begin(), odd.end());

    std::vector<std::vector<double>> out{seed};
    const double dR[3] = {0.1, -0.1, 0.05};
    const double dq[3] = {0.02, -0.02, 0.03};
    for (int s = 0; s < 3 && static_cast<int>(out.size()) < count; ++s) {
        std::vector<double> p = seed;
        p[0] += dR[s];
        for (std::size_t i = 1; i < p.size(); ++i) p[i] += (s == 2 && i % 2 == 0 ? -dq[s] : dq[s]) / static_cast<double>(i);
        out.push_back(std::move(p));
    }
    return out;
}

inline OptimizeResult optimize_full(const OptimizeOptions& opts_in) {
    OptimizeOptions opts = opts_in;
    if (opts.mode == ZeroMode::simple_zeros) opts.q_degree = 1;
    if (opts.q_degree < 1 || opts.q_degree > 7 || opts.q_degree % 2 == 0) {
        throw ConfigError("Q degree must be one of 1, 3, 5, 7");
    }
    const int d2 = opts.use_p2 ? opts.d2 : 0;
    detail::check_degrees(opts.d1, d2);
    validate_parameters(opts.theta1, opts.theta2, 1.0);
    if (opts.seeds < 1) throw ConfigError("at least one seed is required");

    const QuadratureRule& rule = cached_rule(opts.search_nodes);
    auto kappa_at = [&](const std::vector<double>& x) {
        const double R = x[0];
        if (!(R > 0.0) || R > 10.0) return -std::numeric_limits<double>::infinity();
        const Polynomial Q = make_q(QSpec::normalized({x.begin() + 1, x.end()})).poly;
        try {
            const GramSystem sys = build_gram(Q, R, opts.theta1, opts.theta2, opts.d1, d2, rule);
            const ConstrainedMinimum sol = solve_constrained(sys, false);
            if (!sol.positive_definite || !(sol.c_min > 0.0)) return -std::numeric_limits<double>::infinity();
            return compute_kappa(sol.c_min, R);
        } catch (const NumericalError&) {
            return -std::numeric_limits<double>::infinity();
        }
    };

    OptimizeResult result;
    double best = -std::numeric_limits<double>::infinity();
    const auto seeds = optimize_seeds(opts.mode, opts.q_degree, opts.seeds);
    for (std::size_t s = 0; s < seeds.size(); ++s) {
        SeedRun run;
        run.start = seeds[s];
        run.start_kappa = kappa_at(seeds[s]);
        const auto nm = nelder_mead([&](const std::vector<double>& x) { return -kappa_at(x); }, seeds[s], opts.search);
        run.best = nm.x;
        run.best_kappa = -nm.f;
        run.iterations = nm.iterations;
        run.evaluations = nm.evaluations;
        run.converged = nm.converged;
        for (double f : nm.history) run.history.push_back(-f);
        if (run.best_kappa > best) {
            best = run.best_kappa;
            result.best_seed = static_cast<int>(s);
        }
        result.runs.push_back(std::move(run));
    }

    const std::vector<double>& x = result.runs[static_cast<std::size_t>(result.best_seed)].best;
    result.R = x[0];
    result.q = QSpec::normalized({x.begin() + 1, x.end()});
    const Polynomial Q = make_q(result.q).poly;
    ConvergedGram gram = build_gram_converged(Q, result.R, opts.theta1, opts.theta2, opts.d1, d2, opts.final_quad);
    result.gram_trace = gram.trace;
    result.inner = solve_constrained(gram.system);
    const auto m1 = static_cast<Eigen::Index>(gram.system.p1_size());
    const auto m2 = static_cast<Eigen::Index>(gram.system.p2_size());
    result.p1_coeffs.assign(result.inner.w.data(), result.inner.w.data() + m1);
    result.p2_coeffs.assign(result.inner.w.data() + m1, result.inner.w.data() + m1 + m2);

    MollifierConfig cfg;
    cfg.theta1 = opts.theta1;
    cfg.theta2 = opts.theta2;
    cfg.R = result.R;
    cfg.Q = Q;
    cfg.P1 = make_p1(result.p1_coeffs, P1Mode::normalize);
    cfg.P2 = make_p2(P2Spec{result.p2_coeffs});
    cfg.mode = opts.mode;
    result.report = evaluate(cfg, opts.final_quad);
    return result;
}

}  // namespace mollifier
