// One line per acceptance criterion; exits nonzero if any gated line fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "fd_oracle.hpp"
#include "mollifier/moments.hpp"
#include "mollifier/optimize.hpp"
#include "mollifier/oracle/verify.hpp"
#include "mollifier/presets.hpp"

using namespace mollifier;

namespace {

int failures = 0;

void report(int id, bool ok, const std::string& what) {
    std::printf("[%s] %d. %s\n", ok ? "PASS" : "FAIL", id, what.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

template <class... A>
std::string fmt(const char* f, A... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

struct Stability {
    double doubling = 0.0;  ///< worst relative change in kappa, n -> 2n, past the converged order
    double fd = 0.0;        ///< worst relative jet / finite-difference gap on c12, c2
};

Stability stability(const MollifierConfig& cfg_in, int n) {
    const MollifierConfig cfg = with_unit_q0(cfg_in);
    Stability s;
    s.doubling = std::abs(evaluate_at(cfg, cached_rule(n)).kappa - evaluate_at(cfg, cached_rule(2 * n)).kappa);
    const auto& rule = cached_rule(12);
    s.fd = std::max(rel(static_cast<double>(fd::c12(cfg, rule)), c12_at(cfg, rule)),
                    rel(static_cast<double>(fd::c2(cfg, rule)), c2_at(cfg, rule)));
    return s;
}

int converged_nodes(const KappaReport& rep) {
    int n = 0;
    for (const auto* t : {&rep.c1_trace, &rep.c12_trace, &rep.c2_trace}) {
        if (!t->trace.empty()) n = std::max(n, t->trace.back().nodes);
    }
    return std::min(n, kMaxGaussNodes / 2);
}

void criterion_preset(int id, const char* name, double floor) {
    const auto t0 = std::chrono::steady_clock::now();
    const Preset p = preset_by_name(name);
    const KappaReport rep = evaluate(p.config);
    const Stability s = stability(p.config, converged_nodes(rep));
    const double secs = seconds_since(t0);
    const bool ok = rep.values.kappa >= floor && s.doubling < 1e-8 && s.fd < 1e-6 && secs < 60.0;
    report(id, ok, fmt("preset %s: kappa = %.9f (>= %.5f), doubling change %.1e (< 1e-8), "
                       "finite-difference gap %.1e (< 1e-6), %.1f s",
                       name, rep.values.kappa, floor, s.doubling, s.fd, secs));
}

void criterion_ablation() {
    const auto t0 = std::chrono::steady_clock::now();
    OptimizeOptions opts;
    opts.use_p2 = false;
    const OptimizeResult res = optimize_full(opts);
    const double k = res.report.values.kappa;
    const double secs = seconds_since(t0);
    report(3, k >= 0.4083 && k <= 0.4093 && secs < 600.0,
           fmt("P2 = 0, optimized over (R, Q, P1): kappa = %.6f in [0.4083, 0.4093], R = %.4f, %.1f s", k, res.R, secs));
}

void criterion_optimizer() {
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    std::string detail;
    for (const ZeroMode mode : {ZeroMode::all_zeros, ZeroMode::simple_zeros}) {
        const Preset p = mode == ZeroMode::all_zeros ? preset_kappa() : preset_kappa_star();
        const double preset_kappa_value = evaluate(p.config).values.kappa;
        OptimizeOptions opts;
        opts.mode = mode;
        opts.seeds = 1;
        const OptimizeResult res = optimize_full(opts);
        ok = ok && res.report.values.kappa >= preset_kappa_value - 1e-6;
        detail += fmt("%s %.6f vs preset %.6f; ", to_string(mode), res.report.values.kappa, preset_kappa_value);

        // inner solve at the preset (Q, R) against the printed coefficients put on P1(1) = 1
        const MollifierConfig cfg = with_unit_q0(p.config);
        const auto gram = build_gram_converged(cfg.Q, cfg.R, cfg.theta1, cfg.theta2, 5, 5);
        const auto sol = solve_constrained(gram.system);
        const double at_one = cfg.P1(1.0);
        Eigen::VectorXd printed(8);
        for (int k = 0; k < 5; ++k) printed[k] = p.p1_coeffs[static_cast<std::size_t>(k)] / at_one;
        for (int k = 0; k < 3; ++k) printed[5 + k] = p.p2_coeffs[static_cast<std::size_t>(k)] / at_one;
        const double c_printed = gram.system.total(printed);
        ok = ok && sol.positive_definite && sol.c_min <= c_printed + 1e-9;
        detail += fmt("c_min %.10f <= %.10f; ", sol.c_min, c_printed);
    }
    report(4, ok, "optimizer from the presets: " + detail + fmt("%.1f s", seconds_since(t0)));
}

MollifierConfig random_config(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    auto in = [&](double a, double b) { return a + (b - a) * u(rng); };
    MollifierConfig cfg;
    cfg.theta1 = in(0.4, kMaxTheta1);
    cfg.theta2 = in(0.2, std::min(kMaxTheta2, cfg.theta1 - 0.01));
    cfg.R = in(0.8, 1.6);
    std::vector<double> odd{in(0.3, 0.7), in(-0.1, 0.1), in(-0.05, 0.05)};
    cfg.Q = make_q(QSpec::normalized(odd)).poly;
    std::vector<double> p1(5);
    for (double& c : p1) c = in(-0.3, 1.0);
    p1[0] = in(0.5, 1.0);
    cfg.P1 = make_p1(p1, P1Mode::normalize);
    cfg.P2 = make_p2(P2Spec{{in(-0.05, 0.05), in(-0.05, 0.05), in(-0.05, 0.05)}});
    return cfg;
}

void criterion_random_fd() {
    std::mt19937_64 rng(20240601);
    const auto& rule = cached_rule(12);
    double worst = 0.0;
    for (int i = 0; i < 10; ++i) {
        const MollifierConfig cfg = random_config(rng);
        validate(cfg);
        worst = std::max(worst, rel(static_cast<double>(fd::c12(cfg, rule)), c12_at(cfg, rule)));
        worst = std::max(worst, rel(static_cast<double>(fd::c2(cfg, rule)), c2_at(cfg, rule)));
    }
    report(5, worst < 1e-6, fmt("10 random configs: worst jet / finite-difference gap on c12, c2 = %.1e (< 1e-6, h = 1e-3)", worst));
}

void criterion_closed_form() {
    const double t = kMaxTheta1, R = 1.28;
    MollifierConfig cfg;
    cfg.R = R;
    cfg.Q = Polynomial(std::vector<double>{1.0});
    cfg.P1 = Polynomial(std::vector<double>{0.0, 1.0});
    const double exact = 1.0 + (std::exp(2 * R) - 1.0) * (std::pow(1.0 + t * R, 3) - 1.0) / (6.0 * t * t * R * R);
    const double got = compute_c1(cfg).value;
    report(6, std::abs(got - exact) < 1e-12, fmt("c1 with Q = 1, P1 = x: %.15f vs %.15f, error %.1e (< 1e-12)", got, exact,
                                                 std::abs(got - exact)));
}

void criterion_suites(int id, std::initializer_list<const char*> suites, const char* what) {
    std::size_t checked = 0, failed = 0, flagged = 0;
    for (const char* s : suites) {
        for (const auto& r : oracle::run_verify(s)) {
            if (r.informational) {
                ++flagged;
                continue;
            }
            ++checked;
            if (!r.passed) {
                ++failed;
                std::printf("       failed: %s %s %s error %.3e threshold %.1e\n", r.suite.c_str(), r.check.c_str(),
                            r.params.c_str(), r.error, r.threshold);
            }
        }
    }
    report(id, failed == 0, fmt("%s: %zu checks, %zu failed, %zu informational", what, checked, failed, flagged));
}

}  // namespace

int main() try {
    criterion_preset(1, "kappa", 0.41049);
    criterion_preset(2, "kappa-star", 0.40579);
    criterion_ablation();
    criterion_optimizer();
    criterion_random_fd();
    criterion_closed_form();
    criterion_suites(7, {"contour", "mobius", "qop"}, "contour, Mobius and Q-operator identities");
    criterion_suites(8, {"euler"}, "Euler-Maclaurin bounds, monotone decay and log-saving ratios");
    std::printf("[N/A ] 9. the asymptotic analysis behind the moment formulas is not checked numerically; "
                "only the identity and property suites above cover it\n");
    std::printf("%d criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
} catch (const std::exception& e) {
    std::printf("[FAIL] aborted: %s\n", e.what());
    return 1;
}
