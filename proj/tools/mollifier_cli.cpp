// mollifier: evaluate, reproduce, optimize and verify critical-zero proportion bounds.

#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "mollifier/config.hpp"
#include "mollifier/error.hpp"
#include "mollifier/moments.hpp"
#include "mollifier/optimize.hpp"
#include "mollifier/oracle/verify.hpp"
#include "mollifier/presets.hpp"
#include "mollifier/report.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitVerification = 4;

void write_json(const std::string& path, const std::string& text) {
    if (path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw mollifier::ConfigError("cannot write '" + path + "'");
    f << text;
}

void emit(const mollifier::KappaReport& rep, const mollifier::QuadOptions& quad, const std::string& json_path) {
    if (json_path != "-") std::cout << mollifier::format_report(rep);
    if (!json_path.empty()) write_json(json_path, mollifier::dump_report(rep, quad));
}

void print_optimize(const mollifier::OptimizeResult& res) {
    std::printf("outer search (Nelder-Mead over R and the odd coefficients of Q):\n");
    for (std::size_t s = 0; s < res.runs.size(); ++s) {
        const auto& r = res.runs[s];
        std::printf("  seed %zu: start kappa %.9f -> %.9f after %d iterations (%d evaluations%s)\n", s,
                    r.start_kappa, r.best_kappa, r.iterations, r.evaluations, r.converged ? "" : ", iteration cap");
        for (std::size_t i = 0; i < r.history.size(); i += 50) {
            std::printf("    iter %4zu  kappa %.9f\n", i + 1, r.history[i]);
        }
    }
    std::printf("best seed %d\n", res.best_seed);
    std::printf("inner solve: c_min = %.12f, multiplier = %.6g, positive definite = %s, residual = %.1e%s\n",
                res.inner.c_min, res.inner.multiplier, res.inner.positive_definite ? "yes" : "no",
                res.inner.kkt_residual, res.inner.used_direct_search ? " (direct search)" : "");
    std::printf("Gram quadrature:%s\n", mollifier::format_trace(res.gram_trace).c_str());
    std::printf("R = %.10g\n", res.R);
    std::printf("q_const = %.10g\nq_odd_coeffs = %s\n", res.q.constant,
                mollifier::format_number_list(res.q.odd_coeffs).c_str());
    std::printf("p1_coeffs = %s\n", mollifier::format_number_list(res.p1_coeffs).c_str());
    std::printf("p2_coeffs = %s\n", mollifier::format_number_list(res.p2_coeffs).c_str());
}

int print_verify(const std::vector<mollifier::oracle::VerifyRow>& rows) {
    std::printf("%-8s %-32s %-56s %-10s %-9s %s\n", "suite", "check", "parameters", "error", "threshold", "verdict");
    int failed = 0, info = 0;
    for (const auto& r : rows) {
        const char* verdict = r.passed ? "pass" : (r.informational ? "flag" : "FAIL");
        std::printf("%-8s %-32s %-56s %-10.3e %-9.1e %s\n", r.suite.c_str(), r.check.c_str(), r.params.c_str(),
                    r.error, r.threshold, verdict);
        if (!r.passed) (r.informational ? info : failed) += 1;
    }
    std::printf("%zu checks, %d failed, %d flagged (informational)\n", rows.size(), failed, info);
    return failed == 0 ? kExitOk : kExitVerification;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Mollified second-moment constants and critical-zero proportion bounds"};
    app.require_subcommand(1);

    mollifier::QuadOptions quad;
    std::string json_path;

    auto add_quad = [&](CLI::App* sub) {
        sub->add_option("--quad-tol", quad.tol, "relative tolerance between quadrature doublings")->check(CLI::PositiveNumber);
        sub->add_option("--quad-max-nodes", quad.max_nodes, "largest Gauss-Legendre order tried")->check(CLI::Range(2, 256));
    };

    std::string preset = "kappa";
    auto* reproduce = app.add_subcommand("reproduce", "evaluate a built-in parameter point");
    reproduce->add_option("--preset", preset, "kappa, kappa-star or kappa-star-printed");
    reproduce->add_option("--json", json_path, "write the JSON report here ('-' for stdout)");
    add_quad(reproduce);

    std::string config_path;
    auto* eval = app.add_subcommand("eval", "evaluate a parameter file");
    eval->add_option("config", config_path, "key = value parameter file")->required();
    eval->add_option("--json", json_path, "write the JSON report here ('-' for stdout)");

    mollifier::OptimizeOptions opt;
    std::string mode = "all-zeros";
    bool no_psi2 = false;
    auto* optimize = app.add_subcommand("optimize", "search R, Q, P1, P2 for the largest bound");
    optimize->add_option("--mode", mode, "all-zeros or simple");
    optimize->add_option("--d1", opt.d1, "degree of P1")->check(CLI::Range(1, 12));
    optimize->add_option("--d2", opt.d2, "degree of P2 (>= 3)")->check(CLI::Range(3, 12));
    optimize->add_flag("--no-psi2", no_psi2, "switch the second mollifier piece off (P2 = 0)");
    optimize->add_option("--seeds", opt.seeds, "number of starting points (1-4)")->check(CLI::Range(1, 4));
    optimize->add_option("--q-degree", opt.q_degree, "degree of Q (1, 3, 5 or 7)");
    optimize->add_option("--max-iter", opt.search.max_iterations, "Nelder-Mead iteration cap per seed")->check(CLI::PositiveNumber);
    optimize->add_option("--search-nodes", opt.search_nodes, "Gauss-Legendre order used during the search")->check(CLI::Range(4, 256));
    optimize->add_option("--json", json_path, "write the JSON report here ('-' for stdout)");

    std::string suite = "all";
    auto* verify = app.add_subcommand("verify", "run the identity and property checks");
    verify->add_option("--suite", suite, "all, euler, contour, mobius, mellin, qop or jets")
        ->check(CLI::IsMember({"all", "euler", "contour", "mobius", "mellin", "qop", "jets"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (*reproduce) {
            const auto p = mollifier::preset_by_name(preset);
            emit(mollifier::evaluate(p.config, quad), quad, json_path);
        } else if (*eval) {
            const auto rc = mollifier::load_config(config_path);
            emit(mollifier::evaluate(rc.config, rc.quad), rc.quad, json_path);
        } else if (*optimize) {
            opt.mode = mollifier::parse_mode(mode);
            opt.use_p2 = !no_psi2;
            const auto res = mollifier::optimize_full(opt);
            if (json_path != "-") {
                print_optimize(res);
                std::cout << mollifier::format_report(res.report);
            }
            if (!json_path.empty()) write_json(json_path, mollifier::to_json(res, opt.final_quad).dump(2) + "\n");
        } else if (*verify) {
            return print_verify(mollifier::oracle::run_verify(suite));
        }
    } catch (const mollifier::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const mollifier::NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    }
    return kExitOk;
}
