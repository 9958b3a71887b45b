#include "catch_amalgamated.hpp"

#include <random>

#include "mollifier/optimize.hpp"
#include "mollifier/presets.hpp"

using namespace mollifier;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("Nelder-Mead benchmarks", "[optimize]") {
    const auto bowl = nelder_mead([](const std::vector<double>& x) { return std::pow(x[0] - 1, 2) + std::pow(x[1] + 2, 2); },
                                  {0.0, 0.0});
    CHECK(bowl.converged);
    CHECK_THAT(bowl.x[0], WithinAbs(1.0, 1e-5));
    CHECK_THAT(bowl.x[1], WithinAbs(-2.0, 1e-5));

    NelderMeadOptions tight;
    tight.diameter_tol = 1e-9;
    tight.max_iterations = 5000;
    const auto rosen = nelder_mead(
        [](const std::vector<double>& x) { return 100 * std::pow(x[1] - x[0] * x[0], 2) + std::pow(1 - x[0], 2); },
        {-1.2, 1.0}, tight);
    CHECK_THAT(rosen.x[0], WithinAbs(1.0, 1e-4));
    CHECK_THAT(rosen.x[1], WithinAbs(1.0, 1e-4));

    const auto line = nelder_mead([](const std::vector<double>& x) { return std::pow(x[0] - 1.28, 2); }, {1.0});
    CHECK_THAT(line.x[0], WithinAbs(1.28, 1e-6));

    NelderMeadOptions capped;
    capped.max_iterations = 3;
    CHECK_FALSE(nelder_mead([](const std::vector<double>& x) { return x[0] * x[0]; }, {5.0}, capped).converged);
    CHECK_THROWS(nelder_mead([](const std::vector<double>&) { return std::nan(""); }, {0.0}));
}

TEST_CASE("constrained minimum of the identity form", "[optimize]") {
    GramSystem sys;
    sys.p1_degree = 2;
    sys.M = Eigen::MatrixXd::Identity(2, 2);
    sys.e = Eigen::VectorXd::Ones(2);
    const auto sol = solve_constrained(sys);
    CHECK_THAT(sol.w[0], WithinAbs(0.5, 1e-15));
    CHECK_THAT(sol.w[1], WithinAbs(0.5, 1e-15));
    CHECK_THAT(sol.c_min, WithinAbs(1.5, 1e-15));
    CHECK(sol.positive_definite);
    CHECK_FALSE(sol.used_direct_search);
}

TEST_CASE("indefinite forms are flagged", "[optimize]") {
    GramSystem sys;
    sys.p1_degree = 2;
    sys.M = Eigen::MatrixXd{{1.0, 0.0}, {0.0, -2.0}};
    sys.e = Eigen::VectorXd::Ones(2);
    const auto sol = solve_constrained(sys, false);
    CHECK_FALSE(sol.positive_definite);
}

TEST_CASE("Gram matrix closed form at R = 0", "[optimize]") {
    const double theta1 = 4.0 / 7.0;
    const auto sys = build_gram(Polynomial{1.0}, 0.0, theta1, 0.5, 1, 3, cached_rule(8));
    REQUIRE(sys.M.rows() == 2);
    CHECK_THAT(sys.M(0, 0), WithinRel(1.0 / theta1, 1e-14));
}

TEST_CASE("Gram system reproduces direct evaluation", "[optimize]") {
    const auto cfg = with_unit_q0(preset_kappa().config);
    const auto& rule = cached_rule(12);
    const auto sys = build_gram(cfg.Q, cfg.R, cfg.theta1, cfg.theta2, 5, 5, rule);
    CHECK((sys.M - sys.M.transpose()).cwiseAbs().maxCoeff() < 1e-12);

    auto direct = [&](const Eigen::VectorXd& w) {
        auto c = cfg;
        c.P1 = Polynomial{0.0, w[0], w[1], w[2], w[3], w[4]};
        c.P2 = Polynomial{0.0, 0.0, 0.0, w[5], w[6], w[7]};
        return evaluate_at(c, rule).c;
    };
    Eigen::VectorXd printed(8);
    const auto preset = preset_kappa();
    for (int k = 0; k < 5; ++k) printed[k] = preset.p1_coeffs[static_cast<std::size_t>(k)];
    for (int k = 0; k < 3; ++k) printed[5 + k] = preset.p2_coeffs[static_cast<std::size_t>(k)];
    CHECK_THAT(sys.total(printed), WithinRel(direct(printed), 1e-9));

    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int t = 0; t < 5; ++t) {
        Eigen::VectorXd w(8);
        for (int k = 0; k < 8; ++k) w[k] = u(rng) * (k < 5 ? 1.0 : 0.1);
        CHECK_THAT(sys.total(w), WithinRel(direct(w), 1e-9));
    }
}

TEST_CASE("polarization gives the same Gram matrix", "[optimize][property]") {
    const auto cfg = with_unit_q0(preset_kappa().config);
    const auto& rule = cached_rule(8);
    const auto direct = build_gram(cfg.Q, cfg.R, cfg.theta1, cfg.theta2, 3, 4, rule);
    const auto polar = build_gram_polarized(cfg.Q, cfg.R, cfg.theta1, cfg.theta2, 3, 4, rule);
    const double scale = direct.M.cwiseAbs().maxCoeff();
    CHECK((direct.M - polar.M).cwiseAbs().maxCoeff() / scale < 1e-10);
    CHECK(direct.e == polar.e);
}

TEST_CASE("inner optimum at the preset (Q, R)", "[optimize]") {
    const auto preset = preset_kappa();
    const auto cfg = with_unit_q0(preset.config);
    const auto gram = build_gram_converged(cfg.Q, cfg.R, cfg.theta1, cfg.theta2, 5, 5);
    const auto sol = solve_constrained(gram.system);
    CHECK(sol.positive_definite);
    CHECK(sol.kkt_residual < 1e-8);
    // no constraint on the P2 block: gradient vanishes there
    const Eigen::VectorXd grad = 2.0 * gram.system.M * sol.w;
    CHECK(grad.tail(3).cwiseAbs().maxCoeff() < 1e-8);

    // printed coefficients rescaled onto P1(1) = 1
    const double at_one = cfg.P1(1.0);
    Eigen::VectorXd printed(8);
    for (int k = 0; k < 5; ++k) printed[k] = preset.p1_coeffs[static_cast<std::size_t>(k)] / at_one;
    for (int k = 0; k < 3; ++k) printed[5 + k] = preset.p2_coeffs[static_cast<std::size_t>(k)] / at_one;
    CHECK(sol.c_min <= gram.system.total(printed) + 1e-9);
    // printed to six digits on a flat minimum
    CHECK_THAT(sol.w[0], WithinAbs(0.842706, 1e-5));
}

TEST_CASE("seeds and option checks", "[optimize]") {
    const auto seeds = optimize_seeds(ZeroMode::all_zeros, 7, 4);
    REQUIRE(seeds.size() == 4);
    CHECK(seeds[0].size() == 5);
    CHECK(seeds[0][0] == 1.28);
    CHECK(optimize_seeds(ZeroMode::simple_zeros, 1, 2)[0].size() == 2);

    OptimizeOptions bad;
    bad.q_degree = 4;
    CHECK_THROWS_AS(optimize_full(bad), ConfigError);
    bad = {};
    bad.d2 = 2;
    CHECK_THROWS_AS(optimize_full(bad), ConfigError);
}

TEST_CASE("a short search never loses to its seed", "[optimize]") {
    OptimizeOptions opt;
    opt.mode = ZeroMode::simple_zeros;
    opt.seeds = 1;
    opt.search.max_iterations = 20;
    const auto res = optimize_full(opt);
    REQUIRE(res.runs.size() == 1);
    CHECK(res.runs[0].best_kappa >= res.runs[0].start_kappa);
    CHECK(res.report.values.kappa >= 0.4058);
    CHECK(res.report.config.Q.degree() == 1);
}
