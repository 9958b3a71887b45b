#include "catch_amalgamated.hpp"

#include <random>

#include "mollifier/jet.hpp"
#include "mollifier/quadrature.hpp"

using namespace mollifier;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("small Gauss rules", "[quad]") {
    const auto r1 = gauss_rule(1);
    CHECK_THAT(r1.nodes[0], WithinAbs(0.5, 1e-16));
    CHECK_THAT(r1.weights[0], WithinAbs(1.0, 1e-16));
    const auto r2 = gauss_rule(2);
    CHECK_THAT(r2.nodes[0], WithinAbs(0.5 - 0.5 / std::sqrt(3.0), 1e-15));
    CHECK_THAT(r2.nodes[1], WithinAbs(0.5 + 0.5 / std::sqrt(3.0), 1e-15));
    CHECK_THAT(r2.weights[0], WithinAbs(0.5, 1e-15));
    CHECK_THAT(r2.weights[1], WithinAbs(0.5, 1e-15));
    CHECK_THAT(integrate_cube<1>([](const std::array<double, 1>& p) { return std::pow(p[0], 7); }, gauss_rule(8)),
               WithinAbs(0.125, 1e-14));
    CHECK_THROWS_AS(gauss_rule(0), std::out_of_range);
    CHECK_THROWS_AS(gauss_rule(257), std::out_of_range);
}

TEST_CASE("exactness up to degree 2n-1 and unit weight sum", "[quad][property]") {
    for (int n = 1; n <= 64; ++n) {
        const auto r = gauss_rule(n);
        double wsum = 0.0;
        for (double w : r.weights) {
            CHECK(w > 0.0);
            wsum += w;
        }
        CHECK_THAT(wsum, WithinAbs(1.0, 1e-14));
        for (int k = 0; k <= 2 * n - 1; ++k) {
            double s = 0.0;
            for (std::size_t i = 0; i < r.size(); ++i) s += r.weights[i] * std::pow(r.nodes[i], k);
            CHECK_THAT(s, WithinAbs(1.0 / (k + 1), 1e-13));
        }
    }
}

TEST_CASE("cube and triangle integrals", "[quad]") {
    const auto& r = cached_rule(8);
    CHECK_THAT(integrate_cube<2>([](const std::array<double, 2>& p) { return p[0] * p[1]; }, r), WithinAbs(0.25, 1e-15));
    CHECK_THAT(integrate_cube<4>([](const std::array<double, 4>&) { return 1.0; }, r), WithinAbs(1.0, 1e-13));
    const double closed = (std::exp(2.56) - 1.0) / 2.56;
    CHECK_THAT(integrate_cube<1>([](const std::array<double, 1>& p) { return std::exp(2.56 * p[0]); }, cached_rule(16)),
               WithinRel(closed, 1e-14));
    CHECK_THAT(integrate_simplex2([](double, double) { return 1.0; }, r), WithinAbs(0.5, 1e-15));
    CHECK_THAT(integrate_simplex2([](double a, double b) { return 1.0 - a - b; }, r), WithinAbs(1.0 / 6.0, 1e-15));
    CHECK_THAT(integrate_simplex2([](double a, double b) { return a * b; }, r), WithinAbs(1.0 / 24.0, 1e-15));
}

TEST_CASE("triangle rule against Monte Carlo", "[quad][property]") {
    std::mt19937_64 rng(29);
    std::uniform_real_distribution<double> u(0.0, 1.0), c(-1.0, 1.0);
    for (int t = 0; t < 5; ++t) {
        std::array<double, 6> k{};
        for (auto& v : k) v = c(rng);
        auto f = [&](double a, double b) { return k[0] + k[1] * a + k[2] * b + k[3] * a * a + k[4] * a * b + k[5] * b * b * b; };
        const double exact = integrate_simplex2(f, cached_rule(8));
        // uniform samples on the triangle, area 1/2
        const int N = 1000000;
        double s = 0.0, s2 = 0.0;
        for (int i = 0; i < N; ++i) {
            double a = u(rng), b = u(rng);
            if (a + b > 1.0) {
                a = 1.0 - a;
                b = 1.0 - b;
            }
            const double v = 0.5 * f(a, b);
            s += v;
            s2 += v * v;
        }
        const double mean = s / N;
        const double sigma = std::sqrt((s2 / N - mean * mean) / N);
        CHECK(std::abs(mean - exact) < 3.0 * sigma);
    }
}

TEST_CASE("integration is linear over jets", "[quad][property]") {
    const auto& r = cached_rule(10);
    auto f = [](const std::array<double, 2>& p) { return exp(Jet22::linear(p[0], p[1], -p[0])); };
    auto g = [](const std::array<double, 2>& p) { return Jet22::linear(p[0] * p[1], 1.0, p[1]) * Jet22::y(); };
    const double al = 0.7, be = -1.9;
    const Jet22 lhs = integrate_cube<2>([&](const std::array<double, 2>& p) { return al * f(p) + be * g(p); }, r);
    const Jet22 rhs = al * integrate_cube<2>(f, r) + be * integrate_cube<2>(g, r);
    for (std::size_t k = 0; k < lhs.data().size(); ++k) CHECK_THAT(lhs.data()[k], WithinAbs(rhs.data()[k], 1e-13));
}

TEST_CASE("doubling driver", "[quad]") {
    const auto poly = integrate_cube_converged<1>([](const std::array<double, 1>& p) { return 3 * p[0] * p[0]; });
    REQUIRE(poly.trace.size() == 2);
    CHECK(poly.trace[0].nodes == 16);
    CHECK(std::isnan(poly.trace[0].delta));
    CHECK(poly.trace[1].delta < 1e-15);
    const auto e = integrate_cube_converged<1>([](const std::array<double, 1>& p) { return std::exp(2.56 * p[0]); });
    CHECK_THAT(e.value, WithinRel((std::exp(2.56) - 1.0) / 2.56, 1e-13));
    // the trace is reported when the cap is reached first
    auto bad = [](int n) { return 1.0 / n; };
    CHECK_THROWS_AS(converge(bad, 1e-10, 64), NumericalError);
}
