// Builds the Gram system of the preset's (Q, R), solves for the best P1 and
// P2, and compares with the printed coefficients.

#include <cstdio>

#include "mollifier/optimize.hpp"
#include "mollifier/presets.hpp"

int main() {
    const mollifier::Preset p = mollifier::preset_kappa();
    const mollifier::MollifierConfig unit = mollifier::with_unit_q0(p.config);
    const auto gram = mollifier::build_gram_converged(unit.Q, unit.R, unit.theta1, unit.theta2, 5, 5, {});
    const auto sol = mollifier::solve_constrained(gram.system);

    std::printf("c_min = %.12f  kappa = %.10f\n", sol.c_min, mollifier::compute_kappa(sol.c_min, unit.R));
    std::printf("%-6s %14s %14s\n", "coeff", "optimal", "preset");
    const auto m1 = gram.system.p1_size();
    for (std::size_t k = 0; k < m1; ++k) {
        std::printf("a%-5zu %14.8f %14.8f\n", k + 1, sol.w[static_cast<Eigen::Index>(k)], p.p1_coeffs[k]);
    }
    for (std::size_t k = 0; k < gram.system.p2_size(); ++k) {
        std::printf("b%-5zu %14.8f %14.8f\n", k + 3, sol.w[static_cast<Eigen::Index>(m1 + k)], p.p2_coeffs[k]);
    }
}
