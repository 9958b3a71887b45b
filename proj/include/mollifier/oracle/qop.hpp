#pragma once

/**
 * @file qop.hpp
 * @brief Q(-(1/log T) d/dalpha) X^{-alpha} = Q(log X/log T) X^{-alpha}.
 *
 * The left side is computed from the alpha-Taylor coefficients of X^{-alpha}
 * (a one-variable jet); the right side by substitution.
 */

#include <cmath>
#include <stdexcept>

#include "mollifier/jet.hpp"
#include "mollifier/poly.hpp"

namespace mollifier::oracle {

struct QOperatorReport {
    double lhs = 0.0;
    double rhs = 0.0;
    double relative_error = 0.0;
};

inline constexpr int kQOperatorMaxDegree = 7;

inline QOperatorReport check_q_operator(const Polynomial& Q, double X, double T, double alpha) {
    if (!(X > 1.0) || !(T > 1.0)) throw std::invalid_argument("X and T must exceed 1");
    if (Q.degree() > kQOperatorMaxDegree) throw std::invalid_argument("Q degree above 7");
    using J = Jet<kQOperatorMaxDegree, 0>;
    const double LX = std::log(X);
    const double LT = std::log(T);
    // X^{-(alpha + h)} as a jet in h.
    const J power = exp(-(alpha + J::x()) * LX);
    QOperatorReport r;
    for (int k = 0; k <= Q.degree(); ++k) {
        const double kth_derivative = mixed_partial(power, k, 0);
        r.lhs += Q.coeff(static_cast<std::size_t>(k)) * std::pow(-1.0 / LT, k) * kth_derivative;
    }
    r.rhs = Q(LX / LT) * std::exp(-alpha * LX);
    r.relative_error = std::abs(r.lhs / r.rhs - 1.0);
    return r;
}

}  // namespace mollifier::oracle
