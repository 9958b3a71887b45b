#pragma once

/**
 * @file mobius.hpp
 * @brief Exact Moebius-inversion identities behind the collapse of the
 *        arithmetical factors to 1 on the diagonal.
 *
 * With m = hl = nk, the four-fold sum
 *     sum_{hl = nk} mu(n) mu2(h) sigma(l) / (hl)^{1+2s}
 * groups as sum_m (sum_{n|m} mu(n)) (mu2 * sigma)(m) m^{-1-2s}, and the inner
 * Moebius sum is [m = 1]. Likewise the two-fold sum over l1 m = l2 n with
 * weights mu(l1) mu(l2) is sum_M (sum_{l|M} mu(l))^2 M^{-1-2s}.
 */

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "mollifier/oracle/arithmetic.hpp"

namespace mollifier::oracle {

struct MobiusReport {
    std::size_t N = 0;
    bool mobius_divisor_sum = true;   ///< sum_{n|m} mu(n) = [m = 1] for all m <= N
    bool square_divisor_sum = true;   ///< sum_{h|m} mu2(h) = mu(m) for all m <= N
    bool square_is_convolution = true;  ///< mu2 = mu * mu by divisor enumeration, m <= min(N, 1000)
    std::size_t first_failure = 0;    ///< smallest failing m, 0 if none
    double cross_factor_sum = 0.0;    ///< truncated four-fold sum at (s, alpha, beta)
    double square_factor_sum = 0.0;   ///< truncated two-fold sum at s
    bool passed() const {
        return mobius_divisor_sum && square_divisor_sum && square_is_convolution && cross_factor_sum == 1.0 &&
               square_factor_sum == 1.0;
    }
};

inline MobiusReport check_mobius_identities(const ArithmeticTables& t, double s = 0.1, double alpha = 0.03,
                                            double beta = -0.02) {
    MobiusReport rep;
    rep.N = t.N;
    const std::size_t N = t.N;
    std::vector<std::int64_t> one(N + 1, 1);
    one[0] = 0;
    const auto mu_sum = dirichlet_convolve(t.mu, one);
    const auto mu2_sum = dirichlet_convolve(t.mu2, one);
    auto fail = [&](std::size_t m) {
        if (rep.first_failure == 0 || m < rep.first_failure) rep.first_failure = m;
    };
    for (std::size_t m = 1; m <= N; ++m) {
        if (mu_sum[m] != (m == 1 ? 1 : 0)) {
            rep.mobius_divisor_sum = false;
            fail(m);
        }
        if (mu2_sum[m] != t.mu[m]) {
            rep.square_divisor_sum = false;
            fail(m);
        }
    }
    for (std::size_t m = 1; m <= std::min<std::size_t>(N, 1000); ++m) {
        std::int64_t direct = 0;
        for (std::size_t a = 1; a <= m; ++a) {
            if (m % a == 0) direct += t.mu[a] * t.mu[m / a];
        }
        if (direct != t.mu2[m]) {
            rep.square_is_convolution = false;
            fail(m);
        }
    }

    // sigma_{alpha,-beta}(l) for every l <= N by a divisor sieve.
    std::vector<double> sigma(N + 1, 0.0);
    std::vector<double> pa(N + 1), pb(N + 1);
    for (std::size_t a = 1; a <= N; ++a) {
        pa[a] = std::pow(static_cast<double>(a), -alpha);
        pb[a] = std::pow(static_cast<double>(a), beta);
    }
    for (std::size_t a = 1; a <= N; ++a)
        for (std::size_t b = 1; a * b <= N; ++b) sigma[a * b] += pa[a] * pb[b];
    std::vector<double> mu2d(t.mu2.begin(), t.mu2.end());
    const auto weighted = dirichlet_convolve(mu2d, sigma);

    for (std::size_t m = 1; m <= N; ++m) {
        const double decay = std::pow(static_cast<double>(m), -1.0 - 2.0 * s);
        rep.cross_factor_sum += static_cast<double>(mu_sum[m]) * weighted[m] * decay;
        rep.square_factor_sum += static_cast<double>(mu_sum[m] * mu_sum[m]) * decay;
    }
    return rep;
}

}  // namespace mollifier::oracle
