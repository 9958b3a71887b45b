#pragma once

/**
 * @file arithmetic.hpp
 * @brief Arithmetic function tables up to N: Moebius mu, the Dirichlet
 *        coefficients mu2 = mu * mu of 1/zeta^2, k-fold divisor functions d_k,
 *        and the shifted divisor sum sigma_{alpha,-beta}.
 */

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace mollifier::oracle {

/// (f * g)(n) = sum_{ab = n} f(a) g(b) for 1 <= n <= N; index 0 unused.
template <class T>
std::vector<T> dirichlet_convolve(const std::vector<T>& f, const std::vector<T>& g) {
    const std::size_t N = f.size() - 1;
    std::vector<T> out(N + 1, T{});
    for (std::size_t a = 1; a <= N; ++a) {
        if (f[a] == T{}) continue;
        for (std::size_t b = 1; a * b <= N; ++b) out[a * b] += f[a] * g[b];
    }
    return out;
}

/// mu(1..N) by a linear sieve.
inline std::vector<std::int64_t> mobius_table(std::size_t N) {
    std::vector<std::int64_t> mu(N + 1, 0);
    if (N >= 1) mu[1] = 1;
    std::vector<std::size_t> primes;
    std::vector<bool> composite(N + 1, false);
    for (std::size_t i = 2; i <= N; ++i) {
        if (!composite[i]) {
            primes.push_back(i);
            mu[i] = -1;
        }
        for (std::size_t p : primes) {
            if (i * p > N) break;
            composite[i * p] = true;
            if (i % p == 0) {
                mu[i * p] = 0;
                break;
            }
            mu[i * p] = -mu[i];
        }
    }
    return mu;
}

struct ArithmeticTables {
    std::size_t N = 0;
    std::vector<std::int64_t> mu;
    std::vector<std::int64_t> mu2;
    std::vector<std::vector<std::int64_t>> dk;  ///< dk[k][n], k = 0..max_k (dk[0] unused)

    static ArithmeticTables build(std::size_t N, int max_k = 5) {
        if (N < 1) throw std::invalid_argument("table size must be >= 1");
        if (max_k < 1) throw std::invalid_argument("max_k must be >= 1");
        ArithmeticTables t;
        t.N = N;
        t.mu = mobius_table(N);
        t.mu2 = dirichlet_convolve(t.mu, t.mu);
        std::vector<std::int64_t> one(N + 1, 1);
        one[0] = 0;
        t.dk.assign(static_cast<std::size_t>(max_k) + 1, {});
        t.dk[1] = one;
        for (int k = 2; k <= max_k; ++k) t.dk[static_cast<std::size_t>(k)] = dirichlet_convolve(t.dk[static_cast<std::size_t>(k) - 1], one);
        return t;
    }

    std::int64_t d(int k, std::size_t n) const { return dk.at(static_cast<std::size_t>(k)).at(n); }
};

/// sigma_{alpha,-beta}(l) = sum_{ab = l} a^{-alpha} b^{beta}, by enumerating divisors.
inline double sigma_shifted(double alpha, double beta, std::uint64_t l) {
    double s = 0.0;
    for (std::uint64_t a = 1; a * a <= l; ++a) {
        if (l % a != 0) continue;
        const std::uint64_t b = l / a;
        s += std::pow(static_cast<double>(a), -alpha) * std::pow(static_cast<double>(b), beta);
        if (a != b) s += std::pow(static_cast<double>(b), -alpha) * std::pow(static_cast<double>(a), beta);
    }
    return s;
}

}  // namespace mollifier::oracle
