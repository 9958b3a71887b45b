#pragma once

/**
 * @file euler_maclaurin.hpp
 * @brief Divisor-weighted sums against their integral approximations.
 *
 * These are asymptotic statements with unquantified error terms, so each check
 * returns the raw error together with the size of the error term; callers test
 * that the ratio stays bounded as x grows.
 */

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "mollifier/jet.hpp"
#include "mollifier/oracle/arithmetic.hpp"
#include "mollifier/poly.hpp"
#include "mollifier/quadrature.hpp"

namespace mollifier::oracle {

struct SumIntegralReport {
    double lhs = 0.0;         ///< direct sum
    double rhs = 0.0;         ///< integral main term
    double error = 0.0;       ///< |lhs - rhs|
    double normalizer = 1.0;  ///< size of the error term
    double normalized() const { return error / normalizer; }
};

/// sum_{n<=x} n^{-1-s} log(x/n)^l  vs  (log x)^{l+1} x^{-s} int_0^1 x^{sa} a^l da,
/// error term (log 3x)^l. s is real with |s| <= 1/log x.
inline SumIntegralReport check_euler_maclaurin_basic(int l, double s, double x) {
    if (l < 0) throw std::invalid_argument("l must be >= 0");
    if (!(x > 1.0)) throw std::invalid_argument("x must exceed 1");
    const double L = std::log(x);
    if (std::abs(s) > 1.0 / L * (1.0 + 1e-12)) throw std::invalid_argument("|s| must be <= 1/log x");
    const auto N = static_cast<std::size_t>(std::floor(x));
    SumIntegralReport r;
    for (std::size_t n = 1; n <= N; ++n) {
        const double dn = static_cast<double>(n);
        r.lhs += std::pow(dn, -1.0 - s) * std::pow(std::log(x / dn), l);
    }
    const double integral =
        integrate_cube_converged<1>([&](const std::array<double, 1>& a) { return std::exp(s * L * a[0]) * std::pow(a[0], l); },
                                    1e-14)
            .value;
    r.rhs = std::pow(L, l + 1) * std::exp(-s * L) * integral;
    r.error = std::abs(r.lhs - r.rhs);
    r.normalizer = std::pow(std::log(3.0 * x), l);
    return r;
}

/// sum_{n<=z} d_k(n) n^{-1-s} F(log(x/n)/log x) H(log(z/n)/log z)  vs
/// (log z)^k/(k-1)! z^{-s} int_0^1 (1-u)^{k-1} F(1 - (1-u) log z/log x) H(u) z^{us} du,
/// error term (log 3z)^{k-1}.
inline SumIntegralReport check_euler_maclaurin_cross(const ArithmeticTables& tables, int k, const Polynomial& F,
                                                     const Polynomial& H, double s, double x, double z) {
    if (k < 1 || static_cast<std::size_t>(k) >= tables.dk.size()) throw std::invalid_argument("k outside the tables");
    if (!(z > 1.0) || z > x * (1.0 + 1e-15)) throw std::invalid_argument("need 1 < z <= x");
    const double Lx = std::log(x);
    const double Lz = std::log(z);
    if (std::abs(s) > 1.0 / Lx * (1.0 + 1e-12)) throw std::invalid_argument("|s| must be <= 1/log x");
    const auto N = static_cast<std::size_t>(std::floor(z));
    if (N > tables.N) throw std::invalid_argument("z exceeds the table size");
    SumIntegralReport r;
    for (std::size_t n = 1; n <= N; ++n) {
        const double dn = static_cast<double>(n);
        r.lhs += static_cast<double>(tables.d(k, n)) * std::pow(dn, -1.0 - s) * F(std::log(x / dn) / Lx) *
                 H(std::log(z / dn) / Lz);
    }
    const double integral = integrate_cube_converged<1>(
                                [&](const std::array<double, 1>& p) {
                                    const double u = p[0];
                                    return std::pow(1.0 - u, k - 1) * F(1.0 - (1.0 - u) * Lz / Lx) * H(u) *
                                           std::exp(u * s * Lz);
                                },
                                1e-14)
                                .value;
    r.rhs = std::pow(Lz, k) / factorial(k - 1) * std::exp(-s * Lz) * integral;
    r.error = std::abs(r.lhs - r.rhs);
    r.normalizer = std::pow(std::log(3.0 * z), k - 1);
    return r;
}

/// The z = x case.
inline SumIntegralReport check_euler_maclaurin_diag(const ArithmeticTables& tables, int k, const Polynomial& F,
                                                    const Polynomial& H, double s, double x) {
    return check_euler_maclaurin_cross(tables, k, F, H, s, x, x);
}

inline constexpr double kLogSaveConstant = 10.0;

struct LogSaveReport {
    std::vector<double> xs;
    std::vector<double> ratios;  ///< sum / ((log 3x)^{k-1} min(1/|sigma|, log 3x))
    double max_ratio = 0.0;
    bool bounded = false;        ///< every ratio below kLogSaveConstant
};

/// sum_{n<=x} d_k(n)/n (x/n)^sigma against (log 3x)^{k-1} min(1/|sigma|, log 3x).
inline LogSaveReport check_logsave(const ArithmeticTables& tables, int k, double sigma,
                                   const std::vector<double>& xs = {1e3, 1e4, 1e5}) {
    if (k < 1 || static_cast<std::size_t>(k) >= tables.dk.size()) throw std::invalid_argument("k outside the tables");
    if (sigma < -1.0 || sigma > 0.0) throw std::invalid_argument("sigma must lie in [-1, 0]");
    LogSaveReport rep;
    rep.xs = xs;
    for (double x : xs) {
        const auto N = static_cast<std::size_t>(std::floor(x));
        if (N > tables.N) throw std::invalid_argument("x exceeds the table size");
        double sum = 0.0;
        for (std::size_t n = 1; n <= N; ++n) {
            const double dn = static_cast<double>(n);
            sum += static_cast<double>(tables.d(k, n)) / dn * std::pow(x / dn, sigma);
        }
        const double L3 = std::log(3.0 * x);
        const double cap = sigma == 0.0 ? L3 : std::min(1.0 / std::abs(sigma), L3);
        rep.ratios.push_back(sum / (std::pow(L3, k - 1) * cap));
    }
    rep.max_ratio = *std::max_element(rep.ratios.begin(), rep.ratios.end());
    rep.bounded = rep.max_ratio < kLogSaveConstant;
    return rep;
}

}  // namespace mollifier::oracle
