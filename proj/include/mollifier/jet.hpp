#pragma once

/**
 * @file jet.hpp
 * @brief Truncated bivariate Taylor arithmetic in two formal variables (x, y).
 *
 * A Jet<MX, MY> stores the Taylor coefficients c[i][j] of x^i y^j for
 * i <= MX, j <= MY. Products are truncated Cauchy products, so every retained
 * coefficient is exact. Mixed partials at x = y = 0 are read off as
 * c[i][j] * i! * j!.
 *
 * The moment formulas need caps (1,1) for d^2/dxdy and (2,2) for
 * d^4/dx^2dy^2; the one-variable caps (K,0) are used by the identity checks.
 */

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>

#include "mollifier/poly.hpp"

namespace mollifier {

template <int MX, int MY>
class Jet {
    static_assert(MX >= 0 && MY >= 0, "order caps must be non-negative");

public:
    static constexpr int kMaxX = MX;
    static constexpr int kMaxY = MY;
    static constexpr std::size_t kSize = static_cast<std::size_t>((MX + 1) * (MY + 1));

    constexpr Jet() : c_{} {}
    /// Constant jet. Implicit so that jets mix with real literals like dual numbers do.
    constexpr Jet(double constant) : c_{} { c_[0] = constant; }

    static constexpr Jet x() {
        static_assert(MX >= 1, "x needs an x-order cap of at least 1");
        Jet j;
        j.c_[idx(1, 0)] = 1.0;
        return j;
    }
    static constexpr Jet y() {
        static_assert(MY >= 1, "y needs a y-order cap of at least 1");
        Jet j;
        j.c_[idx(0, 1)] = 1.0;
        return j;
    }
    /// Linear jet a + bx x + by y (terms beyond the caps are dropped).
    static constexpr Jet linear(double a, double bx, double by) {
        Jet j(a);
        if constexpr (MX >= 1) j.c_[idx(1, 0)] = bx;
        if constexpr (MY >= 1) j.c_[idx(0, 1)] = by;
        return j;
    }

    /// Taylor coefficient of x^i y^j; throws if (i, j) lies outside the caps.
    double coeff(int i, int j) const {
        if (i < 0 || j < 0 || i > MX || j > MY) {
            throw std::out_of_range("jet coefficient (" + std::to_string(i) + "," + std::to_string(j) +
                                    ") outside caps (" + std::to_string(MX) + "," + std::to_string(MY) + ")");
        }
        return c_[idx(i, j)];
    }
    double& operator()(int i, int j) { return c_[idx(i, j)]; }
    double operator()(int i, int j) const { return c_[idx(i, j)]; }
    double value() const { return c_[0]; }
    const std::array<double, kSize>& data() const { return c_; }

    Jet& operator+=(const Jet& o) {
        for (std::size_t k = 0; k < kSize; ++k) c_[k] += o.c_[k];
        return *this;
    }
    Jet& operator-=(const Jet& o) {
        for (std::size_t k = 0; k < kSize; ++k) c_[k] -= o.c_[k];
        return *this;
    }
    Jet& operator*=(double s) {
        for (auto& v : c_) v *= s;
        return *this;
    }
    Jet& operator+=(double s) {
        c_[0] += s;
        return *this;
    }
    Jet& operator*=(const Jet& o) { return *this = *this * o; }

    /// this += s * o, the accumulation step of every quadrature sum.
    void add_scaled(double s, const Jet& o) {
        for (std::size_t k = 0; k < kSize; ++k) c_[k] += s * o.c_[k];
    }

    friend Jet operator+(Jet a, const Jet& b) { return a += b; }
    friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
    friend Jet operator-(Jet a) { return a *= -1.0; }
    friend Jet operator+(Jet a, double s) { return a += s; }
    friend Jet operator+(double s, Jet a) { return a += s; }
    friend Jet operator-(Jet a, double s) { return a += -s; }
    friend Jet operator-(double s, const Jet& a) { return (-a) + s; }
    friend Jet operator*(Jet a, double s) { return a *= s; }
    friend Jet operator*(double s, Jet a) { return a *= s; }

    friend Jet operator*(const Jet& a, const Jet& b) {
        Jet r;
        for (int i = 0; i <= MX; ++i) {
            for (int j = 0; j <= MY; ++j) {
                const double aij = a.c_[idx(i, j)];
                if (aij == 0.0) continue;
                for (int k = 0; k <= MX - i; ++k) {
                    for (int l = 0; l <= MY - j; ++l) {
                        r.c_[idx(i + k, j + l)] += aij * b.c_[idx(k, l)];
                    }
                }
            }
        }
        return r;
    }

    friend bool operator==(const Jet&, const Jet&) = default;

private:
    static constexpr std::size_t idx(int i, int j) { return static_cast<std::size_t>(i * (MY + 1) + j); }

    std::array<double, kSize> c_;
};

using Jet11 = Jet<1, 1>;
using Jet22 = Jet<2, 2>;

/// exp(a) = exp(a00) * sum_k n^k / k!, where n = a - a00 is nilpotent of
/// order MX + MY + 1, so the series terminates.
template <int MX, int MY>
Jet<MX, MY> exp(const Jet<MX, MY>& a) {
    Jet<MX, MY> nil = a;
    nil(0, 0) = 0.0;
    Jet<MX, MY> sum(1.0);
    Jet<MX, MY> term(1.0);
    for (int k = 1; k <= MX + MY; ++k) {
        term = term * nil;
        term *= 1.0 / k;
        sum += term;
    }
    return sum * std::exp(a.value());
}

template <int MX, int MY>
Jet<MX, MY> eval_poly(const Polynomial& p, const Jet<MX, MY>& a) {
    return p(a);
}

/// Taylor coefficients p(a0 + h) = sum_k out[k] h^k for k < K (Horner with
/// normalized derivatives).
template <std::size_t K>
std::array<double, K> taylor_coefficients(const Polynomial& p, double a0) {
    std::array<double, K> out{};
    const auto c = p.coeffs();
    for (std::size_t i = c.size(); i-- > 0;) {
        for (std::size_t k = K - 1; k >= 1; --k) out[k] = out[k] * a0 + out[k - 1];
        out[0] = out[0] * a0 + c[i];
    }
    return out;
}

/// p(a) by expanding around a's constant term. The non-constant part is
/// nilpotent, so only MX + MY jet products are needed whatever the degree of p.
template <int MX, int MY>
Jet<MX, MY> taylor_eval(const Polynomial& p, const Jet<MX, MY>& a) {
    constexpr std::size_t K = static_cast<std::size_t>(MX + MY + 1);
    const auto t = taylor_coefficients<K>(p, a.value());
    Jet<MX, MY> nil = a;
    nil(0, 0) = 0.0;
    Jet<MX, MY> sum(t[0]);
    Jet<MX, MY> power(1.0);
    for (std::size_t k = 1; k < K; ++k) {
        power = power * nil;
        sum.add_scaled(t[k], power);
    }
    return sum;
}

inline constexpr double factorial(int n) {
    double f = 1.0;
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
}

/// d^(i+j) / dx^i dy^j at x = y = 0.
template <int MX, int MY>
double mixed_partial(const Jet<MX, MY>& a, int i, int j) {
    return a.coeff(i, j) * factorial(i) * factorial(j);
}

}  // namespace mollifier
