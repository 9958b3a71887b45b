#pragma once

/**
 * @file poly.hpp
 * @brief Real polynomials in ascending-power form and the three constrained
 *        families used by the mollifier: the smoothing polynomial Q and the
 *        two mollifier shapes P1, P2.
 *
 * Q is written in the (1-2x) odd-power basis so that Q(x) + Q(1-x) is constant
 * by construction. P1 has no constant term and P1(1) = 1. P2 vanishes to third
 * order at the origin.
 */

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mollifier/error.hpp"

namespace mollifier {

class Polynomial {
public:
    Polynomial() : coeffs_{0.0} {}
    Polynomial(std::initializer_list<double> c) : coeffs_(c) { trim(); }
    explicit Polynomial(std::vector<double> c) : coeffs_(std::move(c)) { trim(); }

    static Polynomial monomial(int power, double coeff = 1.0) {
        std::vector<double> c(static_cast<std::size_t>(power) + 1, 0.0);
        c.back() = coeff;
        return Polynomial(std::move(c));
    }

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    std::span<const double> coeffs() const { return coeffs_; }
    double coeff(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : 0.0; }
    bool is_zero() const { return coeffs_.size() == 1 && coeffs_[0] == 0.0; }

    /// Horner evaluation over any scalar ring that accepts `S * S` and `S + double`
    /// (double, Jet, ...).
    template <class S>
    S operator()(const S& x) const {
        S r = S(coeffs_.back());
        for (std::size_t k = coeffs_.size() - 1; k-- > 0;) {
            r = r * x + coeffs_[k];
        }
        return r;
    }

    Polynomial derivative() const {
        if (coeffs_.size() == 1) return Polynomial{};
        std::vector<double> d(coeffs_.size() - 1);
        for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = static_cast<double>(k) * coeffs_[k];
        return Polynomial(std::move(d));
    }

    Polynomial antiderivative(double constant = 0.0) const {
        std::vector<double> a(coeffs_.size() + 1);
        a[0] = constant;
        for (std::size_t k = 0; k < coeffs_.size(); ++k) a[k + 1] = coeffs_[k] / static_cast<double>(k + 1);
        return Polynomial(std::move(a));
    }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
        std::vector<double> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
        for (std::size_t k = 0; k < c.size(); ++k) c[k] = a.coeff(k) + b.coeff(k);
        return Polynomial(std::move(c));
    }
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-1.0) * b; }
    friend Polynomial operator*(double s, const Polynomial& p) {
        std::vector<double> c(p.coeffs_);
        for (auto& v : c) v *= s;
        return Polynomial(std::move(c));
    }
    friend Polynomial operator*(const Polynomial& p, double s) { return s * p; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        std::vector<double> c(a.coeffs_.size() + b.coeffs_.size() - 1, 0.0);
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
        return Polynomial(std::move(c));
    }
    friend bool operator==(const Polynomial&, const Polynomial&) = default;

private:
    void trim() {
        while (coeffs_.size() > 1 && coeffs_.back() == 0.0) coeffs_.pop_back();
        if (coeffs_.empty()) coeffs_.push_back(0.0);
    }

    std::vector<double> coeffs_;
};

inline double eval_poly(const Polynomial& p, double x) { return p(x); }
inline Polynomial derivative(const Polynomial& p) { return p.derivative(); }

// ---------------------------------------------------------------------------
// Q: Q(x) = const + sum_k odd_coeffs[k] (1-2x)^(2k+1)
// ---------------------------------------------------------------------------

inline constexpr double kQ0VerbatimTolerance = 0.005;
inline constexpr double kQSymmetryTolerance = 1e-12;

struct QSpec {
    double constant = 1.0;
    std::vector<double> odd_coeffs;  ///< multiplies (1-2x)^1, (1-2x)^3, ...

    /// Spec with Q(0) = 1 exactly: constant = 1 - sum(odd_coeffs).
    static QSpec normalized(std::vector<double> odd) {
        double s = 0.0;
        for (double v : odd) s += v;
        return QSpec{1.0 - s, std::move(odd)};
    }
};

/// Expanded Q together with the two constraint diagnostics.
struct SymmetricQ {
    Polynomial poly;
    double q0 = 1.0;                  ///< Q(0)
    double symmetry_constant = 2.0;   ///< Q(x) + Q(1-x)
};

/// max over x in {0, 0.05, ..., 1} of |Q(x) + Q(1-x) - (Q(0) + Q(1))|.
inline double q_symmetry_defect(const Polynomial& q) {
    const double ref = q(0.0) + q(1.0);
    double worst = 0.0;
    for (int i = 0; i <= 20; ++i) {
        const double x = 0.05 * i;
        worst = std::max(worst, std::abs(q(x) + q(1.0 - x) - ref));
    }
    return worst;
}

inline SymmetricQ make_q(const QSpec& spec) {
    const Polynomial base{1.0, -2.0};
    const Polynomial base_sq = base * base;
    Polynomial q{spec.constant};
    Polynomial power = base;
    for (double c : spec.odd_coeffs) {
        q = q + c * power;
        power = power * base_sq;
    }
    return SymmetricQ{q, q(0.0), q(0.0) + q(1.0)};
}

/// Hand-entered monomial Q; rejected unless Q(x) + Q(1-x) is constant.
inline SymmetricQ make_q(const Polynomial& monomial_q) {
    const double defect = q_symmetry_defect(monomial_q);
    if (defect > kQSymmetryTolerance) {
        throw ConfigError("Q(x) + Q(1-x) is not constant (deviation " + std::to_string(defect) + ")");
    }
    return SymmetricQ{monomial_q, monomial_q(0.0), monomial_q(0.0) + monomial_q(1.0)};
}

/// Recover the (1-2x) odd-basis coefficients of a symmetric Q.
/// Q(x) = c + g(1-2x) with g odd, so the odd part of Q((1-z)/2) in z is g.
inline QSpec q_to_spec(const Polynomial& q) {
    // Substitute x = (1 - z)/2 and expand in z.
    const Polynomial half_one_minus_z{0.5, -0.5};
    Polynomial in_z{0.0};
    Polynomial power{1.0};
    for (double c : q.coeffs()) {
        in_z = in_z + c * power;
        power = power * half_one_minus_z;
    }
    QSpec spec;
    spec.constant = in_z.coeff(0);
    for (int k = 1; k <= in_z.degree(); k += 2) spec.odd_coeffs.push_back(in_z.coeff(static_cast<std::size_t>(k)));
    return spec;
}

// ---------------------------------------------------------------------------
// P1: P1(0) = 0, P1(1) = 1
// ---------------------------------------------------------------------------

inline constexpr double kP1Tolerance = 1e-5;

enum class P1Mode { verbatim, normalize };

/// @p from_power_one[k] multiplies x^(k+1).
inline Polynomial make_p1(std::span<const double> from_power_one, P1Mode mode) {
    std::vector<double> c(from_power_one.size() + 1, 0.0);
    std::copy(from_power_one.begin(), from_power_one.end(), c.begin() + 1);
    Polynomial p(std::move(c));
    const double at_one = p(1.0);
    if (mode == P1Mode::normalize) {
        if (at_one == 0.0) throw ConfigError("P1(1) = 0 cannot be normalized");
        return (1.0 / at_one) * p;
    }
    if (std::abs(at_one - 1.0) > kP1Tolerance) {
        throw ConfigError("P1(1) must equal 1 (got " + std::to_string(at_one) + ")");
    }
    return p;
}

inline Polynomial make_p1(const Polynomial& p, P1Mode mode) {
    if (p.coeff(0) != 0.0) throw ConfigError("P1 must have zero constant term");
    std::vector<double> tail(p.coeffs().begin() + 1, p.coeffs().end());
    return make_p1(tail, mode);
}

// ---------------------------------------------------------------------------
// P2: P2(0) = P2'(0) = P2''(0) = 0
// ---------------------------------------------------------------------------

struct P2Spec {
    std::vector<double> coeffs;  ///< coeffs[k] multiplies x^(k+3)
};

inline Polynomial make_p2(const P2Spec& spec) {
    if (spec.coeffs.empty()) return Polynomial{};
    std::vector<double> c(spec.coeffs.size() + 3, 0.0);
    std::copy(spec.coeffs.begin(), spec.coeffs.end(), c.begin() + 3);
    return Polynomial(std::move(c));
}

/// Validates a monomial-form P2 (used when reading configs that list full coefficients).
inline void require_p2_shape(const Polynomial& p) {
    for (std::size_t k = 0; k < 3; ++k) {
        if (p.coeff(k) != 0.0) throw ConfigError("P2 must vanish to third order at 0");
    }
}

}  // namespace mollifier
