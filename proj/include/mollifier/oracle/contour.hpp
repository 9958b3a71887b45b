#pragma once

/**
 * @file contour.hpp
 * @brief (1/2 pi i) times a closed circle integral by the trapezoid rule, which
 *        converges geometrically for integrands analytic near the circle.
 */

#include <complex>
#include <cstddef>
#include <numbers>
#include <stdexcept>

namespace mollifier::oracle {

using cplx = std::complex<double>;

struct ContourSpec {
    cplx center{0.0, 0.0};
    double radius = 1.0;
    int n_points = 256;
};

inline constexpr int kMinContourPoints = 64;

/// (1/2 pi i) oint f(z) dz over |z - center| = radius, positively oriented.
/// With z_k = c + r e^{i phi_k}, dz = i (z_k - c) dphi, so the sum is
/// (1/N) sum_k f(z_k) (z_k - c).
template <class F>
cplx contour_circle(F&& f, const ContourSpec& spec) {
    if (spec.n_points < kMinContourPoints) throw std::invalid_argument("contour needs at least 64 points");
    if (!(spec.radius > 0.0)) throw std::invalid_argument("contour radius must be positive");
    cplx sum{0.0, 0.0};
    const double step = 2.0 * std::numbers::pi / spec.n_points;
    for (int k = 0; k < spec.n_points; ++k) {
        const cplx offset = std::polar(spec.radius, step * k);
        sum += f(spec.center + offset) * offset;
    }
    return sum / static_cast<double>(spec.n_points);
}

}  // namespace mollifier::oracle
