#pragma once

/**
 * @file presets.hpp
 * @brief Built-in parameter points: the all-zeros bound (R = 1.28, degree-7 Q)
 *        and the simple-zeros bound (R = 1.12, linear Q).
 */

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mollifier/moments.hpp"
#include "mollifier/poly.hpp"

namespace mollifier {

struct Preset {
    std::string name;
    std::string description;
    MollifierConfig config;
    QSpec q_spec;
    std::vector<double> p1_coeffs;  ///< from x^1
    std::vector<double> p2_coeffs;  ///< from x^3
};

inline Preset make_preset(std::string name, std::string description, double R, QSpec q, std::vector<double> p1,
                          std::vector<double> p2, ZeroMode mode) {
    MollifierConfig cfg;
    cfg.theta1 = kMaxTheta1;
    cfg.theta2 = kMaxTheta2;
    cfg.R = R;
    cfg.Q = make_q(q).poly;
    cfg.P1 = make_p1(p1, P1Mode::verbatim);
    cfg.P2 = make_p2(P2Spec{p2});
    cfg.mode = mode;
    return Preset{std::move(name), std::move(description), cfg, std::move(q), std::move(p1), std::move(p2)};
}

/// kappa >= .4105: R = 1.28, Q = .492 + .604(1-2x) - .08(1-2x)^3 - .06(1-2x)^5 + .046(1-2x)^7.
/// This Q has Q(0) = 1.002; evaluate() rescales it to Q(0) = 1.
inline Preset preset_kappa() {
    return make_preset("kappa", "all zeros, R = 1.28, degree-7 Q", 1.28, QSpec{0.492, {0.604, -0.08, -0.06, 0.046}},
                       {0.842706, 0.00845721, 0.093117, 0.118788, -0.0630687},
                       {0.0245412, -0.00635566, 0.00603128}, ZeroMode::all_zeros);
}

/// kappa* >= .4058: R = 1.12, Q = 1 - 1.03x. The x^5 coefficient of P2 is
/// .00769594; the inner optimum for this (Q, R) reproduces every other digit.
inline Preset preset_kappa_star() {
    return make_preset("kappa-star", "simple zeros, R = 1.12, Q = 1 - 1.03x", 1.12, QSpec{0.485, {0.515}},
                       {0.829473, 0.0104358, 0.082009, 0.177482, -0.0993997},
                       {0.0323061, -0.00553783, 0.00769594}, ZeroMode::simple_zeros);
}

/// As kappa-star but with the x^5 coefficient of P2 read as .0769594.
inline Preset preset_kappa_star_printed() {
    return make_preset("kappa-star-printed", "simple zeros, P2 x^5 coefficient .0769594", 1.12, QSpec{0.485, {0.515}},
                       {0.829473, 0.0104358, 0.082009, 0.177482, -0.0993997},
                       {0.0323061, -0.00553783, 0.0769594}, ZeroMode::simple_zeros);
}

inline std::vector<std::string> preset_names() { return {"kappa", "kappa-star", "kappa-star-printed"}; }

inline Preset preset_by_name(std::string_view name) {
    if (name == "kappa") return preset_kappa();
    if (name == "kappa-star" || name == "kappa_star") return preset_kappa_star();
    if (name == "kappa-star-printed" || name == "kappa_star_printed") return preset_kappa_star_printed();
    throw ConfigError("unknown preset '" + std::string(name) + "' (expected kappa, kappa-star or kappa-star-printed)");
}

}  // namespace mollifier
