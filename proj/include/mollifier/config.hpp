#pragma once

/**
 * @file config.hpp
 * @brief Plain-text parameter files: one `key = value` per line, `#` starts a
 *        comment, lists are comma-separated.
 *
 * Keys: theta1, theta2, R, q_const, q_odd_coeffs, p1_coeffs (from x^1),
 * p2_coeffs (from x^3), mode (all_zeros | simple_zeros), quad_tol,
 * quad_max_nodes. R and p1_coeffs are required. q_const defaults to
 * 1 - sum(q_odd_coeffs), i.e. Q(0) = 1; an empty p2_coeffs switches P2 off.
 */

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "mollifier/error.hpp"
#include "mollifier/moments.hpp"
#include "mollifier/poly.hpp"

namespace mollifier {

struct RunConfig {
    MollifierConfig config;
    QuadOptions quad;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
    const auto is_space = [](char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; };
    while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
    while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
    return s;
}

inline std::string at_line(int line, const std::string& msg) { return "line " + std::to_string(line) + ": " + msg; }

inline double parse_number(std::string_view text, int line, std::string_view key) {
    text = trim(text);
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    double v = 0.0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || ec != std::errc{} || end != text.data() + text.size() || !std::isfinite(v)) {
        throw ConfigError(at_line(line, "'" + std::string(key) + "' expects a number, got '" + std::string(text) + "'"));
    }
    return v;
}

inline std::vector<double> parse_list(std::string_view text, int line, std::string_view key) {
    std::vector<double> out;
    text = trim(text);
    if (text.empty()) return out;
    std::size_t start = 0;
    for (;;) {
        const std::size_t comma = text.find(',', start);
        out.push_back(parse_number(text.substr(start, comma - start), line, key));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

}  // namespace detail

inline ZeroMode parse_mode(std::string_view s) {
    if (s == "all_zeros" || s == "all-zeros") return ZeroMode::all_zeros;
    if (s == "simple_zeros" || s == "simple-zeros" || s == "simple") return ZeroMode::simple_zeros;
    throw ConfigError("mode must be all_zeros or simple_zeros, got '" + std::string(s) + "'");
}

/// Parses and validates; every error names its line, or the violated constraint.
inline RunConfig parse_config(std::string_view text) {
    static const std::vector<std::string> known{"theta1",   "theta2",    "R",    "q_const",  "q_odd_coeffs",
                                                "p1_coeffs", "p2_coeffs", "mode", "quad_tol", "quad_max_nodes"};
    std::map<std::string, std::pair<std::string, int>> entries;
    int line_no = 0;
    std::istringstream in{std::string(text)};
    std::string raw;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = raw;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) throw ConfigError(detail::at_line(line_no, "expected 'key = value'"));
        const std::string key{detail::trim(line.substr(0, eq))};
        if (std::find(known.begin(), known.end(), key) == known.end()) {
            throw ConfigError(detail::at_line(line_no, "unknown key '" + key + "'"));
        }
        if (entries.contains(key)) {
            throw ConfigError(detail::at_line(line_no, "duplicate key '" + key + "' (first on line " +
                                                           std::to_string(entries[key].second) + ")"));
        }
        entries[key] = {std::string(detail::trim(line.substr(eq + 1))), line_no};
    }

    auto number = [&](const std::string& key) -> std::optional<double> {
        const auto it = entries.find(key);
        if (it == entries.end()) return std::nullopt;
        return detail::parse_number(it->second.first, it->second.second, key);
    };
    auto list = [&](const std::string& key) -> std::optional<std::vector<double>> {
        const auto it = entries.find(key);
        if (it == entries.end()) return std::nullopt;
        return detail::parse_list(it->second.first, it->second.second, key);
    };

    RunConfig rc;
    MollifierConfig& cfg = rc.config;
    cfg.theta1 = number("theta1").value_or(kMaxTheta1);
    cfg.theta2 = number("theta2").value_or(kMaxTheta2);
    const auto R = number("R");
    if (!R) throw ConfigError("missing required key 'R'");
    cfg.R = *R;
    validate_parameters(cfg.theta1, cfg.theta2, cfg.R);

    const auto odd = list("q_odd_coeffs").value_or(std::vector<double>{});
    QSpec q = QSpec::normalized(odd);
    if (const auto c = number("q_const")) q.constant = *c;
    cfg.Q = make_q(q).poly;

    const auto p1 = list("p1_coeffs");
    if (!p1 || p1->empty()) throw ConfigError("missing required key 'p1_coeffs'");
    try {
        cfg.P1 = make_p1(*p1, P1Mode::verbatim);
    } catch (const ConfigError& e) {
        throw ConfigError(detail::at_line(entries["p1_coeffs"].second, e.what()));
    }
    cfg.P2 = make_p2(P2Spec{list("p2_coeffs").value_or(std::vector<double>{})});

    if (const auto it = entries.find("mode"); it != entries.end()) {
        try {
            cfg.mode = parse_mode(it->second.first);
        } catch (const ConfigError& e) {
            throw ConfigError(detail::at_line(it->second.second, e.what()));
        }
    }
    if (const auto tol = number("quad_tol")) rc.quad.tol = *tol;
    if (const auto n = number("quad_max_nodes")) {
        if (*n != std::floor(*n) || *n < 2 || *n > kMaxGaussNodes) {
            throw ConfigError(detail::at_line(entries["quad_max_nodes"].second, "quad_max_nodes must be an integer in [2, 256]"));
        }
        rc.quad.max_nodes = static_cast<int>(*n);
    }
    if (!(rc.quad.tol > 0.0)) throw ConfigError(detail::at_line(entries["quad_tol"].second, "quad_tol must be > 0"));

    validate(cfg);
    return rc;
}

inline RunConfig load_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot read config file '" + path + "'");
    std::stringstream buf;
    buf << f.rdbuf();
    return parse_config(buf.str());
}

}  // namespace mollifier
