#pragma once

/**
 * @file report.hpp
 * @brief JSON and plain-text renderings of an evaluation.
 *
 * Key order is fixed and doubles are written in shortest round-trip form, so
 * identical inputs give byte-identical files.
 */

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "json.hpp"

#include "mollifier/moments.hpp"
#include "mollifier/optimize.hpp"

namespace mollifier {

using Json = nlohmann::ordered_json;

inline constexpr int kReportSchema = 1;

inline Json to_json(const std::vector<ConvergenceStep>& trace) {
    Json arr = Json::array();
    for (const auto& s : trace) {
        Json step;
        step["nodes"] = s.nodes;
        step["value"] = s.value;
        step["delta"] = std::isnan(s.delta) ? Json(nullptr) : Json(s.delta);
        arr.push_back(step);
    }
    return arr;
}

inline Json to_json(const Polynomial& p) { return Json(std::vector<double>(p.coeffs().begin(), p.coeffs().end())); }

inline Json to_json(const MomentValues& v) {
    Json j;
    j["c1"] = v.c1;
    j["c12"] = v.c12;
    j["c2"] = v.c2;
    j["c"] = v.c;
    j["kappa"] = v.kappa;
    return j;
}

inline Json to_json(const KappaReport& rep, const QuadOptions& quad) {
    const auto& cfg = rep.config;
    Json j;
    j["schema"] = kReportSchema;
    j["mode"] = to_string(cfg.mode);
    j["theta1"] = cfg.theta1;
    j["theta2"] = cfg.theta2;
    j["R"] = cfg.R;
    j["Q"] = to_json(cfg.Q);
    j["P1"] = to_json(cfg.P1);
    j["P2"] = to_json(cfg.P2);
    j["Q_at_0"] = cfg.Q(0.0);
    j["c1"] = rep.values.c1;
    j["c12"] = rep.values.c12;
    j["c2"] = rep.values.c2;
    j["c"] = rep.values.c;
    j["kappa"] = rep.values.kappa;
    j["verbatim"] = rep.verbatim ? to_json(*rep.verbatim) : Json(nullptr);
    Json diag;
    diag["quad_tol"] = quad.tol;
    diag["quad_max_nodes"] = quad.max_nodes;
    diag["c1"] = to_json(rep.c1_trace.trace);
    diag["c12"] = to_json(rep.c12_trace.trace);
    diag["c2"] = to_json(rep.c2_trace.trace);
    j["diagnostics"] = diag;
    return j;
}

inline std::string dump_report(const KappaReport& rep, const QuadOptions& quad) {
    return to_json(rep, quad).dump(2) + "\n";
}

inline Json to_json(const OptimizeResult& res, const QuadOptions& quad) {
    Json j = to_json(res.report, quad);
    Json opt;
    opt["R"] = res.R;
    opt["q_const"] = res.q.constant;
    opt["q_odd_coeffs"] = res.q.odd_coeffs;
    opt["p1_coeffs"] = res.p1_coeffs;
    opt["p2_coeffs"] = res.p2_coeffs;
    opt["c_min"] = res.inner.c_min;
    opt["positive_definite"] = res.inner.positive_definite;
    opt["best_seed"] = res.best_seed;
    Json runs = Json::array();
    for (const auto& r : res.runs) {
        Json run;
        run["start"] = r.start;
        run["start_kappa"] = r.start_kappa;
        run["best"] = r.best;
        run["best_kappa"] = r.best_kappa;
        run["iterations"] = r.iterations;
        run["evaluations"] = r.evaluations;
        run["converged"] = r.converged;
        runs.push_back(run);
    }
    opt["runs"] = runs;
    opt["gram_trace"] = to_json(res.gram_trace);
    j["optimization"] = opt;
    return j;
}

inline std::string format_number_list(const std::vector<double>& v) {
    std::string s;
    char buf[40];
    for (std::size_t i = 0; i < v.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%s%.10g", i ? ", " : "", v[i]);
        s += buf;
    }
    return s;
}

inline std::string format_trace(const std::vector<ConvergenceStep>& trace) {
    std::string s;
    char buf[80];
    for (const auto& st : trace) {
        if (std::isnan(st.delta)) {
            std::snprintf(buf, sizeof buf, " n=%d", st.nodes);
        } else {
            std::snprintf(buf, sizeof buf, " n=%d(%.1e)", st.nodes, st.delta);
        }
        s += buf;
    }
    return s.empty() ? " exact" : s;
}

inline std::string format_report(const KappaReport& rep) {
    const auto& v = rep.values;
    char buf[512];
    std::string s;
    std::snprintf(buf, sizeof buf, "theta1 = %.10g  theta2 = %.10g  R = %.10g  mode = %s\n", rep.config.theta1,
                  rep.config.theta2, rep.config.R, to_string(rep.config.mode));
    s += buf;
    std::snprintf(buf, sizeof buf, "c1  = %.12f  quadrature:%s\n", v.c1, format_trace(rep.c1_trace.trace).c_str());
    s += buf;
    std::snprintf(buf, sizeof buf, "c12 = %.12f  quadrature:%s\n", v.c12, format_trace(rep.c12_trace.trace).c_str());
    s += buf;
    std::snprintf(buf, sizeof buf, "c2  = %.12f  quadrature:%s\n", v.c2, format_trace(rep.c2_trace.trace).c_str());
    s += buf;
    std::snprintf(buf, sizeof buf, "c   = %.12f\nkappa = %.9f\n", v.c, v.kappa);
    s += buf;
    if (rep.verbatim) {
        std::snprintf(buf, sizeof buf, "Q(0) = %.10g; above uses Q/Q(0). With Q as given: c = %.12f, kappa = %.9f\n",
                      rep.config.Q(0.0), rep.verbatim->c, rep.verbatim->kappa);
        s += buf;
    }
    return s;
}

}  // namespace mollifier
