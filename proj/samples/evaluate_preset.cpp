// Evaluates a preset at a few fixed quadrature orders, then with the doubling
// driver, to show how quickly the constants settle.
//
//   ./evaluate_preset [kappa|kappa-star]

#include <cstdio>
#include <string>

#include "mollifier/moments.hpp"
#include "mollifier/presets.hpp"
#include "mollifier/report.hpp"

int main(int argc, char** argv) {
    const std::string name = argc > 1 ? argv[1] : "kappa";
    const mollifier::Preset p = mollifier::preset_by_name(name);
    const mollifier::MollifierConfig unit = mollifier::with_unit_q0(p.config);

    std::printf("%s: %s\n", p.name.c_str(), p.description.c_str());
    for (int n : {4, 8, 12, 16}) {
        const auto v = mollifier::evaluate_at(unit, mollifier::cached_rule(n));
        std::printf("  n=%2d  c=%.12f  kappa=%.10f\n", n, v.c, v.kappa);
    }
    std::printf("%s", mollifier::format_report(mollifier::evaluate(p.config)).c_str());
}
