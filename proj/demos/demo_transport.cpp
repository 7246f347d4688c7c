// Measures discrete seminorms and gauge norms of a polynomial on a sample
// grid, then transports the grid through a change of variables and prints the
// measured values next to their predicted bounds.

#include <iostream>
#include <utility>
#include <vector>

#include "faacalc/json_io.hpp"
#include "faacalc/norms.hpp"

using namespace faacalc;

namespace {

SampleSet line_grid(int n) {
    SampleSet s;
    for (int i = 0; i < n; ++i) {
        s.points.push_back({(i + 0.5) / n});
        s.weights.push_back(1.0 / n);
    }
    return s;
}

PolyMap<double> univariate(std::vector<std::pair<int, double>> terms) {
    PolyMap<double> P;
    P.in_dim = 1;
    P.out_dim = 1;
    P.components.emplace_back();
    for (auto& [e, c] : terms) P.components[0].push_back({c, {e}});
    return P;
}

} // namespace

int main() {
    const SampleSet s = line_grid(16);
    const auto u = univariate({{0, 1.0}, {1, 0.5}, {2, -0.25}, {3, 0.375}});
    const auto phi = univariate({{1, 1.5}, {0, -0.25}});

    std::vector<double> values;
    values.reserve(s.points.size());
    for (const auto& pt : s.points) values.push_back(evaluate_polymap(u, pt)[0]);

    std::cout << "lp(2)                 " << discrete_lp_norm(values, s, 2.0) << "\n";
    std::cout << "slobodeckij(0.4, 2)   " << discrete_slobodeckij(values, s, 0.4, 2.0) << "\n";
    std::cout << "holder(0.4)           " << holder_seminorm(values, s, 0.4) << "\n";

    const auto A = make_double_phase_integrand(2.0, 3.0);
    std::cout << "luxemburg(dbl-phase)  " << luxemburg_norm(A, values, s) << "\n";

    const SeminormParams params{2.0, 0.4, 0.8, 1};
    const TransformReport rep = seminorm_transform_report(u, phi, s, params, 0, 1);
    std::cout << "transform report\n" << transform_report_to_json(rep).dump(2) << "\n";
    return 0;
}
