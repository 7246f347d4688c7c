// Composes a chain of three polynomial maps exactly, prints the derivative
// tower of the composite, and verifies it against the jet of its local
// inverse.

#include <cstdlib>
#include <iostream>
#include <utility>
#include <vector>

#include "faacalc/calculus.hpp"
#include "faacalc/json_io.hpp"

using namespace faacalc;

namespace {

PolyMap<rational> univariate(std::vector<std::pair<int, rational>> terms) {
    PolyMap<rational> P;
    P.in_dim = 1;
    P.out_dim = 1;
    P.components.emplace_back();
    for (auto& [e, c] : terms) P.components[0].push_back({c, {e}});
    return P;
}

} // namespace

int main() {
    const int order = 4;
    const auto a = univariate({{1, rational(1)}, {2, rational(1)}});
    const auto b = univariate({{1, rational(1)}, {3, rational(2)}});
    const auto c = univariate({{1, rational(1)}, {2, rational(1, 2)}});

    // Innermost map first; each jet is based at the value of the previous one.
    std::vector<Jet<rational>> jets;
    jets.push_back(jet_of_polymap(a, {rational(0)}, order));
    jets.push_back(jet_of_polymap(b, jet_value(jets[0]), order));
    jets.push_back(jet_of_polymap(c, jet_value(jets[1]), order));

    const auto composite = compose_chain(jets, order);
    std::cout << "composite jet\n" << jet_to_json(composite).dump(2) << "\n";

    const auto inverse = inverse_jet(composite, order);
    std::cout << "inverse jet\n" << jet_to_json(inverse).dump(2) << "\n";

    const auto round = compose_jet(composite, inverse, order);
    const auto ident = identity_jet(jet_value(composite), order);
    for (int k = 0; k <= order; ++k)
        if (round.derivs[static_cast<size_t>(k)].data != ident.derivs[static_cast<size_t>(k)].data) {
            std::cout << "inverse check: mismatch at order " << k << "\n";
            return EXIT_FAILURE;
        }
    std::cout << "inverse check: ok\n";
    return EXIT_SUCCESS;
}
