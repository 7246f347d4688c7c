#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include "faacalc/calculus.hpp"
#include "faacalc/oracle.hpp"
#include "faacalc/random.hpp"

using namespace faacalc;

namespace {

PolyMap<rational> univariate(std::vector<std::pair<rational, int>> terms) {
    PolyMap<rational> P;
    P.in_dim = 1;
    P.out_dim = 1;
    P.components.resize(1);
    for (auto& [c, e] : terms) P.components[0].push_back({c, {e}});
    return P;
}

} // namespace

TEST_CASE("derivative tower of a univariate square") {
    auto P = univariate({{rational(1), 2}});
    auto jet = jet_of_polymap(P, {rational(3)}, 3);
    REQUIRE(jet.derivs[0].data[0] == rational(9));
    REQUIRE(jet.derivs[1].data[0] == rational(6));
    REQUIRE(jet.derivs[2].data[0] == rational(2));
    REQUIRE(jet.derivs[3].data[0] == rational(0));

    auto six = jet_of_polymap(univariate({{rational(1), 6}}), {rational(1)}, 6);
    REQUIRE(six.derivs[6].data[0] == rational(720));
}

TEST_CASE("composition of a square with a cube at one") {
    auto f = univariate({{rational(1), 2}});
    auto phi = univariate({{rational(1), 3}});
    auto phi_jet = jet_of_polymap(phi, {rational(1)}, 3);
    auto f_jet = jet_of_polymap(f, jet_value(phi_jet), 3);
    auto comp = compose_jet(f_jet, phi_jet, 3);
    REQUIRE(comp.derivs[0].data[0] == rational(1));
    REQUIRE(comp.derivs[1].data[0] == rational(6));    // 6 x^5
    REQUIRE(comp.derivs[2].data[0] == rational(30));   // 30 x^4
    REQUIRE(comp.derivs[3].data[0] == rational(120));  // 120 x^3
}

TEST_CASE("derivative tensors are symmetric") {
    auto rng = make_rng(31);
    for (int t = 0; t < 8; ++t) {
        int in_dim = 1 + t % 3;
        auto P = random_polymap(rng, in_dim, 2, 3);
        std::vector<rational> x;
        for (int i = 0; i < in_dim; ++i) x.push_back(random_rational(rng, 2, 2));
        auto jet = jet_of_polymap(P, x, 4);
        for (const auto& d : jet.derivs) REQUIRE(is_symmetric(d));
    }
}

TEST_CASE("summand counts") {
    const long long bell[] = {1, 1, 2, 5, 15, 52, 203};
    for (int m = 1; m <= 6; ++m) {
        REQUIRE(compose_summand_count(m) == bell[m]);
        REQUIRE(pullback_summand_count(m, 0) == bell[m]);
    }
    REQUIRE(pullback_summand_count(1, 1) == 2);
}

TEST_CASE("field jet transposes the output axis into a payload slot") {
    PolyMap<rational> u;
    u.in_dim = 2;
    u.out_dim = 2;
    u.components = {{{rational(1), {1, 0}}},          // x1
                    {{rational(1), {1, 1}}}};          // x1 x2
    auto jet = jet_of_polymap_field(u, {rational(2), rational(3)}, 1, 1);
    REQUIRE(jet.field_arity == 1);
    REQUIRE(jet.out_dims.empty());
    REQUIRE(jet.derivs[0].data == std::vector<rational>{rational(2), rational(6)});
    REQUIRE(jet.derivs[1].data ==
            std::vector<rational>{rational(1), rational(3), rational(0), rational(2)});
}

TEST_CASE("three-link chain matches the symbolic composite") {
    auto a = univariate({{rational(1), 2}});   // innermost
    auto b = univariate({{rational(1), 3}});
    auto c = univariate({{rational(1), 1}, {rational(1), 0}});  // x + 1
    auto ja = jet_of_polymap(a, {rational(2)}, 2);
    auto jb = jet_of_polymap(b, jet_value(ja), 2);
    auto jc = jet_of_polymap(c, jet_value(jb), 2);
    auto chain = compose_chain<rational>({ja, jb, jc}, 2);
    REQUIRE(chain.derivs[0].data[0] == rational(65));   // 2^6 + 1
    REQUIRE(chain.derivs[1].data[0] == rational(192));  // 6 x^5 at 2
    REQUIRE(chain.derivs[2].data[0] == rational(480));  // 30 x^4 at 2

    auto total = symbolic_compose(symbolic_compose(c, b), a);
    auto direct = jet_of_polymap(total, {rational(2)}, 2);
    for (int j = 0; j <= 2; ++j)
        REQUIRE(chain.derivs[static_cast<size_t>(j)].data ==
                direct.derivs[static_cast<size_t>(j)].data);

    auto fold = compose_chain_fold<rational>({ja, jb, jc}, 2);
    for (int j = 0; j <= 2; ++j)
        REQUIRE(chain.derivs[static_cast<size_t>(j)].data ==
                fold.derivs[static_cast<size_t>(j)].data);
}

TEST_CASE("pairwise composition agrees with the literal partition sum") {
    auto rng = make_rng(47);
    for (int t = 0; t < 6; ++t) {
        int n = 1 + t % 2, mid = 1 + (t / 2) % 2;
        auto phi = random_polymap(rng, n, mid, 2);
        auto f = random_polymap(rng, mid, 2, 2);
        std::vector<rational> x;
        for (int i = 0; i < n; ++i) x.push_back(random_rational(rng, 2, 2));
        int m = 3;
        auto phi_jet = jet_of_polymap(phi, x, m);
        auto f_jet = jet_of_polymap(f, jet_value(phi_jet), m);
        auto fast = compose_jet(f_jet, phi_jet, m);
        auto slow = brute_partition_sum(f_jet, phi_jet, m);
        for (int j = 0; j <= m; ++j)
            REQUIRE(fast.derivs[static_cast<size_t>(j)].data ==
                    slow.derivs[static_cast<size_t>(j)].data);
    }
}

TEST_CASE("inverse jet of a shifted cubic") {
    auto phi = univariate({{rational(1), 1}, {rational(1), 3}});  // x + x^3
    auto phi_jet = jet_of_polymap(phi, {rational(0)}, 5);
    auto inv = inverse_jet(phi_jet, 5);
    REQUIRE(inv.derivs[0].data[0] == rational(0));
    REQUIRE(inv.derivs[1].data[0] == rational(1));
    REQUIRE(inv.derivs[2].data[0] == rational(0));
    REQUIRE(inv.derivs[3].data[0] == rational(-6));
    REQUIRE(inv.derivs[4].data[0] == rational(0));
    REQUIRE(inv.derivs[5].data[0] == rational(360));

    auto series = series_inverse_univariate({rational(0), rational(1), rational(0), rational(1)}, 5);
    bigint fact = 1;
    for (int k = 1; k <= 5; ++k) {
        fact *= k;
        REQUIRE(inv.derivs[static_cast<size_t>(k)].data[0] ==
                series[static_cast<size_t>(k)] * rational(fact));
    }

    auto round = compose_jet(jet_truncate(phi_jet, 5), inv, 5);
    auto id = identity_jet<rational>({rational(0)}, 5);
    for (int j = 0; j <= 5; ++j)
        REQUIRE(round.derivs[static_cast<size_t>(j)].data ==
                id.derivs[static_cast<size_t>(j)].data);
}

TEST_CASE("domain and input validation") {
    auto sq = univariate({{rational(1), 2}});
    auto sq_jet = jet_of_polymap(sq, {rational(0)}, 3);
    REQUIRE_THROWS_AS(inverse_jet(sq_jet, 3), domain_error);

    auto f_wrong = jet_of_polymap(sq, {rational(5)}, 3);
    auto phi_jet = jet_of_polymap(univariate({{rational(1), 3}}), {rational(1)}, 3);
    REQUIRE_THROWS_AS(compose_jet(f_wrong, phi_jet, 3), input_error);

    REQUIRE_THROWS_AS(evaluate_polymap(sq, {rational(1), rational(2)}), input_error);
    REQUIRE_THROWS_AS(jet_of_polymap(sq, {rational(1)}, -1), input_error);
    REQUIRE_THROWS_AS(jet_truncate(sq_jet, 4), input_error);
    REQUIRE_THROWS_AS(compose_chain<rational>({}, 2), input_error);

    // rectangular maps cannot be inverted
    auto rng = make_rng(3);
    auto rect = random_polymap(rng, 2, 1, 1);
    auto rect_jet = jet_of_polymap(rect, {rational(0), rational(0)}, 2);
    REQUIRE_THROWS_AS(inverse_jet(rect_jet, 2), input_error);
}
