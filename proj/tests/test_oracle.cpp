#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <functional>
#include <utility>
#include <vector>

#include "faacalc/oracle.hpp"
#include "faacalc/random.hpp"

using namespace faacalc;

namespace {

double apply_scheme(const FiniteDifferenceScheme& s, double x,
                    const std::function<double(double)>& f) {
    double acc = 0.0;
    for (const auto& [offset, coeff] : s.stencil) acc += coeff * f(x + s.step * offset);
    return acc;
}

PolyMap<rational> univariate(std::vector<std::pair<rational, int>> terms) {
    PolyMap<rational> P;
    P.in_dim = 1;
    P.out_dim = 1;
    P.components.resize(1);
    for (auto& [c, e] : terms) P.components[0].push_back({c, {e}});
    return P;
}

} // namespace

TEST_CASE("central stencils") {
    auto s0 = central_difference_scheme(0, 0.1);
    REQUIRE(s0.stencil.size() == 1);
    REQUIRE(s0.stencil[0] == std::pair<int, double>{0, 1.0});

    auto s1 = central_difference_scheme(1, 0.25);
    REQUIRE(s1.stencil.size() == 2);
    REQUIRE(s1.stencil[0].first == -1);
    REQUIRE(s1.stencil[0].second == Catch::Approx(-2.0));  // -1/(2h)
    REQUIRE(s1.stencil[1].first == 1);
    REQUIRE(s1.stencil[1].second == Catch::Approx(2.0));

    // coefficients sum to zero for every positive order
    for (int order = 1; order <= 4; ++order) {
        auto s = central_difference_scheme(order, 0.01);
        double total = 0.0;
        for (const auto& [off, coeff] : s.stencil) total += coeff;
        REQUIRE(std::abs(total) < 1e-6 / std::pow(0.02, order));
    }

    // exact on degree <= order + 1: second derivative of x^3 at 1 is 6
    auto s2 = central_difference_scheme(2, 0.5);
    double d2 = apply_scheme(s2, 1.0, [](double x) { return x * x * x; });
    REQUIRE(d2 == Catch::Approx(6.0).margin(1e-9));

    REQUIRE_THROWS_AS(central_difference_scheme(-1, 0.1), input_error);
    REQUIRE_THROWS_AS(central_difference_scheme(1, 0.0), input_error);
}

TEST_CASE("first-derivative stencil converges at second order") {
    auto f = [](double x) { return std::pow(x, 5); };
    const double exact = 5.0;
    double e1 = std::abs(apply_scheme(central_difference_scheme(1, 1e-2), 1.0, f) - exact);
    double e2 = std::abs(apply_scheme(central_difference_scheme(1, 5e-3), 1.0, f) - exact);
    REQUIRE(e1 / e2 == Catch::Approx(4.0).epsilon(0.05));
}

TEST_CASE("difference jet hits exact derivatives where its stencils are exact") {
    // An order-j stencil is exact on degree <= j+1, so on a quintic only the
    // value and the top order of an order-4 jet are rounding-exact.
    auto P = univariate({{rational(1, 4), 5}, {rational(-1), 2}});
    auto exact = jet_to_double(jet_of_polymap(P, {rational(1)}, 4));
    auto approx = fd_jet(polymap_to_double(P), {1.0}, 4);
    REQUIRE(approx.derivs[0].data[0] ==
            Catch::Approx(exact.derivs[0].data[0]).margin(1e-9));
    REQUIRE(approx.derivs[4].data[0] ==
            Catch::Approx(exact.derivs[4].data[0]).margin(1e-5));

    // On a quadratic every order of the jet is exact up to rounding.
    auto Q = univariate({{rational(1), 2}, {rational(-1), 1}});
    auto qe = jet_to_double(jet_of_polymap(Q, {rational(3, 2)}, 4));
    auto qa = fd_jet(polymap_to_double(Q), {1.5}, 4);
    for (int j = 0; j <= 4; ++j)
        REQUIRE(qa.derivs[static_cast<size_t>(j)].data[0] ==
                Catch::Approx(qe.derivs[static_cast<size_t>(j)].data[0]).margin(1e-5));

    REQUIRE_THROWS_AS(fd_jet(polymap_to_double(P), {1.0}, 5), input_error);
    REQUIRE_THROWS_AS(fd_jet(polymap_to_double(P), {1.0, 2.0}, 2), input_error);
}

TEST_CASE("symbolic composition of polynomial maps") {
    auto f = univariate({{rational(1), 2}});
    auto g = univariate({{rational(1), 3}});
    auto fg = symbolic_compose(f, g);
    REQUIRE(fg.in_dim == 1);
    REQUIRE(fg.out_dim == 1);
    REQUIRE(fg.components[0].size() == 1);
    REQUIRE(fg.components[0][0].coeff == rational(1));
    REQUIRE(fg.components[0][0].exponents == std::vector<int>{6});

    // f(u,v) = u v composed with g(x,y) = (x + y, x y)
    PolyMap<rational> prod;
    prod.in_dim = 2;
    prod.out_dim = 1;
    prod.components = {{{rational(1), {1, 1}}}};
    PolyMap<rational> pair;
    pair.in_dim = 2;
    pair.out_dim = 2;
    pair.components = {{{rational(1), {1, 0}}, {rational(1), {0, 1}}},
                       {{rational(1), {1, 1}}}};
    auto comp = symbolic_compose(prod, pair);
    // (x + y) x y = x^2 y + x y^2
    REQUIRE(comp.components[0].size() == 2);
    for (const auto& mono : comp.components[0]) {
        REQUIRE(mono.coeff == rational(1));
        bool xxy = mono.exponents == std::vector<int>{2, 1};
        bool xyy = mono.exponents == std::vector<int>{1, 2};
        REQUIRE((xxy || xyy));
    }

    REQUIRE_THROWS_AS(symbolic_compose(prod, f), input_error);
}

TEST_CASE("series inversion of a shifted cubic") {
    auto g = series_inverse_univariate({rational(0), rational(1), rational(0), rational(1)}, 5);
    REQUIRE(g == std::vector<rational>{rational(0), rational(1), rational(0), rational(-1),
                                       rational(0), rational(3)});
    REQUIRE_THROWS_AS(series_inverse_univariate({rational(1), rational(1)}, 3), input_error);
    REQUIRE_THROWS_AS(series_inverse_univariate({rational(0), rational(0), rational(1)}, 3),
                      domain_error);
    REQUIRE_THROWS_AS(series_inverse_univariate({rational(0), rational(1)}, -1), input_error);

    // compose back: phi(g(y)) = y through the requested order
    std::vector<rational> phi{rational(0), rational(1), rational(0), rational(1)};
    auto composed = series_compose(phi, g, 5);
    REQUIRE(composed[0] == rational(0));
    REQUIRE(composed[1] == rational(1));
    for (int k = 2; k <= 5; ++k) REQUIRE(composed[static_cast<size_t>(k)] == rational(0));
}

TEST_CASE("literal partition sum agrees with the composition engine") {
    auto rng = make_rng(59);
    for (int t = 0; t < 8; ++t) {
        int n = 1 + t % 2, mid = 1 + (t / 2) % 2;
        auto phi = random_polymap(rng, n, mid, 2);
        auto f = random_polymap(rng, mid, 1, 2);
        std::vector<rational> x;
        for (int i = 0; i < n; ++i) x.push_back(random_rational(rng, 2, 2));
        int m = 1 + t % 3;
        auto phi_jet = jet_of_polymap(phi, x, m);
        auto f_jet = jet_of_polymap(f, jet_value(phi_jet), m);
        auto fast = compose_jet(f_jet, phi_jet, m);
        auto slow = brute_partition_sum(f_jet, phi_jet, m);
        for (int j = 0; j <= m; ++j)
            REQUIRE(fast.derivs[static_cast<size_t>(j)].data ==
                    slow.derivs[static_cast<size_t>(j)].data);
    }
}

TEST_CASE("random map generator is deterministic in the seed") {
    auto r1 = make_rng(7);
    auto r2 = make_rng(7);
    auto a = random_polymap(r1, 2, 2, 3);
    auto b = random_polymap(r2, 2, 2, 3);
    REQUIRE(a.in_dim == 2);
    REQUIRE(a.out_dim == 2);
    REQUIRE(a.components.size() == b.components.size());
    for (size_t i = 0; i < a.components.size(); ++i) {
        REQUIRE(a.components[i].size() == b.components[i].size());
        for (size_t j = 0; j < a.components[i].size(); ++j) {
            REQUIRE(a.components[i][j].coeff == b.components[i][j].coeff);
            REQUIRE(a.components[i][j].exponents == b.components[i][j].exponents);
            int total = 0;
            for (int e : a.components[i][j].exponents) total += e;
            REQUIRE(total <= 3);
        }
    }
}
