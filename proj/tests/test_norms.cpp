#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <vector>

#include "faacalc/norms.hpp"
#include "faacalc/random.hpp"

using namespace faacalc;

namespace {

SampleSet two_point(double dist) {
    SampleSet s;
    s.points = {{0.0}, {dist}};
    s.weights = {1.0, 1.0};
    return s;
}

SampleSet unit_mass_four() {
    SampleSet s;
    s.points = {{0.0}, {0.25}, {0.5}, {0.75}};
    s.weights = {0.25, 0.25, 0.25, 0.25};
    return s;
}

SampleSet line_grid(int n) {
    SampleSet s;
    for (int i = 0; i < n; ++i) {
        s.points.push_back({(i + 0.5) / n});
        s.weights.push_back(1.0 / n);
    }
    return s;
}

} // namespace

TEST_CASE("deterministic pairwise reduction") {
    REQUIRE(pairwise_sum({}) == 0.0);
    REQUIRE(pairwise_sum({5.0}) == 5.0);
    REQUIRE(pairwise_sum({1.0, 2.0, 3.0}) == 6.0);
    auto rng = make_rng(71);
    std::vector<double> terms;
    double plain = 0.0;
    for (int i = 0; i < 37; ++i) {
        terms.push_back(random_uniform(rng, -1.0, 1.0));
        plain += terms.back();
    }
    REQUIRE(pairwise_sum(terms) == Catch::Approx(plain).margin(1e-12));
}

TEST_CASE("unit sphere areas") {
    REQUIRE(sphere_area(1) == Catch::Approx(2.0));
    REQUIRE(sphere_area(2) == Catch::Approx(2.0 * std::numbers::pi));
    REQUIRE(sphere_area(3) == Catch::Approx(4.0 * std::numbers::pi));
    REQUIRE_THROWS_AS(sphere_area(0), input_error);
}

TEST_CASE("discrete integral norms on frozen data") {
    auto s = two_point(1.0);
    s.weights = {0.5, 0.5};
    std::vector<double> v{3.0, 4.0};
    REQUIRE(discrete_lp_norm(v, s, 1.0) == Catch::Approx(3.5));
    REQUIRE(discrete_lp_norm(v, s, 2.0) == Catch::Approx(std::sqrt(12.5)));
    REQUIRE(discrete_lp_norm(v, s, kInfinity) == 4.0);

    auto pair = two_point(1.0);
    std::vector<double> step{0.0, 1.0};
    REQUIRE(discrete_slobodeckij(step, pair, 0.5, 2.0) ==
            Catch::Approx(std::sqrt(2.0)).margin(1e-12));
    REQUIRE(discrete_slobodeckij(step, pair, 0.5, kInfinity) == Catch::Approx(1.0));

    auto close = two_point(0.5);
    REQUIRE(holder_seminorm(step, close, 1.0) == Catch::Approx(2.0));
    REQUIRE(holder_seminorm(step, close, 0.5) == Catch::Approx(std::sqrt(2.0)));
}

TEST_CASE("sample set validation") {
    SampleSet bad;
    bad.points = {{0.0}, {1.0}};
    bad.weights = {1.0};
    REQUIRE_THROWS_AS(validate_sample_set(bad), input_error);
    bad.weights = {1.0, 0.0};
    REQUIRE_THROWS_AS(validate_sample_set(bad), input_error);
    bad.weights = {1.0, -1.0};
    REQUIRE_THROWS_AS(validate_sample_set(bad), input_error);
    SampleSet empty;
    REQUIRE_THROWS_AS(validate_sample_set(empty), input_error);

    SampleSet coincident;
    coincident.points = {{0.0}, {0.0}};
    coincident.weights = {1.0, 1.0};
    std::vector<double> v{0.0, 1.0};
    REQUIRE_THROWS_AS(discrete_slobodeckij(v, coincident, 0.5, 2.0), input_error);
    REQUIRE_THROWS_AS(holder_seminorm(v, coincident, 0.5), input_error);

    auto s = two_point(1.0);
    REQUIRE_THROWS_AS(discrete_lp_norm(v, s, 0.5), input_error);
    REQUIRE_THROWS_AS(discrete_slobodeckij(v, s, 1.5, 2.0), input_error);
    REQUIRE_THROWS_AS(holder_seminorm(v, s, 0.0), input_error);
}

TEST_CASE("pointwise bound closed forms") {
    REQUIRE(pointwise_pullback_bound({3.0, 5.0}, {2.0, 7.0}, 1, 1) == Catch::Approx(41.0));
    // isometric first derivative, no curvature: only the top term survives
    REQUIRE(pointwise_pullback_bound({3.0, 5.0, 7.0}, {1.0, 0.0, 0.0, 0.0}, 2, 0) ==
            Catch::Approx(7.0));
    // d = 0 reduces to the plain chain-rule polynomial
    std::vector<double> u{2.0, 3.0, 5.0};
    std::vector<double> ph{0.5, 4.0, 1.5};
    REQUIRE(pointwise_pullback_bound(u, ph, 2, 0) ==
            Catch::Approx(bell_full<double>(2, {u[1], u[2]}, ph)));
    REQUIRE_THROWS_AS(pointwise_pullback_bound({1.0}, {1.0, 1.0}, 1, 0), input_error);
    REQUIRE_THROWS_AS(pointwise_pullback_bound({1.0, -1.0}, {1.0, 1.0}, 1, 0), input_error);
}

TEST_CASE("inverse-map bound closed form") {
    InverseHolderData data;
    data.inv_norm_c0theta = 2.0;
    data.grad_inv_norm_c0 = 3.0;
    data.inv_lipschitz = 4.0;
    data.phi_norm_c0theta = {0.0, 5.0};
    data.phi_semi_c0theta = {0.0, 6.0};
    data.inv_norm_c0theta_orders = {7.0};
    data.inv_norm_c0_orders = {8.0};
    // 2 * (3 * 5 * 7^2) + 3 * sqrt(4) * (6 * 8^2) = 1470 + 2304
    REQUIRE(inverse_holder_bound(2, 0.5, data) == Catch::Approx(3774.0));

    REQUIRE_THROWS_AS(inverse_holder_bound(1, 0.5, data), input_error);
    REQUIRE_THROWS_AS(inverse_holder_bound(2, 1.5, data), input_error);
    auto thin = data;
    thin.inv_norm_c0theta_orders.clear();
    REQUIRE_THROWS_AS(inverse_holder_bound(2, 0.5, thin), input_error);
    auto negative = data;
    negative.phi_semi_c0theta[1] = -1.0;
    REQUIRE_THROWS_AS(inverse_holder_bound(2, 0.5, negative), input_error);
}

TEST_CASE("gauge norm of a power integrand matches the direct norm") {
    auto rng = make_rng(83);
    auto s = unit_mass_four();
    for (double p : {1.0, 1.5, 2.0, 3.0}) {
        auto A = make_lp_integrand(p);
        for (int t = 0; t < 5; ++t) {
            std::vector<double> v;
            for (int i = 0; i < 4; ++i) v.push_back(random_uniform(rng, -3.0, 3.0));
            double direct = discrete_lp_norm(v, s, p);
            double gauge = luxemburg_norm(A, v, s);
            REQUIRE(gauge == Catch::Approx(direct).margin(1e-10).epsilon(1e-10));
        }
    }
    std::vector<double> v{0.5, -2.0, 1.0, 3.0};
    REQUIRE(luxemburg_norm(make_lp_integrand(kInfinity), v, s) ==
            Catch::Approx(3.0).epsilon(1e-9));
    std::vector<double> zeros(4, 0.0);
    REQUIRE(luxemburg_norm(make_lp_integrand(2.0), zeros, s) == 0.0);
}

TEST_CASE("gauge norm of the exponential integrand on the constant one") {
    auto s = unit_mass_four();
    std::vector<double> ones{1.0, 1.0, 1.0, 1.0};
    const double expected = 1.0 / std::log(2.0);
    REQUIRE(luxemburg_norm(make_exp_integrand(), ones, s) ==
            Catch::Approx(expected).epsilon(1e-9));
}

TEST_CASE("gauge norm axioms hold discretely") {
    auto rng = make_rng(97);
    auto s = unit_mass_four();
    auto A = make_double_phase_integrand(2.0, 3.0);
    for (int t = 0; t < 10; ++t) {
        std::vector<double> u, v;
        for (int i = 0; i < 4; ++i) {
            u.push_back(random_uniform(rng, -2.0, 2.0));
            v.push_back(random_uniform(rng, -2.0, 2.0));
        }
        double nu = luxemburg_norm(A, u, s);
        double nv = luxemburg_norm(A, v, s);
        std::vector<double> sum;
        for (int i = 0; i < 4; ++i) sum.push_back(u[i] + v[i]);
        REQUIRE(luxemburg_norm(A, sum, s) <= nu + nv + 1e-9 * std::max(1.0, nu + nv));

        const double c = random_uniform(rng, 0.1, 4.0);
        std::vector<double> scaled;
        for (int i = 0; i < 4; ++i) scaled.push_back(c * u[i]);
        REQUIRE(luxemburg_norm(A, scaled, s) ==
                Catch::Approx(c * nu).epsilon(1e-9).margin(1e-12));

        std::vector<double> dominated;
        for (int i = 0; i < 4; ++i) dominated.push_back(0.5 * u[i]);
        REQUIRE(luxemburg_norm(A, dominated, s) <= nu * (1.0 + 1e-9));
    }
}

TEST_CASE("transport isometry of the gauge norm") {
    // phi(x) = x^3 / 8 + x on [0,1], increasing, Jacobian 3x^2/8 + 1
    PolyMap<double> phi;
    phi.in_dim = 1;
    phi.out_dim = 1;
    phi.components = {{{0.125, {3}}, {1.0, {1}}}};
    auto s = line_grid(12);
    auto rng = make_rng(103);
    std::vector<double> values;
    for (int i = 0; i < 12; ++i) values.push_back(random_uniform(rng, -2.0, 2.0));
    auto A = make_double_phase_integrand(2.0, 3.5);
    double via_pullback = luxemburg_norm(integrand_pullback(A, phi, s), values, s);
    double via_transport = luxemburg_norm(A, values, transported_samples(phi, s));
    REQUIRE(via_pullback == Catch::Approx(via_transport).epsilon(1e-9).margin(1e-12));
}

TEST_CASE("pair-gauge seminorm of a power integrand matches the double sum") {
    auto s = line_grid(9);
    auto rng = make_rng(107);
    std::vector<double> values;
    for (int i = 0; i < 9; ++i) values.push_back(random_uniform(rng, -1.0, 1.0));
    for (double p : {1.0, 2.0, 2.5}) {
        double direct = discrete_slobodeckij(values, s, 0.4, p);
        double gauge = orlicz_slobodeckij(values, s, 0.4, make_lp_two_point(p));
        REQUIRE(gauge == Catch::Approx(direct).epsilon(1e-9).margin(1e-12));
    }
    std::vector<double> flat(9, 2.5);
    REQUIRE(orlicz_slobodeckij(flat, s, 0.4, make_lp_two_point(2.0)) == 0.0);
}

TEST_CASE("grid dual of the square integrand") {
    auto A = make_lp_integrand(2.0);
    auto CA = integrand_dual(A, make_xi_grid(4.0));
    for (double zeta : {0.5, 1.0, 2.0, 3.0})
        REQUIRE(CA.evaluate({0.0}, zeta) == Catch::Approx(zeta * zeta / 4.0).margin(1e-5));
    REQUIRE(CA.evaluate({0.0}, 0.0) == 0.0);
    REQUIRE_THROWS_AS(integrand_dual(A, {}), input_error);
}

TEST_CASE("integrand validation accepts convex shapes and rejects others") {
    auto s = unit_mass_four();
    auto grid = make_xi_grid(4.0, 257);
    REQUIRE_NOTHROW(check_integrand(make_exp_integrand(), s, grid));
    REQUIRE_NOTHROW(check_integrand(make_lp_integrand(1.5), s, grid));
    REQUIRE_NOTHROW(check_integrand(make_double_phase_integrand(2.0, 3.0), s, grid));

    OrliczIntegrand concave;
    concave.name = "sqrt";
    concave.evaluate = [](const std::vector<double>&, double xi) { return std::sqrt(xi); };
    REQUIRE_THROWS_AS(check_integrand(concave, s, grid), input_error);

    OrliczIntegrand offset;
    offset.name = "affine";
    offset.evaluate = [](const std::vector<double>&, double xi) { return xi + 1.0; };
    REQUIRE_THROWS_AS(check_integrand(offset, s, grid), input_error);

    OrliczIntegrand decreasing;
    decreasing.name = "drop";
    decreasing.claimed_convex = false;
    decreasing.evaluate = [](const std::vector<double>&, double xi) { return -xi; };
    REQUIRE_THROWS_AS(check_integrand(decreasing, s, grid), input_error);
}

TEST_CASE("transform report on an affine change of variables") {
    PolyMap<double> u;
    u.in_dim = 1;
    u.out_dim = 1;
    u.components = {{{1.0, {0}}, {0.5, {1}}, {-0.25, {2}}, {1.0 / 3.0, {3}}}};
    PolyMap<double> phi;
    phi.in_dim = 1;
    phi.out_dim = 1;
    phi.components = {{{-0.25, {0}}, {1.5, {1}}}};
    auto s = line_grid(8);
    SeminormParams params{2.0, 0.4, 0.8, 1};
    for (int d : {0, 1}) {
        auto report = seminorm_transform_report(u, phi, s, params, d, 1);
        REQUIRE(report.rows.size() == 3);
        for (const auto& row : report.rows) {
            REQUIRE(std::isfinite(row.ratio));
            REQUIRE(row.ratio <= 1.0 + 1e-9);
            REQUIRE_FALSE(row.flagged);
        }
    }

    SeminormParams bad = params;
    bad.theta = 0.9;  // >= sigma with finite p
    REQUIRE_THROWS_WITH(seminorm_transform_report(u, phi, s, bad, 0, 1),
                        Catch::Matchers::ContainsSubstring("theta < sigma"));
    SeminormParams wrong_dim = params;
    wrong_dim.N = 2;
    REQUIRE_THROWS_AS(seminorm_transform_report(u, phi, s, wrong_dim, 0, 1), input_error);
}
