#ifndef FAACALC_ACCEPTANCE_HPP
#define FAACALC_ACCEPTANCE_HPP

// End-to-end acceptance checks. Each criterion exercises one pillar of the
// library against an oracle that is computed here, independently of the
// implementation under test (recurrences, symbolic algebra, finite
// differences, or hand-rolled contractions). The same runner backs the
// standalone test binary and the `faacalc verify` subcommand.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "faacalc/bell.hpp"
#include "faacalc/calculus.hpp"
#include "faacalc/norms.hpp"
#include "faacalc/oracle.hpp"
#include "faacalc/parallel.hpp"
#include "faacalc/partitions.hpp"
#include "faacalc/random.hpp"
#include "faacalc/scalar.hpp"
#include "faacalc/spectral.hpp"
#include "faacalc/tensor.hpp"

namespace faacalc::acceptance {

struct CriterionResult {
    int number = 0;
    std::string name;
    bool passed = false;
    std::string detail;  // empty on success, first failure otherwise
    double seconds = 0.0;
};

namespace detail {

// Collects the first failure; later ones are dropped to keep output short.
class Check {
public:
    bool ok() const { return ok_; }
    const std::string& detail() const { return detail_; }
    void require(bool condition, const std::string& message) {
        if (!condition && ok_) {
            ok_ = false;
            detail_ = message;
        }
    }

private:
    bool ok_ = true;
    std::string detail_;
};

// Stirling numbers of the second kind via the standard recurrence.
inline std::vector<std::vector<bigint>> stirling_table(int max_m) {
    std::vector<std::vector<bigint>> S(static_cast<size_t>(max_m) + 1);
    for (int m = 0; m <= max_m; ++m) {
        S[static_cast<size_t>(m)].assign(static_cast<size_t>(m) + 1, 0);
        S[static_cast<size_t>(m)][0] = (m == 0) ? 1 : 0;
        for (int k = 1; k <= m; ++k)
            S[static_cast<size_t>(m)][static_cast<size_t>(k)] =
                ((k <= m - 1) ? bigint(k) * S[static_cast<size_t>(m - 1)][static_cast<size_t>(k)]
                              : bigint(0)) +
                S[static_cast<size_t>(m - 1)][static_cast<size_t>(k - 1)];
    }
    return S;
}

inline std::vector<bigint> bell_table(int max_m) {
    auto S = stirling_table(max_m);
    std::vector<bigint> B(static_cast<size_t>(max_m) + 1, 0);
    for (int m = 0; m <= max_m; ++m)
        for (int k = 0; k <= m; ++k) B[static_cast<size_t>(m)] += S[static_cast<size_t>(m)][static_cast<size_t>(k)];
    return B;
}

// C[l][m]: number of level-l nestings of an m element set, by conditioning
// on the block containing the first element. C[0][m] = 1 (the bare set);
// C[l][m] = sum_j binom(m-1, j) C[l-1][j+1] C[l][m-1-j].
inline std::vector<std::vector<bigint>> nested_count_table(int max_l, int max_m) {
    std::vector<std::vector<bigint>> C(static_cast<size_t>(max_l) + 1,
                                       std::vector<bigint>(static_cast<size_t>(max_m) + 1, 1));
    for (int l = 1; l <= max_l; ++l) {
        C[static_cast<size_t>(l)][0] = 1;
        for (int m = 1; m <= max_m; ++m) {
            bigint total = 0;
            for (int j = 0; j <= m - 1; ++j)
                total += binomial(static_cast<unsigned>(m - 1), static_cast<unsigned>(j)) *
                         C[static_cast<size_t>(l - 1)][static_cast<size_t>(j + 1)] *
                         C[static_cast<size_t>(l)][static_cast<size_t>(m - 1 - j)];
            C[static_cast<size_t>(l)][static_cast<size_t>(m)] = total;
        }
    }
    return C;
}

template <Scalar S>
bool tensors_equal(const Tensor<S>& a, const Tensor<S>& b) {
    return a.shape_equals(b) && a.data == b.data;
}

template <Scalar S>
bool jets_equal(const Jet<S>& a, const Jet<S>& b) {
    if (a.order != b.order || a.derivs.size() != b.derivs.size()) return false;
    for (size_t i = 0; i < a.derivs.size(); ++i)
        if (!tensors_equal(a.derivs[i], b.derivs[i])) return false;
    return true;
}

inline std::vector<rational> random_point(std::mt19937_64& rng, int dim, int range = 2,
                                          int den = 2) {
    std::vector<rational> x;
    x.reserve(static_cast<size_t>(dim));
    for (int i = 0; i < dim; ++i) x.push_back(random_rational(rng, range, den));
    return x;
}

inline std::vector<double> to_double_point(const std::vector<rational>& x) {
    std::vector<double> out;
    out.reserve(x.size());
    for (const auto& v : x) out.push_back(to_double(v));
    return out;
}

inline int int_pow(int base, int exp) {
    int out = 1;
    for (int i = 0; i < exp; ++i) out *= base;
    return out;
}

// Uniform midpoint grid on [0,1]^N, n points per axis, weights 1/n^N.
inline SampleSet grid_samples(int N, int n_per_axis) {
    SampleSet s;
    const int total = int_pow(n_per_axis, N);
    const double w = 1.0 / total;
    for (int flat = 0; flat < total; ++flat) {
        std::vector<double> pt(static_cast<size_t>(N));
        int rest = flat;
        for (int a = 0; a < N; ++a) {
            pt[static_cast<size_t>(a)] = (rest % n_per_axis + 0.5) / n_per_axis;
            rest /= n_per_axis;
        }
        s.points.push_back(std::move(pt));
        s.weights.push_back(w);
    }
    return s;
}

} // namespace detail

// 1. Partition streams against counting recurrences.
inline CriterionResult criterion_counts() {
    detail::Check c;
    auto S = detail::stirling_table(8);
    auto B = detail::bell_table(8);
    for (int m = 0; m <= 8 && c.ok(); ++m) {
        for (int k = 0; k <= m; ++k) {
            bigint count = 0;
            SetPartitionEnumerator en(m, k);
            while (en.next()) ++count;
            std::ostringstream msg;
            msg << "partition count mismatch at m=" << m << " k=" << k;
            c.require(count == S[static_cast<size_t>(m)][static_cast<size_t>(k)], msg.str());
        }
        bigint all = 0;
        SetPartitionEnumerator en(m);
        while (en.next()) ++all;
        std::ostringstream msg;
        msg << "unrestricted partition count mismatch at m=" << m;
        c.require(all == B[static_cast<size_t>(m)], msg.str());
    }
    for (int m = 0; m <= 8 && c.ok(); ++m)
        for (int d = 0; d <= 4; ++d) {
            bigint count = 0;
            OrderedPartitionEnumerator en(m, d);
            while (en.next()) ++count;
            std::ostringstream msg;
            msg << "ordered partition count mismatch at m=" << m << " d=" << d;
            c.require(count == ipow(bigint(d + 1), static_cast<unsigned>(m)), msg.str());
        }
    auto C = detail::nested_count_table(3, 6);
    for (int m = 1; m <= 6 && c.ok(); ++m)
        for (int l = 0; l <= 3; ++l) {
            bigint count = 0;
            NestedPartitionEnumerator en(m, l);
            while (en.next()) ++count;
            std::ostringstream msg;
            msg << "nested partition count mismatch at m=" << m << " l=" << l;
            c.require(count == C[static_cast<size_t>(l)][static_cast<size_t>(m)], msg.str());
        }
    return {1, "partition counts vs recurrences", c.ok(), c.detail(), 0.0};
}

// 2. Coefficient identities and the condensed evaluation route.
inline CriterionResult criterion_coefficients() {
    detail::Check c;
    auto S = detail::stirling_table(8);
    for (int m = 1; m <= 8 && c.ok(); ++m)
        for (int k = 0; k <= m; ++k) {
            bigint total = 0;
            for (const auto& idx : scherk_indices(m, k)) total += scherk_coefficient(idx);
            std::ostringstream msg;
            msg << "coefficient sum mismatch at m=" << m << " k=" << k;
            c.require(total == S[static_cast<size_t>(m)][static_cast<size_t>(k)], msg.str());
            std::vector<rational> ones(static_cast<size_t>(m), rational(1));
            std::ostringstream msg2;
            msg2 << "all-ones polynomial value mismatch at m=" << m << " k=" << k;
            c.require(bell_partial<rational>(m, k, ones) ==
                          rational(S[static_cast<size_t>(m)][static_cast<size_t>(k)]),
                      msg2.str());
        }
    auto rng = make_rng(0xA2C2);
    for (int m = 1; m <= 6 && c.ok(); ++m)
        for (int d = 0; d <= 3 && c.ok(); ++d)
            for (int k = 1; k <= m && c.ok(); ++k) {
                const auto hats = hat_condense(k, m, d);
                for (int t = 0; t < 100 && c.ok(); ++t) {
                    std::vector<rational> xs = detail::random_point(rng, m + 1, 6, 4);
                    const rational via_hats = hat_evaluate<rational>(hats, xs);
                    const rational direct = generalized_bell<rational>(k, m, d, xs);
                    std::ostringstream msg;
                    msg << "condensed evaluation mismatch at k=" << k << " m=" << m << " d=" << d
                        << " trial " << t;
                    c.require(via_hats == direct, msg.str());
                }
            }
    return {2, "coefficient identities and condensed evaluation", c.ok(), c.detail(), 0.0};
}

// 3. Univariate chain rule: three routes, exact agreement.
inline CriterionResult criterion_univariate() {
    detail::Check c;
    auto rng = make_rng(0xA2C3);
    std::uniform_int_distribution<int> deg_dist(1, 3);
    for (int t = 0; t < 200 && c.ok(); ++t) {
        const int m = 1 + t % 7;
        PolyMap<rational> f = random_polymap(rng, 1, 1, deg_dist(rng));
        PolyMap<rational> phi = random_polymap(rng, 1, 1, deg_dist(rng));
        std::vector<rational> x0 = detail::random_point(rng, 1);
        Jet<rational> phi_jet = jet_of_polymap(phi, x0, m);
        Jet<rational> f_jet = jet_of_polymap(f, jet_value(phi_jet), m);
        Jet<rational> composed = compose_jet(f_jet, phi_jet, m);
        std::vector<rational> xs, ys;
        for (int j = 1; j <= m; ++j) {
            xs.push_back(phi_jet.derivs[static_cast<size_t>(j)].data[0]);
            ys.push_back(f_jet.derivs[static_cast<size_t>(j)].data[0]);
        }
        for (int mm = 1; mm <= m && c.ok(); ++mm) {
            const rational via_jet = composed.derivs[static_cast<size_t>(mm)].data[0];
            const rational via_bell = bell_full<rational>(mm, ys, xs);
            const rational via_direct = faa_di_bruno<rational>(mm, ys, xs);
            std::ostringstream msg;
            msg << "univariate route mismatch at trial " << t << " order " << mm;
            c.require(via_jet == via_bell && via_bell == via_direct, msg.str());
        }
    }
    return {3, "univariate chain rule cross-check", c.ok(), c.detail(), 0.0};
}

// 4. Jet composition vs symbolic composition and finite differences.
inline CriterionResult criterion_composition() {
    detail::Check c;
    auto rng = make_rng(0xA2C4);
    std::uniform_int_distribution<int> dim_dist(1, 3), small_dim(1, 2), deg_dist(1, 3),
        small_deg(1, 2);
    for (int t = 0; t < 100 && c.ok(); ++t) {
        const int m = 1 + t % 4;
        const int N = (m == 4) ? small_dim(rng) : dim_dist(rng);
        const int M = (m == 4) ? small_dim(rng) : dim_dist(rng);
        const int Q = small_dim(rng);
        const int dphi = (m == 4) ? small_deg(rng) : deg_dist(rng);
        const int df = (m == 4) ? small_deg(rng) : deg_dist(rng);
        PolyMap<rational> phi = random_polymap(rng, N, M, dphi);
        PolyMap<rational> f = random_polymap(rng, M, Q, df);
        std::vector<rational> x0 = detail::random_point(rng, N);
        PolyMap<rational> comp = symbolic_compose(f, phi);
        Jet<rational> direct = jet_of_polymap(comp, x0, m);
        Jet<rational> phi_jet = jet_of_polymap(phi, x0, m);
        Jet<rational> f_jet = jet_of_polymap(f, jet_value(phi_jet), m);
        Jet<rational> via_jets = compose_jet(f_jet, phi_jet, m);
        std::ostringstream msg;
        msg << "jet composition differs from symbolic composition at trial " << t;
        c.require(detail::jets_equal(direct, via_jets), msg.str());
    }
    // Finite differences: an order-mm central stencil differentiates
    // polynomials of degree <= mm+1 exactly, so each derivative order is
    // compared only when the composite degree allows it (the top order always
    // qualifies since df*dphi <= m+1 for every pair below). Coefficients are
    // shrunk so stencil rounding stays well under the tolerance floor.
    auto shrink = [](PolyMap<rational>& P) {
        for (auto& comp : P.components)
            for (auto& mono : comp) mono.coeff = mono.coeff / rational(8);
    };
    for (int m = 1; m <= 4 && c.ok(); ++m) {
        const std::vector<std::pair<int, int>> degree_pairs =
            (m == 1)   ? std::vector<std::pair<int, int>>{{2, 1}, {1, 2}, {1, 1}}
            : (m == 2) ? std::vector<std::pair<int, int>>{{3, 1}, {1, 3}, {1, 2}}
            : (m == 3) ? std::vector<std::pair<int, int>>{{2, 2}, {4, 1}, {2, 1}}
                       : std::vector<std::pair<int, int>>{{2, 2}, {5, 1}, {2, 1}};
        for (int t = 0; t < 10 && c.ok(); ++t) {
            const auto [df, dphi] = degree_pairs[static_cast<size_t>(t) % degree_pairs.size()];
            const int N = small_dim(rng), M = small_dim(rng), Q = small_dim(rng);
            PolyMap<rational> phi = random_polymap(rng, N, M, dphi);
            PolyMap<rational> f = random_polymap(rng, M, Q, df);
            shrink(phi);
            shrink(f);
            std::vector<rational> x0 = detail::random_point(rng, N);
            PolyMap<rational> comp = symbolic_compose(f, phi);
            Jet<double> exact = jet_to_double(jet_of_polymap(comp, x0, m));
            Jet<double> approx =
                fd_jet(polymap_to_double(comp), detail::to_double_point(x0), m);
            for (int mm = 0; mm <= m && c.ok(); ++mm) {
                if (mm > 0 && df * dphi > mm + 1) continue;
                const auto& a = exact.derivs[static_cast<size_t>(mm)];
                const auto& b = approx.derivs[static_cast<size_t>(mm)];
                for (size_t i = 0; i < a.data.size() && c.ok(); ++i) {
                    const double err = std::abs(a.data[i] - b.data[i]);
                    const double tol = 1e-5 * std::max(1.0, std::abs(a.data[i]));
                    std::ostringstream msg;
                    msg << "finite-difference mismatch at m=" << m << " trial " << t << " order "
                        << mm << " entry " << i << " (err=" << err << ")";
                    c.require(err <= tol, msg.str());
                }
            }
        }
    }
    return {4, "jet composition vs symbolic and finite-difference oracles", c.ok(), c.detail(),
            0.0};
}

// 5. Multicomposite chain rule: direct nested sum vs pairwise fold, and the
// scalar recursion on univariate chains.
inline CriterionResult criterion_chains() {
    detail::Check c;
    auto rng = make_rng(0xA2C5);
    std::uniform_int_distribution<int> dim_dist(1, 2), deg_dist(1, 2);
    for (int t = 0; t < 50 && c.ok(); ++t) {
        const int L = 2 + t % 3;
        const int m = 1 + t % 3;
        std::vector<int> dims(static_cast<size_t>(L) + 1);
        for (auto& d : dims) d = dim_dist(rng);
        std::vector<Jet<rational>> jets;
        std::vector<rational> x = detail::random_point(rng, dims[0]);
        for (int i = 0; i < L; ++i) {
            PolyMap<rational> map = random_polymap(rng, dims[static_cast<size_t>(i)],
                                                   dims[static_cast<size_t>(i) + 1], deg_dist(rng));
            jets.push_back(jet_of_polymap(map, x, m));
            x = evaluate_polymap(map, x);
        }
        Jet<rational> direct = compose_chain(jets, m);
        Jet<rational> folded = compose_chain_fold(jets, m);
        std::ostringstream msg;
        msg << "nested sum differs from pairwise fold at trial " << t;
        c.require(detail::jets_equal(direct, folded), msg.str());
    }
    for (int t = 0; t < 20 && c.ok(); ++t) {
        const int L = 2 + t % 3;
        const int m = 1 + t % 3;
        std::vector<Jet<rational>> jets;
        std::vector<rational> x = detail::random_point(rng, 1);
        std::vector<std::vector<rational>> tables;
        for (int i = 0; i < L; ++i) {
            PolyMap<rational> map = random_polymap(rng, 1, 1, deg_dist(rng));
            Jet<rational> jet = jet_of_polymap(map, x, m);
            std::vector<rational> table;
            for (int j = 1; j <= m; ++j) table.push_back(jet.derivs[static_cast<size_t>(j)].data[0]);
            tables.push_back(std::move(table));
            jets.push_back(std::move(jet));
            x = evaluate_polymap(map, x);
        }
        Jet<rational> chain = compose_chain(jets, m);
        for (int mm = 1; mm <= m && c.ok(); ++mm) {
            const rational scalar = higher_level_bell<rational>(L - 1, mm, std::nullopt, tables);
            std::ostringstream msg;
            msg << "scalar recursion differs from chain jet at trial " << t << " order " << mm;
            c.require(scalar == chain.derivs[static_cast<size_t>(mm)].data[0], msg.str());
        }
    }
    return {5, "multicomposite chain rule", c.ok(), c.detail(), 0.0};
}

// 6. Pullback: identity map, linear maps against a hand contraction, and
// functoriality across a composition.
inline CriterionResult criterion_pullback() {
    detail::Check c;
    auto rng = make_rng(0xA2C6);
    std::uniform_int_distribution<int> deg_dist(1, 2);
    for (int t = 0; t < 50 && c.ok(); ++t) {
        const int N = 1 + t % 3;
        const int d = (t / 3) % 3;
        const int m = 1 + (t / 9) % 3;
        const int fields = detail::int_pow(N, d);
        PolyMap<rational> u = random_polymap(rng, N, fields, deg_dist(rng));
        std::vector<rational> x0 = detail::random_point(rng, N);

        PolyMap<rational> id;
        id.in_dim = id.out_dim = N;
        for (int i = 0; i < N; ++i) {
            Monomial<rational> mono;
            mono.coeff = rational(1);
            mono.exponents.assign(static_cast<size_t>(N), 0);
            mono.exponents[static_cast<size_t>(i)] = 1;
            id.components.push_back({mono});
        }
        Jet<rational> id_jet = jet_of_polymap(id, x0, m + 1);
        Jet<rational> u_at_x0 = jet_of_polymap_field(u, x0, m, d);
        Jet<rational> pb_id = pullback_jet(u_at_x0, id_jet, m, d);
        std::ostringstream msg_id;
        msg_id << "identity pullback is not the identity at trial " << t;
        c.require(detail::jets_equal(pb_id, u_at_x0), msg_id.str());

        PolyMap<rational> lin = random_polymap(rng, N, N, 1);
        Jet<rational> lin_jet = jet_of_polymap(lin, x0, m + 1);
        Jet<rational> u_at_y = jet_of_polymap_field(u, jet_value(lin_jet), m, d);
        Jet<rational> pb_lin = pullback_jet(u_at_y, lin_jet, m, d);
        const auto& A = lin_jet.derivs[1];  // A.data[j*N + i] = d lin_j / d x_i
        for (int mm = 0; mm <= m && c.ok(); ++mm) {
            const int arity = mm + d;
            const auto& T = u_at_y.derivs[static_cast<size_t>(mm)];
            Tensor<rational> expected = make_tensor<rational>(arity, arity > 0 ? N : 0, {});
            const size_t total = expected.data.size();
            std::vector<int> oidx(static_cast<size_t>(arity)), iidx(static_cast<size_t>(arity));
            for (size_t o = 0; o < total; ++o) {
                faacalc::detail::decode_index(o, N, arity, oidx);
                rational acc(0);
                for (size_t q = 0; q < T.data.size(); ++q) {
                    faacalc::detail::decode_index(q, N, arity, iidx);
                    rational factor = T.data[q];
                    for (int s = 0; s < arity; ++s)
                        factor = factor * A.data[static_cast<size_t>(iidx[static_cast<size_t>(s)]) *
                                                     static_cast<size_t>(N) +
                                                 static_cast<size_t>(oidx[static_cast<size_t>(s)])];
                    acc = acc + factor;
                }
                expected.data[o] = acc;
            }
            std::ostringstream msg;
            msg << "linear pullback differs from the hand contraction at trial " << t
                << " order " << mm;
            c.require(detail::tensors_equal(pb_lin.derivs[static_cast<size_t>(mm)], expected),
                      msg.str());
        }

        PolyMap<rational> phi = random_polymap(rng, N, N, deg_dist(rng));
        PolyMap<rational> psi = random_polymap(rng, N, N, deg_dist(rng));
        std::vector<rational> y0 = evaluate_polymap(phi, x0);
        std::vector<rational> z0 = evaluate_polymap(psi, y0);
        Jet<rational> phi_jet = jet_of_polymap(phi, x0, m + 1);
        Jet<rational> psi_jet = jet_of_polymap(psi, y0, m + 1);
        Jet<rational> u_at_z = jet_of_polymap_field(u, z0, m, d);
        Jet<rational> comp_jet = jet_of_polymap(symbolic_compose(psi, phi), x0, m + 1);
        Jet<rational> pb_both = pullback_jet(u_at_z, comp_jet, m, d);
        Jet<rational> pb_staged = pullback_jet(pullback_jet(u_at_z, psi_jet, m, d), phi_jet, m, d);
        std::ostringstream msg_f;
        msg_f << "pullback functoriality fails at trial " << t;
        c.require(detail::jets_equal(pb_both, pb_staged), msg_f.str());
    }
    return {6, "tensor field pullback", c.ok(), c.detail(), 0.0};
}

// 7. Derivatives of inverse maps: two-sided identity and a series oracle.
inline CriterionResult criterion_inverse() {
    detail::Check c;
    auto rng = make_rng(0xA2C7);
    for (int t = 0; t < 30 && c.ok(); ++t) {
        const int N = 1 + t % 3;
        const int m = 1 + t % 4;
        PolyMap<rational> phi = random_polymap(rng, N, N, 3);
        for (int i = 0; i < N; ++i) {
            auto& comp = phi.components[static_cast<size_t>(i)];
            std::erase_if(comp, [](const Monomial<rational>& mono) {
                int total = 0;
                for (int e : mono.exponents) total += e;
                return total <= 1;
            });
            Monomial<rational> linear;
            linear.coeff = rational(1);
            linear.exponents.assign(static_cast<size_t>(N), 0);
            linear.exponents[static_cast<size_t>(i)] = 1;
            comp.push_back(std::move(linear));
        }
        std::vector<rational> x0(static_cast<size_t>(N), rational(0));
        Jet<rational> phi_jet = jet_of_polymap(phi, x0, m);
        Jet<rational> inv = inverse_jet(phi_jet, m);
        Jet<rational> expected = identity_jet(x0, m);
        std::ostringstream msg1, msg2;
        msg1 << "map composed with its inverse is not the identity at trial " << t;
        msg2 << "inverse composed with its map is not the identity at trial " << t;
        c.require(detail::jets_equal(compose_jet(phi_jet, inv, m), expected), msg1.str());
        c.require(detail::jets_equal(compose_jet(inv, phi_jet, m), expected), msg2.str());
    }
    if (c.ok()) {
        PolyMap<rational> cubic;
        cubic.in_dim = cubic.out_dim = 1;
        Monomial<rational> lin{rational(1), {1}}, cub{rational(1), {3}};
        cubic.components.push_back({lin, cub});
        Jet<rational> jet = jet_of_polymap(cubic, {rational(0)}, 5);
        Jet<rational> inv = inverse_jet(jet, 5);
        std::vector<rational> series = series_inverse_univariate({rational(0), rational(1),
                                                                  rational(0), rational(1),
                                                                  rational(0), rational(0)},
                                                                 5);
        for (int k = 0; k <= 5 && c.ok(); ++k) {
            const rational expected = series[static_cast<size_t>(k)] *
                                      rational(factorial(static_cast<unsigned>(k)));
            std::ostringstream msg;
            msg << "series inversion mismatch at order " << k;
            c.require(inv.derivs[static_cast<size_t>(k)].data[0] == expected, msg.str());
        }
        c.require(inv.derivs[3].data[0] == rational(-6), "third inverse derivative is not -6");
        c.require(inv.derivs[5].data[0] == rational(360), "fifth inverse derivative is not 360");
    }
    return {7, "inverse jet recursion", c.ok(), c.detail(), 0.0};
}

// 8. Pointwise bound: certified upper bounds dominate spectral lower
// estimates on random instances.
inline CriterionResult criterion_soundness() {
    detail::Check c;
    auto rng = make_rng(0xA2C8);
    std::uniform_int_distribution<int> deg_dist(1, 2);
    for (int t = 0; t < 500 && c.ok(); ++t) {
        const int N = 1 + t % 3;
        const int m = 1 + (t / 3) % 3;
        const int d = (t / 9) % 3;
        const int fields = detail::int_pow(N, d);
        PolyMap<double> u = polymap_to_double(random_polymap(rng, N, fields, deg_dist(rng)));
        PolyMap<double> phi = polymap_to_double(random_polymap(rng, N, N, deg_dist(rng)));
        std::vector<double> x = detail::to_double_point(detail::random_point(rng, N));
        MarginReport rep = check_pullback_inequality(u, phi, x, m, d);
        std::ostringstream msg;
        msg << "bound violated at trial " << t << " (N=" << N << " m=" << m << " d=" << d
            << " lhs=" << rep.lhs << " rhs=" << rep.rhs << ")";
        c.require(std::isfinite(rep.lhs) && std::isfinite(rep.rhs) && rep.margin >= 0.0,
                  msg.str());
    }
    return {8, "pointwise bound soundness", c.ok(), c.detail(), 0.0};
}

// 9. Orlicz machinery: gauge vs p-norms, a closed-form pair, duality, and
// the norm axioms.
inline CriterionResult criterion_orlicz() {
    detail::Check c;
    auto rng = make_rng(0xA2C9);
    std::uniform_real_distribution<double> coord(0.0, 1.0), weight(0.1, 1.0), value(-4.0, 4.0);
    for (int t = 0; t < 100 && c.ok(); ++t) {
        const double p = std::vector<double>{1.0, 1.5, 2.0, 3.0}[static_cast<size_t>(t) % 4];
        const size_t n = 5 + static_cast<size_t>(t) % 12;
        SampleSet s;
        std::vector<double> values;
        for (size_t i = 0; i < n; ++i) {
            s.points.push_back({coord(rng)});
            s.weights.push_back(weight(rng));
            values.push_back(value(rng));
        }
        const double gauge = luxemburg_norm(make_lp_integrand(p), values, s);
        const double direct = discrete_lp_norm(values, s, p);
        std::ostringstream msg;
        msg << "gauge differs from p-norm at trial " << t << " (p=" << p << ")";
        c.require(std::abs(gauge - direct) <= 1e-10 * std::max(1.0, direct), msg.str());
    }

    SampleSet unit;
    for (int i = 0; i < 4; ++i) {
        unit.points.push_back({0.1 + 0.25 * i});
        unit.weights.push_back(0.25);
    }
    std::vector<double> ones(4, 1.0);
    const OrliczIntegrand expo = make_exp_integrand();
    const double lux_exp = luxemburg_norm(expo, ones, unit);
    c.require(std::abs(lux_exp - 1.0 / std::log(2.0)) <= 1e-6,
              "exponential gauge of the unit function is off");
    const std::vector<double> grid = make_xi_grid(8.0);
    const OrliczIntegrand dual = integrand_dual(expo, grid);
    const double lux_dual = luxemburg_norm(dual, ones, unit);
    c.require(std::abs(lux_dual - 1.0 / std::exp(1.0)) <= 1e-6,
              "dual gauge of the unit function is off");
    const auto [lhs, rhs] = orlicz_holder_check(ones, ones, expo, unit, grid);
    c.require(lhs <= rhs, "pairing bound fails on the unit example");
    c.require(std::abs(lhs - 1.0) <= 1e-12 && std::abs(rhs - 2.0 / (std::exp(1.0) * std::log(2.0))) <= 1e-5,
              "pairing bound constants are off on the unit example");

    const std::vector<double> young_grid = make_xi_grid(4.0, 257);
    const std::vector<OrliczIntegrand> integrands = {make_lp_integrand(2.0), expo,
                                                     make_double_phase_integrand(2.0, 3.0)};
    const std::vector<double> probe = {0.5};
    for (const auto& A : integrands) {
        const OrliczIntegrand CA = integrand_dual(A, young_grid);
        for (double xi : young_grid) {
            const double a = A.evaluate(probe, xi);
            if (std::isinf(a)) continue;
            for (double zeta : young_grid) {
                if (xi * zeta <= a + CA.evaluate(probe, zeta) + 1e-12 * (1.0 + xi * zeta)) continue;
                std::ostringstream msg;
                msg << "product bound fails for " << A.name << " at xi=" << xi
                    << " zeta=" << zeta;
                c.require(false, msg.str());
                break;
            }
            if (!c.ok()) break;
        }
        if (!c.ok()) break;
    }

    std::uniform_real_distribution<double> scale_dist(-2.5, 2.5);
    std::uniform_int_distribution<int> kind_dist(0, 2);
    for (int t = 0; t < 100 && c.ok(); ++t) {
        const size_t n = 4 + static_cast<size_t>(t) % 8;
        SampleSet s;
        std::vector<double> u, v;
        for (size_t i = 0; i < n; ++i) {
            s.points.push_back({coord(rng), coord(rng)});
            s.weights.push_back(weight(rng));
            u.push_back(value(rng));
            v.push_back(value(rng));
        }
        const int kind = kind_dist(rng);
        const OrliczIntegrand A = (kind == 0)   ? make_lp_integrand(1.0 + 2.0 * coord(rng))
                                  : (kind == 1) ? make_exp_integrand()
                                                : make_double_phase_integrand(2.0, 3.5);
        std::vector<double> sum(n);
        for (size_t i = 0; i < n; ++i) sum[i] = u[i] + v[i];
        const double nu = luxemburg_norm(A, u, s), nv = luxemburg_norm(A, v, s);
        const double nsum = luxemburg_norm(A, sum, s);
        std::ostringstream msg;
        msg << "gauge subadditivity fails at trial " << t << " for " << A.name;
        c.require(nsum <= nu + nv + 1e-9 * std::max(1.0, nu + nv), msg.str());
        const double scale = scale_dist(rng);
        std::vector<double> scaled(n);
        for (size_t i = 0; i < n; ++i) scaled[i] = scale * u[i];
        const double expected = std::abs(scale) * nu;
        std::ostringstream msg2;
        msg2 << "gauge homogeneity fails at trial " << t << " for " << A.name;
        c.require(std::abs(luxemburg_norm(A, scaled, s) - expected) <=
                      1e-9 * std::max(1.0, expected),
                  msg2.str());
    }
    return {9, "gauge norm suite", c.ok(), c.detail(), 0.0};
}

// 10. Discrete seminorm transport: measured-to-bound ratios stay below 1 for
// affine maps and below the calibrated slack for mild nonlinear ones.
inline CriterionResult criterion_transform() {
    detail::Check c;
    const double affine_cap = 1.0 + 1e-9;  // exact ties plus rounding
    const double nonlinear_cap = 1.1;

    auto check_report = [&c](const TransformReport& rep, double cap, const std::string& label) {
        for (const auto& row : rep.rows) {
            std::ostringstream msg;
            msg << label << ": row " << row.label << " ratio " << row.ratio << " exceeds " << cap;
            c.require(std::isfinite(row.ratio) && row.ratio <= cap, msg.str());
        }
    };

    SeminormParams params1{2.0, 0.4, 0.8, 1};
    SampleSet line = detail::grid_samples(1, 64);
    PolyMap<double> u1;
    u1.in_dim = u1.out_dim = 1;
    u1.components = {{{1.0, {0}}, {0.5, {1}}, {-0.25, {2}}, {1.0 / 3.0, {3}}}};
    PolyMap<double> aff1;
    aff1.in_dim = aff1.out_dim = 1;
    aff1.components = {{{-0.25, {0}}, {1.5, {1}}}};
    check_report(seminorm_transform_report(u1, aff1, line, params1, 0, 1), affine_cap,
                 "affine 1-d scalar");
    check_report(seminorm_transform_report(u1, aff1, line, params1, 1, 1), affine_cap,
                 "affine 1-d covector");
    PolyMap<double> aff1b = aff1;
    aff1b.components[0][1].coeff = -0.8;
    check_report(seminorm_transform_report(u1, aff1b, line, params1, 1, 1), affine_cap,
                 "affine 1-d reflected");
    SeminormParams params_inf{kInfinity, 0.4, 0.8, 1};
    check_report(seminorm_transform_report(u1, aff1, line, params_inf, 1, 1), affine_cap,
                 "affine 1-d sup");

    SeminormParams params2{2.0, 0.4, 0.8, 2};
    SampleSet plane = detail::grid_samples(2, 32);
    PolyMap<double> u2;
    u2.in_dim = 2;
    u2.out_dim = 2;
    u2.components = {{{1.0, {0, 0}}, {0.5, {1, 0}}, {-0.3, {0, 2}}},
                     {{0.7, {0, 1}}, {0.4, {2, 0}}, {0.2, {1, 1}}}};
    PolyMap<double> scalar2;
    scalar2.in_dim = 2;
    scalar2.out_dim = 1;
    scalar2.components = {{{1.0, {1, 0}}, {-0.5, {0, 2}}, {0.25, {1, 1}}}};
    PolyMap<double> aff2;
    aff2.in_dim = aff2.out_dim = 2;
    aff2.components = {{{0.1, {0, 0}}, {1.2, {1, 0}}, {0.3, {0, 1}}},
                       {{-0.3, {0, 0}}, {-0.2, {1, 0}}, {0.9, {0, 1}}}};
    check_report(seminorm_transform_report(scalar2, aff2, plane, params2, 0, 1), affine_cap,
                 "affine 2-d scalar");
    check_report(seminorm_transform_report(u2, aff2, plane, params2, 1, 1), affine_cap,
                 "affine 2-d covector");

    PolyMap<double> bend1 = aff1;
    bend1.components[0].push_back({0.05, {2}});
    check_report(seminorm_transform_report(u1, bend1, line, params1, 1, 1), nonlinear_cap,
                 "nonlinear 1-d");
    PolyMap<double> bend2 = aff2;
    bend2.components[0].push_back({0.05, {2, 0}});
    bend2.components[1].push_back({0.05, {1, 1}});
    check_report(seminorm_transform_report(u2, bend2, plane, params2, 1, 1), nonlinear_cap,
                 "nonlinear 2-d");
    return {10, "seminorm transport soundness", c.ok(), c.detail(), 0.0};
}

// Criteria are independent (each seeds its own generator), so they can run
// concurrently; results are reported in criterion order regardless of jobs.
inline std::vector<CriterionResult> run_all(int jobs = 1) {
    using Fn = CriterionResult (*)();
    const std::vector<Fn> criteria = {criterion_counts,      criterion_coefficients,
                                      criterion_univariate,  criterion_composition,
                                      criterion_chains,      criterion_pullback,
                                      criterion_inverse,     criterion_soundness,
                                      criterion_orlicz,      criterion_transform};
    std::vector<CriterionResult> results(criteria.size());
    parallel_for(criteria.size(), jobs, [&](size_t i) {
        const auto start = std::chrono::steady_clock::now();
        CriterionResult r = criteria[i]();
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        results[i] = std::move(r);
    });
    return results;
}

// Prints one line per criterion; returns the number of failures.
inline int run_and_report(std::ostream& out, int jobs = 1) {
    int failures = 0;
    for (const auto& r : run_all(jobs)) {
        out << (r.passed ? "PASS" : "FAIL") << " criterion " << r.number << ": " << r.name << " ["
            << r.seconds << " s]";
        if (!r.passed) {
            out << " " << r.detail;
            ++failures;
        }
        out << "\n";
    }
    return failures;
}

} // namespace faacalc::acceptance

#endif
