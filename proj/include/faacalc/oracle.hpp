#ifndef FAACALC_ORACLE_HPP
#define FAACALC_ORACLE_HPP

// Independent validation routes for the calculus engines: finite-difference
// jets, exact symbolic composition of polynomial maps, power-series inversion,
// and a literal slot-by-slot evaluation of the partition sum. None of these
// share code paths with the engines they validate beyond the tensor
// primitives.

#include <cmath>
#include <map>
#include <utility>
#include <vector>

#include "faacalc/calculus.hpp"
#include "faacalc/errors.hpp"
#include "faacalc/partitions.hpp"
#include "faacalc/random.hpp"
#include "faacalc/scalar.hpp"
#include "faacalc/tensor.hpp"

namespace faacalc {

// One-dimensional central-difference operator of the given derivative order:
// pairs of (grid offset, coefficient). Coefficients sum to zero for order
// >= 1, and the scheme is exact on polynomials of degree <= order + 1.
struct FiniteDifferenceScheme {
    int order = 0;
    double step = 0.0;
    std::vector<std::pair<int, double>> stencil;
};

inline FiniteDifferenceScheme central_difference_scheme(int order, double h) {
    if (order < 0 || h <= 0) throw input_error("central_difference_scheme: bad parameters");
    FiniteDifferenceScheme s{order, h, {}};
    const double scale = std::pow(2.0 * h, -order);
    for (int t = 0; t <= order; ++t) {
        double coeff = binomial(static_cast<unsigned>(order), static_cast<unsigned>(t))
                           .convert_to<double>() *
                       ((order - t) % 2 == 0 ? 1.0 : -1.0) * scale;
        s.stencil.emplace_back(2 * t - order, coeff);
    }
    return s;
}

inline double default_fd_step(int m) { return std::pow(10.0, -10.0 / (m + 2)); }

// Finite-difference jet of a polynomial map: every mixed partial up to order
// m via nested central differences along coordinate directions, assembled
// into symmetric tensors. Pass h <= 0 to use the default step for order m.
inline Jet<double> fd_jet(const PolyMap<double>& P, const std::vector<double>& x, int m,
                          double h = 0.0) {
    if (m < 0 || m > 4) throw input_error("fd_jet: order must be between 0 and 4");
    if (h <= 0.0) h = default_fd_step(m);
    const int N = P.in_dim;
    if (static_cast<int>(x.size()) != N) throw input_error("fd_jet: point dimension mismatch");
    std::vector<FiniteDifferenceScheme> schemes;
    for (int c = 0; c <= m; ++c) schemes.push_back(central_difference_scheme(c, h));
    Jet<double> jet;
    jet.base_point = x;
    jet.in_dim = N;
    jet.out_dims = {P.out_dim};
    jet.order = m;
    std::vector<int> idx, counts(static_cast<size_t>(N), 0);
    for (int j = 0; j <= m; ++j) {
        auto t = make_tensor<double>(j, N, {P.out_dim});
        const size_t cov = t.cov_size();
        for (size_t flat = 0; flat < cov; ++flat) {
            detail::decode_index(flat, N, j, idx);
            std::fill(counts.begin(), counts.end(), 0);
            for (int v : idx) ++counts[static_cast<size_t>(v)];
            // Product stencil over directions with non-zero derivative count.
            std::vector<double> acc(static_cast<size_t>(P.out_dim), 0.0);
            std::vector<size_t> pick(static_cast<size_t>(N), 0);
            for (;;) {
                double coeff = 1.0;
                std::vector<double> y = x;
                for (int dim = 0; dim < N; ++dim) {
                    const auto& st = schemes[static_cast<size_t>(counts[static_cast<size_t>(dim)])]
                                         .stencil[pick[static_cast<size_t>(dim)]];
                    coeff *= st.second;
                    y[static_cast<size_t>(dim)] += h * st.first;
                }
                std::vector<double> val = evaluate_polymap(P, y);
                for (int a = 0; a < P.out_dim; ++a)
                    acc[static_cast<size_t>(a)] += coeff * val[static_cast<size_t>(a)];
                int dim = N - 1;
                while (dim >= 0) {
                    auto ud = static_cast<size_t>(dim);
                    if (++pick[ud] < schemes[static_cast<size_t>(counts[ud])].stencil.size()) break;
                    pick[ud] = 0;
                    --dim;
                }
                if (dim < 0) break;
            }
            for (int a = 0; a < P.out_dim; ++a)
                t.data[static_cast<size_t>(a) * cov + flat] = acc[static_cast<size_t>(a)];
        }
        jet.derivs.push_back(symmetrize(t));
    }
    return jet;
}

namespace detail {

using Poly = std::map<std::vector<int>, rational>;  // exponent vector -> coeff

inline Poly poly_add(const Poly& a, const Poly& b) {
    Poly out = a;
    for (const auto& [e, c] : b) {
        rational& slot = out[e];
        slot += c;
        if (slot == 0) out.erase(e);
    }
    return out;
}

inline Poly poly_mul(const Poly& a, const Poly& b) {
    Poly out;
    for (const auto& [ea, ca] : a)
        for (const auto& [eb, cb] : b) {
            std::vector<int> e = ea;
            for (size_t t = 0; t < e.size(); ++t) e[t] += eb[t];
            rational& slot = out[e];
            slot += ca * cb;
            if (slot == 0) out.erase(e);
        }
    return out;
}

inline Poly poly_const(const rational& c, int n_vars) {
    Poly out;
    if (c != 0) out[std::vector<int>(static_cast<size_t>(n_vars), 0)] = c;
    return out;
}

inline Poly poly_pow(const Poly& a, int e, int n_vars) {
    Poly r = poly_const(1, n_vars);
    for (int i = 0; i < e; ++i) r = poly_mul(r, a);
    return r;
}

} // namespace detail

// Exact polynomial substitution f(g(x)) with rational coefficients.
inline PolyMap<rational> symbolic_compose(const PolyMap<rational>& f,
                                          const PolyMap<rational>& g) {
    if (f.in_dim != g.out_dim)
        throw input_error("symbolic_compose: input dimension of f differs from output dimension of g");
    const int N = g.in_dim;
    std::vector<detail::Poly> gp;
    for (const auto& comp : g.components) {
        detail::Poly p;
        for (const auto& mono : comp) {
            rational& slot = p[mono.exponents];
            slot += mono.coeff;
            if (slot == 0) p.erase(mono.exponents);
        }
        gp.push_back(std::move(p));
    }
    PolyMap<rational> out;
    out.in_dim = N;
    out.out_dim = f.out_dim;
    for (const auto& comp : f.components) {
        detail::Poly result;
        for (const auto& mono : comp) {
            detail::Poly term = detail::poly_const(mono.coeff, N);
            for (int a = 0; a < f.in_dim; ++a) {
                int e = mono.exponents[static_cast<size_t>(a)];
                if (e > 0) term = detail::poly_mul(term, detail::poly_pow(gp[static_cast<size_t>(a)], e, N));
            }
            result = detail::poly_add(result, term);
        }
        std::vector<Monomial<rational>> monos;
        for (const auto& [e, c] : result) monos.push_back({c, e});
        out.components.push_back(std::move(monos));
    }
    return out;
}

// Truncated product of power series given as coefficient vectors c[0..n].
inline std::vector<rational> series_multiply(const std::vector<rational>& a,
                                             const std::vector<rational>& b, int order) {
    std::vector<rational> out(static_cast<size_t>(order) + 1, rational(0));
    for (size_t i = 0; i < a.size() && i <= static_cast<size_t>(order); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size() && i + j <= static_cast<size_t>(order); ++j)
            out[i + j] += a[i] * b[j];
    }
    return out;
}

// outer(inner(x)) truncated at the given order; inner must have no constant
// term.
inline std::vector<rational> series_compose(const std::vector<rational>& outer,
                                            const std::vector<rational>& inner, int order) {
    if (!inner.empty() && inner[0] != 0)
        throw input_error("series_compose: inner series must vanish at 0");
    std::vector<rational> out(static_cast<size_t>(order) + 1, rational(0));
    std::vector<rational> power(static_cast<size_t>(order) + 1, rational(0));
    power[0] = 1;  // inner^0
    for (size_t j = 0; j < outer.size() && j <= static_cast<size_t>(order); ++j) {
        if (j > 0) power = series_multiply(power, inner, order);
        if (outer[j] == 0) continue;
        for (size_t i = 0; i <= static_cast<size_t>(order); ++i) out[i] += outer[j] * power[i];
    }
    return out;
}

// Coefficients of the inverse series of phi, with phi(0) = 0 and
// phi'(0) != 0, up to the given order: solves coefficient by coefficient so
// that phi(g(y)) = y exactly through degree `order`.
inline std::vector<rational> series_inverse_univariate(const std::vector<rational>& coeffs,
                                                       int order) {
    if (order < 0) throw input_error("series_inverse_univariate: negative order");
    if (!coeffs.empty() && coeffs[0] != 0)
        throw input_error("series_inverse_univariate: series must vanish at 0");
    const rational c1 = coeffs.size() > 1 ? coeffs[1] : rational(0);
    if (c1 == 0) throw domain_error("series_inverse_univariate: first derivative vanishes at 0");
    std::vector<rational> g(static_cast<size_t>(order) + 1, rational(0));
    if (order >= 1) g[1] = rational(1) / c1;
    for (int k = 2; k <= order; ++k) {
        // With g_k still zero, the degree-k defect of phi(g(y)) - y is
        // linear in g_k with slope c1.
        std::vector<rational> comp = series_compose(coeffs, g, k);
        g[static_cast<size_t>(k)] = -comp[static_cast<size_t>(k)] / c1;
    }
    return g;
}

// Literal evaluation of the partition sum for the composition derivative:
// one explicit index loop per summand with slots placed by block membership,
// symmetrized summand by summand.
template <Scalar S>
Jet<S> brute_partition_sum(const Jet<S>& f_jet, const Jet<S>& phi_jet, int m) {
    if (m > 5) throw input_error("brute_partition_sum: order capped at 5");
    if (f_jet.order < m || phi_jet.order < m)
        throw input_error("brute_partition_sum: jets must carry order m");
    const int N = phi_jet.in_dim;
    const int M = f_jet.in_dim;
    Jet<S> out;
    out.base_point = phi_jet.base_point;
    out.in_dim = N;
    out.out_dims = f_jet.out_dims;
    out.order = m;
    out.derivs.push_back(f_jet.derivs[0]);
    std::vector<int> iidx, bidx, sub;
    for (int mp = 1; mp <= m; ++mp) {
        auto acc = make_tensor<S>(mp, N, f_jet.out_dims);
        const size_t cov = acc.cov_size();
        const size_t outs = acc.contra_size();
        for (const auto& part : all_partitions(mp)) {
            const int k = static_cast<int>(part.blocks.size());
            auto term = make_tensor<S>(mp, N, f_jet.out_dims);
            const size_t inner = f_jet.derivs[static_cast<size_t>(k)].cov_size();  // M^k
            for (size_t o = 0; o < cov; ++o) {
                detail::decode_index(o, N, mp, iidx);
                for (size_t bf = 0; bf < inner; ++bf) {
                    detail::decode_index(bf, M, k, bidx);
                    S factor(1);
                    for (int t = 0; t < k && factor != S(0); ++t) {
                        const auto& block = part.blocks[static_cast<size_t>(t)];
                        sub.clear();
                        for (int s : block) sub.push_back(iidx[static_cast<size_t>(s - 1)]);
                        const auto& dphi = phi_jet.derivs[block.size()];
                        factor = factor * dphi.data[static_cast<size_t>(bidx[static_cast<size_t>(t)]) *
                                                        dphi.cov_size() +
                                                    detail::encode_index(sub, N)];
                    }
                    if (factor == S(0)) continue;
                    for (size_t a = 0; a < outs; ++a)
                        term.data[a * cov + o] =
                            term.data[a * cov + o] +
                            f_jet.derivs[static_cast<size_t>(k)].data[a * inner + bf] * factor;
                }
            }
            acc = tensor_add(acc, symmetrize(term));
        }
        out.derivs.push_back(acc);
    }
    return out;
}

// Random polynomial map with small rational coefficients, all exponent
// vectors of total degree <= degree considered, roughly half kept.
inline PolyMap<rational> random_polymap(std::mt19937_64& rng, int in_dim, int out_dim,
                                        int degree) {
    std::vector<std::vector<int>> exponents;
    std::vector<int> cur(static_cast<size_t>(in_dim), 0);
    auto emit = [&](auto&& self, int pos, int left) -> void {
        if (pos == in_dim) {
            exponents.push_back(cur);
            return;
        }
        for (int e = 0; e <= left; ++e) {
            cur[static_cast<size_t>(pos)] = e;
            self(self, pos + 1, left - e);
        }
        cur[static_cast<size_t>(pos)] = 0;
    };
    emit(emit, 0, degree);
    std::uniform_int_distribution<int> keep(0, 1);
    PolyMap<rational> P;
    P.in_dim = in_dim;
    P.out_dim = out_dim;
    P.components.resize(static_cast<size_t>(out_dim));
    for (auto& comp : P.components) {
        for (const auto& e : exponents)
            if (keep(rng) == 1) comp.push_back({random_nonzero_rational(rng), e});
        if (comp.empty()) comp.push_back({random_nonzero_rational(rng), exponents.front()});
    }
    return P;
}

} // namespace faacalc

#endif
