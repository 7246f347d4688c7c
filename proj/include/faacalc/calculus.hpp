#ifndef FAACALC_CALCULUS_HPP
#define FAACALC_CALCULUS_HPP

// Jets (derivative towers at a point) and the chain-rule engines: pairwise
// composition, multicomposite chains, pullback of covariant tensor fields,
// and the recursion for derivatives of inverse functions. Polynomial maps
// serve as the exactly-differentiable test universe.
//
// Each derivative tensor derivs[j] has j differentiation slots, followed by
// field_arity payload slots for tensor fields. Differentiation slots of all
// outputs are symmetric; payload slots are not required to be.
//
// Summands of the partition sums are accumulated as plain tensor products
// and symmetrized once at the end: every summand differs from its properly
// slotted form by a permutation of the differentiation slots, which the
// final symmetrization absorbs, and the full sum is symmetric.

#include <optional>
#include <utility>
#include <vector>

#include "faacalc/bell.hpp"
#include "faacalc/errors.hpp"
#include "faacalc/partitions.hpp"
#include "faacalc/scalar.hpp"
#include "faacalc/tensor.hpp"

namespace faacalc {

inline constexpr double kBasePointTolerance = 1e-12;

template <Scalar S>
struct Monomial {
    S coeff;
    std::vector<int> exponents;  // length in_dim
};

template <Scalar S>
struct PolyMap {
    int in_dim = 0;
    int out_dim = 0;
    std::vector<std::vector<Monomial<S>>> components;  // one list per output
};

template <Scalar S>
struct Jet {
    std::vector<S> base_point;
    int in_dim = 0;
    std::vector<int> out_dims;  // contravariant dims; empty for tensor fields
    int field_arity = 0;        // d payload slots on every derivative tensor
    int order = 0;
    std::vector<Tensor<S>> derivs;  // size order+1
};

namespace detail {

template <Scalar S>
bool points_match(const std::vector<S>& a, const std::vector<S>& b) {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i) {
        if constexpr (std::same_as<S, rational>) {
            if (a[i] != b[i]) return false;
        } else {
            if (std::abs(a[i] - b[i]) > kBasePointTolerance) return false;
        }
    }
    return true;
}

// Value of the partial derivative of a monomial prod x_t^{e_t} with
// per-coordinate derivative counts c, evaluated at x. Exact for rationals.
template <Scalar S>
S monomial_derivative(const Monomial<S>& mono, const std::vector<int>& c,
                      const std::vector<S>& x) {
    S value = mono.coeff;
    for (size_t t = 0; t < mono.exponents.size(); ++t) {
        int e = mono.exponents[t];
        int ct = c[t];
        if (ct > e) return S(0);
        for (int f = 0; f < ct; --e, ++f) value = value * S(e);
        value = value * scalar_pow(x[t], static_cast<unsigned>(e));
    }
    return value;
}

} // namespace detail

template <Scalar S>
std::vector<S> jet_value(const Jet<S>& jet) {
    return jet.derivs[0].data;
}

template <Scalar S>
std::vector<S> evaluate_polymap(const PolyMap<S>& P, const std::vector<S>& x) {
    if (static_cast<int>(x.size()) != P.in_dim)
        throw input_error("evaluate_polymap: point dimension mismatch");
    std::vector<S> out(static_cast<size_t>(P.out_dim), S(0));
    for (int a = 0; a < P.out_dim; ++a)
        for (const auto& mono : P.components[static_cast<size_t>(a)]) {
            S term = mono.coeff;
            for (size_t t = 0; t < x.size(); ++t)
                term = term * scalar_pow(x[t], static_cast<unsigned>(mono.exponents[t]));
            out[static_cast<size_t>(a)] = out[static_cast<size_t>(a)] + term;
        }
    return out;
}

inline PolyMap<double> polymap_to_double(const PolyMap<rational>& P) {
    PolyMap<double> out;
    out.in_dim = P.in_dim;
    out.out_dim = P.out_dim;
    for (const auto& comp : P.components) {
        std::vector<Monomial<double>> c;
        for (const auto& mono : comp) c.push_back({to_double(mono.coeff), mono.exponents});
        out.components.push_back(std::move(c));
    }
    return out;
}

inline Jet<double> jet_to_double(const Jet<rational>& jet) {
    Jet<double> out;
    for (const auto& v : jet.base_point) out.base_point.push_back(to_double(v));
    out.in_dim = jet.in_dim;
    out.out_dims = jet.out_dims;
    out.field_arity = jet.field_arity;
    out.order = jet.order;
    for (const auto& t : jet.derivs) out.derivs.push_back(tensor_to_double(t));
    return out;
}

// Exact derivative tower of a polynomial map at x, all orders 0..m.
template <Scalar S>
Jet<S> jet_of_polymap(const PolyMap<S>& P, const std::vector<S>& x, int m) {
    if (static_cast<int>(x.size()) != P.in_dim)
        throw input_error("jet_of_polymap: point dimension mismatch");
    if (m < 0) throw input_error("jet_of_polymap: negative order");
    Jet<S> jet;
    jet.base_point = x;
    jet.in_dim = P.in_dim;
    jet.out_dims = {P.out_dim};
    jet.order = m;
    const int N = P.in_dim;
    for (int j = 0; j <= m; ++j) {
        auto t = make_tensor<S>(j, N, {P.out_dim});
        const size_t cov = t.cov_size();
        std::vector<int> idx, counts(static_cast<size_t>(N), 0);
        for (size_t flat = 0; flat < cov; ++flat) {
            detail::decode_index(flat, N, j, idx);
            std::fill(counts.begin(), counts.end(), 0);
            for (int v : idx) ++counts[static_cast<size_t>(v)];
            for (int a = 0; a < P.out_dim; ++a) {
                S acc(0);
                for (const auto& mono : P.components[static_cast<size_t>(a)])
                    acc = acc + detail::monomial_derivative(mono, counts, x);
                t.data[static_cast<size_t>(a) * cov + flat] = acc;
            }
        }
        jet.derivs.push_back(std::move(t));
    }
    return jet;
}

// Reinterprets a polynomial map with out_dim = N^d as a d-tensor field:
// the output axis becomes d trailing covariant payload slots.
template <Scalar S>
Jet<S> jet_of_polymap_field(const PolyMap<S>& P, const std::vector<S>& x, int m, int d) {
    const int N = P.in_dim;
    size_t want = 1;
    for (int i = 0; i < d; ++i) want *= static_cast<size_t>(N);
    if (static_cast<size_t>(P.out_dim) != want)
        throw input_error("jet_of_polymap_field: output dimension is not cov_dim^d");
    Jet<S> map_jet = jet_of_polymap(P, x, m);
    Jet<S> jet;
    jet.base_point = x;
    jet.in_dim = N;
    jet.out_dims = {};
    jet.field_arity = d;
    jet.order = m;
    for (int j = 0; j <= m; ++j) {
        const auto& src = map_jet.derivs[static_cast<size_t>(j)];
        auto t = make_tensor<S>(j + d, N, {});
        const size_t cov = src.cov_size();     // N^j
        const size_t fields = want;            // N^d
        for (size_t a = 0; a < fields; ++a)
            for (size_t i = 0; i < cov; ++i)
                t.data[i * fields + a] = src.data[a * cov + i];
        jet.derivs.push_back(std::move(t));
    }
    return jet;
}

// Truncate (or verify) a jet to the requested order.
template <Scalar S>
Jet<S> jet_truncate(const Jet<S>& jet, int m) {
    if (jet.order < m) throw input_error("jet_truncate: jet order too low");
    Jet<S> out = jet;
    out.order = m;
    out.derivs.resize(static_cast<size_t>(m) + 1);
    return out;
}

// Jet of the identity map at x.
template <Scalar S>
Jet<S> identity_jet(const std::vector<S>& x, int m) {
    const int N = static_cast<int>(x.size());
    Jet<S> jet;
    jet.base_point = x;
    jet.in_dim = N;
    jet.out_dims = {N};
    jet.order = m;
    auto value = make_tensor<S>(0, 0, {N});
    value.data = x;
    jet.derivs.push_back(std::move(value));
    if (m >= 1) jet.derivs.push_back(identity_tensor<S>(N));
    for (int j = 2; j <= m; ++j) jet.derivs.push_back(make_tensor<S>(j, N, {N}));
    return jet;
}

// Higher-order chain rule for a pairwise composition: the derivative of
// order m' is the sum over set partitions P of {1..m'} of the k-th
// derivative of f applied to the block derivatives of phi, symmetrized.
template <Scalar S>
Jet<S> compose_jet(const Jet<S>& f_jet, const Jet<S>& phi_jet, int m) {
    if (f_jet.order < m || phi_jet.order < m)
        throw input_error("compose_jet: jets must carry order m");
    if (f_jet.field_arity != 0 || phi_jet.field_arity != 0)
        throw input_error("compose_jet: jets of maps expected");
    if (!detail::points_match(f_jet.base_point, jet_value(phi_jet)))
        throw input_error("compose_jet: f is not based at the value of phi");
    Jet<S> out;
    out.base_point = phi_jet.base_point;
    out.in_dim = phi_jet.in_dim;
    out.out_dims = f_jet.out_dims;
    out.order = m;
    out.derivs.push_back(f_jet.derivs[0]);
    for (int mp = 1; mp <= m; ++mp) {
        auto acc = make_tensor<S>(mp, phi_jet.in_dim, f_jet.out_dims);
        for (const auto& part : all_partitions(mp)) {
            const int k = static_cast<int>(part.blocks.size());
            Tensor<S> prod = scalar_tensor(S(1));
            for (const auto& block : part.blocks)
                prod = tensor_product(prod, phi_jet.derivs[block.size()]);
            acc = tensor_add(acc, contract(f_jet.derivs[static_cast<size_t>(k)], prod));
        }
        out.derivs.push_back(symmetrize(acc));
    }
    return out;
}

// Univariate scalar form: derivatives f', .., f^(m) and phi', .., phi^(m).
// Matches bell_full(m, f_derivs, phi_derivs) identically.
template <Scalar S>
S faa_di_bruno(int m, const std::vector<S>& f_derivs, const std::vector<S>& phi_derivs) {
    if (static_cast<int>(f_derivs.size()) < m || static_cast<int>(phi_derivs.size()) < m)
        throw input_error("faa_di_bruno: needs m derivatives of both maps");
    S acc(0);
    for (int k = 1; k <= m; ++k) {
        for (const auto& idx : scherk_indices(m, k)) {
            // m! / prod b_j!  times  prod (phi^(j) / j!)^{b_j}
            bigint multi = factorial(static_cast<unsigned>(m));
            for (int bj : idx.b)
                if (bj > 0) multi /= factorial(static_cast<unsigned>(bj));
            S term = scalar_from_bigint<S>(multi) * f_derivs[static_cast<size_t>(k - 1)];
            for (int j = 1; j <= m; ++j) {
                int e = idx.b[static_cast<size_t>(j - 1)];
                if (e == 0) continue;
                S base = phi_derivs[static_cast<size_t>(j - 1)] /
                         scalar_from_bigint<S>(factorial(static_cast<unsigned>(j)));
                term = term * scalar_pow(base, static_cast<unsigned>(e));
            }
            acc = acc + term;
        }
    }
    return acc;
}

namespace detail {

template <Scalar S>
Tensor<S> nested_eval(const NestedPartition& nesting, const std::vector<Jet<S>>& jets) {
    if (nesting.level == 0)
        return jets[0].derivs[nesting.leaves.size()];
    Tensor<S> prod = scalar_tensor(S(1));
    for (const auto& child : nesting.children)
        prod = tensor_product(prod, nested_eval(child, jets));
    const size_t k = nesting.children.size();
    return contract(jets[static_cast<size_t>(nesting.level)].derivs[k], prod);
}

} // namespace detail

// Multicomposite chain rule: jets[0] is the innermost map. Evaluates the
// nested-partition sum directly.
template <Scalar S>
Jet<S> compose_chain(const std::vector<Jet<S>>& jets, int m) {
    if (jets.empty()) throw input_error("compose_chain: empty chain");
    for (size_t i = 0; i + 1 < jets.size(); ++i)
        if (!detail::points_match(jets[i + 1].base_point, jet_value(jets[i])))
            throw input_error("compose_chain: consecutive jets are not based compatibly");
    const int l = static_cast<int>(jets.size()) - 1;
    for (const auto& jet : jets)
        if (jet.order < m) throw input_error("compose_chain: jets must carry order m");
    if (l == 0) return jet_truncate(jets[0], m);
    Jet<S> out;
    out.base_point = jets[0].base_point;
    out.in_dim = jets[0].in_dim;
    out.out_dims = jets.back().out_dims;
    out.order = m;
    out.derivs.push_back(jets.back().derivs[0]);
    for (int mp = 1; mp <= m; ++mp) {
        auto acc = make_tensor<S>(mp, jets[0].in_dim, out.out_dims);
        NestedPartitionEnumerator nestings(mp, l);
        while (auto nesting = nestings.next())
            acc = tensor_add(acc, detail::nested_eval(*nesting, jets));
        out.derivs.push_back(symmetrize(acc));
    }
    return out;
}

// The same chain evaluated as a left fold of pairwise compositions.
template <Scalar S>
Jet<S> compose_chain_fold(const std::vector<Jet<S>>& jets, int m) {
    if (jets.empty()) throw input_error("compose_chain_fold: empty chain");
    Jet<S> acc = jet_truncate(jets[0], m);
    for (size_t i = 1; i < jets.size(); ++i)
        acc = compose_jet(jets[i], acc, m);
    return acc;
}

// Derivatives of the pullback of a d-tensor field u along phi. The order-m'
// derivative sums over ordered partitions P of {1..m'} into d blocks plus a
// remainder, and set partitions C of the remainder: the k-th derivative of u
// is contracted with the block derivatives of phi and, for the payload
// slots, the block derivatives of the Jacobian of phi.
template <Scalar S>
Jet<S> pullback_jet(const Jet<S>& u_jet, const Jet<S>& phi_jet, int m, int d) {
    if (u_jet.field_arity != d)
        throw input_error("pullback_jet: field arity of u differs from d");
    if (u_jet.order < m) throw input_error("pullback_jet: u jet must carry order m");
    const int need = (d > 0) ? m + 1 : m;
    if (phi_jet.order < need)
        throw input_error(d > 0
            ? "pullback_jet: with d > 0 the transformation jet must carry order m+1"
            : "pullback_jet: transformation jet must carry order m");
    if (!detail::points_match(u_jet.base_point, jet_value(phi_jet)))
        throw input_error("pullback_jet: u is not based at the value of phi");
    const int N = phi_jet.in_dim;
    Jet<S> out;
    out.base_point = phi_jet.base_point;
    out.in_dim = N;
    out.out_dims = u_jet.out_dims;
    out.field_arity = d;
    out.order = m;
    for (int mp = 0; mp <= m; ++mp) {
        auto acc = make_tensor<S>(mp + d, N, u_jet.out_dims);
        OrderedPartitionEnumerator ordered(mp, d);
        while (auto P = ordered.next()) {
            const int r = static_cast<int>(P->blocks[0].size());  // remainder block
            for (const auto& C : all_partitions(r)) {
                const int k = static_cast<int>(C.blocks.size());
                Tensor<S> prod = scalar_tensor(S(1));
                std::vector<int> perm(static_cast<size_t>(mp + d), 0);
                int in_pos = 0, deriv_out = 0;
                for (const auto& block : C.blocks) {
                    prod = tensor_product(prod, phi_jet.derivs[block.size()]);
                    for (size_t t = 0; t < block.size(); ++t)
                        perm[static_cast<size_t>(deriv_out++)] = in_pos++;
                }
                for (int j = 0; j < d; ++j) {
                    const size_t bsz = P->blocks[static_cast<size_t>(j) + 1].size();
                    prod = tensor_product(prod, phi_jet.derivs[bsz + 1]);
                    for (size_t t = 0; t < bsz; ++t)
                        perm[static_cast<size_t>(deriv_out++)] = in_pos++;
                    perm[static_cast<size_t>(mp + j)] = in_pos++;
                }
                Tensor<S> term = contract(u_jet.derivs[static_cast<size_t>(k)], prod);
                acc = tensor_add(acc, permute_cov(term, perm));
            }
        }
        out.derivs.push_back(symmetrize_first(acc, mp));
    }
    return out;
}

namespace detail {

// Exact inverse of an n-by-n matrix in rational arithmetic; throws on a
// singular input.
inline std::vector<rational> invert_matrix(const std::vector<rational>& a, int n) {
    std::vector<rational> lhs = a;
    std::vector<rational> rhs(static_cast<size_t>(n) * static_cast<size_t>(n), rational(0));
    for (int i = 0; i < n; ++i) rhs[static_cast<size_t>(i) * n + i] = 1;
    for (int col = 0; col < n; ++col) {
        int pivot = -1;
        for (int row = col; row < n; ++row)
            if (lhs[static_cast<size_t>(row) * n + col] != 0) { pivot = row; break; }
        if (pivot < 0) throw domain_error("inverse_jet: singular Jacobian");
        if (pivot != col)
            for (int c = 0; c < n; ++c) {
                std::swap(lhs[static_cast<size_t>(pivot) * n + c], lhs[static_cast<size_t>(col) * n + c]);
                std::swap(rhs[static_cast<size_t>(pivot) * n + c], rhs[static_cast<size_t>(col) * n + c]);
            }
        rational inv = rational(1) / lhs[static_cast<size_t>(col) * n + col];
        for (int c = 0; c < n; ++c) {
            lhs[static_cast<size_t>(col) * n + c] *= inv;
            rhs[static_cast<size_t>(col) * n + c] *= inv;
        }
        for (int row = 0; row < n; ++row) {
            if (row == col) continue;
            rational f = lhs[static_cast<size_t>(row) * n + col];
            if (f == 0) continue;
            for (int c = 0; c < n; ++c) {
                lhs[static_cast<size_t>(row) * n + c] -= f * lhs[static_cast<size_t>(col) * n + c];
                rhs[static_cast<size_t>(row) * n + c] -= f * rhs[static_cast<size_t>(col) * n + c];
            }
        }
    }
    return rhs;
}

// LU inverse with partial pivoting. Singularity test: |det| below 1e-12
// times the product of row norms.
inline std::vector<double> invert_matrix(const std::vector<double>& a, int n) {
    std::vector<double> lu = a;
    std::vector<int> piv(static_cast<size_t>(n));
    double det = 1.0;
    double row_norm_product = 1.0;
    for (int i = 0; i < n; ++i) {
        double norm = 0;
        for (int c = 0; c < n; ++c) norm += std::abs(a[static_cast<size_t>(i) * n + c]);
        row_norm_product *= norm;
    }
    for (int col = 0; col < n; ++col) {
        int pivot = col;
        for (int row = col + 1; row < n; ++row)
            if (std::abs(lu[static_cast<size_t>(row) * n + col]) >
                std::abs(lu[static_cast<size_t>(pivot) * n + col]))
                pivot = row;
        piv[static_cast<size_t>(col)] = pivot;
        if (pivot != col) {
            for (int c = 0; c < n; ++c)
                std::swap(lu[static_cast<size_t>(pivot) * n + c], lu[static_cast<size_t>(col) * n + c]);
            det = -det;
        }
        det *= lu[static_cast<size_t>(col) * n + col];
        if (lu[static_cast<size_t>(col) * n + col] == 0.0) break;
        for (int row = col + 1; row < n; ++row) {
            double f = lu[static_cast<size_t>(row) * n + col] / lu[static_cast<size_t>(col) * n + col];
            lu[static_cast<size_t>(row) * n + col] = f;
            for (int c = col + 1; c < n; ++c)
                lu[static_cast<size_t>(row) * n + c] -= f * lu[static_cast<size_t>(col) * n + c];
        }
    }
    if (std::abs(det) < 1e-12 * row_norm_product)
        throw domain_error("inverse_jet: singular Jacobian");
    std::vector<double> inv(static_cast<size_t>(n) * static_cast<size_t>(n), 0.0);
    for (int rhs_col = 0; rhs_col < n; ++rhs_col) {
        std::vector<double> b(static_cast<size_t>(n), 0.0);
        b[static_cast<size_t>(rhs_col)] = 1.0;
        for (int i = 0; i < n; ++i)
            if (piv[static_cast<size_t>(i)] != i) std::swap(b[static_cast<size_t>(i)], b[static_cast<size_t>(piv[static_cast<size_t>(i)])]);
        for (int i = 0; i < n; ++i)
            for (int c = 0; c < i; ++c) b[static_cast<size_t>(i)] -= lu[static_cast<size_t>(i) * n + c] * b[static_cast<size_t>(c)];
        for (int i = n - 1; i >= 0; --i) {
            for (int c = i + 1; c < n; ++c) b[static_cast<size_t>(i)] -= lu[static_cast<size_t>(i) * n + c] * b[static_cast<size_t>(c)];
            b[static_cast<size_t>(i)] /= lu[static_cast<size_t>(i) * n + i];
        }
        for (int i = 0; i < n; ++i) inv[static_cast<size_t>(i) * n + rhs_col] = b[static_cast<size_t>(i)];
    }
    return inv;
}

} // namespace detail

// Jet of the inverse function at y = phi(x), built order by order: the
// order-m' derivative is the Jacobian inverse applied to minus the sum over
// partitions with at least two blocks of the derivatives of phi applied to
// lower-order inverse derivatives.
template <Scalar S>
Jet<S> inverse_jet(const Jet<S>& phi_jet, int m) {
    const int N = phi_jet.in_dim;
    if (phi_jet.out_dims != std::vector<int>{N})
        throw input_error("inverse_jet: square map expected");
    if (phi_jet.order < m) throw input_error("inverse_jet: jet must carry order m");
    Jet<S> out;
    out.base_point = jet_value(phi_jet);
    out.in_dim = N;
    out.out_dims = {N};
    out.order = m;
    auto value = make_tensor<S>(0, 0, {N});
    value.data = phi_jet.base_point;
    out.derivs.push_back(std::move(value));
    if (m == 0) return out;
    auto inv1 = make_tensor<S>(1, N, {N});
    inv1.data = detail::invert_matrix(phi_jet.derivs[1].data, N);
    out.derivs.push_back(inv1);
    for (int mp = 2; mp <= m; ++mp) {
        auto acc = make_tensor<S>(mp, N, {N});
        for (const auto& part : all_partitions(mp)) {
            const size_t k = part.blocks.size();
            if (k < 2) continue;
            Tensor<S> prod = scalar_tensor(S(1));
            for (const auto& block : part.blocks)
                prod = tensor_product(prod, out.derivs[block.size()]);
            acc = tensor_add(acc, contract(phi_jet.derivs[k], prod));
        }
        Tensor<S> term = tensor_scale(contract(inv1, acc), S(-1));
        out.derivs.push_back(symmetrize(term));
    }
    return out;
}

// Summand counts of the two partition sums, for cross-checks against the
// enumeration module.
inline bigint compose_summand_count(int m) {
    bigint n = 0;
    for ([[maybe_unused]] const auto& part : all_partitions(m)) ++n;
    return n;
}

inline bigint pullback_summand_count(int m, int d) {
    bigint n = 0;
    OrderedPartitionEnumerator ordered(m, d);
    while (auto P = ordered.next()) {
        const int r = static_cast<int>(P->blocks[0].size());
        for ([[maybe_unused]] const auto& C : all_partitions(r)) ++n;
    }
    return n;
}

} // namespace faacalc

#endif
