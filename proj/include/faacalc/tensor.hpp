#ifndef FAACALC_TENSOR_HPP
#define FAACALC_TENSOR_HPP

// Dense tensors with m covariant slots of one common dimension and a list of
// contravariant (output) dimensions. Storage is row-major with contravariant
// indices slowest and covariant indices fastest. Supports exact rational and
// double entries through the Scalar concept.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include "faacalc/errors.hpp"
#include "faacalc/scalar.hpp"

namespace faacalc {

template <Scalar S>
struct Tensor {
    int cov_arity = 0;
    int cov_dim = 0;
    std::vector<int> contra_dims;
    std::vector<S> data;

    size_t cov_size() const {
        size_t n = 1;
        for (int i = 0; i < cov_arity; ++i) n *= static_cast<size_t>(cov_dim);
        return n;
    }
    size_t contra_size() const {
        size_t n = 1;
        for (int d : contra_dims) n *= static_cast<size_t>(d);
        return n;
    }
    bool shape_equals(const Tensor& o) const {
        return cov_arity == o.cov_arity && (cov_arity == 0 || cov_dim == o.cov_dim) &&
               contra_dims == o.contra_dims;
    }
};

template <Scalar S>
Tensor<S> make_tensor(int cov_arity, int cov_dim, std::vector<int> contra_dims) {
    if (cov_arity < 0 || (cov_arity > 0 && cov_dim < 1))
        throw input_error("make_tensor: invalid covariant shape");
    for (int d : contra_dims)
        if (d < 1) throw input_error("make_tensor: invalid contravariant dimension");
    Tensor<S> t;
    t.cov_arity = cov_arity;
    t.cov_dim = cov_dim;
    t.contra_dims = std::move(contra_dims);
    t.data.assign(t.cov_size() * t.contra_size(), S(0));
    return t;
}

template <Scalar S>
Tensor<S> scalar_tensor(const S& value) {
    Tensor<S> t;
    t.data = {value};
    return t;
}

// Covariant vector (a single argument slot).
template <Scalar S>
Tensor<S> covector(const std::vector<S>& entries) {
    Tensor<S> t;
    t.cov_arity = 1;
    t.cov_dim = static_cast<int>(entries.size());
    t.data = entries;
    return t;
}

// The identity map on R^n: one covariant slot, one contravariant axis.
template <Scalar S>
Tensor<S> identity_tensor(int n) {
    auto t = make_tensor<S>(1, n, {n});
    for (int i = 0; i < n; ++i)
        t.data[static_cast<size_t>(i) * static_cast<size_t>(n) + static_cast<size_t>(i)] = S(1);
    return t;
}

template <Scalar S>
Tensor<S> tensor_add(const Tensor<S>& a, const Tensor<S>& b) {
    if (!a.shape_equals(b)) throw input_error("tensor_add: shape mismatch");
    Tensor<S> out = a;
    for (size_t i = 0; i < out.data.size(); ++i) out.data[i] = out.data[i] + b.data[i];
    return out;
}

template <Scalar S>
Tensor<S> tensor_scale(const Tensor<S>& a, const S& c) {
    Tensor<S> out = a;
    for (auto& v : out.data) v = v * c;
    return out;
}

template <Scalar S>
Tensor<S> tensor_sub(const Tensor<S>& a, const Tensor<S>& b) {
    return tensor_add(a, tensor_scale(b, S(-1)));
}

// Entries are all pairwise products; covariant arities add (a's slots first),
// contravariant dims concatenate (a's axes first).
template <Scalar S>
Tensor<S> tensor_product(const Tensor<S>& a, const Tensor<S>& b) {
    if (a.cov_arity > 0 && b.cov_arity > 0 && a.cov_dim != b.cov_dim)
        throw input_error("tensor_product: covariant dimension mismatch");
    Tensor<S> out;
    out.cov_arity = a.cov_arity + b.cov_arity;
    out.cov_dim = a.cov_arity > 0 ? a.cov_dim : b.cov_dim;
    out.contra_dims = a.contra_dims;
    out.contra_dims.insert(out.contra_dims.end(), b.contra_dims.begin(), b.contra_dims.end());
    const size_t ac = a.contra_size(), av = a.cov_size();
    const size_t bc = b.contra_size(), bv = b.cov_size();
    out.data.resize(ac * bc * av * bv);
    for (size_t ia = 0; ia < ac; ++ia)
        for (size_t ib = 0; ib < bc; ++ib)
            for (size_t ja = 0; ja < av; ++ja) {
                const S left = a.data[ia * av + ja];
                const size_t base = ((ia * bc + ib) * av + ja) * bv;
                for (size_t jb = 0; jb < bv; ++jb)
                    out.data[base + jb] = left * b.data[ib * bv + jb];
            }
    return out;
}

// Composition of multilinear maps: nu's output (flattened contravariant part)
// feeds all of mu's covariant slots. The result keeps nu's covariant slots
// and mu's contravariant dims.
template <Scalar S>
Tensor<S> contract(const Tensor<S>& mu, const Tensor<S>& nu) {
    const size_t inner = mu.cov_size();
    if (inner != nu.contra_size())
        throw input_error("contract: covariant size of left factor differs from contravariant size of right factor");
    Tensor<S> out;
    out.cov_arity = nu.cov_arity;
    out.cov_dim = nu.cov_dim;
    out.contra_dims = mu.contra_dims;
    const size_t rows = mu.contra_size();
    const size_t cols = nu.cov_size();
    out.data.assign(rows * cols, S(0));
    for (size_t r = 0; r < rows; ++r)
        for (size_t k = 0; k < inner; ++k) {
            const S& f = mu.data[r * inner + k];
            if (f == S(0)) continue;
            const size_t nb = k * cols;
            const size_t ob = r * cols;
            for (size_t c = 0; c < cols; ++c)
                out.data[ob + c] = out.data[ob + c] + f * nu.data[nb + c];
        }
    return out;
}

namespace detail {

inline void decode_index(size_t flat, int dim, int arity, std::vector<int>& idx) {
    idx.assign(static_cast<size_t>(arity), 0);
    for (int s = arity - 1; s >= 0; --s) {
        idx[static_cast<size_t>(s)] = static_cast<int>(flat % static_cast<size_t>(dim));
        flat /= static_cast<size_t>(dim);
    }
}

inline size_t encode_index(const std::vector<int>& idx, int dim) {
    size_t flat = 0;
    for (int v : idx) flat = flat * static_cast<size_t>(dim) + static_cast<size_t>(v);
    return flat;
}

} // namespace detail

// Output covariant slot t carries input slot perm[t]; perm must be a
// permutation of 0..m-1.
template <Scalar S>
Tensor<S> permute_cov(const Tensor<S>& t, const std::vector<int>& perm) {
    if (static_cast<int>(perm.size()) != t.cov_arity)
        throw input_error("permute_cov: permutation length differs from covariant arity");
    {
        std::vector<bool> seen(perm.size(), false);
        for (int v : perm) {
            if (v < 0 || v >= t.cov_arity || seen[static_cast<size_t>(v)])
                throw input_error("permute_cov: not a permutation");
            seen[static_cast<size_t>(v)] = true;
        }
    }
    Tensor<S> out = t;
    const size_t cov = t.cov_size();
    const size_t con = t.contra_size();
    std::vector<int> oidx, iidx(static_cast<size_t>(t.cov_arity), 0);
    for (size_t o = 0; o < cov; ++o) {
        detail::decode_index(o, t.cov_dim, t.cov_arity, oidx);
        for (int s = 0; s < t.cov_arity; ++s)
            iidx[static_cast<size_t>(perm[static_cast<size_t>(s)])] = oidx[static_cast<size_t>(s)];
        const size_t i = detail::encode_index(iidx, t.cov_dim);
        for (size_t c = 0; c < con; ++c)
            out.data[c * cov + o] = t.data[c * cov + i];
    }
    return out;
}

// Average over all permutations of the first j covariant slots.
template <Scalar S>
Tensor<S> symmetrize_first(const Tensor<S>& t, int j) {
    if (j < 0 || j > t.cov_arity) throw input_error("symmetrize_first: bad slot count");
    if (j <= 1) return t;
    std::vector<int> perm(static_cast<size_t>(t.cov_arity));
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<int> head(perm.begin(), perm.begin() + j);
    Tensor<S> acc = make_tensor<S>(t.cov_arity, t.cov_dim, t.contra_dims);
    bigint count = 0;
    do {
        std::copy(head.begin(), head.end(), perm.begin());
        acc = tensor_add(acc, permute_cov(t, perm));
        ++count;
    } while (std::next_permutation(head.begin(), head.end()));
    S inv = S(1) / scalar_from_bigint<S>(count);
    return tensor_scale(acc, inv);
}

template <Scalar S>
Tensor<S> symmetrize(const Tensor<S>& t) {
    return symmetrize_first(t, t.cov_arity);
}

// (1/m!) sum over permutations of the outer product of the given covariant
// vectors; the empty product is the scalar 1.
template <Scalar S>
Tensor<S> symmetric_product(const std::vector<Tensor<S>>& vectors) {
    if (vectors.empty()) return scalar_tensor(S(1));
    Tensor<S> prod = vectors.front();
    if (prod.cov_arity != 1) throw input_error("symmetric_product: arguments must be covariant vectors");
    for (size_t i = 1; i < vectors.size(); ++i) {
        if (vectors[i].cov_arity != 1 || vectors[i].cov_dim != prod.cov_dim)
            throw input_error("symmetric_product: arguments must be covariant vectors of one dimension");
        prod = tensor_product(prod, vectors[i]);
    }
    return symmetrize(prod);
}

template <Scalar S>
bool is_symmetric(const Tensor<S>& t, double rel_tol = 1e-12) {
    std::vector<int> perm(static_cast<size_t>(t.cov_arity));
    for (int s = 0; s + 1 < t.cov_arity; ++s) {
        std::iota(perm.begin(), perm.end(), 0);
        std::swap(perm[static_cast<size_t>(s)], perm[static_cast<size_t>(s + 1)]);
        Tensor<S> w = permute_cov(t, perm);
        for (size_t i = 0; i < t.data.size(); ++i) {
            if constexpr (std::same_as<S, rational>) {
                if (t.data[i] != w.data[i]) return false;
            } else {
                double a = t.data[i], b = w.data[i];
                double scale = std::max({std::abs(a), std::abs(b), 1.0});
                if (std::abs(a - b) > rel_tol * scale) return false;
            }
        }
    }
    return true;
}

template <Scalar S>
Tensor<double> tensor_to_double(const Tensor<S>& t) {
    Tensor<double> out;
    out.cov_arity = t.cov_arity;
    out.cov_dim = t.cov_dim;
    out.contra_dims = t.contra_dims;
    out.data.reserve(t.data.size());
    for (const auto& v : t.data) out.data.push_back(to_double(v));
    return out;
}

inline double entrywise_l1(const Tensor<double>& t) {
    double s = 0;
    for (double v : t.data) s += std::abs(v);
    return s;
}

inline double frobenius_norm(const Tensor<double>& t) {
    double s = 0;
    for (double v : t.data) s += v * v;
    return std::sqrt(s);
}

} // namespace faacalc

#endif
