#ifndef FAACALC_BELL_HPP
#define FAACALC_BELL_HPP

// Scherk indices and the four Bell polynomial families: partial, full,
// generalized (for tensor-field pullback bounds), and higher-level (for
// multicomposite chains). Coefficients are exact big integers; evaluation is
// offered over exact rationals and doubles through one template interface.
//
// Conventions: B_{0,0} = 1 and B_{m,0} = 0 for m >= 1, forced by the
// empty-partition convention. B_{m,k} truncates its product at j = m-k+1;
// longer coefficient lists are accepted and the tail is ignored.

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "faacalc/errors.hpp"
#include "faacalc/scalar.hpp"

namespace faacalc {

// b has length m, b_i counts blocks of size i: sum b_i = k, sum i*b_i = m.
// Entries b_j with j > m-k+1 are necessarily zero.
struct ScherkIndex {
    int m = 0;
    std::vector<int> b;

    bool operator==(const ScherkIndex&) const = default;
};

// Constraints: sum b_i = k, sum h_j = d, sum i*b_i + sum j*h_j = m,
// with b indexed 1..m and h indexed 0..m.
struct GeneralizedScherkIndex {
    int m = 0;
    int k = 0;
    int d = 0;
    std::vector<int> b;  // length m
    std::vector<int> h;  // length m+1, h[j] multiplies the (j+1)-st derivative

    bool operator==(const GeneralizedScherkIndex&) const = default;
};

// Condensed exponent profile: p has length m+2 and p[j] is the exponent of
// the j-th derivative magnitude, j = 0..m+1; p[0] is always zero. The
// coefficient sums the generalized Scherk coefficients of all (b,h) pairs
// sharing this profile, so evaluating via profiles agrees with evaluating
// via (b,h) pairs identically.
struct HatIndex {
    std::vector<int> p;
    bigint coefficient;

    bool operator==(const HatIndex&) const = default;
};

namespace detail {

// Partitions of total into exactly parts parts, each in [1, cap], emitted
// largest-part-first in descending lexicographic order.
inline void descending_partitions(int total, int parts, int cap,
                                  std::vector<int>& current,
                                  const std::function<void(const std::vector<int>&)>& emit) {
    if (parts == 0) {
        if (total == 0) emit(current);
        return;
    }
    int hi = std::min(cap, total - (parts - 1));
    // each of the remaining parts needs at least 1, and parts*part >= total
    for (int part = hi; part >= 1; --part) {
        if (part * parts < total) break;
        current.push_back(part);
        descending_partitions(total - part, parts - 1, part, current, emit);
        current.pop_back();
    }
}

inline std::vector<int> counts_from_parts(const std::vector<int>& parts, int length) {
    std::vector<int> counts(static_cast<size_t>(length), 0);
    for (int part : parts) ++counts[static_cast<size_t>(part - 1)];
    return counts;
}

} // namespace detail

// All b with sum b_i = k and sum i*b_i = m, ordered by the descending
// lexicographic order of the underlying block-size partitions. k outside
// [1, m] yields an empty list.
inline std::vector<ScherkIndex> scherk_indices(int m, int k) {
    std::vector<ScherkIndex> out;
    if (m < 1 || k < 1 || k > m) return out;
    std::vector<int> current;
    detail::descending_partitions(m, k, m, current, [&](const std::vector<int>& parts) {
        out.push_back(ScherkIndex{m, detail::counts_from_parts(parts, m)});
    });
    return out;
}

// m! / prod( b_j! * (j!)^{b_j} ): the number of set partitions of {1..m}
// whose block-size signature is b. Exact.
inline bigint scherk_coefficient(const ScherkIndex& idx) {
    bigint denom = 1;
    for (size_t j = 0; j < idx.b.size(); ++j) {
        int bj = idx.b[j];
        if (bj == 0) continue;
        denom *= factorial(static_cast<unsigned>(bj));
        denom *= ipow(factorial(static_cast<unsigned>(j + 1)), static_cast<unsigned>(bj));
    }
    return factorial(static_cast<unsigned>(idx.m)) / denom;
}

template <Scalar S>
S bell_partial(int m, int k, const std::vector<S>& xs) {
    if (m < 0 || k < 0) throw input_error("bell_partial: negative order");
    if (k > m) return S(0);
    if (m == 0) return S(1);  // k == 0 here
    if (k == 0) return S(0);
    if (static_cast<int>(xs.size()) < m - k + 1)
        throw input_error("bell_partial: coefficient list shorter than m-k+1");
    S acc(0);
    for (const auto& idx : scherk_indices(m, k)) {
        S term = scalar_from_bigint<S>(scherk_coefficient(idx));
        for (int j = 1; j <= m - k + 1; ++j) {
            int e = idx.b[static_cast<size_t>(j - 1)];
            if (e > 0) term = term * scalar_pow(xs[static_cast<size_t>(j - 1)], static_cast<unsigned>(e));
        }
        acc = acc + term;
    }
    return acc;
}

template <Scalar S>
S bell_full(int m, const std::vector<S>& ys, const std::vector<S>& xs) {
    if (m < 0) throw input_error("bell_full: negative order");
    if (static_cast<int>(ys.size()) < m || static_cast<int>(xs.size()) < m)
        throw input_error("bell_full: coefficient lists shorter than m");
    S acc(0);
    for (int k = 1; k <= m; ++k)
        acc = acc + ys[static_cast<size_t>(k - 1)] * bell_partial<S>(m, k, xs);
    return acc;
}

// m! * d! / ( prod b_i! (i!)^{b_i} * prod h_j! (j!)^{h_j} ): the number of
// pairs of an ordered partition of {1..m} into d positional blocks plus a
// remainder, and a set partition of the remainder, with signature (b,h).
inline bigint generalized_scherk_coefficient(int m, int d,
                                             const std::vector<int>& b,
                                             const std::vector<int>& h) {
    bigint denom = 1;
    for (size_t i = 0; i < b.size(); ++i) {
        if (b[i] == 0) continue;
        denom *= factorial(static_cast<unsigned>(b[i]));
        denom *= ipow(factorial(static_cast<unsigned>(i + 1)), static_cast<unsigned>(b[i]));
    }
    for (size_t j = 0; j < h.size(); ++j) {
        if (h[j] == 0) continue;
        denom *= factorial(static_cast<unsigned>(h[j]));
        denom *= ipow(factorial(static_cast<unsigned>(j)), static_cast<unsigned>(h[j]));
    }
    return factorial(static_cast<unsigned>(m)) * factorial(static_cast<unsigned>(d)) / denom;
}

// All (b,h) with sum b = k, sum h = d, sum i*b_i + sum j*h_j = m, paired
// with their exact coefficients. Infeasible constraints give an empty list.
// For d = 0 the list reproduces scherk_indices(m,k) with coefficients A^b,
// in the same order.
inline std::vector<std::pair<GeneralizedScherkIndex, bigint>>
generalized_scherk(int k, int m, int d) {
    std::vector<std::pair<GeneralizedScherkIndex, bigint>> out;
    if (k < 0 || m < 0 || d < 0 || k > m) return out;
    // w = sum i*b_i is the weight carried by b; the rest, m - w, goes to h.
    for (int w = m; w >= k; --w) {
        int rest = m - w;
        if (rest > 0 && d == 0) continue;
        std::vector<std::vector<int>> bs;
        if (k == 0) {
            if (w == 0) bs.push_back(std::vector<int>(static_cast<size_t>(m), 0));
        } else {
            std::vector<int> current;
            detail::descending_partitions(w, k, w, current, [&](const std::vector<int>& parts) {
                bool fits = true;
                for (int part : parts)
                    if (part > m) fits = false;
                if (fits) bs.push_back(detail::counts_from_parts(parts, m));
            });
        }
        if (bs.empty()) continue;
        // h: d values in {0..m} with total weight rest; enumerate the
        // positive parts (at most d of them, each <= m) largest-first.
        std::vector<std::vector<int>> hs;
        int max_parts = std::min(d, rest);
        for (int used = (rest == 0 ? 0 : 1); used <= max_parts; ++used) {
            std::vector<int> current;
            detail::descending_partitions(rest, used, std::min(rest, m), current,
                                          [&](const std::vector<int>& parts) {
                std::vector<int> h(static_cast<size_t>(m) + 1, 0);
                h[0] = d - used;
                for (int part : parts) ++h[static_cast<size_t>(part)];
                hs.push_back(std::move(h));
            });
        }
        for (const auto& b : bs)
            for (const auto& h : hs) {
                GeneralizedScherkIndex idx{m, k, d, b, h};
                bigint coeff = generalized_scherk_coefficient(m, d, b, h);
                out.emplace_back(std::move(idx), std::move(coeff));
            }
    }
    return out;
}

// B_{k,m,d}(x_1, ..., x_{m+1}) where x_j stands for the magnitude of the
// j-th derivative of the transformation, j = 1..m+1.
template <Scalar S>
S generalized_bell(int k, int m, int d, const std::vector<S>& xs) {
    if (static_cast<int>(xs.size()) < m + 1)
        throw input_error("generalized_bell: needs m+1 coefficients");
    S acc(0);
    for (const auto& [idx, coeff] : generalized_scherk(k, m, d)) {
        S term = scalar_from_bigint<S>(coeff);
        for (int i = 1; i <= m; ++i) {
            int e = idx.b[static_cast<size_t>(i - 1)];
            if (e > 0) term = term * scalar_pow(xs[static_cast<size_t>(i - 1)], static_cast<unsigned>(e));
        }
        for (int j = 0; j <= m; ++j) {
            int e = idx.h[static_cast<size_t>(j)];
            if (e > 0) term = term * scalar_pow(xs[static_cast<size_t>(j)], static_cast<unsigned>(e));
        }
        acc = acc + term;
    }
    return acc;
}

// Groups the (b,h) pairs of generalized_scherk(k,m,d) by their derivative-
// order exponent profile and sums the coefficients. Profiles keep the order
// of first appearance, so the d = 0 hat list is the Scherk list with a zero
// prepended (order 0) and a zero appended (order m+1).
inline std::vector<HatIndex> hat_condense(int k, int m, int d) {
    std::vector<HatIndex> out;
    std::map<std::vector<int>, size_t> seen;
    for (const auto& [idx, coeff] : generalized_scherk(k, m, d)) {
        std::vector<int> p(static_cast<size_t>(m) + 2, 0);
        for (int t = 1; t <= m + 1; ++t) {
            int bt = (t <= m) ? idx.b[static_cast<size_t>(t - 1)] : 0;
            p[static_cast<size_t>(t)] = bt + idx.h[static_cast<size_t>(t - 1)];
        }
        auto it = seen.find(p);
        if (it == seen.end()) {
            seen.emplace(p, out.size());
            out.push_back(HatIndex{std::move(p), coeff});
        } else {
            out[it->second].coefficient += coeff;
        }
    }
    return out;
}

// Evaluates sum_p hat(p) * prod_j x_j^{p_j}; xs supplies orders 1..m+1.
template <Scalar S>
S hat_evaluate(const std::vector<HatIndex>& hats, const std::vector<S>& xs) {
    S acc(0);
    for (const auto& hat : hats) {
        S term = scalar_from_bigint<S>(hat.coefficient);
        for (size_t t = 1; t < hat.p.size(); ++t) {
            int e = hat.p[t];
            if (e == 0) continue;
            if (t - 1 >= xs.size()) throw input_error("hat_evaluate: coefficient list too short");
            term = term * scalar_pow(xs[t - 1], static_cast<unsigned>(e));
        }
        acc = acc + term;
    }
    return acc;
}

// Higher-level Bell polynomials for chains of univariate compositions.
// tables[i] holds the level-i inputs x^{[i]}_1..x^{[i]}_m for i = 0..l.
// With k given, returns the level-l partial polynomial (tables[l] unused,
// as in the recursion); otherwise the full polynomial.
template <Scalar S>
S higher_level_bell(int l, int m, std::optional<int> k,
                    const std::vector<std::vector<S>>& tables) {
    if (l < 1) throw input_error("higher_level_bell: level must be >= 1");
    if (m < 1) throw input_error("higher_level_bell: order must be >= 1");
    if (static_cast<int>(tables.size()) < l + 1)
        throw input_error("higher_level_bell: needs tables for levels 0..l");
    for (int i = 0; i <= l; ++i)
        if (static_cast<int>(tables[static_cast<size_t>(i)].size()) < m)
            throw input_error("higher_level_bell: each level table needs m entries");
    // F[j-1] carries the full level-i polynomial of order j; level 0 is the
    // bare table. Each level consumes the full values of the level below.
    std::vector<S> F(tables[0].begin(), tables[0].begin() + m);
    for (int i = 1; i <= l - 1; ++i) {
        std::vector<S> next(static_cast<size_t>(m));
        for (int j = 1; j <= m; ++j)
            next[static_cast<size_t>(j - 1)] = bell_full<S>(j, tables[static_cast<size_t>(i)], F);
        F = std::move(next);
    }
    if (k) return bell_partial<S>(m, *k, F);
    return bell_full<S>(m, tables[static_cast<size_t>(l)], F);
}

} // namespace faacalc

#endif
