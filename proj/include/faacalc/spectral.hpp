#ifndef FAACALC_SPECTRAL_HPP
#define FAACALC_SPECTRAL_HPP

// Sandwich bounds for the spectral norm of a tensor: the supremum of the
// Euclidean output norm over argument vectors from the unit lp ball. The
// exact value is intractable in general, so we return a certified lower
// estimate (alternating power iteration, restarted) and a certified upper
// bound (entrywise l1 sum, or a Frobenius-based bound adjusted for p > 2).

#include <cmath>
#include <limits>
#include <vector>

#include "faacalc/errors.hpp"
#include "faacalc/random.hpp"
#include "faacalc/tensor.hpp"

namespace faacalc {

struct SpectralBounds {
    double lower_estimate = 0;
    double upper_bound = 0;
};

namespace detail {

// Applies t to the given argument vectors, skipping slot `skip` (pass -1 to
// contract every slot). The skipped covariant slot stays open.
inline Tensor<double> apply_vectors(const Tensor<double>& t,
                                    const std::vector<std::vector<double>>& vs, int skip) {
    Tensor<double> cur = t;
    std::vector<int> slot_of_position(static_cast<size_t>(t.cov_arity));
    for (int s = 0; s < t.cov_arity; ++s) slot_of_position[static_cast<size_t>(s)] = s;
    if (skip > 0) {
        // Move the skipped slot to the front so peeling the trailing slot
        // never touches it.
        std::vector<int> perm;
        perm.push_back(skip);
        for (int s = 0; s < t.cov_arity; ++s)
            if (s != skip) perm.push_back(s);
        cur = permute_cov(cur, perm);
        slot_of_position = perm;
    }
    const int keep = (skip >= 0) ? 1 : 0;
    while (cur.cov_arity > keep) {
        const int slot = slot_of_position[static_cast<size_t>(cur.cov_arity - 1)];
        const auto& v = vs[static_cast<size_t>(slot)];
        const size_t n = static_cast<size_t>(cur.cov_dim);
        const size_t blocks = cur.data.size() / n;
        Tensor<double> next;
        next.cov_arity = cur.cov_arity - 1;
        next.cov_dim = cur.cov_dim;
        next.contra_dims = cur.contra_dims;
        next.data.assign(blocks, 0.0);
        for (size_t b = 0; b < blocks; ++b) {
            double acc = 0;
            const size_t base = b * n;
            for (size_t i = 0; i < n; ++i) acc += cur.data[base + i] * v[i];
            next.data[b] = acc;
        }
        if (next.cov_arity == 0) next.cov_dim = 0;
        cur = std::move(next);
    }
    return cur;
}

inline double vec_l2(const std::vector<double>& v) {
    double s = 0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

inline double vec_lp(const std::vector<double>& v, double p) {
    if (std::isinf(p)) {
        double m = 0;
        for (double x : v) m = std::max(m, std::abs(x));
        return m;
    }
    double s = 0;
    for (double x : v) s += std::pow(std::abs(x), p);
    return std::pow(s, 1.0 / p);
}

// Maximizer of <g, v> over the unit lp ball: the duality map for lp.
inline std::vector<double> lp_dual_direction(const std::vector<double>& g, double p) {
    std::vector<double> v(g.size(), 0.0);
    if (std::isinf(p)) {
        for (size_t i = 0; i < g.size(); ++i) v[i] = (g[i] >= 0 ? 1.0 : -1.0);
        return v;
    }
    if (p == 1.0) {
        size_t best = 0;
        for (size_t i = 1; i < g.size(); ++i)
            if (std::abs(g[i]) > std::abs(g[best])) best = i;
        v[best] = (g[best] >= 0 ? 1.0 : -1.0);
        return v;
    }
    const double q = p / (p - 1.0);
    for (size_t i = 0; i < g.size(); ++i)
        v[i] = (g[i] >= 0 ? 1.0 : -1.0) * std::pow(std::abs(g[i]), q - 1.0);
    double norm = vec_lp(v, p);
    if (norm <= 0) {
        v.assign(g.size(), 0.0);
        v[0] = 1.0;
        return v;
    }
    for (double& x : v) x /= norm;
    return v;
}

} // namespace detail

// p in [1, inf]; pass std::numeric_limits<double>::infinity() for p = inf.
inline SpectralBounds spectral_norm_bounds(const Tensor<double>& t, double p = 2.0) {
    if (p < 1.0) throw input_error("spectral_norm_bounds: p must be >= 1");
    for (double v : t.data)
        if (std::isnan(v)) throw input_error("spectral_norm_bounds: NaN entry");

    SpectralBounds out;
    const double l1 = entrywise_l1(t);
    const double fro = frobenius_norm(t);
    double inflate = 1.0;
    if (!std::isinf(p) && p > 2.0)
        inflate = std::pow(static_cast<double>(t.cov_dim),
                           (0.5 - 1.0 / p) * static_cast<double>(t.cov_arity));
    else if (std::isinf(p))
        inflate = std::pow(static_cast<double>(std::max(t.cov_dim, 1)),
                           0.5 * static_cast<double>(t.cov_arity));
    out.upper_bound = std::min(l1, fro * inflate);
    if (l1 == 0.0) return out;  // zero tensor

    if (t.cov_arity == 0) {
        out.lower_estimate = fro;
        out.upper_bound = std::min(out.upper_bound, fro);
        return out;
    }

    const int restarts = 8;
    const int max_iters = 200;
    const double tol = 1e-12;
    auto rng = make_rng(0x5bec7);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    double best = 0;
    const size_t m = static_cast<size_t>(t.cov_arity);
    for (int r = 0; r < restarts; ++r) {
        std::vector<std::vector<double>> vs(m, std::vector<double>(static_cast<size_t>(t.cov_dim)));
        for (auto& v : vs) {
            double norm = 0;
            while (norm == 0) {
                for (double& x : v) x = unit(rng);
                norm = detail::vec_lp(v, p);
            }
            for (double& x : v) x /= norm;
        }
        double prev = 0;
        for (int it = 0; it < max_iters; ++it) {
            // Output direction for the current arguments.
            Tensor<double> val = detail::apply_vectors(t, vs, -1);
            double value = frobenius_norm(val);
            if (value == 0) break;
            std::vector<double> w = val.data;
            for (double& x : w) x /= value;
            // Refresh each argument from the gradient of v -> <w, t(..v..)>.
            for (size_t s = 0; s < m; ++s) {
                Tensor<double> partial = detail::apply_vectors(t, vs, static_cast<int>(s));
                // partial has one covariant slot left and t's contra part.
                const size_t n = static_cast<size_t>(t.cov_dim);
                std::vector<double> g(n, 0.0);
                const size_t blocks = partial.data.size() / n;
                for (size_t b = 0; b < blocks; ++b)
                    for (size_t i = 0; i < n; ++i) g[i] += w[b] * partial.data[b * n + i];
                vs[s] = detail::lp_dual_direction(g, p);
            }
            Tensor<double> val2 = detail::apply_vectors(t, vs, -1);
            double value2 = frobenius_norm(val2);
            best = std::max(best, value2);
            if (std::abs(value2 - prev) <= tol * std::max(1.0, std::abs(value2))) break;
            prev = value2;
        }
        best = std::max(best, prev);
    }
    out.lower_estimate = std::min(best, out.upper_bound);
    return out;
}

} // namespace faacalc

#endif
