#ifndef FAACALC_NORMS_HPP
#define FAACALC_NORMS_HPP

// Discrete norms and seminorms over finite sample sets, pointwise pullback
// bounds driven by the generalized Bell machinery, Luxemburg norms for
// Musielak-Orlicz integrands, and report-style checkers comparing measured
// discrete seminorms of pullbacks against the bound expressions.
//
// Conventions: pointwise magnitudes of tensor values are Frobenius norms;
// sup-norm factors that multiply through contractions use spectral upper
// bounds (p = 2), which dominate the operator norm; double sums reduce by
// pairwise tree summation so results do not depend on thread count.

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "faacalc/bell.hpp"
#include "faacalc/calculus.hpp"
#include "faacalc/errors.hpp"
#include "faacalc/spectral.hpp"
#include "faacalc/tensor.hpp"

namespace faacalc {

inline constexpr double kQuadratureSlack = 0.10;  // soft-check tolerance for integral rows
inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Deterministic reduction: adjacent pairs are combined until one value
// remains, independent of any outer parallel split.
inline double pairwise_sum(std::vector<double> terms) {
    if (terms.empty()) return 0.0;
    while (terms.size() > 1) {
        size_t half = 0;
        for (size_t i = 0; i + 1 < terms.size(); i += 2) terms[half++] = terms[i] + terms[i + 1];
        if (terms.size() % 2 == 1) terms[half++] = terms.back();
        terms.resize(half);
    }
    return terms[0];
}

// Area of the unit (N-1)-sphere: 2 pi^{N/2} / Gamma(N/2).
inline double sphere_area(int N) {
    if (N < 1) throw input_error("sphere_area: dimension must be positive");
    return 2.0 * std::pow(std::numbers::pi_v<double>, 0.5 * N) / std::tgamma(0.5 * N);
}

struct SampleSet {
    std::vector<std::vector<double>> points;
    std::vector<double> weights;

    int dimension() const { return points.empty() ? 0 : static_cast<int>(points[0].size()); }
};

inline void validate_sample_set(const SampleSet& s) {
    if (s.points.size() != s.weights.size())
        throw input_error("sample set: points and weights differ in length");
    if (s.points.empty()) throw input_error("sample set: empty");
    const size_t dim = s.points[0].size();
    for (const auto& pt : s.points)
        if (pt.size() != dim) throw input_error("sample set: inconsistent point dimensions");
    for (double w : s.weights)
        if (!(w > 0.0)) throw input_error("sample set: weights must be strictly positive");
}

inline double point_distance(const std::vector<double>& a, const std::vector<double>& b) {
    double sq = 0.0;
    for (size_t t = 0; t < a.size(); ++t) sq += (a[t] - b[t]) * (a[t] - b[t]);
    return std::sqrt(sq);
}

struct SeminormParams {
    double p = 2.0;      // integrability exponent in [1, inf]
    double theta = 0.5;  // fractional smoothness in (0, 1]
    double sigma = 1.0;  // modulus-of-continuity exponent in (0, 1]
    int N = 1;           // ambient dimension
};

namespace detail {

inline double value_magnitude(double v) { return std::abs(v); }
inline double value_magnitude(const Tensor<double>& v) { return frobenius_norm(v); }

inline double value_difference(double a, double b) { return std::abs(a - b); }
inline double value_difference(const Tensor<double>& a, const Tensor<double>& b) {
    return frobenius_norm(tensor_sub(a, b));
}

template <typename V>
std::vector<double> magnitudes(const std::vector<V>& values) {
    std::vector<double> out;
    out.reserve(values.size());
    for (const auto& v : values) out.push_back(value_magnitude(v));
    return out;
}

} // namespace detail

// (sum_i w_i |v_i|^p)^{1/p}; for p = infinity, max_i |v_i|.
template <typename V>
double discrete_lp_norm(const std::vector<V>& values, const SampleSet& s, double p) {
    validate_sample_set(s);
    if (values.size() != s.points.size())
        throw input_error("discrete_lp_norm: values and sample set differ in length");
    if (!(p >= 1.0)) throw input_error("discrete_lp_norm: exponent must be at least 1");
    if (std::isinf(p)) {
        double best = 0.0;
        for (const auto& v : values) best = std::max(best, detail::value_magnitude(v));
        return best;
    }
    std::vector<double> terms;
    terms.reserve(values.size());
    for (size_t i = 0; i < values.size(); ++i)
        terms.push_back(s.weights[i] * std::pow(detail::value_magnitude(values[i]), p));
    return std::pow(pairwise_sum(std::move(terms)), 1.0 / p);
}

// Double-sum quadrature of |v(x) - v(x')| dist^{-theta - N/p} in Lp over
// off-diagonal pairs; for p = infinity, the sup form max |dv| / dist^theta.
template <typename V>
double discrete_slobodeckij(const std::vector<V>& values, const SampleSet& s, double theta,
                            double p) {
    validate_sample_set(s);
    if (values.size() != s.points.size())
        throw input_error("discrete_slobodeckij: values and sample set differ in length");
    if (!(theta > 0.0 && theta < 1.0))
        throw input_error("discrete_slobodeckij: theta must lie in (0,1)");
    if (!(p >= 1.0)) throw input_error("discrete_slobodeckij: exponent must be at least 1");
    const int N = s.dimension();
    const size_t n = s.points.size();
    if (std::isinf(p)) {
        double best = 0.0;
        for (size_t i = 0; i < n; ++i)
            for (size_t j = i + 1; j < n; ++j) {
                const double dist = point_distance(s.points[i], s.points[j]);
                if (dist == 0.0) throw input_error("discrete_slobodeckij: coincident sample points");
                best = std::max(best,
                                detail::value_difference(values[i], values[j]) / std::pow(dist, theta));
            }
        return best;
    }
    const double expo = -theta - static_cast<double>(N) / p;
    std::vector<double> terms;
    terms.reserve(n * n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            const double dist = point_distance(s.points[i], s.points[j]);
            if (dist == 0.0) throw input_error("discrete_slobodeckij: coincident sample points");
            const double diff = detail::value_difference(values[i], values[j]);
            terms.push_back(s.weights[i] * s.weights[j] * std::pow(diff * std::pow(dist, expo), p));
        }
    return std::pow(pairwise_sum(std::move(terms)), 1.0 / p);
}

// max over off-diagonal pairs of |v(x) - v(x')| / dist^theta.
template <typename V>
double holder_seminorm(const std::vector<V>& values, const SampleSet& s, double theta) {
    validate_sample_set(s);
    if (values.size() != s.points.size())
        throw input_error("holder_seminorm: values and sample set differ in length");
    if (!(theta > 0.0 && theta <= 1.0))
        throw input_error("holder_seminorm: theta must lie in (0,1]");
    double best = 0.0;
    const size_t n = s.points.size();
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j) {
            const double dist = point_distance(s.points[i], s.points[j]);
            if (dist == 0.0) throw input_error("holder_seminorm: coincident sample points");
            best = std::max(best,
                            detail::value_difference(values[i], values[j]) / std::pow(dist, theta));
        }
    return best;
}

// sum_{k=0..m} u_norms[k] * B_{m,k,d}(phi_norms): the pointwise bound on
// |nabla^m (phi^* u)| from magnitudes |nabla^k u| and |nabla^j phi|.
// phi_norms[j-1] is the magnitude of the j-th derivative, j = 1..m+1.
inline double pointwise_pullback_bound(const std::vector<double>& u_norms,
                                       const std::vector<double>& phi_norms, int m, int d) {
    if (m < 0 || d < 0) throw input_error("pointwise_pullback_bound: negative order");
    if (static_cast<int>(u_norms.size()) < m + 1)
        throw input_error("pointwise_pullback_bound: need m+1 norms of u");
    if (static_cast<int>(phi_norms.size()) < m + 1)
        throw input_error("pointwise_pullback_bound: need m+1 derivative norms of phi");
    for (double v : u_norms)
        if (!(v >= 0.0)) throw input_error("pointwise_pullback_bound: negative input");
    for (double v : phi_norms)
        if (!(v >= 0.0)) throw input_error("pointwise_pullback_bound: negative input");
    std::vector<double> terms;
    for (int k = 0; k <= m; ++k)
        terms.push_back(u_norms[static_cast<size_t>(k)] * generalized_bell<double>(k, m, d, phi_norms));
    return pairwise_sum(std::move(terms));
}

struct MarginReport {
    double lhs = 0.0;    // certified lower estimate of the measured side
    double rhs = 0.0;    // certified upper bound expression
    double margin = 0.0; // rhs - lhs plus a rounding allowance; >= 0 means no
                         // violation beyond arithmetic noise
};

// The two sides of the inequality are evaluated with independent summation
// orders, so an algebraically exact tie can land either way by a few ulps.
// Violations inside this relative band are treated as rounding noise; real
// formula defects overshoot it by many orders of magnitude.
inline constexpr double kPullbackRoundoff = 1e-12;

// Compares a spectral lower estimate of |nabla^m (phi^* u)| at one point
// against the pointwise bound fed with spectral upper bounds.
inline MarginReport check_pullback_inequality(const PolyMap<double>& u, const PolyMap<double>& phi,
                                              const std::vector<double>& x, int m, int d,
                                              double p = 2.0) {
    Jet<double> phi_jet = jet_of_polymap(phi, x, m + 1);
    Jet<double> u_jet = jet_of_polymap_field(u, evaluate_polymap(phi, x), m, d);
    Jet<double> pb = pullback_jet(u_jet, phi_jet, m, d);
    MarginReport report;
    report.lhs = spectral_norm_bounds(pb.derivs[static_cast<size_t>(m)], p).lower_estimate;
    std::vector<double> u_norms, phi_norms;
    for (int k = 0; k <= m; ++k)
        u_norms.push_back(spectral_norm_bounds(u_jet.derivs[static_cast<size_t>(k)], p).upper_bound);
    for (int j = 1; j <= m + 1; ++j)
        phi_norms.push_back(spectral_norm_bounds(phi_jet.derivs[static_cast<size_t>(j)], p).upper_bound);
    report.rhs = pointwise_pullback_bound(u_norms, phi_norms, m, d);
    report.margin = report.rhs - report.lhs + kPullbackRoundoff * (report.rhs + report.lhs);
    return report;
}

// Inputs to the inverse-function bound, indexed like Bell arguments:
// entry [j-1] of a vector refers to the j-th derivative.
struct InverseHolderData {
    double inv_norm_c0theta = 0.0;  // Hoelder norm of the inverse map
    double grad_inv_norm_c0 = 0.0;  // sup norm of the inverse Jacobian
    double inv_lipschitz = 0.0;     // Lipschitz constant of the inverse map
    std::vector<double> phi_norm_c0theta;         // [k-1]: Hoelder norm of k-th derivative, k = 2..m used
    std::vector<double> phi_semi_c0theta;         // [k-1]: Hoelder seminorm of k-th derivative
    std::vector<double> inv_norm_c0theta_orders;  // [j-1]: Hoelder norm of j-th inverse derivative, j = 1..m-1
    std::vector<double> inv_norm_c0_orders;       // [j-1]: sup norm of j-th inverse derivative
};

// Two-sum bound on the Hoelder seminorm of the m-th inverse derivative.
inline double inverse_holder_bound(int m, double theta, const InverseHolderData& data) {
    if (m < 2) throw input_error("inverse_holder_bound: order must be at least 2");
    if (!(theta > 0.0 && theta <= 1.0))
        throw input_error("inverse_holder_bound: theta must lie in (0,1]");
    if (static_cast<int>(data.phi_norm_c0theta.size()) < m ||
        static_cast<int>(data.phi_semi_c0theta.size()) < m)
        throw input_error("inverse_holder_bound: derivative norms of phi up to order m required");
    if (static_cast<int>(data.inv_norm_c0theta_orders.size()) < m - 1 ||
        static_cast<int>(data.inv_norm_c0_orders.size()) < m - 1)
        throw input_error("inverse_holder_bound: inverse derivative norms up to order m-1 required");
    auto non_negative = [](double v) { return v >= 0.0; };
    if (!non_negative(data.inv_norm_c0theta) || !non_negative(data.grad_inv_norm_c0) ||
        !non_negative(data.inv_lipschitz))
        throw input_error("inverse_holder_bound: negative input");
    for (const auto* vec : {&data.phi_norm_c0theta, &data.phi_semi_c0theta,
                            &data.inv_norm_c0theta_orders, &data.inv_norm_c0_orders})
        for (double v : *vec)
            if (!non_negative(v)) throw input_error("inverse_holder_bound: negative input");
    double first = 0.0, second = 0.0;
    for (int k = 2; k <= m; ++k) {
        first += (k + 1) * data.phi_norm_c0theta[static_cast<size_t>(k - 1)] *
                 bell_partial<double>(m, k, data.inv_norm_c0theta_orders);
        second += data.phi_semi_c0theta[static_cast<size_t>(k - 1)] *
                  bell_partial<double>(m, k, data.inv_norm_c0_orders);
    }
    return data.inv_norm_c0theta * first +
           data.grad_inv_norm_c0 * std::pow(data.inv_lipschitz, theta) * second;
}

// Musielak-Orlicz integrand A(x, xi): non-negative, zero at xi = 0,
// non-decreasing and convex in xi; +infinity is a legal value.
struct OrliczIntegrand {
    std::string name;
    bool claimed_convex = true;
    std::function<double(const std::vector<double>&, double)> evaluate;
};

inline OrliczIntegrand make_lp_integrand(double p) {
    if (!(p >= 1.0)) throw input_error("make_lp_integrand: exponent must be at least 1");
    OrliczIntegrand A;
    if (std::isinf(p)) {
        A.name = "lp:inf";
        A.evaluate = [](const std::vector<double>&, double xi) {
            return xi <= 1.0 ? 0.0 : kInfinity;
        };
    } else {
        A.name = "lp:" + format_double(p);
        A.evaluate = [p](const std::vector<double>&, double xi) { return std::pow(xi, p); };
    }
    return A;
}

inline OrliczIntegrand make_exp_integrand() {
    OrliczIntegrand A;
    A.name = "exp";
    A.evaluate = [](const std::vector<double>&, double xi) { return std::expm1(xi); };
    return A;
}

// Double-phase integrand xi^p + a(x) xi^q with the bundled weight
// a(x) = |x|_2.
inline OrliczIntegrand make_double_phase_integrand(double p, double q) {
    if (!(p >= 1.0) || !(q >= 1.0))
        throw input_error("make_double_phase_integrand: exponents must be at least 1");
    OrliczIntegrand A;
    A.name = "double-phase:" + format_double(p) + "," + format_double(q);
    A.evaluate = [p, q](const std::vector<double>& x, double xi) {
        double a = 0.0;
        for (double c : x) a += c * c;
        return std::pow(xi, p) + std::sqrt(a) * std::pow(xi, q);
    };
    return A;
}

// Spot-checks the integrand invariants on the sample points over a xi-grid:
// vanishing at zero, monotonicity, and midpoint convexity.
inline void check_integrand(const OrliczIntegrand& A, const SampleSet& s,
                            const std::vector<double>& xi_grid) {
    validate_sample_set(s);
    for (const auto& x : s.points) {
        const double at_zero = A.evaluate(x, 0.0);
        if (std::isnan(at_zero)) throw input_error("integrand: NaN value");
        if (std::abs(at_zero) > 1e-12) throw input_error("integrand: nonzero at xi = 0");
        double prev = at_zero;
        for (size_t g = 0; g < xi_grid.size(); ++g) {
            const double v = A.evaluate(x, xi_grid[g]);
            if (std::isnan(v)) throw input_error("integrand: NaN value");
            if (v < prev - 1e-12 * std::max(1.0, std::abs(prev)))
                throw input_error("integrand: not non-decreasing on the test grid");
            prev = v;
            if (A.claimed_convex && g + 1 < xi_grid.size()) {
                const double hi = A.evaluate(x, xi_grid[g + 1]);
                if (std::isinf(hi)) continue;
                const double mid = A.evaluate(x, 0.5 * (xi_grid[g] + xi_grid[g + 1]));
                if (mid > 0.5 * (v + hi) + 1e-9 * std::max(1.0, std::abs(v) + std::abs(hi)))
                    throw input_error("integrand: midpoint convexity violated on the test grid");
            }
        }
    }
}

namespace detail {

inline double orlicz_modular(const OrliczIntegrand& A, const std::vector<double>& magnitudes,
                             const SampleSet& s, double lambda) {
    std::vector<double> terms;
    terms.reserve(magnitudes.size());
    for (size_t i = 0; i < magnitudes.size(); ++i) {
        const double v = A.evaluate(s.points[i], magnitudes[i] / lambda);
        if (std::isnan(v)) throw input_error("integrand: NaN value");
        if (std::isinf(v)) return kInfinity;
        terms.push_back(s.weights[i] * v);
    }
    return pairwise_sum(std::move(terms));
}

// Shared bracketing + bisection for Luxemburg-style infima: doubling
// bracket from 2^-20 up to 2^60, bisection to relative width 1e-12,
// returning the upper endpoint (where the modular is <= 1).
inline double luxemburg_bisect(const std::function<double(double)>& modular) {
    double hi = std::ldexp(1.0, -20);
    double lo = 0.0;
    if (modular(hi) > 1.0) {
        const double cap = std::ldexp(1.0, 60);
        do {
            lo = hi;
            hi *= 2.0;
            if (hi > cap) return kInfinity;
        } while (modular(hi) > 1.0);
    }
    while (hi - lo > 1e-12 * hi) {
        const double mid = 0.5 * (lo + hi);
        if (modular(mid) <= 1.0)
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

inline double determinant(std::vector<double> a, int n) {
    double det = 1.0;
    for (int col = 0; col < n; ++col) {
        int pivot = col;
        for (int row = col + 1; row < n; ++row)
            if (std::abs(a[static_cast<size_t>(row) * n + col]) >
                std::abs(a[static_cast<size_t>(pivot) * n + col]))
                pivot = row;
        if (pivot != col) {
            for (int c = 0; c < n; ++c)
                std::swap(a[static_cast<size_t>(pivot) * n + c], a[static_cast<size_t>(col) * n + c]);
            det = -det;
        }
        const double diag = a[static_cast<size_t>(col) * n + col];
        det *= diag;
        if (diag == 0.0) return 0.0;
        for (int row = col + 1; row < n; ++row) {
            const double f = a[static_cast<size_t>(row) * n + col] / diag;
            for (int c = col + 1; c < n; ++c)
                a[static_cast<size_t>(row) * n + c] -= f * a[static_cast<size_t>(col) * n + c];
        }
    }
    return det;
}

inline double jacobian_determinant(const PolyMap<double>& phi, const std::vector<double>& x) {
    if (phi.in_dim != phi.out_dim)
        throw input_error("jacobian determinant requires a square map");
    Jet<double> jet = jet_of_polymap(phi, x, 1);
    return determinant(jet.derivs[1].data, phi.in_dim);
}

} // namespace detail

// inf{lambda > 0 : sum_i w_i A(x_i, |v_i| / lambda) <= 1}; 0 for the zero
// function, +infinity when no lambda within the bracket cap works.
template <typename V>
double luxemburg_norm(const OrliczIntegrand& A, const std::vector<V>& values, const SampleSet& s) {
    validate_sample_set(s);
    if (values.size() != s.points.size())
        throw input_error("luxemburg_norm: values and sample set differ in length");
    std::vector<double> mags = detail::magnitudes(values);
    bool all_zero = true;
    for (double v : mags)
        if (v != 0.0) all_zero = false;
    if (all_zero) return 0.0;
    return detail::luxemburg_bisect(
        [&](double lambda) { return detail::orlicz_modular(A, mags, s, lambda); });
}

// Image sample set under phi: points phi(x_i), weights |det grad phi| w_i.
inline SampleSet transported_samples(const PolyMap<double>& phi, const SampleSet& s) {
    validate_sample_set(s);
    if (phi.in_dim != s.dimension())
        throw input_error("transported_samples: map does not match sample dimension");
    SampleSet out;
    for (size_t i = 0; i < s.points.size(); ++i) {
        const double det = detail::jacobian_determinant(phi, s.points[i]);
        if (det == 0.0)
            throw input_error("transported_samples: degenerate Jacobian at a sample point");
        out.points.push_back(evaluate_polymap(phi, s.points[i]));
        out.weights.push_back(std::abs(det) * s.weights[i]);
    }
    return out;
}

// Pullback integrand: x maps to A(phi(x), xi) |det grad phi(x)|.
inline OrliczIntegrand integrand_pullback(const OrliczIntegrand& A, const PolyMap<double>& phi,
                                          const SampleSet& s) {
    validate_sample_set(s);
    if (phi.in_dim != s.dimension())
        throw input_error("integrand_pullback: map does not match sample dimension");
    if (phi.in_dim != phi.out_dim)
        throw input_error("integrand_pullback: square map required");
    OrliczIntegrand out;
    out.name = "pullback(" + A.name + ")";
    out.claimed_convex = A.claimed_convex;
    out.evaluate = [A, phi](const std::vector<double>& x, double xi) {
        const double det = detail::jacobian_determinant(phi, x);
        return A.evaluate(evaluate_polymap(phi, x), xi) * std::abs(det);
    };
    return out;
}

inline std::vector<double> make_xi_grid(double xi_max, int n_points = 4096) {
    if (!(xi_max > 0.0) || n_points < 2) throw input_error("make_xi_grid: bad parameters");
    std::vector<double> grid;
    grid.reserve(static_cast<size_t>(n_points));
    for (int i = 0; i < n_points; ++i)
        grid.push_back(xi_max * static_cast<double>(i) / (n_points - 1));
    return grid;
}

// Grid Legendre transform: CA(x, zeta) = max over the grid (and xi = 0) of
// xi zeta - A(x, xi). Monotone and convex in zeta by construction.
inline OrliczIntegrand integrand_dual(const OrliczIntegrand& A, const std::vector<double>& xi_grid) {
    if (xi_grid.empty()) throw input_error("integrand_dual: empty grid");
    OrliczIntegrand out;
    out.name = "dual(" + A.name + ")";
    out.claimed_convex = true;
    out.evaluate = [A, xi_grid](const std::vector<double>& x, double zeta) {
        double best = 0.0;  // the supremand vanishes at xi = 0
        for (double xi : xi_grid) {
            const double a = A.evaluate(x, xi);
            if (std::isnan(a)) throw input_error("integrand: NaN value");
            if (std::isinf(a)) continue;
            best = std::max(best, xi * zeta - a);
        }
        return best;
    };
    return out;
}

// lhs = sum w_i |u_i v_i|, rhs = 2 ||u||_A ||v||_CA with CA the grid dual;
// the generalized Hoelder inequality asserts lhs <= rhs.
inline std::pair<double, double> orlicz_holder_check(const std::vector<double>& u_vals,
                                                     const std::vector<double>& v_vals,
                                                     const OrliczIntegrand& A, const SampleSet& s,
                                                     std::vector<double> xi_grid = {}) {
    validate_sample_set(s);
    if (u_vals.size() != s.points.size() || v_vals.size() != s.points.size())
        throw input_error("orlicz_holder_check: values and sample set differ in length");
    if (xi_grid.empty()) {
        double zeta_max = 1.0;
        for (double v : u_vals) zeta_max = std::max(zeta_max, std::abs(v));
        for (double v : v_vals) zeta_max = std::max(zeta_max, std::abs(v));
        xi_grid = make_xi_grid(8.0 * zeta_max * 4.0);
    }
    std::vector<double> terms;
    terms.reserve(u_vals.size());
    for (size_t i = 0; i < u_vals.size(); ++i)
        terms.push_back(s.weights[i] * std::abs(u_vals[i] * v_vals[i]));
    const double lhs = pairwise_sum(std::move(terms));
    const OrliczIntegrand CA = integrand_dual(A, xi_grid);
    const double rhs = 2.0 * luxemburg_norm(A, u_vals, s) * luxemburg_norm(CA, v_vals, s);
    return {lhs, rhs};
}

// Integrand over point pairs, for the fractional Orlicz seminorm.
struct TwoPointIntegrand {
    std::string name;
    std::function<double(const std::vector<double>&, const std::vector<double>&, double)> evaluate;
};

inline TwoPointIntegrand make_lp_two_point(double p) {
    if (!(p >= 1.0)) throw input_error("make_lp_two_point: exponent must be at least 1");
    return {"lp:" + format_double(p),
            [p](const std::vector<double>&, const std::vector<double>&, double xi) {
                return std::pow(xi, p);
            }};
}

// inf{lambda > 0 : sum_{i != j} w_i w_j B(x_i, x_j, |dv| / (lambda dist^theta))
// dist^{-N} <= 1}, the Luxemburg construction over the off-diagonal pairs.
template <typename V>
double orlicz_slobodeckij(const std::vector<V>& values, const SampleSet& s, double theta,
                          const TwoPointIntegrand& B) {
    validate_sample_set(s);
    if (values.size() != s.points.size())
        throw input_error("orlicz_slobodeckij: values and sample set differ in length");
    if (!(theta > 0.0 && theta < 1.0))
        throw input_error("orlicz_slobodeckij: theta must lie in (0,1)");
    const int N = s.dimension();
    const size_t n = s.points.size();
    struct Pair {
        size_t i, j;
        double diff, scaled_dist, density;
    };
    std::vector<Pair> pairs;
    bool all_zero = true;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            const double dist = point_distance(s.points[i], s.points[j]);
            if (dist == 0.0) throw input_error("orlicz_slobodeckij: coincident sample points");
            const double diff = detail::value_difference(values[i], values[j]);
            if (diff != 0.0) all_zero = false;
            pairs.push_back({i, j, diff, std::pow(dist, theta),
                             s.weights[i] * s.weights[j] * std::pow(dist, -N)});
        }
    if (all_zero) return 0.0;
    auto modular = [&](double lambda) {
        std::vector<double> terms;
        terms.reserve(pairs.size());
        for (const auto& pr : pairs) {
            const double v =
                B.evaluate(s.points[pr.i], s.points[pr.j], pr.diff / (lambda * pr.scaled_dist));
            if (std::isnan(v)) throw input_error("integrand: NaN value");
            if (std::isinf(v)) return kInfinity;
            terms.push_back(pr.density * v);
        }
        return pairwise_sum(std::move(terms));
    };
    return detail::luxemburg_bisect(modular);
}

struct TransformRow {
    std::string label;
    double measured = 0.0;
    double bound = 0.0;
    double ratio = 0.0;
    bool flagged = false;
};

struct TransformReport {
    std::vector<TransformRow> rows;
    double slack = kQuadratureSlack;
};

namespace detail {

inline TransformRow make_row(std::string label, double measured, double bound, double slack) {
    TransformRow row;
    row.label = std::move(label);
    row.measured = measured;
    row.bound = bound;
    row.ratio = bound > 0.0 ? measured / bound : (measured > 0.0 ? kInfinity : 0.0);
    row.flagged = row.ratio > 1.0 + slack;
    return row;
}

} // namespace detail

// Measured discrete seminorms of pullbacks against the bound expressions:
// the scalar composition estimate, the order-zero tensor pullback estimate,
// and the order-m derivative pullback estimate. Soft checks: ratios are
// reported, and a ratio above 1 + slack is flagged.
inline TransformReport seminorm_transform_report(const PolyMap<double>& u,
                                                 const PolyMap<double>& phi, const SampleSet& s,
                                                 const SeminormParams& params, int d, int m) {
    validate_sample_set(s);
    const int N = s.dimension();
    if (params.N != N)
        throw input_error("seminorm_transform_report: params.N does not match the sample dimension");
    const double p = params.p, theta = params.theta, sigma = params.sigma;
    if (!(p >= 1.0)) throw input_error("seminorm_transform_report: p must be at least 1");
    if (!(theta > 0.0 && theta < 1.0))
        throw input_error("seminorm_transform_report: theta must lie in (0,1)");
    if (!(sigma > 0.0 && sigma <= 1.0))
        throw input_error("seminorm_transform_report: sigma must lie in (0,1]");
    if (!std::isinf(p) && !(theta < sigma))
        throw input_error(
            "seminorm_transform_report: theta < sigma is required when p < infinity "
            "(hypothesis of the fractional product estimate)");
    if (std::isinf(p) && !(theta <= sigma))
        throw input_error("seminorm_transform_report: theta <= sigma is required when p = infinity");
    if (m < 0 || d < 0) throw input_error("seminorm_transform_report: negative order");
    if (phi.in_dim != N || phi.out_dim != N)
        throw input_error("seminorm_transform_report: phi must map the sample dimension to itself");
    if (u.in_dim != N)
        throw input_error("seminorm_transform_report: u must live on the image of the samples");

    const size_t n = s.points.size();
    std::vector<Jet<double>> phi_jets, u_jets, pullbacks;
    std::vector<double> dets;
    SampleSet image;
    for (size_t i = 0; i < n; ++i) {
        phi_jets.push_back(jet_of_polymap(phi, s.points[i], m + 1));
        const double det = detail::determinant(phi_jets.back().derivs[1].data, N);
        if (det == 0.0)
            throw input_error("seminorm_transform_report: degenerate Jacobian at a sample point");
        dets.push_back(det);
        image.points.push_back(jet_value(phi_jets.back()));
        image.weights.push_back(std::abs(det) * s.weights[i]);
        u_jets.push_back(jet_of_polymap_field(u, image.points.back(), m, d));
        pullbacks.push_back(pullback_jet(u_jets.back(), phi_jets.back(), m, d));
    }

    const double inv_p = std::isinf(p) ? 0.0 : 1.0 / p;
    const double area = sphere_area(N);
    const double c_sigma = std::isinf(p) ? 1.0 : std::pow(area / ((sigma - theta) * p), inv_p);
    const double c_theta = std::isinf(p) ? 1.0 : std::pow(area / (theta * p), inv_p);

    TransformReport report;

    // Row 1: |u o phi|_{W^{theta,p}(domain)} vs
    //        |u|_{W^{theta,p}(image)} ||det grad phi^{-1}||^{2/p} |phi|_{C^{0,1}}^{theta+N/p}.
    std::vector<Tensor<double>> u_comp;
    for (size_t i = 0; i < n; ++i) u_comp.push_back(u_jets[i].derivs[0]);
    const double measured_scalar = discrete_slobodeckij(u_comp, s, theta, p);
    const double image_semi = discrete_slobodeckij(u_comp, image, theta, p);
    double inv_det_sup = 0.0;
    for (double det : dets) inv_det_sup = std::max(inv_det_sup, 1.0 / std::abs(det));
    double lip = 0.0;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j) {
            const double dist = point_distance(s.points[i], s.points[j]);
            if (dist == 0.0)
                throw input_error("seminorm_transform_report: coincident sample points");
            lip = std::max(lip, point_distance(image.points[i], image.points[j]) / dist);
        }
    const double bound_scalar = image_semi * std::pow(inv_det_sup, 2.0 * inv_p) *
                                std::pow(lip, theta + N * inv_p);
    report.rows.push_back(
        detail::make_row("scalar-transform", measured_scalar, bound_scalar, report.slack));

    // Row 2: |phi^* u|_{W^{theta,p}} vs the product estimate with the factor
    //        tensor otimes^d grad phi.
    std::vector<Tensor<double>> pb_values, psi_values;
    std::vector<double> psi_upper(n, 1.0);
    for (size_t i = 0; i < n; ++i) {
        pb_values.push_back(pullbacks[i].derivs[0]);
        Tensor<double> psi = scalar_tensor(1.0);
        for (int t = 0; t < d; ++t) psi = tensor_product(psi, phi_jets[i].derivs[1]);
        psi_values.push_back(std::move(psi));
        psi_upper[i] = std::pow(spectral_norm_bounds(phi_jets[i].derivs[1], 2.0).upper_bound, d);
    }
    const double measured_tensor = discrete_slobodeckij(pb_values, s, theta, p);
    double psi_sup = 0.0;
    for (double v : psi_upper) psi_sup = std::max(psi_sup, v);
    const double psi_holder = d == 0 ? 0.0 : holder_seminorm(psi_values, s, sigma);
    const double comp_lp = discrete_lp_norm(u_comp, s, p);
    const double bound_tensor = measured_scalar * psi_sup + c_sigma * comp_lp * psi_holder +
                                2.0 * c_theta * comp_lp * psi_sup;
    report.rows.push_back(
        detail::make_row("tensor-transform", measured_tensor, bound_tensor, report.slack));

    // Row 3: |grad^m (phi^* u)|_{W^{theta,p}} vs the three-part sum over k
    //        with the generalized Bell coefficients of the derivative
    //        magnitudes of phi.
    std::vector<Tensor<double>> deriv_values;
    for (size_t i = 0; i < n; ++i) deriv_values.push_back(pullbacks[i].derivs[static_cast<size_t>(m)]);
    const double measured_deriv = discrete_slobodeckij(deriv_values, s, theta, p);
    std::vector<std::vector<double>> phi_upper(n);
    for (size_t i = 0; i < n; ++i)
        for (int j = 1; j <= m + 1; ++j)
            phi_upper[i].push_back(
                spectral_norm_bounds(phi_jets[i].derivs[static_cast<size_t>(j)], 2.0).upper_bound);
    double bound_deriv = 0.0;
    for (int k = 0; k <= m; ++k) {
        std::vector<Tensor<double>> uk;
        std::vector<double> bk;
        for (size_t i = 0; i < n; ++i) {
            uk.push_back(u_jets[i].derivs[static_cast<size_t>(k)]);
            bk.push_back(generalized_bell<double>(k, m, d, phi_upper[i]));
        }
        const double slob_k = discrete_slobodeckij(uk, s, theta, p);
        const double lp_k = discrete_lp_norm(uk, s, p);
        double b_sup = 0.0;
        for (double v : bk) b_sup = std::max(b_sup, v);
        const double b_holder = holder_seminorm(bk, s, sigma);
        bound_deriv += slob_k * b_sup + c_sigma * lp_k * b_holder + 2.0 * c_theta * lp_k * b_sup;
    }
    report.rows.push_back(
        detail::make_row("derivative-pullback", measured_deriv, bound_deriv, report.slack));

    return report;
}

} // namespace faacalc

#endif
