#ifndef FAACALC_JSON_IO_HPP
#define FAACALC_JSON_IO_HPP

// JSON serialization for the exchange types. All scalar entries are encoded
// as strings ("a/b" rationals or shortest round-trip decimals) so that no
// precision is lost in transit; structural integers (dims, exponents) stay
// plain JSON numbers.

#include <string>
#include <vector>

#include <json.hpp>

#include "faacalc/calculus.hpp"
#include "faacalc/errors.hpp"
#include "faacalc/norms.hpp"
#include "faacalc/scalar.hpp"
#include "faacalc/tensor.hpp"

namespace faacalc {

using json = nlohmann::json;

namespace detail {

template <Scalar S>
S scalar_from_json(const json& j) {
    if (j.is_string()) return parse_scalar<S>(j.get<std::string>());
    if (j.is_number()) return parse_scalar<S>(j.dump());
    throw input_error("expected a number encoded as a string");
}

inline int int_from_json(const json& j, const char* what) {
    if (!j.is_number_integer()) throw input_error(std::string("expected an integer for ") + what);
    return j.get<int>();
}

} // namespace detail

template <Scalar S>
json tensor_to_json(const Tensor<S>& t) {
    json j;
    j["cov_arity"] = t.cov_arity;
    j["cov_dim"] = t.cov_dim;
    j["contra_dims"] = t.contra_dims;
    json data = json::array();
    for (const auto& v : t.data) data.push_back(format_scalar(v));
    j["data"] = std::move(data);
    return j;
}

template <Scalar S>
Tensor<S> tensor_from_json(const json& j) {
    if (!j.is_object() || !j.contains("cov_arity") || !j.contains("data"))
        throw input_error("tensor JSON must carry cov_arity and data");
    std::vector<int> contra;
    if (j.contains("contra_dims"))
        for (const auto& d : j["contra_dims"]) contra.push_back(detail::int_from_json(d, "contra_dims"));
    const int cov_arity = detail::int_from_json(j["cov_arity"], "cov_arity");
    const int cov_dim = j.contains("cov_dim") ? detail::int_from_json(j["cov_dim"], "cov_dim") : 0;
    Tensor<S> t = make_tensor<S>(cov_arity, cov_arity > 0 ? cov_dim : 0, contra);
    const auto& data = j["data"];
    if (!data.is_array() || data.size() != t.data.size())
        throw input_error("tensor JSON data length does not match the shape");
    for (size_t i = 0; i < t.data.size(); ++i) t.data[i] = detail::scalar_from_json<S>(data[i]);
    return t;
}

template <Scalar S>
json polymap_to_json(const PolyMap<S>& P) {
    json j;
    j["input_dim"] = P.in_dim;
    j["output_dim"] = P.out_dim;
    json comps = json::array();
    for (const auto& comp : P.components) {
        json list = json::array();
        for (const auto& mono : comp)
            list.push_back({{"coeff", format_scalar(mono.coeff)}, {"exponents", mono.exponents}});
        comps.push_back(std::move(list));
    }
    j["components"] = std::move(comps);
    return j;
}

template <Scalar S>
PolyMap<S> polymap_from_json(const json& j) {
    if (!j.is_object() || !j.contains("input_dim") || !j.contains("output_dim") ||
        !j.contains("components"))
        throw input_error("polynomial map JSON must carry input_dim, output_dim, components");
    PolyMap<S> P;
    P.in_dim = detail::int_from_json(j["input_dim"], "input_dim");
    P.out_dim = detail::int_from_json(j["output_dim"], "output_dim");
    if (P.in_dim < 1 || P.out_dim < 1) throw input_error("polynomial map dimensions must be positive");
    const auto& comps = j["components"];
    if (!comps.is_array() || static_cast<int>(comps.size()) != P.out_dim)
        throw input_error("polynomial map needs one component list per output");
    for (const auto& comp : comps) {
        std::vector<Monomial<S>> list;
        std::vector<std::vector<int>> seen;
        for (const auto& mono : comp) {
            Monomial<S> m;
            m.coeff = detail::scalar_from_json<S>(mono.at("coeff"));
            for (const auto& e : mono.at("exponents")) {
                const int v = detail::int_from_json(e, "exponents");
                if (v < 0) throw input_error("polynomial exponents must be non-negative");
                m.exponents.push_back(v);
            }
            if (static_cast<int>(m.exponents.size()) != P.in_dim)
                throw input_error("polynomial exponent vector length differs from input_dim");
            for (const auto& prev : seen)
                if (prev == m.exponents) throw input_error("duplicate exponent vector in a component");
            seen.push_back(m.exponents);
            list.push_back(std::move(m));
        }
        P.components.push_back(std::move(list));
    }
    return P;
}

template <Scalar S>
json jet_to_json(const Jet<S>& jet) {
    json j;
    json base = json::array();
    for (const auto& v : jet.base_point) base.push_back(format_scalar(v));
    j["base_point"] = std::move(base);
    json derivs = json::array();
    for (const auto& t : jet.derivs) derivs.push_back(tensor_to_json(t));
    j["derivs"] = std::move(derivs);
    return j;
}

// The jet's dimensions, field arity, and order are recovered from the base
// point and the derivative tensors themselves.
template <Scalar S>
Jet<S> jet_from_json(const json& j) {
    if (!j.is_object() || !j.contains("base_point") || !j.contains("derivs"))
        throw input_error("jet JSON must carry base_point and derivs");
    Jet<S> jet;
    for (const auto& v : j["base_point"]) jet.base_point.push_back(detail::scalar_from_json<S>(v));
    jet.in_dim = static_cast<int>(jet.base_point.size());
    const auto& derivs = j["derivs"];
    if (!derivs.is_array() || derivs.empty()) throw input_error("jet JSON needs at least the value tensor");
    for (const auto& t : derivs) jet.derivs.push_back(tensor_from_json<S>(t));
    jet.order = static_cast<int>(jet.derivs.size()) - 1;
    jet.field_arity = jet.derivs[0].cov_arity;
    jet.out_dims = jet.derivs[0].contra_dims;
    for (int k = 0; k <= jet.order; ++k) {
        const auto& t = jet.derivs[static_cast<size_t>(k)];
        if (t.cov_arity != k + jet.field_arity || t.contra_dims != jet.out_dims)
            throw input_error("jet JSON derivative tensors have inconsistent shapes");
        if (t.cov_arity > 0 && t.cov_dim != jet.in_dim)
            throw input_error("jet JSON derivative tensors do not match the base dimension");
    }
    return jet;
}

inline json sample_set_to_json(const SampleSet& s) {
    json j;
    json pts = json::array();
    for (const auto& pt : s.points) {
        json row = json::array();
        for (double c : pt) row.push_back(format_double(c));
        pts.push_back(std::move(row));
    }
    j["points"] = std::move(pts);
    json ws = json::array();
    for (double w : s.weights) ws.push_back(format_double(w));
    j["weights"] = std::move(ws);
    return j;
}

inline SampleSet sample_set_from_json(const json& j) {
    if (!j.is_object() || !j.contains("points") || !j.contains("weights"))
        throw input_error("sample set JSON must carry points and weights");
    SampleSet s;
    for (const auto& row : j["points"]) {
        std::vector<double> pt;
        for (const auto& c : row) pt.push_back(detail::scalar_from_json<double>(c));
        s.points.push_back(std::move(pt));
    }
    for (const auto& w : j["weights"]) s.weights.push_back(detail::scalar_from_json<double>(w));
    validate_sample_set(s);
    return s;
}

inline json margin_report_to_json(const MarginReport& r) {
    return {{"lhs", format_double(r.lhs)},
            {"rhs", format_double(r.rhs)},
            {"margin", format_double(r.margin)}};
}

inline json transform_report_to_json(const TransformReport& r) {
    json rows = json::array();
    for (const auto& row : r.rows)
        rows.push_back({{"label", row.label},
                        {"measured", format_double(row.measured)},
                        {"bound", format_double(row.bound)},
                        {"ratio", format_double(row.ratio)},
                        {"flagged", row.flagged}});
    return {{"rows", std::move(rows)}, {"slack", format_double(r.slack)}};
}

} // namespace faacalc

#endif
