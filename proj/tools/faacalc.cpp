// Command-line front end. Every subcommand wraps exactly one library
// operation; JSON in, JSON (or plain text) out. All numeric payloads are
// strings so nothing is lost in transit. Exit codes: 0 success, 1 domain
// error (a well-posed question with no answer), 2 input error.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "faacalc/acceptance.hpp"
#include "faacalc/bell.hpp"
#include "faacalc/calculus.hpp"
#include "faacalc/errors.hpp"
#include "faacalc/json_io.hpp"
#include "faacalc/norms.hpp"
#include "faacalc/parallel.hpp"
#include "faacalc/partitions.hpp"
#include "faacalc/scalar.hpp"

namespace {

using faacalc::json;

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw faacalc::input_error("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw faacalc::input_error(path + ": " + e.what());
    }
}

bool is_jet_json(const json& j) { return j.is_object() && j.contains("base_point"); }

template <faacalc::Scalar S>
std::vector<S> parse_csv(const std::string& text) {
    std::vector<S> out;
    std::string item;
    std::istringstream stream(text);
    while (std::getline(stream, item, ','))
        out.push_back(faacalc::parse_scalar<S>(item));
    if (out.empty()) throw faacalc::input_error("expected a comma-separated list of numbers");
    return out;
}

template <faacalc::Scalar S>
std::vector<S> parse_point(const std::optional<std::string>& at, const char* who) {
    if (!at) throw faacalc::input_error(std::string(who) + ": --at is required with polynomial inputs");
    return parse_csv<S>(*at);
}

// Reads a map argument as a jet directly, or derives the jet of a polynomial
// map at the given point.
template <faacalc::Scalar S>
faacalc::Jet<S> load_map_jet(const json& j, const std::optional<std::string>& at, int order,
                             const char* who) {
    if (is_jet_json(j)) return faacalc::jet_from_json<S>(j);
    return faacalc::jet_of_polymap(faacalc::polymap_from_json<S>(j), parse_point<S>(at, who),
                                   order);
}

void emit(const json& payload, const std::string& text, const std::string& format) {
    if (format == "json")
        std::cout << payload.dump(2) << "\n";
    else
        std::cout << text;
}

std::string jet_text(const json& jet) {
    std::ostringstream out;
    out << "base point:";
    for (const auto& v : jet["base_point"]) out << " " << v.get<std::string>();
    out << "\n";
    int order = 0;
    for (const auto& t : jet["derivs"]) {
        out << "derivative " << order++ << ":";
        for (const auto& v : t["data"]) out << " " << v.get<std::string>();
        out << "\n";
    }
    return out.str();
}

struct Options {
    std::string format = "json";
    bool exact = false;
    int jobs = 1;
};

void forbid_exact(const Options& opt, const char* who) {
    if (opt.exact)
        throw faacalc::input_error(std::string(who) + ": the exact backend is not available here");
}

int run_partitions(const Options& opt, int m, std::optional<int> k) {
    json items = json::array();
    std::ostringstream text;
    faacalc::SetPartitionEnumerator en(m, k);
    while (auto part = en.next()) {
        json blocks = json::array();
        for (const auto& block : part->blocks) {
            blocks.push_back(block);
            text << "{";
            for (size_t i = 0; i < block.size(); ++i) text << (i ? "," : "") << block[i];
            text << "}";
        }
        items.push_back(std::move(blocks));
        text << "\n";
    }
    emit(items, text.str(), opt.format);
    return 0;
}

template <faacalc::Scalar S>
int run_bell(const Options& opt, int m, int k, const std::string& xs_text, bool generalized,
             int d) {
    const std::vector<S> xs = parse_csv<S>(xs_text);
    if (!generalized) {
        const S value = faacalc::bell_partial<S>(m, k, xs);
        json out{{"m", m}, {"k", k}, {"value", faacalc::format_scalar(value)}};
        emit(out, faacalc::format_scalar(value) + "\n", opt.format);
        return 0;
    }
    const S value = faacalc::generalized_bell<S>(k, m, d, xs);
    json terms = json::array();
    std::ostringstream text;
    for (const auto& [idx, coeff] : faacalc::generalized_scherk(k, m, d)) {
        terms.push_back({{"b", idx.b}, {"h", idx.h}, {"coefficient", coeff.str()}});
        text << "coefficient " << coeff.str() << " b";
        for (int b : idx.b) text << " " << b;
        text << " h";
        for (int h : idx.h) text << " " << h;
        text << "\n";
    }
    text << faacalc::format_scalar(value) << "\n";
    json out{{"k", k}, {"m", m},
             {"d", d}, {"value", faacalc::format_scalar(value)},
             {"terms", std::move(terms)}};
    emit(out, text.str(), opt.format);
    return 0;
}

template <faacalc::Scalar S>
int run_derive(const Options& opt, const std::string& f_path, const std::string& phi_path,
               const std::optional<std::string>& at, int order) {
    const json phi_json = read_json_file(phi_path);
    const json f_json = read_json_file(f_path);
    faacalc::Jet<S> phi_jet = load_map_jet<S>(phi_json, at, order, "derive");
    faacalc::Jet<S> f_jet =
        is_jet_json(f_json)
            ? faacalc::jet_from_json<S>(f_json)
            : faacalc::jet_of_polymap(faacalc::polymap_from_json<S>(f_json),
                                      faacalc::jet_value(phi_jet), order);
    json out = faacalc::jet_to_json(faacalc::compose_jet(f_jet, phi_jet, order));
    emit(out, jet_text(out), opt.format);
    return 0;
}

template <faacalc::Scalar S>
int run_pullback(const Options& opt, const std::string& u_path, const std::string& phi_path,
                 const std::optional<std::string>& at, int order, int d) {
    const json phi_json = read_json_file(phi_path);
    const json u_json = read_json_file(u_path);
    const int need = d > 0 ? order + 1 : order;
    faacalc::Jet<S> phi_jet = load_map_jet<S>(phi_json, at, need, "pullback");
    faacalc::Jet<S> u_jet =
        is_jet_json(u_json)
            ? faacalc::jet_from_json<S>(u_json)
            : faacalc::jet_of_polymap_field(faacalc::polymap_from_json<S>(u_json),
                                            faacalc::jet_value(phi_jet), order, d);
    json out = faacalc::jet_to_json(faacalc::pullback_jet(u_jet, phi_jet, order, d));
    emit(out, jet_text(out), opt.format);
    return 0;
}

template <faacalc::Scalar S>
int run_inverse(const Options& opt, const std::string& phi_path,
                const std::optional<std::string>& at, int order) {
    faacalc::Jet<S> phi_jet = load_map_jet<S>(read_json_file(phi_path), at, order, "inverse");
    json out = faacalc::jet_to_json(faacalc::inverse_jet(phi_jet, order));
    emit(out, jet_text(out), opt.format);
    return 0;
}

int run_bound(const Options& opt, const std::string& u_path, const std::string& phi_path,
              const std::string& at, int order, int d, double p) {
    forbid_exact(opt, "bound");
    const faacalc::PolyMap<double> u = faacalc::polymap_from_json<double>(read_json_file(u_path));
    const faacalc::PolyMap<double> phi =
        faacalc::polymap_from_json<double>(read_json_file(phi_path));
    const std::vector<double> x = parse_csv<double>(at);
    const faacalc::MarginReport rep = faacalc::check_pullback_inequality(u, phi, x, order, d, p);
    const double ratio = rep.rhs > 0 ? rep.lhs / rep.rhs
                         : rep.lhs > 0 ? std::numeric_limits<double>::infinity()
                                       : 0.0;
    json out{{"measured", faacalc::format_double(rep.lhs)},
             {"bound", faacalc::format_double(rep.rhs)},
             {"ratio", faacalc::format_double(ratio)},
             {"margin", faacalc::format_double(rep.margin)}};
    std::ostringstream text;
    text << "measured " << faacalc::format_double(rep.lhs) << "\nbound "
         << faacalc::format_double(rep.rhs) << "\nratio " << faacalc::format_double(ratio) << "\n";
    emit(out, text.str(), opt.format);
    return 0;
}

// Sample values come from --u (a scalar polynomial evaluated at the points)
// or from a "values" array stored next to the points.
std::vector<double> resolve_values(const json& sample_json, const faacalc::SampleSet& s,
                                   const std::optional<std::string>& u_path, int jobs,
                                   const char* who) {
    if (u_path) {
        const faacalc::PolyMap<double> u =
            faacalc::polymap_from_json<double>(read_json_file(*u_path));
        if (u.out_dim != 1)
            throw faacalc::input_error(std::string(who) + ": --u must be scalar-valued");
        std::vector<double> values(s.points.size());
        faacalc::parallel_for(s.points.size(), jobs, [&](size_t i) {
            values[i] = faacalc::evaluate_polymap(u, s.points[i])[0];
        });
        return values;
    }
    if (sample_json.contains("values")) {
        std::vector<double> values;
        for (const auto& v : sample_json["values"])
            values.push_back(faacalc::parse_double(v.get<std::string>()));
        if (values.size() != s.points.size())
            throw faacalc::input_error(std::string(who) + ": values and points differ in length");
        return values;
    }
    throw faacalc::input_error(std::string(who) +
                               ": provide --u or a \"values\" array in the sample file");
}

int run_seminorm(const Options& opt, const std::string& kind, const std::string& samples_path,
                 const std::optional<std::string>& u_path, const std::optional<std::string>& phi_path,
                 double p, double theta, double sigma, int order, int d) {
    forbid_exact(opt, "seminorm");
    const json sample_json = read_json_file(samples_path);
    const faacalc::SampleSet s = faacalc::sample_set_from_json(sample_json);
    if (kind == "transform") {
        if (!u_path || !phi_path)
            throw faacalc::input_error("seminorm: transform needs --u and --phi");
        const auto u = faacalc::polymap_from_json<double>(read_json_file(*u_path));
        const auto phi = faacalc::polymap_from_json<double>(read_json_file(*phi_path));
        faacalc::SeminormParams params{p, theta, sigma, s.dimension()};
        const faacalc::TransformReport rep =
            faacalc::seminorm_transform_report(u, phi, s, params, d, order);
        json out = faacalc::transform_report_to_json(rep);
        std::ostringstream text;
        for (const auto& row : rep.rows)
            text << row.label << " measured " << faacalc::format_double(row.measured) << " bound "
                 << faacalc::format_double(row.bound) << " ratio "
                 << faacalc::format_double(row.ratio) << (row.flagged ? " flagged" : "") << "\n";
        emit(out, text.str(), opt.format);
        return 0;
    }
    const std::vector<double> values = resolve_values(sample_json, s, u_path, opt.jobs, "seminorm");
    double value = 0.0;
    if (kind == "lp")
        value = faacalc::discrete_lp_norm(values, s, p);
    else if (kind == "slobodeckij")
        value = faacalc::discrete_slobodeckij(values, s, theta, p);
    else if (kind == "holder")
        value = faacalc::holder_seminorm(values, s, theta);
    else
        throw faacalc::input_error("seminorm: unknown kind " + kind);
    json out{{"kind", kind}, {"value", faacalc::format_double(value)}};
    emit(out, faacalc::format_double(value) + "\n", opt.format);
    return 0;
}

faacalc::OrliczIntegrand parse_integrand(const std::string& name) {
    if (name == "exp") return faacalc::make_exp_integrand();
    if (name.rfind("lp:", 0) == 0) return faacalc::make_lp_integrand(faacalc::parse_double(name.substr(3)));
    if (name.rfind("double-phase:", 0) == 0) {
        const std::string args = name.substr(13);
        const size_t comma = args.find(',');
        if (comma == std::string::npos)
            throw faacalc::input_error("orlicz: double-phase needs two exponents, e.g. double-phase:2,3");
        return faacalc::make_double_phase_integrand(faacalc::parse_double(args.substr(0, comma)),
                                                    faacalc::parse_double(args.substr(comma + 1)));
    }
    throw faacalc::input_error("orlicz: unknown integrand " + name +
                               " (expected lp:p, exp, or double-phase:p,q)");
}

int run_orlicz(const Options& opt, const std::string& integrand_name,
               const std::string& samples_path, const std::optional<std::string>& u_path,
               bool dual, double xi_max, int xi_points) {
    forbid_exact(opt, "orlicz");
    const json sample_json = read_json_file(samples_path);
    const faacalc::SampleSet s = faacalc::sample_set_from_json(sample_json);
    const std::vector<double> values = resolve_values(sample_json, s, u_path, opt.jobs, "orlicz");
    faacalc::OrliczIntegrand A = parse_integrand(integrand_name);
    if (dual) {
        double top = xi_max;
        if (top <= 0) {
            top = 1.0;
            for (double v : values) top = std::max(top, std::abs(v));
            top *= 32.0;
        }
        A = faacalc::integrand_dual(A, faacalc::make_xi_grid(top, xi_points));
    }
    const double value = faacalc::luxemburg_norm(A, values, s);
    json out{{"integrand", A.name}, {"value", faacalc::format_double(value)}};
    emit(out, faacalc::format_double(value) + "\n", opt.format);
    return 0;
}

int run_verify(const Options& opt, bool format_given) {
    forbid_exact(opt, "verify");
    // This command's natural output is a pass/fail table, so text is the
    // default unless the caller asked for JSON explicitly.
    if (format_given && opt.format == "json") {
        json rows = json::array();
        int failures = 0;
        for (const auto& r : faacalc::acceptance::run_all(opt.jobs)) {
            rows.push_back({{"number", r.number},
                            {"name", r.name},
                            {"passed", r.passed},
                            {"seconds", faacalc::format_double(r.seconds)},
                            {"detail", r.detail}});
            if (!r.passed) ++failures;
        }
        std::cout << rows.dump(2) << "\n";
        return failures == 0 ? 0 : 1;
    }
    return faacalc::acceptance::run_and_report(std::cout, opt.jobs) == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"higher-order chain rules, tensor pullbacks, and discrete norm bounds"};
    app.require_subcommand(1);
    app.fallthrough();

    Options opt;
    app.add_option("--format", opt.format, "output format")
        ->check(CLI::IsMember({"json", "text"}))
        ->capture_default_str();
    app.add_flag("--exact", opt.exact, "use exact rational arithmetic");
    app.add_option("--jobs", opt.jobs, "worker threads for independent work")
        ->check(CLI::PositiveNumber);

    auto* partitions = app.add_subcommand("partitions", "enumerate set partitions");
    int pa_m = 0;
    std::optional<int> pa_k;
    partitions->add_option("--m", pa_m, "ground set size")->required();
    partitions->add_option("--k", pa_k, "number of blocks");

    auto* bell = app.add_subcommand("bell", "evaluate Bell polynomials");
    int be_m = 0, be_k = 0, be_d = 0;
    bool be_generalized = false;
    std::string be_xs;
    bell->add_option("--m", be_m, "order")->required();
    bell->add_option("--k", be_k, "number of blocks")->required();
    bell->add_option("--xs", be_xs, "comma-separated coefficients")->required();
    bell->add_flag("--generalized", be_generalized, "evaluate the tensor-field variant");
    bell->add_option("--d", be_d, "field arity for --generalized");

    auto* derive = app.add_subcommand("derive", "derivatives of a composition");
    std::string de_f, de_phi;
    std::optional<std::string> de_at;
    int de_order = 1;
    derive->add_option("--f", de_f, "outer map (polynomial or jet JSON)")->required();
    derive->add_option("--phi", de_phi, "inner map (polynomial or jet JSON)")->required();
    derive->add_option("--at", de_at, "base point, comma-separated");
    derive->add_option("--order", de_order, "derivative order")->required();

    auto* pullback = app.add_subcommand("pullback", "derivatives of a tensor-field pullback");
    std::string pu_u, pu_phi;
    std::optional<std::string> pu_at;
    int pu_order = 1, pu_d = 0;
    pullback->add_option("--u", pu_u, "field (polynomial or jet JSON)")->required();
    pullback->add_option("--phi", pu_phi, "transformation (polynomial or jet JSON)")->required();
    pullback->add_option("--at", pu_at, "base point, comma-separated");
    pullback->add_option("--order", pu_order, "derivative order")->required();
    pullback->add_option("--d", pu_d, "covariant arity of the field");

    auto* inverse = app.add_subcommand("inverse", "derivatives of an inverse map");
    std::string in_phi;
    std::optional<std::string> in_at;
    int in_order = 1;
    inverse->add_option("--phi", in_phi, "map (polynomial or jet JSON)")->required();
    inverse->add_option("--at", in_at, "base point, comma-separated");
    inverse->add_option("--order", in_order, "derivative order")->required();

    auto* bound = app.add_subcommand("bound", "pointwise pullback bound check");
    std::string bo_u, bo_phi, bo_at;
    int bo_order = 1, bo_d = 0;
    double bo_p = 2.0;
    bound->add_option("--u", bo_u, "field polynomial JSON")->required();
    bound->add_option("--phi", bo_phi, "transformation polynomial JSON")->required();
    bound->add_option("--at", bo_at, "base point, comma-separated")->required();
    bound->add_option("--order", bo_order, "derivative order")->required();
    bound->add_option("--d", bo_d, "covariant arity of the field");
    bound->add_option("--p", bo_p, "norm exponent");

    auto* seminorm = app.add_subcommand("seminorm", "discrete seminorms and transport reports");
    std::string se_kind, se_samples;
    std::optional<std::string> se_u, se_phi;
    double se_p = 2.0, se_theta = 0.5, se_sigma = 1.0;
    int se_order = 1, se_d = 0;
    seminorm->add_option("--kind", se_kind, "lp | slobodeckij | holder | transform")->required();
    seminorm->add_option("--samples", se_samples, "sample set JSON")->required();
    seminorm->add_option("--u", se_u, "polynomial JSON supplying the values");
    seminorm->add_option("--phi", se_phi, "transformation polynomial (transform kind)");
    seminorm->add_option("--p", se_p, "integrability exponent");
    seminorm->add_option("--theta", se_theta, "fractional smoothness");
    seminorm->add_option("--sigma", se_sigma, "modulus-of-continuity exponent (transform kind)");
    seminorm->add_option("--order", se_order, "derivative order (transform kind)");
    seminorm->add_option("--d", se_d, "field arity (transform kind)");

    auto* orlicz = app.add_subcommand("orlicz", "gauge norms for growth integrands");
    std::string or_integrand = "lp:2", or_samples;
    std::optional<std::string> or_u;
    bool or_dual = false;
    double or_xi_max = 0.0;
    int or_xi_points = 4096;
    orlicz->add_option("--integrand", or_integrand, "lp:p | exp | double-phase:p,q");
    orlicz->add_option("--samples", or_samples, "sample set JSON")->required();
    orlicz->add_option("--u", or_u, "polynomial JSON supplying the values");
    orlicz->add_flag("--dual", or_dual, "use the conjugate integrand");
    orlicz->add_option("--xi-max", or_xi_max, "grid top for the conjugate (0 = automatic)");
    orlicz->add_option("--xi-points", or_xi_points, "grid resolution for the conjugate")
        ->check(CLI::PositiveNumber);

    auto* verify = app.add_subcommand("verify", "run the acceptance checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n\n" << app.help();
        return 2;
    }

    try {
        if (partitions->parsed()) return run_partitions(opt, pa_m, pa_k);
        if (bell->parsed())
            return opt.exact ? run_bell<faacalc::rational>(opt, be_m, be_k, be_xs, be_generalized, be_d)
                             : run_bell<double>(opt, be_m, be_k, be_xs, be_generalized, be_d);
        if (derive->parsed())
            return opt.exact ? run_derive<faacalc::rational>(opt, de_f, de_phi, de_at, de_order)
                             : run_derive<double>(opt, de_f, de_phi, de_at, de_order);
        if (pullback->parsed())
            return opt.exact
                       ? run_pullback<faacalc::rational>(opt, pu_u, pu_phi, pu_at, pu_order, pu_d)
                       : run_pullback<double>(opt, pu_u, pu_phi, pu_at, pu_order, pu_d);
        if (inverse->parsed())
            return opt.exact ? run_inverse<faacalc::rational>(opt, in_phi, in_at, in_order)
                             : run_inverse<double>(opt, in_phi, in_at, in_order);
        if (bound->parsed()) return run_bound(opt, bo_u, bo_phi, bo_at, bo_order, bo_d, bo_p);
        if (seminorm->parsed())
            return run_seminorm(opt, se_kind, se_samples, se_u, se_phi, se_p, se_theta, se_sigma,
                                se_order, se_d);
        if (orlicz->parsed())
            return run_orlicz(opt, or_integrand, or_samples, or_u, or_dual, or_xi_max,
                              or_xi_points);
        if (verify->parsed()) return run_verify(opt, app.count("--format") > 0);
        throw faacalc::input_error("no subcommand given");
    } catch (const faacalc::input_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const faacalc::domain_error& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 1;
    } catch (const json::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    }
}
