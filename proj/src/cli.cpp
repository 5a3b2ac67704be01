#include "conical/cli.hpp"

#include "conical/bochner.hpp"
#include "conical/extensions.hpp"
#include "conical/frobenius.hpp"
#include "conical/oneform.hpp"
#include "conical/spectral.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

namespace conical::cli {

using nlohmann::json;

namespace {

const std::set<std::string> kKnownFields{"family", "beta",  "n",     "mobius", "extension", "k_max", "lambda_max",
                                         "lambda", "field", "scale", "tol",    "exact"};

std::string number_text(const json& j, const std::string& field) {
    if (j.is_string()) return j.get<std::string>();
    if (j.is_number_integer()) return std::to_string(j.get<long long>());
    if (j.is_number()) return j.dump();
    throw config_error("InvalidField", "field \"" + field + "\" must be a number or a \"p/q\" string");
}

template <class T>
T typed(const json& j, const std::string& field) {
    try {
        return j.get<T>();
    } catch (const json::exception&) {
        throw config_error("InvalidField", "field \"" + field + "\" has the wrong type");
    }
}

std::optional<long long> parse_integer(std::string_view s) {
    long long v = 0;
    const auto* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc() || ptr != end || s.empty()) return std::nullopt;
    return v;
}

Complex complex_entry(const std::array<std::string, 2>& e, const std::string& field) {
    return {parse_number(e[0], field).value, parse_number(e[1], field).value};
}

std::optional<GaussianRational> exact_entry(const std::array<std::string, 2>& e, const std::string& field) {
    auto re = parse_number(e[0], field), im = parse_number(e[1], field);
    if (!re.exact || !im.exact) return std::nullopt;
    return GaussianRational(*re.exact, *im.exact);
}

int default_k_max(const MetricSpec& spec) { return singular_count(spec.beta()) + 3; }

SpectralOptions spectral_options(const RunConfig& c) {
    SpectralOptions o;
    o.root_tol = c.tol;
    return o;
}

void require_symmetric(const MetricSpec& spec) {
    if (!spec.is_rotationally_symmetric())
        throw config_error("NonRotationalMetric", "this command needs a football or a power cover with unitary m");
}

json point_json(const ExtendedComplex& p) {
    if (p.is_infinite()) return "inf";
    return json::array({p.value().real(), p.value().imag()});
}

std::string rational_text(const Rational& r) {
    std::ostringstream os;
    os << r;
    return os.str();
}

}  // namespace

ParsedNumber parse_number(std::string_view text, std::string_view field) {
    const std::string where = "field \"" + std::string(field) + "\": ";
    if (const auto slash = text.find('/'); slash != std::string_view::npos) {
        auto p = parse_integer(text.substr(0, slash));
        auto q = parse_integer(text.substr(slash + 1));
        if (!p || !q || *q == 0) throw config_error("InvalidNumber", where + "malformed rational \"" + std::string(text) + "\"");
        Rational r(*p, *q);
        return {static_cast<double>(r), r};
    }
    if (auto i = parse_integer(text)) return {static_cast<double>(*i), Rational(*i)};
    double v = 0.0;
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc() || ptr != end || text.empty() || !std::isfinite(v))
        throw config_error("InvalidNumber", where + "cannot parse \"" + std::string(text) + "\"");
    return {v, std::nullopt};
}

RunConfig parse_config(const json& j) {
    if (!j.is_object()) throw config_error("InvalidConfig", "config must be a JSON object");
    for (const auto& [key, value] : j.items())
        if (!kKnownFields.count(key)) throw config_error("UnknownField", "unknown config field \"" + key + "\"");

    RunConfig c;
    if (j.contains("family")) c.family = typed<std::string>(j["family"], "family");
    if (c.family != "football" && c.family != "power_cover")
        throw config_error("InvalidField", "field \"family\" must be \"football\" or \"power_cover\"");
    if (j.contains("beta")) c.beta = number_text(j["beta"], "beta");
    if (j.contains("n")) c.n = typed<int>(j["n"], "n");
    if (j.contains("mobius")) {
        const auto& m = j["mobius"];
        if (!m.is_array() || m.size() != 4) throw config_error("InvalidField", "field \"mobius\" must list a, b, c, d");
        std::array<std::array<std::string, 2>, 4> entries;
        for (std::size_t i = 0; i < 4; ++i) {
            if (m[i].is_array()) {
                if (m[i].size() != 2) throw config_error("InvalidField", "field \"mobius\" entries must be [re, im]");
                entries[i] = {number_text(m[i][0], "mobius"), number_text(m[i][1], "mobius")};
            } else {
                entries[i] = {number_text(m[i], "mobius"), "0"};
            }
        }
        c.mobius = entries;
    }
    if (j.contains("extension")) c.extension = typed<std::string>(j["extension"], "extension");
    parse_extension(c.extension);
    if (j.contains("k_max")) c.k_max = typed<int>(j["k_max"], "k_max");
    if (j.contains("lambda_max")) c.lambda_max = typed<double>(j["lambda_max"], "lambda_max");
    if (j.contains("lambda")) c.lambda = number_text(j["lambda"], "lambda");
    if (j.contains("field")) c.field = typed<std::string>(j["field"], "field");
    parse_field_selector(c.field);
    if (j.contains("scale")) c.scale = typed<double>(j["scale"], "scale");
    if (j.contains("tol")) c.tol = typed<double>(j["tol"], "tol");
    if (j.contains("exact")) c.exact = typed<bool>(j["exact"], "exact");

    if (c.family == "football") {
        if (c.beta.empty()) throw config_error("MissingField", "football needs field \"beta\"");
        if (parse_number(c.beta, "beta").value <= 0.0) throw config_error("InvalidBeta", "field \"beta\" must be positive");
    } else if (c.n < 2) {
        throw config_error("MissingField", "power_cover needs field \"n\" >= 2");
    }
    parse_number(c.lambda, "lambda");
    if (c.k_max && *c.k_max < 0) throw config_error("InvalidField", "field \"k_max\" must be non-negative");
    if (!(c.lambda_max > 0.05)) throw config_error("InvalidField", "field \"lambda_max\" must exceed 0.05");
    if (!(c.tol > 0.0)) throw config_error("InvalidField", "field \"tol\" must be positive");
    if (!(c.scale != 0.0) || !std::isfinite(c.scale)) throw config_error("InvalidField", "field \"scale\" must be nonzero");
    return c;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("ConfigNotFound", "cannot open config file " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    const std::string text = buffer.str();
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        const auto upto = text.substr(0, std::min(text.size(), e.byte));
        const long line = 1 + std::count(upto.begin(), upto.end(), '\n');
        throw config_error("MalformedConfig", path + ":" + std::to_string(line) + ": " + e.what());
    }
    return parse_config(j);
}

json to_json(const RunConfig& c) {
    json j;
    j["family"] = c.family;
    if (!c.beta.empty()) j["beta"] = c.beta;
    if (c.n != 0) j["n"] = c.n;
    if (c.mobius) {
        json m = json::array();
        for (const auto& e : *c.mobius) m.push_back(json::array({e[0], e[1]}));
        j["mobius"] = m;
    }
    j["extension"] = c.extension;
    if (c.k_max) j["k_max"] = *c.k_max;
    j["lambda_max"] = c.lambda_max;
    j["lambda"] = c.lambda;
    j["field"] = c.field;
    j["scale"] = c.scale;
    j["tol"] = c.tol;
    j["exact"] = c.exact;
    return j;
}

MetricSpec build_metric(const RunConfig& c) {
    if (c.family == "football") {
        const auto b = parse_number(c.beta, "beta");
        if (c.exact && !b.exact) throw config_error("NonRationalInput", "exact mode needs beta as an integer or \"p/q\"");
        return MetricSpec::football(b.exact ? Beta(*b.exact) : Beta(b.value));
    }
    if (!c.mobius) return MetricSpec::power_cover(c.n);
    const auto& m = *c.mobius;
    if (c.exact) {
        std::array<GaussianRational, 4> e;
        for (std::size_t i = 0; i < 4; ++i) {
            auto x = exact_entry(m[i], "mobius");
            if (!x) throw config_error("NonRationalInput", "exact mode needs rational mobius entries");
            e[i] = *x;
        }
        return MetricSpec::power_cover(c.n, ExactMoebius{e[0], e[1], e[2], e[3]});
    }
    return MetricSpec::power_cover(c.n, Moebius{complex_entry(m[0], "mobius"), complex_entry(m[1], "mobius"),
                                                complex_entry(m[2], "mobius"), complex_entry(m[3], "mobius")});
}

int exit_code(ErrorClass cls) {
    switch (cls) {
        case ErrorClass::Config: return 2;
        case ErrorClass::Numerical: return 3;
        case ErrorClass::TheoremViolation: return 4;
    }
    return 3;
}

json error_payload(std::string_view stage, const Error& e) {
    return {{"error", {{"stage", std::string(stage)}, {"kind", e.kind()}, {"message", e.what()}}}};
}

json Runner::run(std::string_view command) {
    stage_ = "config";
    status_ = 0;
    json body;
    if (command == "spectrum") body = spectrum();
    else if (command == "eigenspace") body = eigenspace();
    else if (command == "bochner-check") body = bochner_check();
    else if (command == "reduce") body = reduce();
    else if (command == "series-verify") body = series_verify();
    else if (command == "profile") body = profile();
    else throw config_error("UnknownCommand", "unknown command \"" + std::string(command) + "\"");
    body["command"] = std::string(command);
    body["config"] = to_json(config_);
    return body;
}

json Runner::spectrum() {
    const MetricSpec spec = build_metric(config_);
    require_symmetric(spec);
    const int k_max = config_.k_max.value_or(default_k_max(spec));
    stage_ = "spectrum";
    const auto report = conical::spectrum(spec.beta(), parse_extension(config_.extension), k_max, 0.05,
                                          config_.lambda_max, spectral_options(config_));
    json modes = json::array();
    for (const auto& m : report.modes) {
        json values = json::array();
        for (const auto& e : m.eigenvalues)
            values.push_back({{"lambda", e.lambda}, {"parity", std::string(to_string(e.parity))}, {"residual", e.residual}});
        modes.push_back({{"k", m.k}, {"eigenvalues", values}});
    }
    return {{"modes", modes}, {"lambda1", report.lambda1}};
}

json Runner::eigenspace() {
    const MetricSpec spec = build_metric(config_);
    const int k_max = config_.k_max.value_or(default_k_max(spec));
    stage_ = "eigenspace";
    const auto r = two_eigenspace(spec, k_max, spectral_options(config_));
    json w = json::array();
    for (const auto& [k, value] : r.wronskians) w.push_back({{"k", k}, {"value", value}});
    return {{"two_eigenspace_real_dim", r.dimension},
            {"extra_modes", r.extra_modes},
            {"mode0_residual", r.mode0_residual},
            {"wronskians", w},
            {"singular_count", singular_count(spec.beta())}};
}

json Runner::bochner_check() {
    const MetricSpec spec = build_metric(config_);
    require_symmetric(spec);
    const auto opts = spectral_options(config_);
    stage_ = "eigenfunction";
    auto modal = catalog_modal_eigenfunction(spec, parse_field_selector(config_.field));
    for (auto& m : modal.modes) m.amplitude *= config_.scale;

    stage_ = "classification";
    json poles = json::array();
    for (std::size_t cone = 0; cone < 2; ++cone) {
        const auto pc = pole_order_at_cone(spec, modal, cone);
        poles.push_back({{"cone", point_json(pc.cone)}, {"order", pc.order}});
    }

    stage_ = "bochner";
    const auto catalog = bochner_balance(spec, modal, opts);
    if (catalog.lhs > 1e-10 * std::max(1.0, catalog.scale))
        throw theorem_violation("BochnerImbalance", "a lambda = 2 eigenfunction has a non-holomorphic gradient field");

    // First mode-0 eigenvalue above 2 as a control with λ > 2.
    const double beta = spec.beta().value();
    ModeSpectralProblem p{beta, 0, parse_extension(config_.extension), 2.5, std::min(config_.lambda_max, 30.0), opts};
    json higher = nullptr;
    const auto values = eigenvalue_scan(p);
    if (!values.empty()) {
        ModalEigenfunction f{beta, values.front().lambda, p.extension, {{0, Complex(1.0)}}};
        const auto b = bochner_balance(spec, f, opts);
        const double gap = std::abs(b.lhs - b.rhs) / b.rhs;
        if (gap > 1e-3) throw theorem_violation("BochnerImbalance", "integrated Bochner identity fails for lambda > 2");
        higher = {{"lambda", values.front().lambda}, {"lhs", b.lhs}, {"rhs", b.rhs}, {"scale", b.scale},
                  {"relative_gap", gap}};
    }
    return {{"bochner_balance", {{"lhs", catalog.lhs}, {"rhs", catalog.rhs}, {"scale", catalog.scale}}},
            {"control", higher},
            {"pole_orders", poles}};
}

json Runner::reduce() {
    const MetricSpec spec = build_metric(config_);
    const bool symmetric = spec.is_rotationally_symmetric();
    const auto opts = spectral_options(config_);
    json out;

    json dim = nullptr;
    if (symmetric) {
        stage_ = "eigenspace";
        dim = two_eigenspace(spec, config_.k_max.value_or(default_k_max(spec)), opts).dimension;
    }
    out["two_eigenspace_real_dim"] = dim;

    stage_ = "eigenfunction";
    const CatalogEigenfunction eig{spec, parse_field_selector(config_.field), config_.scale};
    const auto c = extremal_constant(eig);
    if (c.identity_residual > 1e-8)
        throw theorem_violation("ExtremalIdentityViolation", "phi_z F = C^2 - phi^2 fails on the sample grid");
    out["extremal_constant"] = {{"C", c.value}, {"identity_residual", c.identity_residual}, {"grid_max", c.grid_max}};

    stage_ = "one_form";
    const auto omega = CharacterOneForm::from_field(eig.field(), c.value);
    out["field"] = omega.field()->to_string();

    stage_ = "residues";
    const auto res = residues(omega);
    json table = json::array();
    for (const auto& r : res) table.push_back({{"point", point_json(r.point)}, {"residue", r.residue}});
    out["residues"] = table;
    json div = json::array();
    for (const auto& d : divisor(omega))
        if (d.order > 0) div.push_back({{"point", point_json(d.point)}, {"order", d.order}});
    out["zeros"] = div;

    stage_ = "divisor";
    const auto check = divisor_relation_check(omega, spec);
    out["divisor_check"] = check.ok;
    out["divisor"] = {{"degree", check.degree}, {"max_discrepancy", check.max_discrepancy},
                      {"residue_sum", check.residue_sum}};
    if (!check.ok) throw theorem_violation("DivisorRelationViolation", check.report);

    stage_ = "monodromy";
    const Monodromy mono = classify_monodromy(omega);
    out["monodromy"] = std::string(to_string(mono));
    if ((mono == Monodromy::Trivial) != spec.beta().is_integer())
        throw theorem_violation("MonodromyMismatch", "monodromy class disagrees with the integrality of the cone angle");
    if (!dim.is_null() && (mono == Monodromy::Trivial) != (dim.get<int>() == 3))
        throw theorem_violation("MonodromyMismatch", "trivial monodromy must coincide with a 3-dimensional eigenspace");

    json cross = nullptr;
    if (symmetric) {
        stage_ = "sampled_residues";
        const auto modal = catalog_modal_eigenfunction(spec, eig.which);
        const double scale = config_.scale;
        const auto sampled = CharacterOneForm::from_samples(
            [&](const std::vector<Complex>& z) {
                std::vector<Complex> x;
                for (const auto& s : sample_modal_field(modal, z, opts)) x.push_back(scale * s.x);
                return x;
            },
            c.value);
        std::vector<ExtendedComplex> points;
        for (const auto& r : res) points.push_back(r.point);
        double diff = 0.0;
        const auto contour = contour_residues(sampled, points);
        for (std::size_t i = 0; i < res.size(); ++i) diff = std::max(diff, std::abs(contour[i].residue - res[i].residue));
        if (diff > 1e-6)
            throw numerical_error("SampledResidueMismatch", "series-built field disagrees with the closed form");
        cross = {{"max_residue_difference", diff}};
    }
    out["sampled_cross_check"] = cross;

    stage_ = "reconstruction";
    std::vector<Complex> grid;
    for (double r : {0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 1.25, 1.6})
        for (int j = 0; j < 16; ++j) grid.push_back(std::polar(r, 2.0 * std::numbers::pi * (j + 0.5) / 16 - std::numbers::pi));
    Complex basepoint(0.5);
    for (const auto& r : res)
        if (!r.point.is_infinite() && std::abs(r.point.value() - basepoint) < 0.05) basepoint = Complex(0.45, 0.05);
    const auto samples = reconstruct_on_grid(omega, eig, basepoint, grid);

    stage_ = "verification";
    const auto pb = verify_pullback(samples, omega, spec);
    const double eigen_err = verify_eigen_identity(samples, c.value);
    const auto crit = critical_point_check(omega, eig);
    const double period = real_period_defect(omega);
    out["verification"] = {{"samples", samples.size()},
                           {"pullback_error", pb.metric},
                           {"modulus_error", pb.modulus},
                           {"eigen_identity_error", eigen_err},
                           {"critical_points", crit.ok},
                           {"real_period_defect", period}};
    if (pb.metric >= 1e-7 || eigen_err >= 1e-8 || pb.modulus >= 1e-7)
        throw numerical_error("ReconstructionInaccurate", "reconstructed developing map misses the verification bounds");
    if (!crit.ok) throw theorem_violation("CriticalPointViolation", crit.report);
    if (period > 1e-10) throw theorem_violation("NonExactRealPart", "Re of a loop integral of omega is nonzero");

    if (symmetric) {
        stage_ = "bochner";
        auto modal = catalog_modal_eigenfunction(spec, eig.which);
        for (auto& m : modal.modes) m.amplitude *= config_.scale;
        const auto b = bochner_balance(spec, modal, opts);
        out["verification"]["bochner_balance"] = {{"lhs", b.lhs}, {"rhs", b.rhs}, {"scale", b.scale}};
    }
    return out;
}

json Runner::series_verify() {
    if (!config_.exact) throw config_error("ExactModeRequired", "series-verify runs in exact mode; set \"exact\": true");
    const MetricSpec spec = build_metric(config_);
    const auto beta_exact = spec.beta().exact();
    if (!beta_exact) throw config_error("NonRationalInput", "series-verify needs a rational beta");
    const auto lam = parse_number(config_.lambda, "lambda");
    if (!lam.exact) throw config_error("NonRationalInput", "series-verify needs a rational lambda");
    const Rational& beta = *beta_exact;
    const int J = singular_count(spec.beta());
    constexpr long kTerms = 50;
    const std::string range = "k in [" + std::to_string(-J) + ", " + std::to_string(J) + "], j <= 50";

    stage_ = "series";
    json rows = json::array();
    auto row = [&](const std::string& name, const std::string& rng, std::optional<std::pair<int, long>> bad) {
        json r{{"name", name}, {"range", rng}};
        if (bad) {
            r["status"] = "counterexample";
            r["counterexample"] = {{"k", bad->first}, {"j", bad->second}};
        } else {
            r["status"] = "exact-pass";
        }
        rows.push_back(r);
        return bool(bad);
    };

    std::optional<std::pair<int, long>> closed, tilde, dbar;
    for (int k = -J; k <= J; ++k) {
        const auto series = build_series(RadialProblem<Rational>{beta, k, *lam.exact}, Rational(k), Rational(1),
                                         static_cast<std::size_t>(kTerms));
        for (long j = 0; j <= kTerms && !closed; ++j)
            if (series.coefficients[static_cast<std::size_t>(j)] != closed_form_lambda2(beta, k, Rational(1), j))
                closed = std::pair{k, j};
        const auto field = tilde_coefficients(series);
        for (long j = 2; j <= kTerms && !tilde; ++j)
            if (field.tilde[static_cast<std::size_t>(j)] != 0) tilde = std::pair{k, j};
        const auto d = dbar_mode_coefficients(field);
        for (long j = 0; j <= kTerms && !dbar; ++j)
            if (d.coefficients[static_cast<std::size_t>(j)] != 0) dbar = std::pair{k, j};
    }
    bool failed = false;
    failed |= row("closed_form_coefficients", range, closed);
    failed |= row("bochner_tilde_vanishing", "k in [" + std::to_string(-J) + ", " + std::to_string(J) + "], 2 <= j <= 50",
                  tilde);
    failed |= row("dbar_field_vanishing", range, dbar);

    const auto s = schwarzian_principal_coefficient_exact(spec);
    const Rational expected = (Rational(1) - beta * beta) / 2;
    json srow{{"name", "schwarzian_principal_coefficient"},
              {"range", "cone at 0"},
              {"value", rational_text(s.re) + (s.im == 0 ? "" : " + " + rational_text(s.im) + "i")},
              {"expected", rational_text(expected)}};
    const bool schwarz_ok = s.re == expected && s.im == 0;
    srow["status"] = schwarz_ok ? "exact-pass" : "counterexample";
    rows.push_back(srow);
    failed |= !schwarz_ok;

    if (failed && *lam.exact == 2) status_ = 4;
    return {{"identities", rows}, {"lambda", rational_text(*lam.exact)}, {"beta", rational_text(beta)}};
}

json Runner::profile() {
    if (!profile_csv_) throw config_error("MissingProfilePath", "profile needs --profile-csv PATH");
    const MetricSpec spec = build_metric(config_);
    require_symmetric(spec);
    const double beta = spec.beta().value();
    const MetricSpec football = MetricSpec::football(spec.beta());

    stage_ = "profile";
    const auto field = tilde_coefficients(build_series(RadialProblem<double>{beta, 0, 2.0}, 0.0));
    std::ofstream csv(*profile_csv_, std::ios::binary);
    if (!csv) throw config_error("ProfileWriteFailure", "cannot open " + *profile_csv_);
    csv << "r,phi_0,X_coeff,geodesic_r\n";
    char line[160];
    constexpr int kRows = 20;
    for (int i = 1; i <= kRows; ++i) {
        const double r = i / 20.0;
        const double phi = config_.scale * canonical_eigenfunction(football, ExtendedComplex(Complex(r))) + 0.0;
        const double x = config_.scale * evaluate_field(field, r);
        std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g,%.17g\n", r, phi, x, geodesic_radius(football, r));
        csv << line;
    }
    if (!csv) throw config_error("ProfileWriteFailure", "write to " + *profile_csv_ + " failed");
    return {{"profile", {{"path", *profile_csv_}, {"rows", kRows}, {"columns", {"r", "phi_0", "X_coeff", "geodesic_r"}}}}};
}

}  // namespace conical::cli
