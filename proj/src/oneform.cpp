#include "conical/oneform.hpp"

#include "conical/errors.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

namespace conical {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kPathClearance = 1e-3;

LaurentPolynomial cleaned(const LaurentPolynomial& x) {
    double peak = 0.0;
    for (const auto& [e, c] : x.terms()) peak = std::max(peak, std::abs(c));
    return x.trimmed(1e-14 * peak);
}

const LaurentPolynomial& rational_field(const CharacterOneForm& omega) {
    if (!omega.is_rational()) throw config_error("SampledForm", "operation needs a closed-form field");
    return *omega.field();
}

bool same_point(const ExtendedComplex& p, const ExtendedComplex& q) {
    if (p.is_infinite() || q.is_infinite()) return p.is_infinite() == q.is_infinite();
    return std::abs(p.value() - q.value()) <= 1e-9 * std::max(1.0, std::abs(p.value()));
}

bool point_less(const ExtendedComplex& p, const ExtendedComplex& q) {
    if (p.is_infinite() != q.is_infinite()) return q.is_infinite();
    if (p.is_infinite()) return false;
    const double rp = std::abs(p.value()), rq = std::abs(q.value());
    if (std::abs(rp - rq) > 1e-12 * std::max(1.0, rp)) return rp < rq;
    return std::arg(p.value()) < std::arg(q.value());
}

std::string point_string(const ExtendedComplex& p) {
    if (p.is_infinite()) return "inf";
    char buf[96];
    std::snprintf(buf, sizeof buf, "%.10g%+.10gi", p.value().real(), p.value().imag());
    return buf;
}

double real_residue(Complex res, const ExtendedComplex& at) {
    if (std::abs(res.imag()) > 1e-9 * std::max(1.0, std::abs(res)))
        throw numerical_error("NonRealResidue", "residue at " + point_string(at) + " is not real");
    return res.real();
}

std::vector<Complex> finite_poles(const CharacterOneForm& omega) {
    std::vector<Complex> out;
    if (!omega.is_rational()) return out;
    for (const auto& d : divisor(omega))
        if (d.order < 0 && !d.point.is_infinite()) out.push_back(d.point.value());
    return out;
}

double segment_distance(Complex a, Complex b, Complex p) {
    const Complex ab = b - a;
    const double len2 = std::norm(ab);
    double t = len2 > 0.0 ? ((p - a) * std::conj(ab)).real() / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    return std::abs(a + t * ab - p);
}

Complex gauss_panel(const CharacterOneForm& omega, Complex a, Complex b) {
    using Rule = boost::math::quadrature::gauss<double, 20>;
    const Complex half = 0.5 * (b - a), mid = 0.5 * (a + b);
    const auto& x = Rule::abscissa();
    const auto& w = Rule::weights();
    Complex sum{0.0};  // even order: abscissae are the positive nodes only
    for (std::size_t i = 0; i < x.size(); ++i)
        sum += w[i] * (omega.coefficient(mid + x[i] * half) + omega.coefficient(mid - x[i] * half));
    return sum * half;
}

// Composite Gauss rule, bisecting a panel until it agrees with its two halves.
Complex segment_integral(const CharacterOneForm& omega, Complex a, Complex b, Complex whole, int depth) {
    const Complex m = 0.5 * (a + b);
    const Complex left = gauss_panel(omega, a, m), right = gauss_panel(omega, m, b);
    if (std::abs(left + right - whole) <= 1e-13 * std::max(1.0, std::abs(whole))) return left + right;
    if (depth >= 40) throw numerical_error("QuadratureFailure", "path integral of the character form did not converge");
    return segment_integral(omega, a, m, left, depth + 1) + segment_integral(omega, m, b, right, depth + 1);
}

Complex segment_integral(const CharacterOneForm& omega, Complex a, Complex b) {
    return segment_integral(omega, a, b, gauss_panel(omega, a, b), 0);
}

void append_arc(std::vector<Complex>& path, double radius, double from, double delta, int chords_per_turn) {
    const int chords = std::max(1, static_cast<int>(std::ceil(std::abs(delta) / kTwoPi * chords_per_turn)));
    for (int j = 1; j <= chords; ++j) path.push_back(std::polar(radius, from + delta * j / chords));
}

double wrapped_angle(double delta) {
    while (delta > std::numbers::pi) delta -= kTwoPi;
    while (delta <= -std::numbers::pi) delta += kTwoPi;
    return delta;
}

}  // namespace

double CatalogEigenfunction::phi(const ExtendedComplex& z) const {
    if (!z.is_infinite()) return scale * catalog_eigenfunction_value(spec, which, z.value());
    if (which == FieldSelector::Canonical) return scale * canonical_eigenfunction(spec, z);
    const auto* pc = std::get_if<PowerCover>(&spec.family());
    if (!pc) throw config_error("UnsupportedSelector", "re/im eigenfunctions need an integer cone angle");
    const ExtendedComplex f = conical::apply(pc->m, ExtendedComplex::infinity());
    if (f.is_infinite()) return 0.0;
    const Complex w = f.value();
    return scale * 2.0 * (which == FieldSelector::Re ? w.real() : w.imag()) / (1.0 + std::norm(w));
}

LaurentPolynomial CatalogEigenfunction::field() const { return Complex(scale) * closed_form_field(spec, which); }

ExtremalConstant extremal_constant(const CatalogEigenfunction& f) {
    const LaurentPolynomial x = cleaned(f.field());
    if (x.is_zero()) throw numerical_error("ZeroField", "eigenfunction has a vanishing gradient field");

    ExtremalConstant out;
    std::vector<ExtendedComplex> critical{ExtendedComplex(Complex(0.0)), ExtendedComplex::infinity()};
    const int lo = x.min_exponent(), hi = x.max_exponent();
    if (hi > lo) {
        std::vector<Complex> p;
        for (int e = lo; e <= hi; ++e) p.push_back(x.coefficient(e));
        for (const auto& z : polynomial_roots(p)) critical.emplace_back(z);
    }
    for (const auto& z : critical) out.value = std::max(out.value, std::abs(f.phi(z)));

    const double c2 = out.value * out.value;
    for (int i = 0; i <= 40; ++i) {
        const double r = std::pow(10.0, -1.0 + i / 20.0);
        for (int j = 0; j < 32; ++j) {
            const Complex z = std::polar(r, kTwoPi * (j + 0.5) / 32);
            const double phi = f.phi(ExtendedComplex(z));
            const Complex xz = x(z);
            const Complex phi_z = density(f.spec, z) * std::conj(xz);
            out.identity_residual = std::max(out.identity_residual, std::abs(4.0 * xz * phi_z + phi * phi - c2) / c2);
            out.grid_max = std::max(out.grid_max, std::abs(phi));
        }
    }
    return out;
}

CharacterOneForm::CharacterOneForm(std::optional<LaurentPolynomial> field, FieldSampler sampled, double c)
    : field_(std::move(field)), sampled_(std::move(sampled)), c_(c) {}

CharacterOneForm CharacterOneForm::from_field(const LaurentPolynomial& x, double c) {
    LaurentPolynomial clean = cleaned(x);
    if (clean.is_zero()) throw numerical_error("ZeroField", "the gradient field vanishes identically");
    if (!(c > 0.0)) throw numerical_error("ZeroField", "extremal constant must be positive");
    return CharacterOneForm(std::move(clean), {}, c);
}

CharacterOneForm CharacterOneForm::from_samples(FieldSampler x, double c) {
    if (!x) throw numerical_error("ZeroField", "no field sampler");
    if (!(c > 0.0)) throw numerical_error("ZeroField", "extremal constant must be positive");
    return CharacterOneForm(std::nullopt, std::move(x), c);
}

Complex CharacterOneForm::coefficient(Complex z) const {
    const Complex x = field_ ? (*field_)(z) : sampled_({z}).front();
    return -0.5 * c_ / x;
}

std::vector<Complex> CharacterOneForm::coefficients(const std::vector<Complex>& z) const {
    std::vector<Complex> x;
    if (field_) {
        x.reserve(z.size());
        for (const auto& p : z) x.push_back((*field_)(p));
    } else {
        x = sampled_(z);
    }
    for (auto& v : x) v = -0.5 * c_ / v;
    return x;
}

std::vector<DivisorEntry> divisor(const CharacterOneForm& omega) {
    const LaurentPolynomial& x = rational_field(omega);
    const double c = omega.constant();
    const int lo = x.min_exponent(), hi = x.max_exponent();
    std::vector<DivisorEntry> out;

    // ω = −(C/2) z^{−lo} dz / P(z), P(0) ≠ 0, deg P = hi − lo.
    if (lo < 0) out.push_back({ExtendedComplex(Complex(0.0)), -lo, 0.0});
    if (lo == 1) {
        const ExtendedComplex at(Complex(0.0));
        out.push_back({at, -1, real_residue(-0.5 * c / x.coefficient(1), at)});
    }
    if (lo >= 2) throw numerical_error("NonSimplePole", "character form has a higher-order pole at 0");

    if (hi > lo) {
        std::vector<Complex> p;
        for (int e = lo; e <= hi; ++e) p.push_back(x.coefficient(e));
        const auto roots = polynomial_roots(p);
        for (std::size_t i = 0; i < roots.size(); ++i)
            for (std::size_t j = i + 1; j < roots.size(); ++j)
                if (std::abs(roots[i] - roots[j]) < 1e-6 * std::max(1.0, std::abs(roots[i])))
                    throw numerical_error("NonSimplePole", "character form has a repeated pole at " +
                                                               point_string(ExtendedComplex(roots[i])));
        const LaurentPolynomial dx = x.derivative();
        for (const auto& z : roots) {
            const ExtendedComplex at(z);
            out.push_back({at, -1, real_residue(-0.5 * c / dx(z), at)});
        }
    }

    if (hi >= 3) out.push_back({ExtendedComplex::infinity(), hi - 2, 0.0});
    if (hi == 1) {
        const ExtendedComplex at = ExtendedComplex::infinity();
        out.push_back({at, -1, real_residue(0.5 * c / x.coefficient(1), at)});
    }
    if (hi <= 0) throw numerical_error("NonSimplePole", "character form has a higher-order pole at infinity");

    std::stable_sort(out.begin(), out.end(), [](const DivisorEntry& a, const DivisorEntry& b) {
        if (same_point(a.point, b.point)) return a.order > b.order;
        return point_less(a.point, b.point);
    });
    return out;
}

std::vector<ResidueEntry> residues(const CharacterOneForm& omega) {
    std::vector<ResidueEntry> out;
    for (const auto& d : divisor(omega))
        if (d.order < 0) out.push_back({d.point, d.residue});
    return out;
}

Complex contour_residue(const CharacterOneForm& omega, Complex center, double radius, int points) {
    std::vector<Complex> z;
    z.reserve(static_cast<std::size_t>(points));
    for (int j = 0; j < points; ++j) z.push_back(center + std::polar(radius, kTwoPi * j / points));
    const auto g = omega.coefficients(z);
    Complex sum{0.0};
    for (int j = 0; j < points; ++j) sum += g[static_cast<std::size_t>(j)] * (z[static_cast<std::size_t>(j)] - center);
    return sum / double(points);
}

std::vector<SampledResidue> contour_residues(const CharacterOneForm& omega, const std::vector<ExtendedComplex>& candidates,
                                             int points) {
    std::vector<SampledResidue> out;
    double outer = 1.0;
    for (const auto& p : candidates)
        if (!p.is_infinite()) outer = std::max(outer, std::abs(p.value()));
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        const auto& p = candidates[i];
        if (p.is_infinite()) {
            out.push_back({p, -contour_residue(omega, Complex(0.0), 2.0 * outer, points)});
            continue;
        }
        double radius = 0.05;
        for (std::size_t j = 0; j < candidates.size(); ++j)
            if (j != i && !candidates[j].is_infinite())
                radius = std::min(radius, 0.4 * std::abs(candidates[j].value() - p.value()));
        out.push_back({p, contour_residue(omega, p.value(), radius, points)});
    }
    return out;
}

DivisorCheck divisor_relation_check(const CharacterOneForm& omega, const MetricSpec& spec, double tol) {
    struct Row {
        ExtendedComplex point;
        double cone = 0.0;
        double form = 0.0;
    };
    std::vector<Row> rows;
    auto row = [&](const ExtendedComplex& p) -> Row& {
        for (auto& r : rows)
            if (same_point(r.point, p)) return r;
        rows.push_back({p});
        return rows.back();
    };

    DivisorCheck out;
    for (const auto& cone : spec.cones()) row(cone.position).cone += cone.beta.value() - 1.0;
    for (const auto& d : divisor(omega)) {
        out.degree += d.order;
        if (d.order > 0) {
            row(d.point).form += d.order;
        } else {
            row(d.point).form += std::abs(d.residue) - 1.0;
            out.residue_sum += d.residue;
        }
    }
    std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return point_less(a.point, b.point); });

    char buf[160];
    for (const auto& r : rows) {
        out.max_discrepancy = std::max(out.max_discrepancy, std::abs(r.cone - r.form));
        std::snprintf(buf, sizeof buf, "%s: D=%.12g form=%.12g\n", point_string(r.point).c_str(), r.cone, r.form);
        out.report += buf;
    }
    out.ok = out.degree == -2 && out.max_discrepancy <= tol && std::abs(out.residue_sum) <= tol;
    return out;
}

std::string_view to_string(Monodromy m) { return m == Monodromy::Trivial ? "trivial" : "u1"; }

Monodromy classify_monodromy(const CharacterOneForm& omega) {
    for (const auto& r : residues(omega))
        if (std::abs(r.residue - std::round(r.residue)) > 1e-8) return Monodromy::ReducibleU1;
    return Monodromy::Trivial;
}

Complex reconstruct_developing_map(const CharacterOneForm& omega, Complex basepoint, Complex f_basepoint, Complex endpoint,
                                   const std::vector<Complex>& path) {
    if (path.size() < 2 || path.front() != basepoint || path.back() != endpoint)
        throw config_error("InvalidPath", "path must run from the basepoint to the endpoint");
    std::vector<Complex> singular = finite_poles(omega);
    singular.push_back(Complex(0.0));
    for (std::size_t i = 0; i + 1 < path.size(); ++i)
        for (const auto& p : singular)
            if (segment_distance(path[i], path[i + 1], p) < kPathClearance)
                throw numerical_error("PathThroughSingularity", "integration path passes within 1e-3 of " +
                                                                    point_string(ExtendedComplex(p)));
    Complex integral{0.0};
    for (std::size_t i = 0; i + 1 < path.size(); ++i) integral += segment_integral(omega, path[i], path[i + 1]);
    return f_basepoint * std::exp(integral);
}

std::vector<Complex> radial_then_arc(Complex basepoint, Complex endpoint, int chords_per_turn) {
    const double r1 = std::abs(endpoint), t0 = std::arg(basepoint);
    std::vector<Complex> path{basepoint};
    if (std::abs(std::abs(basepoint) - r1) > 0.0) path.push_back(std::polar(r1, t0));
    const double delta = wrapped_angle(std::arg(endpoint) - t0);
    if (delta != 0.0) append_arc(path, r1, t0, delta, chords_per_turn);
    if (path.size() == 1) path.push_back(endpoint);
    path.back() = endpoint;
    return path;
}

std::vector<Complex> arc_then_radial(Complex basepoint, Complex endpoint, int chords_per_turn) {
    const double r0 = std::abs(basepoint), t0 = std::arg(basepoint);
    std::vector<Complex> path{basepoint};
    const double delta = wrapped_angle(std::arg(endpoint) - t0);
    if (delta != 0.0) append_arc(path, r0, t0, delta, chords_per_turn);
    path.push_back(endpoint);
    return path;
}

Complex basepoint_value(double phi, double c) {
    if (!(std::abs(phi) < c)) throw numerical_error("BasepointAtExtremum", "basepoint must avoid |phi| = C");
    return Complex(std::sqrt((c - phi) / (c + phi)));
}

std::vector<ReconstructedSample> reconstruct_on_grid(const CharacterOneForm& omega, const CatalogEigenfunction& eig,
                                                     Complex basepoint, const std::vector<Complex>& grid,
                                                     double pole_clearance) {
    const auto poles = finite_poles(omega);
    const Complex fb = basepoint_value(eig.phi(ExtendedComplex(basepoint)), omega.constant());
    std::vector<ReconstructedSample> out;
    for (const auto& z : grid) {
        if (z == Complex(0.0)) continue;
        if (std::any_of(poles.begin(), poles.end(), [&](Complex p) { return std::abs(p - z) < pole_clearance; })) continue;
        Complex f;
        try {
            f = reconstruct_developing_map(omega, basepoint, fb, z, radial_then_arc(basepoint, z));
        } catch (const Error& e) {
            if (e.kind() != "PathThroughSingularity") throw;
            f = reconstruct_developing_map(omega, basepoint, fb, z, arc_then_radial(basepoint, z));
        }
        out.push_back({z, f, eig.phi(ExtendedComplex(z))});
    }
    return out;
}

PullbackError verify_pullback(const std::vector<ReconstructedSample>& samples, const CharacterOneForm& omega,
                              const MetricSpec& spec) {
    PullbackError out;
    const double c = omega.constant();
    for (const auto& s : samples) {
        const Complex df = s.f * omega.coefficient(s.z);
        const double m2 = std::norm(s.f);
        const double pulled = 4.0 * std::norm(df) / ((1.0 + m2) * (1.0 + m2));
        const double rho = density(spec, s.z);
        out.metric = std::max(out.metric, std::abs(pulled - rho) / rho);
        const double expected = (c - s.phi) / (c + s.phi);
        out.modulus = std::max(out.modulus, std::abs(m2 - expected) / std::max(1.0, expected));
    }
    return out;
}

double verify_eigen_identity(const std::vector<ReconstructedSample>& samples, double c) {
    double err = 0.0;
    for (const auto& s : samples) {
        const double m2 = std::norm(s.f);
        err = std::max(err, std::abs(s.phi - c * (1.0 - m2) / (1.0 + m2)));
    }
    return err;
}

CriticalPointCheck critical_point_check(const CharacterOneForm& omega, const CatalogEigenfunction& eig) {
    CriticalPointCheck out;
    out.ok = true;
    const double c = omega.constant();
    char buf[200];
    for (const auto& d : divisor(omega)) {
        const double phi = eig.phi(d.point);
        if (d.order < 0) {
            const double target = d.residue > 0.0 ? c : -c;
            const double err = std::abs(phi - target);
            out.max_extremum_error = std::max(out.max_extremum_error, err);
            if (err > 1e-8 * c) out.ok = false;
            std::snprintf(buf, sizeof buf, "pole %s residue %.12g phi %.12g\n", point_string(d.point).c_str(), d.residue, phi);
        } else {
            constexpr int kProbes = 96;
            constexpr double kProbeRadius = 1e-3;
            int changes = 0;
            double prev = 0.0;
            for (int j = 0; j <= kProbes; ++j) {
                const Complex u = std::polar(kProbeRadius, kTwoPi * (j + 0.25) / kProbes);
                const ExtendedComplex z = d.point.is_infinite() ? ExtendedComplex(1.0 / u) : ExtendedComplex(d.point.value() + u);
                const double delta = eig.phi(z) - phi;
                if (j > 0 && (delta > 0.0) != (prev > 0.0)) ++changes;
                prev = delta;
            }
            if (changes != 2 * (d.order + 1)) out.ok = false;
            std::snprintf(buf, sizeof buf, "zero %s order %d sign changes %d\n", point_string(d.point).c_str(), d.order,
                          changes);
        }
        out.report += buf;
    }
    return out;
}

double real_period_defect(const CharacterOneForm& omega) {
    const auto poles = finite_poles(omega);
    double defect = 0.0;
    // The trapezoid error decays like (distance ratio)^−N, so keep every pole well off the circle.
    auto clear = [&](Complex center, double radius) {
        return std::none_of(poles.begin(), poles.end(), [&](Complex p) {
            const double d = std::abs(p - center);
            return d > 0.8 * radius && d < 1.25 * radius;
        });
    };
    for (double radius : {0.25, 0.5, 0.75, 1.5, 2.0, 4.0})
        if (clear(Complex(0.0), radius))
            defect = std::max(defect, std::abs((Complex(0.0, kTwoPi) * contour_residue(omega, Complex(0.0), radius)).real()));
    for (const auto& p : poles) {
        double radius = 0.05;
        for (const auto& q : poles)
            if (q != p) radius = std::min(radius, 0.4 * std::abs(q - p));
        radius = std::min(radius, 0.4 * std::abs(p));
        defect = std::max(defect, std::abs((Complex(0.0, kTwoPi) * contour_residue(omega, p, radius)).real()));
    }
    return defect;
}

}  // namespace conical
