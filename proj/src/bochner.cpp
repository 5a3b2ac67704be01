#include "conical/bochner.hpp"

#include "conical/errors.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <cmath>
#include <numbers>
#include <sstream>

namespace conical {

namespace {

constexpr double kZeroThreshold = 1e-12;

double symmetric_density(double beta, double r) {
    const double sech = 1.0 / std::cosh(beta * std::log(r));
    return beta * beta * sech * sech / (r * r);
}

// d(ln ρ)/dr for the symmetric density 4β² r^{2β−2}/(1+r^{2β})².
double symmetric_log_density_slope(double beta, double r) {
    const double th = std::tanh(beta * std::log(r));
    return (-2.0 - 2.0 * beta * th) / r;
}

// Integer cone angle n, or nullopt.
std::optional<int> integer_angle(const MetricSpec& spec) {
    if (!spec.is_football()) return std::get<PowerCover>(spec.family()).n;
    const Beta b = spec.beta();
    if (b.is_integer()) return static_cast<int>(b.floor());
    return std::nullopt;
}

Moebius moebius_of(const MetricSpec& spec) {
    if (spec.is_football()) return Moebius::identity();
    return std::get<PowerCover>(spec.family()).m;
}

void require_symmetric(const MetricSpec& spec) {
    if (!spec.is_rotationally_symmetric())
        throw config_error("NonRotationalMetric", "mode decomposition needs a rotationally symmetric metric");
}

}  // namespace

double evaluate_field(const ModeVectorField<double>& field, double r) {
    double sum = 0.0;
    for (std::size_t j = 0; j < field.tilde.size(); ++j)
        if (field.tilde[j] != 0.0) sum += field.tilde[j] * std::pow(r, field.exponent(j));
    return sum * field.normalization();
}

std::string_view to_string(FieldSelector s) {
    switch (s) {
        case FieldSelector::Canonical: return "canonical";
        case FieldSelector::Re: return "re";
        case FieldSelector::Im: return "im";
    }
    return "canonical";
}

FieldSelector parse_field_selector(std::string_view text) {
    if (text == "canonical") return FieldSelector::Canonical;
    if (text == "re") return FieldSelector::Re;
    if (text == "im") return FieldSelector::Im;
    throw config_error("UnsupportedSelector", "field selector must be canonical, re or im");
}

double catalog_eigenfunction_value(const MetricSpec& spec, FieldSelector which, Complex z) {
    if (which == FieldSelector::Canonical) return canonical_eigenfunction(spec, ExtendedComplex(z));
    if (!integer_angle(spec))
        throw config_error("UnsupportedSelector", "re/im eigenfunctions need an integer cone angle");
    const ExtendedComplex f = spec.developing_map(z);
    if (f.is_infinite()) return 0.0;
    const Complex w = f.value();
    const double denom = 1.0 + std::norm(w);
    return 2.0 * (which == FieldSelector::Re ? w.real() : w.imag()) / denom;
}

LaurentPolynomial closed_form_field(const MetricSpec& spec, FieldSelector which) {
    const auto n = integer_angle(spec);
    if (!n) {
        if (which != FieldSelector::Canonical)
            throw config_error("UnsupportedSelector", "re/im fields need an integer cone angle");
        return LaurentPolynomial::monomial(1, Complex(-1.0 / (2.0 * spec.beta().value())));
    }
    // f = A/B with A = a z^n + b, B = c z^n + d and ad − bc = 1, so f′ = n z^{n−1}/B².
    const Moebius m = moebius_of(spec);
    const auto A = LaurentPolynomial::monomial(*n, m.a) + LaurentPolynomial::monomial(0, m.b);
    const auto B = LaurentPolynomial::monomial(*n, m.c) + LaurentPolynomial::monomial(0, m.d);
    const double nn = *n;
    switch (which) {
        case FieldSelector::Canonical:
            return LaurentPolynomial::monomial(1 - *n, Complex(-1.0 / (2.0 * nn))) * (A * B);
        case FieldSelector::Re:
            return LaurentPolynomial::monomial(1 - *n, Complex(1.0 / (4.0 * nn))) * (B * B - A * A);
        case FieldSelector::Im:
            return LaurentPolynomial::monomial(1 - *n, Complex(0.0, 1.0 / (4.0 * nn))) * (B * B + A * A);
    }
    throw config_error("UnsupportedSelector", "unknown field selector");
}

ModalEigenfunction catalog_modal_eigenfunction(const MetricSpec& spec, FieldSelector which) {
    require_symmetric(spec);
    ModalEigenfunction f;
    f.beta = spec.beta().value();
    f.lambda = 2.0;
    const auto n = integer_angle(spec);
    if (!n) {
        if (which != FieldSelector::Canonical)
            throw config_error("UnsupportedSelector", "re/im eigenfunctions need an integer cone angle");
        f.modes.push_back({0, Complex(1.0)});
        return f;
    }
    constexpr int kSamples = 64;
    constexpr double kRadius = 0.5;
    for (int k : {-*n, 0, *n}) {
        Complex c{0.0};
        for (int i = 0; i < kSamples; ++i) {
            const double theta = 2.0 * std::numbers::pi * i / kSamples;
            c += catalog_eigenfunction_value(spec, which, std::polar(kRadius, theta)) * std::polar(1.0, -k * theta);
        }
        c /= double(kSamples);
        const auto series = build_series(RadialProblem<double>{f.beta, k, 2.0}, double(std::abs(k)));
        const Complex amp = c / evaluate(series, kRadius).value;
        if (std::abs(amp) > kZeroThreshold) f.modes.push_back({k, amp});
    }
    return f;
}

std::vector<FieldSample> sample_modal_field(const ModalEigenfunction& f, const std::vector<Complex>& points,
                                            const SpectralOptions& options) {
    std::vector<double> radii;
    for (const auto& z : points) {
        if (z == Complex(0.0)) throw numerical_error("ConePointEvaluation", "field sampled at a cone");
        radii.push_back(std::abs(z));
    }
    std::vector<FieldSample> out(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) out[i].z = points[i];
    std::vector<Complex> phi(points.size(), Complex(0.0));
    for (const auto& mc : f.modes) {
        EigenMode mode(ModeSpectralProblem{f.beta, mc.k, f.extension, 0.05, 30.0, options}, f.lambda);
        const auto states = mode.evaluate(radii);
        for (std::size_t i = 0; i < points.size(); ++i) {
            const double r = states[i].r, theta = std::arg(points[i]);
            const double xk = (states[i].derivative - mc.k * states[i].value / r) / (2.0 * symmetric_density(f.beta, r));
            phi[i] += mc.amplitude * states[i].value * std::polar(1.0, mc.k * theta);
            out[i].x += mc.amplitude * xk * std::polar(1.0, (mc.k + 1) * theta);
        }
    }
    for (std::size_t i = 0; i < points.size(); ++i) out[i].phi = phi[i].real();
    return out;
}

namespace {

void check_bound(const MetricSpec& spec, const PoleClassification& pc) {
    const Beta b = spec.beta();
    int bound;
    if (b.value() < 1.0)
        bound = 1;
    else if (b.value() == 1.0)
        bound = 0;
    else
        bound = -(static_cast<int>(b.floor()) - 1);  // [β] − 1, which is n − 1 when β = n
    if (pc.order < bound) {
        std::ostringstream os;
        os << "field has order " << pc.order << " at a cone, below the bound " << bound;
        throw theorem_violation("ClassificationViolation", os.str());
    }
}

}  // namespace

PoleClassification pole_order_at_cone(const MetricSpec& spec, const ModalEigenfunction& f, std::size_t cone) {
    if (cone > 1) throw config_error("InvalidCone", "catalog metrics have cones 0 and 1 (infinity)");
    PoleClassification pc{cone == 0 ? ExtendedComplex(Complex(0.0)) : ExtendedComplex::infinity(), 0};
    bool found = false;
    for (const auto& mc : f.modes) {
        if (std::abs(mc.amplitude) <= kZeroThreshold) continue;
        ModeSpectralProblem p{f.beta, mc.k, f.extension, 0.05, 30.0, {}};
        const int k = cone == 0 ? mc.k : -mc.k;
        const double sigma = cone == 0 ? sigma_at_zero(p) : sigma_at_infinity(p);
        const auto field = tilde_coefficients(build_series(RadialProblem<double>{f.beta, k, f.lambda}, sigma, 1.0, 40));
        std::size_t j = 0;
        while (j < field.tilde.size() && std::abs(field.tilde[j]) <= kZeroThreshold) ++j;
        if (j == field.tilde.size()) continue;
        const double e = field.exponent(j);
        if (std::abs(e - (k + 1)) > 1e-9) {
            std::ostringstream os;
            os << "leading term r^" << e << " e^{i" << k + 1 << "θ} of mode " << k << " is not a power of z";
            throw theorem_violation("ClassificationViolation", os.str());
        }
        pc.order = found ? std::min(pc.order, k + 1) : k + 1;
        found = true;
    }
    if (!found) throw numerical_error("ZeroField", "eigenfunction has no nonzero field mode");
    check_bound(spec, pc);
    return pc;
}

PoleClassification pole_order_at_cone(const MetricSpec& spec, const LaurentPolynomial& x, std::size_t cone) {
    if (cone > 1) throw config_error("InvalidCone", "catalog metrics have cones 0 and 1 (infinity)");
    const auto t = x.trimmed(kZeroThreshold);
    if (t.is_zero()) throw numerical_error("ZeroField", "zero vector field");
    // In w = 1/z, X^w = −w² X^z(1/w).
    PoleClassification pc{cone == 0 ? ExtendedComplex(Complex(0.0)) : ExtendedComplex::infinity(),
                          cone == 0 ? t.min_exponent() : 2 - t.max_exponent()};
    check_bound(spec, pc);
    return pc;
}

namespace {

struct Integrals {
    double lhs = 0.0, xnorm = 0.0;
};

Integrals integrate_balance(const ModalEigenfunction& f, double T, int panels, const SpectralOptions& options) {
    static const boost::math::quadrature::gauss<double, 20> rule;
    const double h = 2.0 * T / panels;
    std::vector<double> ts, ws;
    for (int p = 0; p < panels; ++p) {
        const double mid = -T + (p + 0.5) * h;
        for (std::size_t i = 0; i < rule.abscissa().size(); ++i) {
            const double x = rule.abscissa()[i], w = rule.weights()[i] * 0.5 * h;
            ts.push_back(mid + 0.5 * h * x);
            ws.push_back(w);
            if (x != 0.0) {
                ts.push_back(mid - 0.5 * h * x);
                ws.push_back(w);
            }
        }
    }
    std::vector<double> radii;
    for (double t : ts) radii.push_back(std::exp(t));

    Integrals out;
    for (const auto& mc : f.modes) {
        const double amp2 = std::norm(mc.amplitude);
        if (amp2 == 0.0) continue;
        EigenMode mode(ModeSpectralProblem{f.beta, mc.k, f.extension, 0.05, 30.0, options}, f.lambda);
        const auto st = mode.evaluate(radii);
        const double k = mc.k;
        double lhs = 0.0, xn = 0.0;
        for (std::size_t i = 0; i < st.size(); ++i) {
            const double r = st[i].r, y = st[i].value, dy = st[i].derivative;
            const double rho = symmetric_density(f.beta, r);
            const double ddy = -dy / r + k * k * y / (r * r) - f.lambda * rho * y;
            const double xk = (dy - k * y / r) / (2.0 * rho);
            const double dxk = (ddy - k * dy / r + k * y / (r * r)) / (2.0 * rho) - xk * symmetric_log_density_slope(f.beta, r);
            const double g = 0.5 * (dxk - (k + 1.0) * xk / r);
            lhs += ws[i] * g * g * rho * r * r;
            xn += ws[i] * 0.5 * rho * rho * xk * xk * r * r;
        }
        out.lhs += 2.0 * std::numbers::pi * amp2 * lhs;
        out.xnorm += 2.0 * std::numbers::pi * amp2 * xn;
    }
    return out;
}

}  // namespace

BochnerBalance bochner_balance(const MetricSpec& spec, const ModalEigenfunction& f, const SpectralOptions& options) {
    require_symmetric(spec);
    if (std::abs(spec.beta().value() - f.beta) > 1e-12)
        throw config_error("MetricMismatch", "eigenfunction and metric have different cone angles");

    // The integrands decay at least like e^{−2 min(2β, 1)|t|}.
    const double T = 30.0 / std::min(2.0 * f.beta, 1.0);
    const int panels = static_cast<int>(std::ceil(2.0 * T * std::max(1.0, f.beta)));
    const Integrals coarse = integrate_balance(f, T, panels, options);
    const Integrals fine = integrate_balance(f, T, 2 * panels, options);

    BochnerBalance b;
    b.lhs = fine.lhs;
    b.scale = fine.xnorm;
    b.rhs = 0.5 * (f.lambda - 2.0) * fine.xnorm;
    const double tol = 1e-8 * std::max(fine.xnorm, fine.lhs);
    if (std::abs(fine.lhs - coarse.lhs) > tol || std::abs(fine.xnorm - coarse.xnorm) > tol) {
        std::ostringstream os;
        os << "balance quadrature not converged: lhs " << coarse.lhs << " vs " << fine.lhs;
        throw numerical_error("QuadratureFailure", os.str());
    }
    return b;
}

}  // namespace conical
