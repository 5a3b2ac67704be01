#include "conical/metric.hpp"

#include "conical/errors.hpp"
#include "conical/generalized_series.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace conical {

namespace {

constexpr double kUnitaryTol = 1e-12;

void validate_beta(double v) {
    if (!(v > 0.0) || !std::isfinite(v)) throw config_error("InvalidBeta", "beta must be a positive finite number");
}

Complex int_power(Complex z, int n) {
    Complex r{1.0, 0.0};
    for (int i = 0; i < n; ++i) r *= z;
    return r;
}

// The power cover seen from the cone at ∞: f(1/w) = (m ∘ J)(w^n) with J(w) = 1/w.
MetricSpec inverted(const MetricSpec& spec) {
    if (spec.is_football()) return spec;
    const auto& pc = std::get<PowerCover>(spec.family());
    Moebius swapped{pc.m.b, pc.m.a, pc.m.d, pc.m.c};
    return MetricSpec::power_cover(pc.n, normalize(swapped));
}

}  // namespace

Beta::Beta(double value) : value_(value) { validate_beta(value); }

Beta::Beta(const Rational& value) : value_(static_cast<double>(value)), exact_(value) {
    if (value <= 0) throw config_error("InvalidBeta", "beta must be positive");
}

bool Beta::is_integer() const {
    if (exact_) return conical::is_integer(*exact_);
    return std::abs(value_ - std::round(value_)) < 1e-12;
}

long Beta::floor() const {
    if (exact_) return floor_to_long(*exact_);
    if (is_integer()) return std::lround(value_);
    return static_cast<long>(std::floor(value_));
}

MetricSpec MetricSpec::football(Beta beta) { return MetricSpec(Football{beta}); }

MetricSpec MetricSpec::power_cover(int n, const Moebius& m) {
    if (n < 2) throw config_error("InvalidPowerCover", "power cover degree n must be >= 2");
    PowerCover pc{n, normalize(m), std::nullopt};
    if (m == Moebius::identity()) pc.exact = ExactMoebius::identity();
    return MetricSpec(pc);
}

MetricSpec MetricSpec::power_cover(int n, const ExactMoebius& m) {
    if (n < 2) throw config_error("InvalidPowerCover", "power cover degree n must be >= 2");
    ExactMoebius e = normalize(m);
    return MetricSpec(PowerCover{n, to_floating(e), e});
}

Beta MetricSpec::beta() const {
    if (const auto* fb = std::get_if<Football>(&family_)) return fb->beta;
    return Beta(Rational(std::get<PowerCover>(family_).n));
}

bool MetricSpec::is_rotationally_symmetric() const {
    if (is_football()) return true;
    return is_unitary(std::get<PowerCover>(family_).m, kUnitaryTol);
}

std::vector<ConeDatum> MetricSpec::cones() const {
    return {ConeDatum{ExtendedComplex(Complex(0.0)), beta()}, ConeDatum{ExtendedComplex::infinity(), beta()}};
}

ExtendedComplex MetricSpec::developing_map(Complex z) const {
    if (const auto* fb = std::get_if<Football>(&family_)) {
        if (z == Complex(0.0)) return ExtendedComplex(Complex(0.0));
        return ExtendedComplex(std::exp(fb->beta.value() * std::log(z)));
    }
    const auto& pc = std::get<PowerCover>(family_);
    return conical::apply(pc.m, ExtendedComplex(int_power(z, pc.n)));
}

double density(const MetricSpec& spec, Complex z) {
    if (z == Complex(0.0)) throw numerical_error("ConePointEvaluation", "density evaluated at the cone z = 0");
    const double beta = spec.beta().value();
    const double r = std::abs(z);
    if (spec.is_rotationally_symmetric()) {
        // 4β² r^{2β−2} / (1 + r^{2β})², written to stay finite for large and small r.
        const double x = beta * std::log(r);
        const double sech = 1.0 / std::cosh(x);
        return beta * beta * sech * sech / (r * r);
    }
    const auto& pc = std::get<PowerCover>(spec.family());
    const Complex w = int_power(z, pc.n);
    const Complex zn1 = int_power(z, pc.n - 1);
    const Complex num = pc.m.a * w + pc.m.b;
    const Complex den = pc.m.c * w + pc.m.d;
    // Evaluate on whichever of f, 1/f is bounded; the pulled-back density is the same.
    const Complex top = std::abs(num) <= std::abs(den) ? num : den;
    const Complex bottom = std::abs(num) <= std::abs(den) ? den : num;
    const Complex g = top / bottom;
    const Complex gprime = double(pc.n) * zn1 / (bottom * bottom);
    const double s = 1.0 + std::norm(g);
    return 4.0 * std::norm(gprime) / (s * s);
}

double canonical_eigenfunction(const MetricSpec& spec, const ExtendedComplex& z) {
    if (const auto* fb = std::get_if<Football>(&spec.family())) {
        if (z.is_infinite()) return -1.0;
        const double r = std::abs(z.value());
        if (r == 0.0) return 1.0;
        return -std::tanh(fb->beta.value() * std::log(r));
    }
    const auto& pc = std::get<PowerCover>(spec.family());
    ExtendedComplex w = z.is_infinite() ? ExtendedComplex::infinity() : ExtendedComplex(int_power(z.value(), pc.n));
    ExtendedComplex f = conical::apply(pc.m, w);
    if (f.is_infinite()) return -1.0;
    const double modulus = std::abs(f.value());
    if (modulus == 0.0) return 1.0;
    return -std::tanh(std::log(modulus));
}

double geodesic_radius(const MetricSpec& spec, double r) {
    if (!(r > 0.0)) throw config_error("InvalidRadius", "geodesic_radius needs r > 0");
    return 2.0 * std::atan(std::pow(r, spec.beta().value()));
}

namespace {

// ∫_{|z|<1} density over the unit disk of the chart described by `spec`. The radial
// integral runs in t = ln r over (−∞, 0], where r² e^{2u} is smooth and decays exponentially.
double disk_area(const MetricSpec& spec, double rel_tol) {
    boost::math::quadrature::tanh_sinh<double> integrator;
    const bool symmetric = spec.is_rotationally_symmetric();
    const double beta = spec.beta().value();
    auto radial = [&](double theta) {
        const Complex dir = std::polar(1.0, theta);
        auto integrand = [&](double t) {
            if (symmetric) {
                const double sech = 1.0 / std::cosh(beta * t);
                return beta * beta * sech * sech;
            }
            const double r = std::exp(t);
            if (r == 0.0) return 0.0;
            return r * r * density(spec, r * dir);
        };
        double err = 0.0, l1 = 0.0;
        double v = integrator.integrate(integrand, -std::numeric_limits<double>::infinity(), 0.0, rel_tol * 1e-2,
                                        &err, &l1);
        if (!(err <= rel_tol * l1)) {
            std::ostringstream os;
            os << "radial quadrature error " << err << " exceeds tolerance at theta = " << theta;
            throw numerical_error("QuadratureFailure", os.str());
        }
        return v;
    };
    if (spec.is_rotationally_symmetric()) return 2.0 * std::numbers::pi * radial(0.0);

    // Periodic trapezoid in θ, doubled until two levels agree.
    double previous = 0.0;
    for (int m = 16; m <= 4096; m *= 2) {
        double sum = 0.0;
        for (int i = 0; i < m; ++i) sum += radial(2.0 * std::numbers::pi * i / m);
        double current = 2.0 * std::numbers::pi * sum / m;
        if (m > 16 && std::abs(current - previous) <= rel_tol * std::abs(current)) return current;
        previous = current;
    }
    throw numerical_error("QuadratureFailure", "angular trapezoid rule did not converge");
}

}  // namespace

double total_area(const MetricSpec& spec, double rel_tol) {
    return disk_area(spec, rel_tol) + disk_area(inverted(spec), rel_tol);
}

namespace {

template <class E, class F>
F schwarzian_from_map(const GeneralizedSeries<E, F>& f) {
    auto f1 = f.derivative().normalized();
    auto f2 = f1.derivative();
    auto f3 = f2.derivative();
    auto r2 = f2 / f1;
    auto r3 = f3 / f1;
    auto s = r3 + (F(E(-3) / E(2)) * (r2 * r2));
    return s.coefficient(E(-2));
}

// f = m(z^n) as a power series at 0; when m(0) = ∞ use 1/f, whose Schwarzian agrees.
template <class E, class F>
GeneralizedSeries<E, F> power_cover_series(int n, const BasicMoebius<F>& m) {
    const std::size_t terms = static_cast<std::size_t>(3 * n + 8);
    F a = m.a, b = m.b, c = m.c, d = m.d;
    if (is_zero(d)) {
        std::swap(a, c);
        std::swap(b, d);
    }
    std::vector<F> num(terms, F{0}), den(terms, F{0});
    num[0] = b;
    num[static_cast<std::size_t>(n)] = a;
    den[0] = d;
    den[static_cast<std::size_t>(n)] = c;
    return GeneralizedSeries<E, F>(E(0), num) / GeneralizedSeries<E, F>(E(0), den);
}

}  // namespace

double schwarzian_principal_coefficient(const MetricSpec& spec) {
    if (const auto* fb = std::get_if<Football>(&spec.family())) {
        auto f = GeneralizedSeries<double, Complex>::monomial(fb->beta.value(), Complex(1.0), 8);
        return schwarzian_from_map(f).real();
    }
    const auto& pc = std::get<PowerCover>(spec.family());
    return schwarzian_from_map(power_cover_series<double, Complex>(pc.n, pc.m)).real();
}

GaussianRational schwarzian_principal_coefficient_exact(const MetricSpec& spec) {
    if (const auto* fb = std::get_if<Football>(&spec.family())) {
        if (!fb->beta.exact())
            throw config_error("NonRationalInput", "exact Schwarzian needs a rational beta");
        auto f = GeneralizedSeries<Rational, GaussianRational>::monomial(*fb->beta.exact(), GaussianRational(1), 8);
        return schwarzian_from_map(f);
    }
    const auto& pc = std::get<PowerCover>(spec.family());
    if (!pc.exact) throw config_error("NonRationalInput", "exact Schwarzian needs a Moebius factor in Q(i)");
    return schwarzian_from_map(power_cover_series<Rational, GaussianRational>(pc.n, *pc.exact));
}

}  // namespace conical
