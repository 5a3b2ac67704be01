#pragma once

// Catalog of spherical conical metrics on the sphere given by explicit developing maps:
//   Football{β}:        f = z^β,       cones of angle 2πβ at 0 and ∞
//   PowerCover{n, m}:   f = m(z^n),    cones of angle 2πn at 0 and ∞
// The metric is the pullback f*g_st = 4|f'|²/(1+|f|²)² |dz|².

#include "conical/moebius.hpp"
#include "conical/scalar.hpp"

#include <optional>
#include <variant>
#include <vector>

namespace conical {

/// Cone parameter β (total angle 2πβ). Carries an exact rational value when one was supplied.
/// β = 1 is accepted: the football then degenerates to the round sphere, used as an oracle.
class Beta {
public:
    explicit Beta(double value);
    explicit Beta(const Rational& value);

    double value() const noexcept { return value_; }
    const std::optional<Rational>& exact() const noexcept { return exact_; }
    bool is_integer() const;
    /// floor(β), exact when available.
    long floor() const;

private:
    double value_;
    std::optional<Rational> exact_;
};

struct ConeDatum {
    ExtendedComplex position;
    Beta beta;
};

struct Football {
    Beta beta;
};

struct PowerCover {
    int n;
    Moebius m;                          // normalized
    std::optional<ExactMoebius> exact;  // present when m was given in Q(i)
};

class MetricSpec {
public:
    static MetricSpec football(Beta beta);
    static MetricSpec power_cover(int n, const Moebius& m = Moebius::identity());
    static MetricSpec power_cover(int n, const ExactMoebius& m);

    const std::variant<Football, PowerCover>& family() const noexcept { return family_; }
    bool is_football() const noexcept { return std::holds_alternative<Football>(family_); }

    /// β for a football, n for a power cover.
    Beta beta() const;

    /// True when the metric is invariant under rotations about the cone axis, i.e. a
    /// football or a power cover with m ∈ PSU(2). The mode-decomposed solvers need this.
    bool is_rotationally_symmetric() const;

    /// The two cones, at 0 then ∞.
    std::vector<ConeDatum> cones() const;

    /// Developing map on the principal branch (arg z ∈ (−π, π]).
    ExtendedComplex developing_map(Complex z) const;

private:
    explicit MetricSpec(std::variant<Football, PowerCover> family) : family_(std::move(family)) {}
    std::variant<Football, PowerCover> family_;
};

/// Conformal density e^{2u}(z) of the metric; z must be finite and nonzero.
double density(const MetricSpec& spec, Complex z);

/// φ = (1−|f|²)/(1+|f|²). Continuous on the whole sphere, including the cones.
double canonical_eigenfunction(const MetricSpec& spec, const ExtendedComplex& z);

/// Geodesic distance from the cone at 0 to the circle |z| = r: 2·arctan(r^β).
double geodesic_radius(const MetricSpec& spec, double r);

/// ∫ e^{2u} dx dy over the sphere, by adaptive quadrature on |z| ≤ 1 and the inverted chart.
double total_area(const MetricSpec& spec, double rel_tol = 1e-10);

/// Principal z⁻² coefficient of the Schwarzian derivative of f at the cone z = 0,
/// obtained by symbolic differentiation of the developing map.
double schwarzian_principal_coefficient(const MetricSpec& spec);

/// Exact variant; needs a rational β (football) or an exact Möbius factor (power cover).
GaussianRational schwarzian_principal_coefficient_exact(const MetricSpec& spec);

}  // namespace conical
