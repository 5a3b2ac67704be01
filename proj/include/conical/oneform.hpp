#pragma once

// Character one-form ω = −2C dz/F of a real 2-eigenfunction, where X = ¼F ∂_z is its complex
// gradient field and C = max|φ|; residues, divisor bookkeeping, reconstruction of the
// developing map f = exp∫ω and verification of f*g_st = g and φ = C(1−|f|²)/(1+|f|²).

#include "conical/bochner.hpp"
#include "conical/laurent.hpp"
#include "conical/metric.hpp"

#include <functional>
#include <optional>
#include <string_view>
#include <vector>

namespace conical {

/// A catalog eigenfunction φ = scale·(selected closed form) with its field X^z.
struct CatalogEigenfunction {
    MetricSpec spec;
    FieldSelector which = FieldSelector::Canonical;
    double scale = 1.0;

    double phi(const ExtendedComplex& z) const;
    LaurentPolynomial field() const;
};

struct ExtremalConstant {
    double value = 0.0;
    /// max over the sample grid of |F φ_z + φ² − C²| / C², with φ_z = e^{2u} conj(X^z) and F = 4X^z.
    double identity_residual = 0.0;
    /// max over the sample grid of |φ|; never above `value`.
    double grid_max = 0.0;
};

/// C = max|φ|, attained at a zero of X or a cone; F φ_z = C² − φ² is checked on a polar grid.
ExtremalConstant extremal_constant(const CatalogEigenfunction& f);

class CharacterOneForm {
public:
    /// ω = −2C dz/F = −(C/2) dz / X^z for a closed-form field. Throws ZeroField.
    static CharacterOneForm from_field(const LaurentPolynomial& x, double c);
    /// Batch evaluator of X^z at a list of points.
    using FieldSampler = std::function<std::vector<Complex>(const std::vector<Complex>&)>;

    /// Same from a sampled field; residues are then taken by contour quadrature.
    static CharacterOneForm from_samples(FieldSampler x, double c);

    bool is_rational() const noexcept { return field_.has_value(); }
    double constant() const noexcept { return c_; }
    const std::optional<LaurentPolynomial>& field() const noexcept { return field_; }

    /// Coefficient g of ω = g(z) dz.
    Complex coefficient(Complex z) const;
    std::vector<Complex> coefficients(const std::vector<Complex>& z) const;
    /// The dual form Ω = 4 dz/F = −(2/C)·ω, as a coefficient.
    Complex dual_coefficient(Complex z) const { return -2.0 / c_ * coefficient(z); }

private:
    CharacterOneForm(std::optional<LaurentPolynomial> field, FieldSampler sampled, double c);
    std::optional<LaurentPolynomial> field_;
    FieldSampler sampled_;
    double c_;
};

struct ResidueEntry {
    ExtendedComplex point;
    double residue = 0.0;
};

struct DivisorEntry {
    ExtendedComplex point;
    int order = 0;          // > 0 zero multiplicity, −1 simple pole
    double residue = 0.0;   // poles only
};

/// Exact partial fractions for a rational ω. Sorted by (|z|, arg z), ∞ last.
/// Throws NonSimplePole and NonRealResidue (|Im| > 1e-9).
std::vector<ResidueEntry> residues(const CharacterOneForm& omega);

/// Full divisor of a rational ω: zeros and simple poles, with residues.
std::vector<DivisorEntry> divisor(const CharacterOneForm& omega);

/// (1/2πi)∮ ω over the circle |z − center| = radius by the periodic trapezoid rule.
Complex contour_residue(const CharacterOneForm& omega, Complex center, double radius, int points = 256);

struct SampledResidue {
    ExtendedComplex point;
    Complex residue{0.0};
};

/// Contour residues at the candidate points (∞ allowed); each circle encloses only its own candidate.
std::vector<SampledResidue> contour_residues(const CharacterOneForm& omega, const std::vector<ExtendedComplex>& candidates,
                                             int points = 256);

struct DivisorCheck {
    bool ok = false;
    int degree = 0;                 // Σ orders; −2 on the sphere
    double max_discrepancy = 0.0;   // entry-wise |D − ((ω)₀ + Σ(|Res|−1)[P])|
    double residue_sum = 0.0;
    std::string report;
};

/// D = (ω)₀ + Σ_P (|Res_P ω| − 1)[P] with D = Σ (β−1)[cone], plus deg(ω) = −2.
DivisorCheck divisor_relation_check(const CharacterOneForm& omega, const MetricSpec& spec, double tol = 1e-8);

enum class Monodromy { Trivial, ReducibleU1 };
std::string_view to_string(Monodromy m);

/// Trivial iff every residue is an integer (within 1e-8).
Monodromy classify_monodromy(const CharacterOneForm& omega);

/// f(endpoint) = f(basepoint)·exp(∫ω) along the polyline `path` (first vertex = basepoint,
/// last = endpoint). Throws PathThroughSingularity when the path comes within 1e-3 of a pole.
Complex reconstruct_developing_map(const CharacterOneForm& omega, Complex basepoint, Complex f_basepoint, Complex endpoint,
                                   const std::vector<Complex>& path);

/// Radial segment from the basepoint to |endpoint|, then an arc to arg(endpoint), as a polyline.
std::vector<Complex> radial_then_arc(Complex basepoint, Complex endpoint, int chords_per_turn = 256);
/// Arc at |basepoint| first, then the radial segment.
std::vector<Complex> arc_then_radial(Complex basepoint, Complex endpoint, int chords_per_turn = 256);

/// Basepoint value with modulus √((C−φ)/(C+φ)) and phase 0.
Complex basepoint_value(double phi, double c);

struct ReconstructedSample {
    Complex z;
    Complex f;
    double phi = 0.0;
};

/// Reconstructs f at every grid point farther than `pole_clearance` from the poles of ω.
std::vector<ReconstructedSample> reconstruct_on_grid(const CharacterOneForm& omega, const CatalogEigenfunction& eig,
                                                     Complex basepoint, const std::vector<Complex>& grid,
                                                     double pole_clearance = 0.05);

struct PullbackError {
    double metric = 0.0;   // max |4|f′|²/(1+|f|²)² − e^{2u}| / e^{2u}
    double modulus = 0.0;  // max | |f|² − (C−φ)/(C+φ) |
};

PullbackError verify_pullback(const std::vector<ReconstructedSample>& samples, const CharacterOneForm& omega,
                              const MetricSpec& spec);

/// max |φ − C(1−|f|²)/(1+|f|²)|.
double verify_eigen_identity(const std::vector<ReconstructedSample>& samples, double c);

/// φ = +C at positive-residue poles, −C at negative ones, and a saddle at each finite zero.
struct CriticalPointCheck {
    bool ok = false;
    double max_extremum_error = 0.0;
    std::string report;
};
CriticalPointCheck critical_point_check(const CharacterOneForm& omega, const CatalogEigenfunction& eig);

/// max |Re ∮ω| over a family of circles that avoid the poles.
double real_period_defect(const CharacterOneForm& omega);

}  // namespace conical
