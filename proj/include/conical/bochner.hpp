#pragma once

// Complex gradient field X = e^{−2u} φ_z̄ ∂_z of an eigenfunction, mode by mode.
//
// For φ_k(r)e^{ikθ} with φ_k = Σ C_j r^{σ+2jβ}, put a_j = (σ − k + 2jβ)C_j and
//     C̃_j = a_j + 2a_{j−1} + a_{j−2}.
// Then X^z = X_k(r) e^{i(k+1)θ} with X_k = (1/8β²) Σ C̃_j r^{σ+(2j−2)β+1}, and
//     ∂_z̄X^z = e^{i(k+2)θ} (1/16β²) Σ (σ − k + (2j−2)β) C̃_j r^{σ+(2j−2)β}.
// σ = k gives a_j = 2jβC_j; σ = −k gives a_j = (−2k + 2jβ)C_j.

#include "conical/extensions.hpp"
#include "conical/frobenius.hpp"
#include "conical/laurent.hpp"
#include "conical/metric.hpp"
#include "conical/spectral.hpp"

#include <string_view>
#include <vector>

namespace conical {

template <class S>
struct ModeVectorField {
    S beta;
    int k = 0;
    S sigma;
    std::vector<S> tilde;  // C̃_0 … C̃_N

    S exponent(std::size_t j) const { return sigma + S(2 * static_cast<long>(j) - 2) * beta + S(1); }
    S normalization() const { return S(1) / (S(8) * beta * beta); }
};

template <class S>
ModeVectorField<S> tilde_coefficients(const RadialSeries<S>& series) {
    const auto& c = series.coefficients;
    const S& beta = series.problem.beta;
    const int k = series.problem.k;
    std::vector<S> a;
    a.reserve(c.size());
    for (std::size_t j = 0; j < c.size(); ++j)
        a.push_back((series.sigma - S(k) + S(2) * S(static_cast<long>(j)) * beta) * c[j]);
    ModeVectorField<S> field{beta, k, series.sigma, {}};
    field.tilde.reserve(c.size());
    for (std::size_t j = 0; j < c.size(); ++j) {
        S t = a[j];
        if (j >= 1) t += S(2) * a[j - 1];
        if (j >= 2) t += a[j - 2];
        field.tilde.push_back(t);
    }
    return field;
}

/// Coefficients of ∂_z̄X^z for one mode: D_j r^{σ+(2j−2)β} e^{i(k+2)θ}.
template <class S>
struct DbarMode {
    S beta;
    int k = 0;
    S sigma;
    std::vector<S> coefficients;

    S exponent(std::size_t j) const { return sigma + S(2 * static_cast<long>(j) - 2) * beta; }
};

template <class S>
DbarMode<S> dbar_mode_coefficients(const ModeVectorField<S>& field) {
    DbarMode<S> out{field.beta, field.k, field.sigma, {}};
    const S scale = S(1) / (S(16) * field.beta * field.beta);
    for (std::size_t j = 0; j < field.tilde.size(); ++j) {
        const S factor = field.sigma - S(field.k) + S(2 * static_cast<long>(j) - 2) * field.beta;
        out.coefficients.push_back(factor * field.tilde[j] * scale);
    }
    return out;
}

/// X_k(r) from the truncated series.
double evaluate_field(const ModeVectorField<double>& field, double r);

enum class FieldSelector { Canonical, Re, Im };
std::string_view to_string(FieldSelector s);
FieldSelector parse_field_selector(std::string_view text);

/// Catalog eigenfunction for λ = 2: (1−|f|²)/(1+|f|²), 2Re f/(1+|f|²) or 2Im f/(1+|f|²).
/// Re and Im need an integer cone angle (a single-valued f).
double catalog_eigenfunction_value(const MetricSpec& spec, FieldSelector which, Complex z);

/// X^z of the catalog eigenfunction as a Laurent polynomial in z:
/// canonical −f/(2f′), Re (1−f²)/(4f′), Im i(1+f²)/(4f′). Throws UnsupportedSelector.
LaurentPolynomial closed_form_field(const MetricSpec& spec, FieldSelector which);

struct ModeComponent {
    int k = 0;
    Complex amplitude{1.0};  // multiplies the C₀ = 1 solution admissible at the cone at 0
};

/// φ = Σ amplitude · y_k(r) e^{ikθ}, each y_k an eigenmode at the same λ.
struct ModalEigenfunction {
    double beta = 1.0;
    double lambda = 2.0;
    ExtensionType extension = ExtensionType::Holomorphic;
    std::vector<ModeComponent> modes;
};

/// Mode decomposition of a catalog eigenfunction on a rotationally symmetric metric,
/// by angular projection at r = 1/2.
ModalEigenfunction catalog_modal_eigenfunction(const MetricSpec& spec, FieldSelector which);

/// Evaluates φ and X^z of a modal eigenfunction at the given points, through the shooting solver.
struct FieldSample {
    Complex z;
    double phi = 0.0;
    Complex x{0.0};
};
std::vector<FieldSample> sample_modal_field(const ModalEigenfunction& f, const std::vector<Complex>& points,
                                            const SpectralOptions& options = {});

struct PoleClassification {
    ExtendedComplex cone{Complex(0.0)};
    int order = 0;  // > 0: zero of that order; < 0: pole
};

/// Order of X at cone 0 or 1 (∞, read in w = 1/z), from the Frobenius data of each mode at that
/// cone. Throws ClassificationViolation if X is not meromorphic there or breaches the bound
/// (zero for β < 1, pole order at most [β]−1 for non-integer β > 1, at most n−1 for β = n).
PoleClassification pole_order_at_cone(const MetricSpec& spec, const ModalEigenfunction& f, std::size_t cone);

/// Same classification read off a closed-form field.
PoleClassification pole_order_at_cone(const MetricSpec& spec, const LaurentPolynomial& x, std::size_t cone);

struct BochnerBalance {
    double lhs = 0.0;    // ∫ |∂_z̄X^z|² e^{2u} dA
    double rhs = 0.0;    // ½(λ−2) ∫ |X|²_g dVol = ((λ−2)/4) ∫ e^{4u}|X^z|² dA
    double scale = 0.0;  // ∫ |X|²_g dVol
};

/// Integrated Bochner identity for a modal eigenfunction, by composite Gauss–Legendre quadrature
/// in t = ln r. Throws QuadratureFailure when two resolutions disagree.
BochnerBalance bochner_balance(const MetricSpec& spec, const ModalEigenfunction& f, const SpectralOptions& options = {});

}  // namespace conical
