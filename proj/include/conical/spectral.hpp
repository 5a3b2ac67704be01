#pragma once

// Mode-by-mode spectral problem on the two-cone catalog metrics.
//
// Mode k of an eigenfunction, φ_k(r)e^{ikθ}, solves the radial equation
//     y_tt = (k² − λβ² sech²(βt)) y,      t = ln r,
// seeded near r = 0 by the Frobenius series with the admissible leading exponent and
// integrated to the equator r = 1. The metric is invariant under r ↦ 1/r, so the solution
// from the cone at ∞ is Y(1/r) where Y is the shot for that cone's admissible exponent.

#include "conical/extensions.hpp"
#include "conical/frobenius.hpp"
#include "conical/metric.hpp"

#include <string_view>
#include <utility>
#include <vector>

namespace conical {

struct SpectralOptions {
    double rel_tol = 1e-11;     // integrator and series tail
    double root_tol = 1e-10;    // residual bound for reported eigenvalues
    double grid_step = 0.05;    // λ scan resolution
    std::size_t series_terms = 80;
    bool parallel = true;       // one task per mode in spectrum()
};

struct ModeSpectralProblem {
    double beta = 1.0;
    int k = 0;
    ExtensionType extension = ExtensionType::Holomorphic;
    double lambda_lo = 0.05;
    double lambda_hi = 30.0;
    SpectralOptions options{};
};

enum class Parity { Symmetric, Antisymmetric };
std::string_view to_string(Parity p);

/// Leading exponents admitted at the cone at 0 and at the cone at ∞ (in the local
/// coordinate 1/z, where mode k appears as mode −k).
double sigma_at_zero(const ModeSpectralProblem& p);
double sigma_at_infinity(const ModeSpectralProblem& p);

struct RadialState {
    double r = 0.0;
    double value = 0.0;
    double derivative = 0.0;  // d/dr
};

/// Solution with leading behaviour r^σ (C₀ = 1) evaluated at the requested radii in (0, 1].
std::vector<RadialState> shoot(double beta, int k, double sigma, double lambda, const std::vector<double>& radii,
                               const SpectralOptions& options = {});

/// Value and derivative at r = 1 of the solution admissible at the cone at 0.
RadialState shoot_to_equator(const ModeSpectralProblem& p, double lambda);

struct MatchingValues {
    /// True when both cones admit the same exponent: then the eigenfunction is either
    /// antisymmetric (value(1) = 0) or symmetric (derivative(1) = 0).
    bool reflection_symmetric = true;
    double dirichlet_residual = 0.0;
    double neumann_residual = 0.0;
    /// y₀(1)Y′(1) + y₀′(1)Y(1); vanishes exactly when the two one-sided solutions glue C¹.
    double determinant = 0.0;
    /// y₀(1)/Y(1): the solution equals reflection·Y(1/r) beyond the equator.
    double reflection = 0.0;
};

MatchingValues matching_values(const ModeSpectralProblem& p, double lambda);
double matching_determinant(const ModeSpectralProblem& p, double lambda);

struct Eigenvalue {
    double lambda = 0.0;
    Parity parity = Parity::Symmetric;
    double residual = 0.0;
};

/// Sign-change scan over [λ_lo, λ_hi] with bracketed refinement. Sorted ascending.
/// Throws SuspectedDoubleRoot when a residual dips below √root_tol without changing sign.
std::vector<Eigenvalue> eigenvalue_scan(const ModeSpectralProblem& p);

struct ModeEigenvalues {
    int k = 0;
    std::vector<Eigenvalue> eigenvalues;
};

struct EigenvalueReport {
    std::vector<ModeEigenvalues> modes;  // sorted by k
    double lambda1 = 0.0;                // least eigenvalue over all modes
};

/// Scans modes |k| ≤ k_max. Throws InsufficientModes when k_max < J + 2 and NoEigenvalue when
/// nothing is found in range.
EigenvalueReport spectrum(const Beta& beta, ExtensionType ext, int k_max, double lambda_lo, double lambda_hi,
                          const SpectralOptions& options = {});

double lambda1(const Beta& beta, ExtensionType ext, int k_max, double lambda_max, const SpectralOptions& options = {});

/// An eigenfunction mode glued across the equator, evaluable at any r > 0.
class EigenMode {
public:
    EigenMode(const ModeSpectralProblem& p, double lambda);

    std::vector<RadialState> evaluate(const std::vector<double>& radii) const;
    double lambda() const noexcept { return lambda_; }
    double reflection() const noexcept { return reflection_; }
    const ModeSpectralProblem& problem() const noexcept { return problem_; }

private:
    ModeSpectralProblem problem_;
    double lambda_;
    double reflection_;
};

/// r·W(y₊, y₋) at r = 1 for the solutions with leading exponents +k and −k (k ≥ 1).
/// Close to −2k; a nonzero value means no real eigenfunction can occupy modes ±k under the
/// holomorphic condition, because the conjugate of an r^k term is not admissible in mode −k.
double real_compatibility_wronskian(double beta, int k, double lambda, const SpectralOptions& options = {});

struct TwoEigenspaceReport {
    int dimension = 0;
    std::vector<int> extra_modes;                  // k > J carrying eigenvalue 2
    double mode0_residual = 0.0;                   // |φ₀(1)| of the canonical mode at λ = 2
    std::vector<std::pair<int, double>> wronskians;  // singular modes 1 ≤ k ≤ J
};

/// Dimension of the real λ = 2 eigenspace of the holomorphic extension:
/// 1 + 2·#{k > J : the regular mode-k problem has eigenvalue 2}.
/// Throws NonRotationalMetric for non-unitary power covers and DimensionOutOfTheorem when the
/// count is not 1 or 3.
TwoEigenspaceReport two_eigenspace(const MetricSpec& spec, int k_max, const SpectralOptions& options = {});
int real_two_eigenspace_dimension(const MetricSpec& spec, int k_max, const SpectralOptions& options = {});

/// 1 + 2·extra_modes, asserted to lie in {1, 3} (DimensionOutOfTheorem otherwise).
int two_eigenspace_dimension_from_count(int extra_modes);

}  // namespace conical
