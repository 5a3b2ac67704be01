#pragma once

// Frobenius series for the mode-k radial equation of the football-form metric
//
//     (1 + r^{2β})² ((r∂_r)² − k²) φ_k = −4λβ² r^{2β} φ_k,
//
// with φ_k = Σ_j C_j r^{σ + 2jβ}, σ ∈ {k, −k}. Substituting and collecting powers of r^{2β}
// gives, with P_j = (σ + 2jβ)² − k²,
//
//     P_j C_j = −4λβ² C_{j−1} − 2 P_{j−1} C_{j−1} − P_{j−2} C_{j−2}      (j ≥ 1).
//
// The engine is generic in the scalar: Rational for exact identity checks, double for
// the spectral solver.

#include "conical/errors.hpp"
#include "conical/scalar.hpp"

#include <cmath>
#include <sstream>
#include <vector>

namespace conical {

template <class S>
struct RadialProblem {
    S beta;
    int k = 0;
    S lambda;
};

template <class S>
struct RadialSeries {
    RadialProblem<S> problem;
    S sigma;
    std::vector<S> coefficients;  // C_0 … C_N

    std::size_t truncation() const { return coefficients.size() - 1; }
    S exponent(std::size_t j) const { return sigma + S(2) * S(static_cast<long>(j)) * problem.beta; }
};

namespace detail {

inline bool vanishes(const Rational& x, const Rational&) { return x == 0; }
inline bool vanishes(double x, double scale) { return std::abs(x) <= 1e-12 * std::max(1.0, scale); }

}  // namespace detail

/// Indicial factor P_j = (σ + 2jβ)² − k².
template <class S>
S indicial_factor(const S& beta, int k, const S& sigma, long j) {
    S e = sigma + S(2) * S(j) * beta;
    return e * e - S(k) * S(k);
}

/// Builds C_0 … C_N. Throws ResonantIndicial{j} when P_j vanishes for some 1 ≤ j ≤ N.
template <class S>
RadialSeries<S> build_series(const RadialProblem<S>& problem, const S& sigma, const S& c0 = S(1),
                             std::size_t terms = 80) {
    const S k2 = S(problem.k) * S(problem.k);
    if (!detail::vanishes(S(sigma * sigma - k2), S(k2)))
        throw config_error("NonIndicialExponent", "leading exponent must be +k or -k");
    if (detail::vanishes(c0, S(1))) throw config_error("ZeroLeadingCoefficient", "C_0 must be nonzero");

    RadialSeries<S> series{problem, sigma, {}};
    auto& c = series.coefficients;
    c.reserve(terms + 1);
    c.push_back(c0);
    const S drive = S(4) * problem.lambda * problem.beta * problem.beta;
    for (std::size_t j = 1; j <= terms; ++j) {
        const long jj = static_cast<long>(j);
        const S pj = indicial_factor(problem.beta, problem.k, sigma, jj);
        if (detail::vanishes(pj, S(k2))) {
            std::ostringstream os;
            os << "indicial factor vanishes at step j = " << j << " (k = " << problem.k << ")";
            throw ResonantIndicial(static_cast<int>(j), os.str());
        }
        S rhs = -(drive + S(2) * indicial_factor(problem.beta, problem.k, sigma, jj - 1)) * c[j - 1];
        if (j >= 2) rhs -= indicial_factor(problem.beta, problem.k, sigma, jj - 2) * c[j - 2];
        c.push_back(rhs / pj);
    }
    return series;
}

/// λ = 2, σ = k closed form: C_j = (−1)^j · 2β/(k+β) · C_0 for j ≥ 1 (C_0 for j = 0).
template <class S>
S closed_form_lambda2(const S& beta, int k, const S& c0, long j) {
    if (j == 0) return c0;
    const S denom = S(k) + beta;
    if (detail::vanishes(denom, S(1))) throw numerical_error("IndicialDegeneracy", "k + beta = 0");
    S v = S(2) * beta / denom * c0;
    return (j % 2 == 0) ? v : S(-v);
}

/// Value and r-derivative of a truncated series, with the ratio-test tail estimate.
struct SeriesValue {
    double value = 0.0;
    double derivative = 0.0;
    double tail = 0.0;   // estimated magnitude of the omitted terms
    double scale = 0.0;  // Σ |C_j r^{σ+2jβ}|, the reference for relative tolerances
};

/// Evaluates Σ C_j r^{σ+2jβ} and its derivative. Throws TruncationInsufficient when the
/// estimated tail exceeds rel_tol · scale (including divergence of the ratio test).
SeriesValue evaluate(const RadialSeries<double>& series, double r, double rel_tol = 1e-12);

/// Same as evaluate, without the tolerance check.
SeriesValue evaluate_unchecked(const RadialSeries<double>& series, double r);

RadialSeries<double> to_floating(const RadialSeries<Rational>& series);

}  // namespace conical
