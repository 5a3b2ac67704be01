#pragma once

// Finite Laurent polynomials Σ c_e z^e (e ∈ ℤ) with complex coefficients, and polynomial
// root finding.

#include "conical/scalar.hpp"

#include <map>
#include <string>
#include <vector>

namespace conical {

class LaurentPolynomial {
public:
    LaurentPolynomial() = default;
    static LaurentPolynomial monomial(int exponent, Complex coefficient);

    /// Coefficients with |c| ≤ tol are dropped.
    LaurentPolynomial trimmed(double tol = 0.0) const;

    bool is_zero() const { return terms_.empty(); }
    int min_exponent() const;
    int max_exponent() const;
    Complex coefficient(int exponent) const;
    const std::map<int, Complex>& terms() const noexcept { return terms_; }

    Complex operator()(Complex z) const;
    LaurentPolynomial derivative() const;

    friend LaurentPolynomial operator+(const LaurentPolynomial& x, const LaurentPolynomial& y);
    friend LaurentPolynomial operator-(const LaurentPolynomial& x, const LaurentPolynomial& y);
    friend LaurentPolynomial operator*(const LaurentPolynomial& x, const LaurentPolynomial& y);
    friend LaurentPolynomial operator*(Complex s, const LaurentPolynomial& x);

    /// Human-readable form such as "(0.125)z^-1 + (-0.125)z^3".
    std::string to_string() const;

private:
    std::map<int, Complex> terms_;
};

/// Roots of Σ_{i} coeffs[i] z^i (coeffs.back() ≠ 0) from the companion matrix, polished by Newton.
std::vector<Complex> polynomial_roots(const std::vector<Complex>& coeffs);

}  // namespace conical
