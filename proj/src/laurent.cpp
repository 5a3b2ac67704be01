#include "conical/laurent.hpp"

#include "conical/errors.hpp"

#include <Eigen/Eigenvalues>

#include <cstdio>

namespace conical {

LaurentPolynomial LaurentPolynomial::monomial(int exponent, Complex coefficient) {
    LaurentPolynomial p;
    if (coefficient != Complex(0.0)) p.terms_[exponent] = coefficient;
    return p;
}

LaurentPolynomial LaurentPolynomial::trimmed(double tol) const {
    LaurentPolynomial p;
    for (const auto& [e, c] : terms_)
        if (std::abs(c) > tol) p.terms_[e] = c;
    return p;
}

int LaurentPolynomial::min_exponent() const {
    if (terms_.empty()) throw numerical_error("ZeroField", "zero Laurent polynomial has no exponents");
    return terms_.begin()->first;
}

int LaurentPolynomial::max_exponent() const {
    if (terms_.empty()) throw numerical_error("ZeroField", "zero Laurent polynomial has no exponents");
    return terms_.rbegin()->first;
}

Complex LaurentPolynomial::coefficient(int exponent) const {
    auto it = terms_.find(exponent);
    return it == terms_.end() ? Complex(0.0) : it->second;
}

Complex LaurentPolynomial::operator()(Complex z) const {
    Complex sum{0.0};
    for (const auto& [e, c] : terms_) sum += c * std::pow(z, e);
    return sum;
}

LaurentPolynomial LaurentPolynomial::derivative() const {
    LaurentPolynomial p;
    for (const auto& [e, c] : terms_)
        if (e != 0) p.terms_[e - 1] = double(e) * c;
    return p;
}

LaurentPolynomial operator+(const LaurentPolynomial& x, const LaurentPolynomial& y) {
    LaurentPolynomial p = x;
    for (const auto& [e, c] : y.terms_) p.terms_[e] += c;
    return p.trimmed();
}

LaurentPolynomial operator-(const LaurentPolynomial& x, const LaurentPolynomial& y) { return x + Complex(-1.0) * y; }

LaurentPolynomial operator*(const LaurentPolynomial& x, const LaurentPolynomial& y) {
    LaurentPolynomial p;
    for (const auto& [e1, c1] : x.terms_)
        for (const auto& [e2, c2] : y.terms_) p.terms_[e1 + e2] += c1 * c2;
    return p.trimmed();
}

LaurentPolynomial operator*(Complex s, const LaurentPolynomial& x) {
    LaurentPolynomial p;
    for (const auto& [e, c] : x.terms_) p.terms_[e] = s * c;
    return p.trimmed();
}

std::string LaurentPolynomial::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    char buf[96];
    for (const auto& [e, c] : terms_) {
        if (!out.empty()) out += " + ";
        std::snprintf(buf, sizeof buf, "(%.17g%+.17gi)z^%d", c.real(), c.imag(), e);
        out += buf;
    }
    return out;
}

std::vector<Complex> polynomial_roots(const std::vector<Complex>& coeffs) {
    if (coeffs.empty() || coeffs.back() == Complex(0.0))
        throw numerical_error("DegeneratePolynomial", "leading coefficient must be nonzero");
    const auto n = static_cast<Eigen::Index>(coeffs.size() - 1);
    if (n == 0) return {};
    Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(n, n);
    for (Eigen::Index i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
    for (Eigen::Index i = 0; i < n; ++i) companion(i, n - 1) = -coeffs[static_cast<std::size_t>(i)] / coeffs.back();
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
    if (solver.info() != Eigen::Success) throw numerical_error("RootFindingFailure", "companion eigen-solve failed");

    std::vector<Complex> roots;
    for (Eigen::Index i = 0; i < n; ++i) {
        Complex z = solver.eigenvalues()(i);
        for (int it = 0; it < 8; ++it) {
            Complex p{0.0}, dp{0.0};
            for (std::size_t j = coeffs.size(); j-- > 0;) {
                dp = dp * z + p;
                p = p * z + coeffs[j];
            }
            if (dp == Complex(0.0)) break;
            const Complex step = p / dp;
            z -= step;
            if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(z))) break;
        }
        roots.push_back(z);
    }
    return roots;
}

}  // namespace conical
