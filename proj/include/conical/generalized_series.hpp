#pragma once

#include "conical/errors.hpp"
#include "conical/scalar.hpp"

#include <algorithm>
#include <vector>

namespace conical {

/// Truncated series z^offset · Σ_{j<K} c_j z^j with a possibly non-integer offset.
/// Closed under differentiation, products and quotients, which is all the symbolic
/// calculus the catalog developing maps need. E is the exponent scalar (double or
/// Rational); F the coefficient field (Complex or GaussianRational).
template <class E, class F>
class GeneralizedSeries {
public:
    GeneralizedSeries(E offset, std::vector<F> coeffs) : offset_(std::move(offset)), coeffs_(std::move(coeffs)) {}

    static GeneralizedSeries monomial(E exponent, F coeff, std::size_t terms) {
        std::vector<F> c(terms, F{0});
        c[0] = std::move(coeff);
        return {std::move(exponent), std::move(c)};
    }

    const E& offset() const { return offset_; }
    std::size_t size() const { return coeffs_.size(); }
    const F& operator[](std::size_t j) const { return coeffs_[j]; }

    /// Shift leading zero coefficients into the offset.
    GeneralizedSeries normalized() const {
        std::size_t lead = 0;
        while (lead < coeffs_.size() && is_zero(coeffs_[lead])) ++lead;
        if (lead == coeffs_.size()) throw numerical_error("ZeroSeries", "series vanishes to truncation order");
        std::vector<F> c(coeffs_.begin() + static_cast<std::ptrdiff_t>(lead), coeffs_.end());
        return {offset_ + E(static_cast<long>(lead)), std::move(c)};
    }

    GeneralizedSeries derivative() const {
        std::vector<F> c(coeffs_.size());
        for (std::size_t j = 0; j < coeffs_.size(); ++j)
            c[j] = F(offset_ + E(static_cast<long>(j))) * coeffs_[j];
        return {offset_ - E(1), std::move(c)};
    }

    friend GeneralizedSeries operator*(const GeneralizedSeries& x, const GeneralizedSeries& y) {
        std::size_t n = std::min(x.size(), y.size());
        std::vector<F> c(n, F{0});
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; i + j < n; ++j) c[i + j] += x.coeffs_[i] * y.coeffs_[j];
        return {x.offset_ + y.offset_, std::move(c)};
    }

    friend GeneralizedSeries operator/(const GeneralizedSeries& x, const GeneralizedSeries& yraw) {
        GeneralizedSeries y = yraw.normalized();
        std::size_t n = std::min(x.size(), y.size());
        std::vector<F> q(n, F{0});
        for (std::size_t j = 0; j < n; ++j) {
            F acc = x.coeffs_[j];
            for (std::size_t i = 0; i < j; ++i) acc -= q[i] * y.coeffs_[j - i];
            q[j] = acc / y.coeffs_[0];
        }
        return {x.offset_ - y.offset_, std::move(q)};
    }

    /// Sum of two series whose offsets differ by a nonnegative integer.
    friend GeneralizedSeries operator+(const GeneralizedSeries& x, const GeneralizedSeries& y) {
        const GeneralizedSeries& lo = (x.offset_ <= y.offset_) ? x : y;
        const GeneralizedSeries& hi = (x.offset_ <= y.offset_) ? y : x;
        long shift = integer_gap(lo.offset_, hi.offset_);
        std::size_t n = std::min(lo.size(), hi.size() + static_cast<std::size_t>(shift));
        std::vector<F> c(n, F{0});
        for (std::size_t j = 0; j < n; ++j) {
            c[j] = lo.coeffs_[j];
            if (j >= static_cast<std::size_t>(shift)) c[j] += hi.coeffs_[j - static_cast<std::size_t>(shift)];
        }
        return {lo.offset_, std::move(c)};
    }

    friend GeneralizedSeries operator*(const F& s, const GeneralizedSeries& x) {
        std::vector<F> c(x.coeffs_);
        for (auto& v : c) v = s * v;
        return {x.offset_, std::move(c)};
    }

    /// Coefficient of z^exponent; zero below the offset, error past the truncation.
    F coefficient(const E& exponent) const {
        if (exponent < offset_) {
            (void)integer_gap(exponent, offset_);  // validates the lattice
            return F{0};
        }
        long j = integer_gap(offset_, exponent);
        if (static_cast<std::size_t>(j) >= coeffs_.size())
            throw numerical_error("TruncationInsufficient", "coefficient beyond series truncation");
        return coeffs_[static_cast<std::size_t>(j)];
    }

private:
    static long integer_gap(const E& lo, const E& hi) {
        E gap = hi - lo;
        long g = static_cast<long>(to_double(gap) + 0.5);
        if (!exponent_equal(gap, E(g)))
            throw numerical_error("ExponentLattice", "series exponents are not on a common integer lattice");
        return g;
    }
    static bool exponent_equal(const double& x, const double& y) { return std::abs(x - y) < 1e-9; }
    static bool exponent_equal(const Rational& x, const Rational& y) { return x == y; }

    E offset_;
    std::vector<F> coeffs_;
};

}  // namespace conical
