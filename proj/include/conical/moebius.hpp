#pragma once

// PSL(2,C) arithmetic on the extended complex plane, in floating
// (std::complex<double>) or exact (GaussianRational) mode.

#include "conical/errors.hpp"
#include "conical/scalar.hpp"

#include <cmath>
#include <complex>
#include <sstream>

namespace conical {

namespace detail {

inline double abs2(const Complex& z) { return std::norm(z); }
inline double abs2(const GaussianRational& z) { return static_cast<double>(norm(z)); }
inline Complex conj_of(const Complex& z) { return std::conj(z); }
inline GaussianRational conj_of(const GaussianRational& z) { return conj(z); }
inline bool is_finite(const Complex& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }
inline bool is_finite(const GaussianRational&) { return true; }
inline bool is_nan(const Complex& z) { return std::isnan(z.real()) || std::isnan(z.imag()); }
inline bool is_nan(const GaussianRational&) { return false; }

inline Complex principal_sqrt(const Complex& z) { return std::sqrt(z); }
inline GaussianRational principal_sqrt(const GaussianRational& z) {
    auto root = exact_sqrt(z);
    if (!root) {
        std::ostringstream os;
        os << "determinant " << z << " has no square root in Q(i)";
        throw numerical_error("NonExactNormalization", os.str());
    }
    return *root;
}

}  // namespace detail

/// A point of the Riemann sphere: a finite complex value or the single point at infinity.
template <class C>
class BasicExtendedComplex {
public:
    BasicExtendedComplex(C v) : value_(std::move(v)) {  // NOLINT: finite points convert implicitly
        if (detail::is_nan(value_)) throw config_error("NonFiniteValue", "NaN is not a point of the sphere");
        if (!detail::is_finite(value_)) {
            infinite_ = true;
            value_ = C{};
        }
    }

    static BasicExtendedComplex infinity() {
        BasicExtendedComplex p{C{}};
        p.infinite_ = true;
        return p;
    }

    bool is_infinite() const noexcept { return infinite_; }
    const C& value() const {
        if (infinite_) throw config_error("InfiniteValue", "value() of the point at infinity");
        return value_;
    }

    friend bool operator==(const BasicExtendedComplex& x, const BasicExtendedComplex& y) {
        if (x.infinite_ || y.infinite_) return x.infinite_ == y.infinite_;
        return x.value_ == y.value_;
    }

private:
    C value_{};
    bool infinite_ = false;
};

using ExtendedComplex = BasicExtendedComplex<Complex>;

/// w ↦ (a w + b) / (c w + d). A single matrix representative of the PSL(2,C) class is stored;
/// all predicates are invariant under the overall sign.
template <class C>
struct BasicMoebius {
    C a{1}, b{0}, c{0}, d{1};

    static BasicMoebius identity() { return {C{1}, C{0}, C{0}, C{1}}; }

    C determinant() const { return a * d - b * c; }

    friend bool operator==(const BasicMoebius& s, const BasicMoebius& t) {
        return s.a == t.a && s.b == t.b && s.c == t.c && s.d == t.d;
    }
};

using Moebius = BasicMoebius<Complex>;
using ExactMoebius = BasicMoebius<GaussianRational>;

/// Scale to determinant 1 by the principal square root of ad − bc.
template <class C>
BasicMoebius<C> normalize(const BasicMoebius<C>& t) {
    C det = t.determinant();
    if (is_zero(det)) throw numerical_error("SingularTransform", "ad - bc = 0");
    C s = detail::principal_sqrt(det);
    return {t.a / s, t.b / s, t.c / s, t.d / s};
}

template <class C>
BasicExtendedComplex<C> apply(const BasicMoebius<C>& t, const BasicExtendedComplex<C>& w) {
    if (w.is_infinite()) {
        if (is_zero(t.c)) return BasicExtendedComplex<C>::infinity();
        return BasicExtendedComplex<C>(t.a / t.c);
    }
    C den = t.c * w.value() + t.d;
    if (is_zero(den)) return BasicExtendedComplex<C>::infinity();
    return BasicExtendedComplex<C>((t.a * w.value() + t.b) / den);
}

/// s ∘ t, i.e. apply(compose(s, t), w) == apply(s, apply(t, w)).
template <class C>
BasicMoebius<C> compose(const BasicMoebius<C>& s, const BasicMoebius<C>& t) {
    return {s.a * t.a + s.b * t.c, s.a * t.b + s.b * t.d, s.c * t.a + s.d * t.c, s.c * t.b + s.d * t.d};
}

template <class C>
BasicMoebius<C> inverse(const BasicMoebius<C>& t) {
    return {t.d, -t.b, -t.c, t.a};
}

/// Membership in PSU(2): |a|²+|b|² = 1, c = −conj(b), d = conj(a), each within tol.
template <class C>
bool is_unitary(const BasicMoebius<C>& t, double tol) {
    double unit = detail::abs2(t.a) + detail::abs2(t.b);
    if (std::abs(unit - 1.0) > tol) return false;
    if (std::sqrt(detail::abs2(t.c + detail::conj_of(t.b))) > tol) return false;
    if (std::sqrt(detail::abs2(t.d - detail::conj_of(t.a))) > tol) return false;
    return true;
}

/// Rotation w ↦ e^{iθ} w as a normalized transform.
inline Moebius rotation(double theta) {
    return {std::polar(1.0, theta / 2), Complex(0), Complex(0), std::polar(1.0, -theta / 2)};
}

/// The general element of PSU(2) with a = cos(α)e^{iγ}, b = sin(α)e^{iδ}.
inline Moebius unitary_from_angles(double alpha, double gamma, double delta) {
    Complex a = std::polar(std::cos(alpha), gamma);
    Complex b = std::polar(std::sin(alpha), delta);
    return {a, b, -std::conj(b), std::conj(a)};
}

inline Moebius to_floating(const ExactMoebius& t) {
    return {to_complex(t.a), to_complex(t.b), to_complex(t.c), to_complex(t.d)};
}

}  // namespace conical
