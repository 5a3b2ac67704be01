#pragma once

// Scalar types shared by the exact and floating code paths.
//
// Real scalars:    double, Rational
// Complex scalars: std::complex<double>, GaussianRational

#include <boost/multiprecision/cpp_int.hpp>

#include <complex>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

namespace conical {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;
using Complex = std::complex<double>;

/// Complex number with rational real and imaginary parts, i.e. an element of Q(i).
struct GaussianRational {
    Rational re{0};
    Rational im{0};

    GaussianRational() = default;
    GaussianRational(Rational r) : re(std::move(r)) {}  // NOLINT: implicit by design of Q ⊂ Q(i)
    GaussianRational(int r) : re(r) {}                  // NOLINT
    GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

    friend GaussianRational operator+(const GaussianRational& x, const GaussianRational& y) {
        return {x.re + y.re, x.im + y.im};
    }
    friend GaussianRational operator-(const GaussianRational& x, const GaussianRational& y) {
        return {x.re - y.re, x.im - y.im};
    }
    friend GaussianRational operator-(const GaussianRational& x) { return {-x.re, -x.im}; }
    friend GaussianRational operator*(const GaussianRational& x, const GaussianRational& y) {
        return {x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re};
    }
    friend GaussianRational operator/(const GaussianRational& x, const GaussianRational& y) {
        Rational n = y.re * y.re + y.im * y.im;
        if (n == 0) throw std::domain_error("GaussianRational: division by zero");
        return {(x.re * y.re + x.im * y.im) / n, (x.im * y.re - x.re * y.im) / n};
    }
    GaussianRational& operator+=(const GaussianRational& y) { return *this = *this + y; }
    GaussianRational& operator-=(const GaussianRational& y) { return *this = *this - y; }
    GaussianRational& operator*=(const GaussianRational& y) { return *this = *this * y; }
    GaussianRational& operator/=(const GaussianRational& y) { return *this = *this / y; }

    friend bool operator==(const GaussianRational& x, const GaussianRational& y) {
        return x.re == y.re && x.im == y.im;
    }
    friend bool operator!=(const GaussianRational& x, const GaussianRational& y) { return !(x == y); }

    friend std::ostream& operator<<(std::ostream& os, const GaussianRational& x) {
        return os << '(' << x.re << ',' << x.im << ')';
    }
};

inline GaussianRational conj(const GaussianRational& x) { return {x.re, -x.im}; }
inline Rational norm(const GaussianRational& x) { return x.re * x.re + x.im * x.im; }
inline Complex to_complex(const GaussianRational& x) {
    return {static_cast<double>(x.re), static_cast<double>(x.im)};
}
inline Complex to_complex(const Complex& x) { return x; }

inline double to_double(double x) { return x; }
inline double to_double(const Rational& x) { return static_cast<double>(x); }

inline bool is_zero(double x) { return x == 0.0; }
inline bool is_zero(const Rational& x) { return x == 0; }
inline bool is_zero(const Complex& x) { return x == Complex(0.0, 0.0); }
inline bool is_zero(const GaussianRational& x) { return x.re == 0 && x.im == 0; }

/// Exact square root of a nonnegative rational, if it is a perfect square.
std::optional<Rational> exact_sqrt(const Rational& x);

/// Principal square root in Q(i) (real part > 0, or real part 0 and imaginary part ≥ 0),
/// if one exists.
std::optional<GaussianRational> exact_sqrt(const GaussianRational& x);

/// True when x is an integer.
inline bool is_integer(const Rational& x) { return denominator(x) == 1; }

/// Floor of a rational as a machine integer.
long floor_to_long(const Rational& x);

/// Parse "p/q", "-p/q" or an integer literal. Returns nullopt for anything else
/// (decimal notation is deliberately not accepted as exact).
std::optional<Rational> parse_rational(std::string_view text);

/// "p/q" (or "p" for integers), the inverse of parse_rational.
std::string format_rational(const Rational& x);

}  // namespace conical
