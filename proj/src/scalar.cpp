#include "conical/scalar.hpp"

#include <cctype>

namespace conical {

namespace {

std::optional<BigInt> exact_isqrt(const BigInt& n) {
    if (n < 0) return std::nullopt;
    BigInt r = boost::multiprecision::sqrt(n);
    if (r * r != n) return std::nullopt;
    return r;
}

}  // namespace

std::optional<Rational> exact_sqrt(const Rational& x) {
    if (x < 0) return std::nullopt;
    auto num = exact_isqrt(numerator(x));
    auto den = exact_isqrt(denominator(x));
    if (!num || !den) return std::nullopt;
    return Rational(*num, *den);
}

std::optional<GaussianRational> exact_sqrt(const GaussianRational& x) {
    // sqrt(x + iy) = a + ib with a = sqrt((|w| + x)/2), b = y / (2a).
    auto modulus = exact_sqrt(norm(x));
    if (!modulus) return std::nullopt;
    auto a = exact_sqrt((*modulus + x.re) / 2);
    if (!a) return std::nullopt;
    if (*a != 0) return GaussianRational(*a, x.im / (2 * *a));
    // Purely imaginary root: x is a nonpositive real.
    auto b = exact_sqrt((*modulus - x.re) / 2);
    if (!b) return std::nullopt;
    return GaussianRational(Rational(0), *b);
}

long floor_to_long(const Rational& x) {
    BigInt q = numerator(x) / denominator(x);  // truncates toward zero
    if (x < 0 && q * denominator(x) != numerator(x)) q -= 1;
    return q.convert_to<long>();
}

std::optional<Rational> parse_rational(std::string_view text) {
    auto is_int = [](std::string_view s) {
        if (s.empty()) return false;
        std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (i == s.size()) return false;
        for (; i < s.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
        return true;
    };
    auto to_big = [](std::string_view s) {
        if (!s.empty() && s[0] == '+') s.remove_prefix(1);
        return BigInt(std::string(s));
    };
    auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        if (!is_int(text)) return std::nullopt;
        return Rational(to_big(text));
    }
    auto p = text.substr(0, slash);
    auto q = text.substr(slash + 1);
    if (!is_int(p) || !is_int(q) || q[0] == '-' || q[0] == '+') return std::nullopt;
    BigInt den = to_big(q);
    if (den == 0) return std::nullopt;
    return Rational(to_big(p), den);
}

std::string format_rational(const Rational& x) {
    if (denominator(x) == 1) return numerator(x).str();
    return numerator(x).str() + "/" + denominator(x).str();
}

}  // namespace conical
