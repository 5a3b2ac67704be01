#include "conical/extensions.hpp"

#include <doctest.h>

using namespace conical;

TEST_CASE("singular count") {
    CHECK(singular_count(Beta(2.5)) == 2);
    CHECK(singular_count(Beta(3.0)) == 2);
    CHECK(singular_count(Beta(0.5)) == 0);
    CHECK(singular_count(Beta(Rational(7, 3))) == 2);
    CHECK(singular_count(Beta(Rational(2))) == 1);
}

TEST_CASE("admissible exponents") {
    Beta b(Rational(5, 2));
    CHECK(admissible_leading_exponent(ExtensionType::Friedrichs, b, -2) == 2);
    CHECK(admissible_leading_exponent(ExtensionType::Holomorphic, b, -2) == -2);
    CHECK(admissible_leading_exponent(ExtensionType::Holomorphic, b, 2) == 2);
    CHECK(admissible_leading_exponent(ExtensionType::Holomorphic, b, -3) == 3);
    CHECK(parse_extension("holomorphic") == ExtensionType::Holomorphic);
    CHECK_THROWS_AS(parse_extension("hol"), Error);
}

TEST_CASE("symplectic pairing and Lagrangian subspaces") {
    CoefficientLayout layout({2, 2});
    CHECK(layout.block_size() == 10);
    auto x = CoefficientVector::zero(layout), y = CoefficientVector::zero(layout);
    x.a[0] = 1.0;
    y.b[0] = Complex(0, 1);
    CHECK(symplectic_pairing(x, y) == Complex(0, -1));
    CHECK(symplectic_pairing(y, x) == Complex(0, -1));  // Ω(y,x) = −conj Ω(x,y)
    CHECK_THROWS_AS(symplectic_pairing(x, CoefficientVector::zero(CoefficientLayout({1}))), Error);

    for (double b : {0.5, 0.75, 4.0 / 3, 1.5, 7.0 / 3, 2.5, 2.0, 3.0}) {
        auto spec = MetricSpec::football(Beta(b));
        auto l = CoefficientLayout::for_metric(spec);
        CHECK(is_lagrangian(extension_subspace(ExtensionType::Friedrichs, l)));
        CHECK(is_lagrangian(extension_subspace(ExtensionType::Holomorphic, l)));
    }

    // a subspace mixing a_k and b_k of the same mode is not isotropic
    CoefficientSubspace bad{layout, {}};
    auto v = CoefficientVector::zero(layout);
    v.a[1] = 1.0;
    v.b[1] = 1.0;
    bad.basis.push_back(v);
    CHECK_FALSE(is_lagrangian(bad));
}
