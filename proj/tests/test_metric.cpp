#include "conical/metric.hpp"

#include <doctest.h>

#include <numbers>

using namespace conical;

namespace {
MetricSpec fb(double b) { return MetricSpec::football(Beta(b)); }
MetricSpec fbq(long p, long q) { return MetricSpec::football(Beta(Rational(p, q))); }
}  // namespace

TEST_CASE("density examples") {
    CHECK(density(fb(1), 1.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(density(fb(0.5), 1.0) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(density(fb(2), 1.0) == doctest::Approx(4.0).epsilon(1e-15));
    CHECK_THROWS_AS(density(fb(2), 0.0), Error);
    CHECK(density(MetricSpec::power_cover(2), Complex(0.3, 0.4)) == doctest::Approx(density(fb(2), Complex(0.3, 0.4))));

    // cone-swapping isometry
    for (double r : {0.1, 0.5, 0.9, 2.0}) {
        Complex z = std::polar(r, 0.7);
        double lhs = density(fb(1.5), 1.0 / std::conj(z)) * std::pow(std::abs(z), -4);
        CHECK(std::abs(lhs - density(fb(1.5), z)) < 1e-12 * density(fb(1.5), z));
    }
}

TEST_CASE("density of a non-unitary power cover uses the full developing map") {
    Moebius m = normalize(Moebius{2.0, 1.0, 0.0, 1.0});
    auto spec = MetricSpec::power_cover(2, m);
    CHECK_FALSE(spec.is_rotationally_symmetric());
    Complex z(0.4, 0.2);
    Complex w = z * z;
    Complex f = (m.a * w + m.b) / (m.c * w + m.d);
    Complex fp = 2.0 * z / ((m.c * w + m.d) * (m.c * w + m.d));
    double expected = 4 * std::norm(fp) / std::pow(1 + std::norm(f), 2);
    CHECK(density(spec, z) == doctest::Approx(expected).epsilon(1e-13));
}

TEST_CASE("canonical eigenfunction") {
    CHECK(std::abs(canonical_eigenfunction(fb(1.7), ExtendedComplex(std::polar(1.0, 0.3)))) < 1e-15);
    CHECK(canonical_eigenfunction(fb(1), ExtendedComplex(Complex(0))) == 1.0);
    CHECK(canonical_eigenfunction(fb(1), ExtendedComplex::infinity()) == -1.0);
    CHECK(canonical_eigenfunction(fb(1.5), ExtendedComplex(Complex(0.5))) ==
          doctest::Approx((1 - 0.125) / (1 + 0.125)).epsilon(1e-14));
    for (double r : {0.2, 0.7, 3.0})
        CHECK(canonical_eigenfunction(fb(2.5), ExtendedComplex(Complex(1 / r))) ==
              doctest::Approx(-canonical_eigenfunction(fb(2.5), ExtendedComplex(Complex(r)))).epsilon(1e-14));

    // loop around 0 returns to the start value
    auto spec = MetricSpec::power_cover(3, unitary_from_angles(0.7, 0.2, 0.4));
    double start = canonical_eigenfunction(spec, ExtendedComplex(Complex(0.6)));
    double end = start;
    for (int i = 1; i <= 64; ++i) end = canonical_eigenfunction(spec, ExtendedComplex(std::polar(0.6, 2 * std::numbers::pi * i / 64)));
    CHECK(std::abs(end - start) < 1e-12);

    // expansion near 0: (|d|²−|b|²)/(|b|²+|d|²) − 4 Re(b̄ d̄ z^n)/(|b|²+|d|²)²
    Moebius m = unitary_from_angles(0.5, 0.0, 0.0);
    auto pc = MetricSpec::power_cover(2, m);
    double nb = std::norm(m.b), nd = std::norm(m.d);
    double c0 = (nd - nb) / (nb + nd);
    Complex z(1e-3, 0);
    double expect = c0 - 2.0 * std::real(std::conj(m.b) * std::conj(m.d) * z * z) / std::pow(nb + nd, 2) * 2.0;
    CHECK(std::abs(canonical_eigenfunction(pc, ExtendedComplex(z)) - expect) < 1e-10);
}

TEST_CASE("geodesic radius") {
    CHECK(std::abs(geodesic_radius(fb(1), 1.0) - std::numbers::pi / 2) < 1e-15);
    CHECK(std::abs(geodesic_radius(fb(2), 1.0) - std::numbers::pi / 2) < 1e-15);
    CHECK(geodesic_radius(fb(2), 1e-9) < 1e-15);
    CHECK(geodesic_radius(fb(2), 1e9) > std::numbers::pi - 1e-12);
    double prev = 0;
    for (double r = 0.1; r < 10; r *= 1.3) {
        CHECK(geodesic_radius(fb(0.7), r) > prev);
        prev = geodesic_radius(fb(0.7), r);
    }
}

TEST_CASE("total area is 4 pi beta") {
    for (double b : {0.5, 1.0, 1.5, 2.0})
        CHECK(std::abs(total_area(fb(b)) - 4 * std::numbers::pi * b) < 1e-8 * 4 * std::numbers::pi * b);
    CHECK(std::abs(total_area(MetricSpec::power_cover(2)) - 8 * std::numbers::pi) < 1e-8 * 8 * std::numbers::pi);
    auto skew = MetricSpec::power_cover(2, normalize(Moebius{1.0, 0.5, 0.0, 1.0}));
    CHECK(std::abs(total_area(skew, 1e-9) - 8 * std::numbers::pi) < 1e-7 * 8 * std::numbers::pi);
}

TEST_CASE("schwarzian principal term") {
    CHECK(schwarzian_principal_coefficient(fb(0.5)) == doctest::Approx(0.375).epsilon(1e-12));
    CHECK(std::abs(schwarzian_principal_coefficient(fb(1))) < 1e-12);
    CHECK(schwarzian_principal_coefficient(MetricSpec::power_cover(2)) == doctest::Approx(-1.5).epsilon(1e-12));
    for (auto [p, q] : {std::pair{1L, 2L}, {3L, 2L}, {7L, 3L}, {5L, 2L}}) {
        Rational b(p, q);
        CHECK(schwarzian_principal_coefficient_exact(fbq(p, q)) == GaussianRational((1 - b * b) / 2));
    }
    ExactMoebius m{GaussianRational(1), GaussianRational(1), GaussianRational(0), GaussianRational(1)};
    CHECK(schwarzian_principal_coefficient_exact(MetricSpec::power_cover(3, m)) == GaussianRational(Rational(-4)));
    CHECK_THROWS_AS(schwarzian_principal_coefficient_exact(fb(1.5)), Error);
}
