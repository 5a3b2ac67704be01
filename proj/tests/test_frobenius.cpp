#include "conical/extensions.hpp"
#include "conical/frobenius.hpp"

#include <doctest.h>

using namespace conical;

TEST_CASE("series examples") {
    for (double b : {0.5, 1.5, 2.2}) {
        auto s = build_series(RadialProblem<double>{b, 0, 2.0}, 0.0);
        for (std::size_t j = 1; j < 10; ++j) CHECK(s.coefficients[j] == doctest::Approx(j % 2 ? -2.0 : 2.0));
        auto c = build_series(RadialProblem<double>{b, 0, 0.0}, 0.0);
        for (std::size_t j = 1; j < 10; ++j) CHECK(c.coefficients[j] == 0.0);
    }
    auto s = build_series(RadialProblem<double>{1.0, 1, 2.0}, 1.0);
    for (std::size_t j = 0; j < 10; ++j) CHECK(s.coefficients[j] == doctest::Approx(j % 2 ? -1.0 : 1.0));

    CHECK(closed_form_lambda2(1.0, 0, 1.0, 3) == -2.0);
    CHECK(closed_form_lambda2(1.0, 1, 1.0, 2) == 1.0);
    CHECK(closed_form_lambda2(Rational(7, 3), -2, Rational(1), 1) == Rational(-14));
    CHECK_THROWS_AS(closed_form_lambda2(Rational(2), -2, Rational(1), 1), Error);
}

TEST_CASE("exact closed form for lambda = 2") {
    for (auto b : {Rational(3, 2), Rational(7, 3), Rational(5, 2)}) {
        int J = singular_count(Beta(b));
        for (int k = -J; k <= J; ++k) {
            auto s = build_series(RadialProblem<Rational>{b, k, Rational(2)}, Rational(k), Rational(1), 50);
            for (long j = 0; j <= 50; ++j)
                REQUIRE(s.coefficients[static_cast<std::size_t>(j)] == closed_form_lambda2(b, k, Rational(1), j));
        }
    }
}

TEST_CASE("second indicial root satisfies the recursion exactly") {
    Rational b(7, 3), lam(21, 10);
    auto s = build_series(RadialProblem<Rational>{b, 2, lam}, Rational(-2), Rational(1), 20);
    const auto& c = s.coefficients;
    for (long j = 1; j <= 20; ++j) {
        Rational res = indicial_factor(b, 2, Rational(-2), j) * c[j] + 4 * lam * b * b * c[j - 1] +
                       2 * indicial_factor(b, 2, Rational(-2), j - 1) * c[j - 1];
        if (j >= 2) res += indicial_factor(b, 2, Rational(-2), j - 2) * c[j - 2];
        CHECK(res == 0);
    }
}

TEST_CASE("resonance detection") {
    try {
        build_series(RadialProblem<Rational>{Rational(1, 2), -1, Rational(2)}, Rational(-1));
        FAIL("expected ResonantIndicial");
    } catch (const ResonantIndicial& e) {
        CHECK(e.step() == 2);
    }
    CHECK_THROWS_AS(build_series(RadialProblem<double>{2.0, -2, 2.0}, -2.0), ResonantIndicial);
    CHECK_NOTHROW(build_series(RadialProblem<double>{2.0, 2, 2.0}, 2.0));
    CHECK_THROWS_AS(build_series(RadialProblem<double>{2.0, 2, 2.0}, 1.0), Error);
}

TEST_CASE("evaluation") {
    for (double b : {0.5, 1.5, 2.5}) {
        auto s = build_series(RadialProblem<double>{b, 0, 2.0}, 0.0, 1.0, 60);
        for (double r : {0.1, 0.3, 0.5}) {
            double t = std::pow(r, 2 * b);
            auto v = evaluate(s, r);
            CHECK(std::abs(v.value - (1 - t) / (1 + t)) < 1e-12);
            double dt = -4 * b * t / (r * (1 + t) * (1 + t));
            CHECK(std::abs(v.derivative - dt) < 1e-11);
        }
    }
    auto s = build_series(RadialProblem<double>{1.5, 2, 3.7}, 2.0);
    CHECK(evaluate(s, 1e-4).value / std::pow(1e-4, 2) == doctest::Approx(1.0).epsilon(1e-10));

    // the λ = 2 series sits on the boundary of convergence at r = 1
    auto k0 = build_series(RadialProblem<double>{1.5, 0, 2.0}, 0.0, 1.0, 2000);
    CHECK_THROWS_AS(evaluate(k0, 1.0), Error);
    CHECK(std::abs(evaluate(k0, 0.95, 1e-10).value - (1 - std::pow(0.95, 3)) / (1 + std::pow(0.95, 3))) < 1e-10);
}
