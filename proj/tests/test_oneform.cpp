#include "conical/oneform.hpp"

#include <doctest.h>

#include <numbers>

using namespace conical;

namespace {

std::vector<Complex> annulus_grid(double r0, double r1, int radii, int angles) {
    std::vector<Complex> grid;
    for (int i = 0; i < radii; ++i)
        for (int j = 0; j < angles; ++j)
            grid.push_back(std::polar(r0 + (r1 - r0) * i / (radii - 1), 2 * std::numbers::pi * (j + 0.5) / angles - std::numbers::pi));
    return grid;
}

CharacterOneForm form_of(const CatalogEigenfunction& e) {
    return CharacterOneForm::from_field(e.field(), extremal_constant(e).value);
}

const Moebius kGeneric = unitary_from_angles(0.7, 0.3, -1.1);

}  // namespace

TEST_CASE("extremal constant and the gradient identity") {
    CatalogEigenfunction football{MetricSpec::football(Beta(Rational(3, 2)))};
    auto c = extremal_constant(football);
    CHECK(c.value == doctest::Approx(1.0));
    CHECK(c.identity_residual < 1e-12);
    CHECK(c.grid_max <= c.value);

    football.scale = 2.5;
    CHECK(extremal_constant(football).value == doctest::Approx(2.5));
    CHECK(extremal_constant(football).identity_residual < 1e-12);

    for (auto sel : {FieldSelector::Canonical, FieldSelector::Re, FieldSelector::Im}) {
        CatalogEigenfunction e{MetricSpec::power_cover(2, kGeneric), sel};
        auto ce = extremal_constant(e);
        CHECK(ce.value == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(ce.identity_residual < 1e-10);
    }
}

TEST_CASE("football character form") {
    CatalogEigenfunction e{MetricSpec::football(Beta(Rational(3, 2)))};
    auto omega = form_of(e);
    CHECK(omega.coefficient(Complex(0.5, 0.2)).real() == doctest::Approx((1.5 / Complex(0.5, 0.2)).real()));
    auto res = residues(omega);
    REQUIRE(res.size() == 2);
    CHECK(res[0].point == ExtendedComplex(Complex(0.0)));
    CHECK(res[0].residue == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(res[1].point.is_infinite());
    CHECK(res[1].residue == doctest::Approx(-1.5).epsilon(1e-12));
    CHECK(classify_monodromy(omega) == Monodromy::ReducibleU1);
    auto check = divisor_relation_check(omega, e.spec);
    CHECK(check.ok);
    CHECK(check.degree == -2);

    e.scale = 2.5;
    auto scaled = form_of(e);
    CHECK(residues(scaled)[0].residue == doctest::Approx(1.5).epsilon(1e-12));
}

TEST_CASE("power cover character forms") {
    CatalogEigenfunction id{MetricSpec::power_cover(3)};
    auto omega = form_of(id);
    auto res = residues(omega);
    REQUIRE(res.size() == 2);
    CHECK(res[0].residue == doctest::Approx(3.0));
    CHECK(classify_monodromy(omega) == Monodromy::Trivial);
    CHECK(divisor_relation_check(omega, id.spec).ok);

    CatalogEigenfunction generic{MetricSpec::power_cover(2, kGeneric)};
    auto g = form_of(generic);
    auto div = divisor(g);
    int zeros = 0, poles = 0;
    for (const auto& d : div) {
        if (d.order > 0) {
            ++zeros;
            CHECK(d.order == 1);
            CHECK((d.point.is_infinite() || std::abs(d.point.value()) == 0.0));
        } else {
            ++poles;
            CHECK(std::abs(d.residue) == doctest::Approx(1.0).epsilon(1e-10));
        }
    }
    CHECK(zeros == 2);
    CHECK(poles == 4);
    CHECK(classify_monodromy(g) == Monodromy::Trivial);
    auto check = divisor_relation_check(g, generic.spec);
    CHECK_MESSAGE(check.ok, check.report);
    auto crit = critical_point_check(g, generic);
    CHECK_MESSAGE(crit.ok, crit.report);

    CatalogEigenfunction re{MetricSpec::power_cover(3), FieldSelector::Re};
    auto r = form_of(re);
    auto rr = residues(r);
    CHECK(rr.size() == 6);
    for (const auto& x : rr) {
        CHECK(std::abs(x.residue) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(std::abs(x.point.value()) == doctest::Approx(1.0));
    }
    CHECK(divisor_relation_check(r, re.spec).ok);
    CHECK(critical_point_check(r, re).ok);
    CHECK(real_period_defect(r) < 1e-10);
}

TEST_CASE("developing map reconstruction") {
    CatalogEigenfunction football{MetricSpec::football(Beta(Rational(3, 2)))};
    auto omega = form_of(football);
    auto samples = reconstruct_on_grid(omega, football, Complex(0.5), annulus_grid(0.2, 0.8, 7, 16));
    CHECK(samples.size() == 7 * 16);
    auto pb = verify_pullback(samples, omega, football.spec);
    CHECK(pb.metric < 1e-9);
    CHECK(pb.modulus < 1e-9);
    CHECK(verify_eigen_identity(samples, omega.constant()) < 1e-9);
    for (const auto& s : samples) CHECK(std::abs(s.f - std::pow(s.z, 1.5)) < 1e-9);

    for (auto sel : {FieldSelector::Canonical, FieldSelector::Re, FieldSelector::Im}) {
        CatalogEigenfunction e{MetricSpec::power_cover(2, kGeneric), sel, 1.75};
        auto w = form_of(e);
        auto s = reconstruct_on_grid(w, e, Complex(0.5), annulus_grid(0.2, 1.6, 8, 16));
        CHECK(s.size() > 100);
        auto p = verify_pullback(s, w, e.spec);
        CHECK(p.metric < 1e-8);
        CHECK(verify_eigen_identity(s, w.constant()) < 1e-8);
    }
}

TEST_CASE("sampled field matches the rational path") {
    CatalogEigenfunction e{MetricSpec::power_cover(2, kGeneric), FieldSelector::Re};
    auto rational = form_of(e);
    const auto x = e.field();
    auto sampled = CharacterOneForm::from_samples(
        [&](const std::vector<Complex>& z) {
            std::vector<Complex> v;
            for (const auto& p : z) v.push_back(x(p));
            return v;
        },
        rational.constant());
    std::vector<ExtendedComplex> points;
    for (const auto& r : residues(rational)) points.push_back(r.point);
    auto contour = contour_residues(sampled, points);
    auto exact = residues(rational);
    for (std::size_t i = 0; i < exact.size(); ++i) CHECK(std::abs(contour[i].residue - exact[i].residue) < 1e-10);

    // series and shooting route for the football
    CatalogEigenfunction football{MetricSpec::football(Beta(2.5))};
    auto modal = catalog_modal_eigenfunction(football.spec, FieldSelector::Canonical);
    auto shot = CharacterOneForm::from_samples(
        [&](const std::vector<Complex>& z) {
            std::vector<Complex> v;
            for (const auto& s : sample_modal_field(modal, z)) v.push_back(s.x);
            return v;
        },
        1.0);
    auto sr = contour_residues(shot, {ExtendedComplex(Complex(0.0)), ExtendedComplex::infinity()}, 64);
    CHECK(sr[0].residue.real() == doctest::Approx(2.5).epsilon(1e-7));
    CHECK(std::abs(sr[0].residue.imag()) < 1e-7);
    CHECK(sr[1].residue.real() == doctest::Approx(-2.5).epsilon(1e-7));
}

TEST_CASE("one-form failures") {
    CHECK_THROWS_WITH_AS(CharacterOneForm::from_field(LaurentPolynomial{}, 1.0), doctest::Contains(""), Error);
    try {
        CharacterOneForm::from_field(LaurentPolynomial{}, 1.0);
    } catch (const Error& e) {
        CHECK(e.kind() == "ZeroField");
    }
    auto kind_of = [](auto&& fn) {
        try {
            fn();
        } catch (const Error& e) {
            return e.kind();
        }
        return std::string("none");
    };
    auto square = CharacterOneForm::from_field(LaurentPolynomial::monomial(2, 1.0), 1.0);
    CHECK(kind_of([&] { residues(square); }) == "NonSimplePole");
    auto imaginary = CharacterOneForm::from_field(LaurentPolynomial::monomial(1, Complex(0.0, 1.0)), 1.0);
    CHECK(kind_of([&] { residues(imaginary); }) == "NonRealResidue");

    CatalogEigenfunction re{MetricSpec::power_cover(2), FieldSelector::Re};
    auto omega = form_of(re);
    CHECK(kind_of([&] {
              reconstruct_developing_map(omega, Complex(0.5), Complex(1.0), Complex(1.5), {Complex(0.5), Complex(1.5)});
          }) == "PathThroughSingularity");
    CHECK(kind_of([&] { extremal_constant(CatalogEigenfunction{MetricSpec::football(Beta(1.5)), FieldSelector::Re}); }) ==
          "UnsupportedSelector");
}
