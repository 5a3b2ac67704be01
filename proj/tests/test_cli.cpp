#include "conical/cli.hpp"

#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

using namespace conical;
using namespace conical::cli;
using nlohmann::json;

namespace {

std::string kind_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    return "none";
}

}  // namespace

TEST_CASE("number parsing") {
    auto r = parse_number("7/3", "beta");
    REQUIRE(r.exact);
    CHECK(*r.exact == Rational(7, 3));
    CHECK(r.value == doctest::Approx(7.0 / 3));
    CHECK(parse_number("3", "n").exact == Rational(3));
    CHECK_FALSE(parse_number("1.5", "beta").exact);
    CHECK(parse_number("1.5", "beta").value == 1.5);
    CHECK(kind_of([] { parse_number("1/0", "beta"); }) == "InvalidNumber");
    CHECK(kind_of([] { parse_number("abc", "beta"); }) == "InvalidNumber");
}

TEST_CASE("config round trip") {
    const json inputs[] = {
        json{{"family", "football"}, {"beta", "7/3"}},
        json{{"family", "football"}, {"beta", 1.5}, {"extension", "friedrichs"}, {"k_max", 5}, {"tol", 1e-9}},
        json{{"family", "power_cover"}, {"n", 2}, {"mobius", {{0.6, 0.3}, {"16/25", "9/25"}, 1, {0.6, -0.3}}},
             {"field", "im"}, {"scale", 2.5}, {"exact", false}, {"lambda", "21/10"}},
    };
    for (const auto& in : inputs) {
        const RunConfig c = parse_config(in);
        const json echoed = to_json(c);
        CHECK(parse_config(echoed) == c);
        CHECK(parse_config(json::parse(echoed.dump())) == c);
    }
}

TEST_CASE("config errors") {
    CHECK(kind_of([] { parse_config(json{{"family", "football"}}); }) == "MissingField");
    CHECK(kind_of([] { parse_config(json{{"family", "torus"}, {"beta", 2}}); }) == "InvalidField");
    CHECK(kind_of([] { parse_config(json{{"beta", 2}, {"colour", 1}}); }) == "UnknownField");
    CHECK(kind_of([] { parse_config(json{{"beta", 2}, {"field", "abs"}}); }) == "UnsupportedSelector");
    CHECK(kind_of([] { parse_config(json{{"beta", 2}, {"extension", "x"}}); }) == "InvalidExtension");
    CHECK(kind_of([] { parse_config(json{{"family", "power_cover"}, {"n", 1}}); }) == "MissingField");
    CHECK(kind_of([] { build_metric(parse_config(json{{"beta", "1.5"}, {"exact", true}})); }) == "NonRationalInput");

    const std::string path = "cli_test_bad_config.json";
    std::ofstream(path) << "{\n  \"beta\": 2,\n  oops\n}\n";
    try {
        load_config(path);
        FAIL("expected a parse error");
    } catch (const Error& e) {
        CHECK(e.kind() == "MalformedConfig");
        CHECK(std::string(e.what()).find(path + ":3:") != std::string::npos);
    }
    std::remove(path.c_str());
}

TEST_CASE("exit codes") {
    CHECK(exit_code(ErrorClass::Config) == 2);
    CHECK(exit_code(ErrorClass::Numerical) == 3);
    CHECK(exit_code(ErrorClass::TheoremViolation) == 4);
    auto payload = error_payload("spectrum", numerical_error("NoEigenvalue", "x"));
    CHECK(payload["error"]["stage"] == "spectrum");
    CHECK(payload["error"]["kind"] == "NoEigenvalue");
}

TEST_CASE("runner commands") {
    Runner football(parse_config(json{{"beta", "3/2"}}));
    auto spec = football.run("spectrum");
    CHECK(spec["lambda1"].get<double>() == doctest::Approx(2.0).epsilon(1e-6));
    CHECK(parse_config(spec["config"]) == parse_config(json{{"beta", "3/2"}}));

    auto reduce = football.run("reduce");
    CHECK(reduce["monodromy"] == "u1");
    CHECK(reduce["divisor_check"] == true);
    CHECK(reduce["two_eigenspace_real_dim"] == 1);
    CHECK(reduce["verification"]["pullback_error"].get<double>() < 1e-7);
    CHECK(reduce["verification"]["eigen_identity_error"].get<double>() < 1e-8);
    CHECK(football.run("reduce").dump() == reduce.dump());

    Runner cover(parse_config(json{{"family", "power_cover"}, {"n", 2}}));
    auto r2 = cover.run("reduce");
    CHECK(r2["monodromy"] == "trivial");
    CHECK(r2["two_eigenspace_real_dim"] == 3);

    Runner series(parse_config(json{{"beta", "7/3"}, {"exact", true}}));
    auto sv = series.run("series-verify");
    for (const auto& row : sv["identities"]) CHECK(row["status"] == "exact-pass");
    CHECK(series.status() == 0);
    Runner control(parse_config(json{{"beta", "7/3"}, {"exact", true}, {"lambda", "3"}}));
    auto neg = control.run("series-verify");
    CHECK(neg["identities"][0]["status"] == "counterexample");
    CHECK(neg["identities"][0]["counterexample"]["j"] == 1);

    Runner needs_exact(parse_config(json{{"beta", "7/3"}}));
    CHECK(kind_of([&] { needs_exact.run("series-verify"); }) == "ExactModeRequired");
    CHECK(kind_of([&] { needs_exact.run("plot"); }) == "UnknownCommand");
    Runner no_csv(parse_config(json{{"beta", "1"}}));
    CHECK(kind_of([&] { no_csv.run("profile"); }) == "MissingProfilePath");

    Runner bad_sel(parse_config(json{{"beta", "3/2"}, {"field", "re"}}));
    CHECK(kind_of([&] { bad_sel.run("reduce"); }) == "UnsupportedSelector");
    CHECK(bad_sel.stage() == "eigenfunction");
}

TEST_CASE("profile csv") {
    const std::string path = "cli_test_profile.csv";
    Runner sphere(parse_config(json{{"beta", "1"}}), path);
    sphere.run("profile");
    std::ifstream in(path);
    std::string line, last;
    std::getline(in, line);
    CHECK(line == "r,phi_0,X_coeff,geodesic_r");
    int rows = 0;
    while (std::getline(in, line)) {
        ++rows;
        last = line;
    }
    CHECK(rows == 20);
    CHECK(last == "1,0,-0.5,1.5707963267948966");
    std::remove(path.c_str());
}
