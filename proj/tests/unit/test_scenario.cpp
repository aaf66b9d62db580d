#include <doctest.h>

#include <cmath>

#include "pmod/errors.hpp"
#include "pmod/scenario.hpp"

using namespace pmod;
using namespace pmod::scenario;

TEST_SUITE("scenario") {

TEST_CASE("check verdicts") {
    Check c{"x", 2.0, 2.01, 0.01, true, Relation::equal};
    evaluate(c);
    CHECK(c.pass);
    c.computed = 2.03;
    evaluate(c);
    CHECK_FALSE(c.pass);
    Check le{"y", 1.0, 1.005, 0.01, true, Relation::le};
    evaluate(le);
    CHECK(le.pass);
    le.computed = 0.2;
    evaluate(le);
    CHECK(le.pass);
    Check ge{"z", 1.0, 0.2, 0.01, false, Relation::ge};
    evaluate(ge);
    CHECK_FALSE(ge.pass);
    Check nan{"n", 1.0, std::nan(""), 1.0};
    evaluate(nan);
    CHECK_FALSE(nan.pass);
}

TEST_CASE("registry") {
    const auto names = scenario_names();
    CHECK(names.size() >= 20);
    CHECK(default_params("rectangle").at("b") == 2.0);
    CHECK_THROWS_AS(run_scenario("missing", {}), UnknownScenario);
    CHECK_THROWS_AS(run_scenario("rectangle", {{"zz", 1.0}}), InvalidParameter);
}

TEST_CASE("rectangle at closed-form and quadrature levels") {
    Settings s;
    s.level = Level::quadrature;
    const auto r = run_scenario("rectangle", {{"a", 1.0}, {"b", 2.0}}, s);
    CHECK(r.passed());
    for (const auto& c : r.checks) CHECK(c.level == Level::quadrature);
    CHECK(r.checks.front().expected == doctest::Approx(0.5));
}

TEST_CASE("tolerance override") {
    Settings s;
    s.level = Level::quadrature;
    s.tolerance = 0.0;
    const auto r = run_scenario("log-spiral", {{"beta", 0.5}}, s);
    for (const auto& c : r.checks) CHECK(c.tolerance == 0.0);
}

TEST_CASE("log-spiral with beta = 0 is the radial case") {
    const auto r = run_scenario("log-spiral", {{"beta", 0.0}, {"b", 2.0}});
    CHECK(r.passed());
    CHECK(r.checks.front().expected == doctest::Approx(9.06472028365438762).epsilon(1e-14));
}

TEST_CASE("provenance tags") {
    const auto r = run_scenario("heisenberg-ring", {{"p", 2.0}, {"b", 2.0}});
    CHECK(r.passed());
    for (const auto& c : r.checks) CHECK_FALSE(std::string(to_string(c.source)).empty());
}

TEST_CASE("extremality catalog") {
    const auto r = run_scenario("extremality-catalog", {});
    CHECK(r.passed());
    CHECK(r.checks.back().computed == 0.0);
}

TEST_CASE("suites") {
    CHECK(run_suite("core").passed());
    CHECK_THROWS_AS(run_suite("nothing"), UnknownScenario);
}

}
