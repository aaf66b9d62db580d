#include <doctest.h>

#include <cmath>
#include <numbers>

#include "pmod/errors.hpp"
#include "pmod/rodin.hpp"

using namespace pmod;
using namespace pmod::rodin;
using std::numbers::pi;

TEST_SUITE("rodin") {

TEST_CASE("cylinder modules") {
    const auto id = CondenserMap::identity();
    CHECK(module_connecting(cylinder(2, 1.0, 0.0, 2.0), id, 2.0).value == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(module_connecting(cylinder(3, 1.5, 0.0, 2.0), id, 3.0).value ==
          doctest::Approx(2.25 / 4.0).epsilon(1e-10));
    const auto s = make_scenario("shear_cylinder", {{"n", 2}, {"b", 1.0}, {"beta", 1.0}, {"p", 2}});
    CHECK(module_connecting(s.condenser, s.map, 2.0).value == doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("registered closed forms agree with quadrature") {
    for (const char* name : {"cylinder", "shear_cylinder", "scaled_cylinder", "spherical_ring",
                             "sphere_log_twist"}) {
        for (double p : {2.0, 3.0}) {
            const auto s = make_scenario(name, {{"n", 3}, {"p", p}, {"b", 2.0}});
            const auto cf = closed_form_reference(s);
            if (!cf) continue;
            CAPTURE(name);
            CAPTURE(p);
            CHECK(module_connecting(s.condenser, s.map, p).value == doctest::Approx(*cf).epsilon(1e-8));
        }
    }
}

TEST_CASE("surface jacobian") {
    // horizontal shear: last row of the inverse Jacobian is (0, 1)
    const auto c = cylinder(2, 1.0, 0.0, 1.0);
    const std::vector<double> x{0.4};
    CHECK(surface_jacobian(c, shear(2, 0.7), x, 0.3) == doctest::Approx(1.0).epsilon(1e-8));
    // radial chart of the sphere, identity map: t^(n-1)
    const auto ring = spherical_ring(3, 1.0, 2.0);
    const std::vector<double> ang{0.4, 1.1};
    CHECK(surface_jacobian(ring, CondenserMap::identity(), ang, 1.5) == doctest::Approx(2.25).epsilon(1e-8));
}

TEST_CASE("extremal density integrates to one on the image curves") {
    const auto s = make_scenario("shear_cylinder", {{"n", 2}, {"b", 1.0}, {"beta", 0.5}});
    const auto rho = extremal_density_connecting(s.condenser, s.map, 2.0);
    const auto rep = check_admissible(rho, connecting_family(s.condenser, s.map, {0.5}, 0), 100, 1e-8);
    CHECK(rep.admissible);
    for (double v : rep.integrals) CHECK(v == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("separating modules and duality") {
    const auto s = make_scenario("spherical_ring", {{"n", 3}, {"p", 3}, {"b", 2.0}});
    const double q = 1.5;
    const double M = module_connecting(s.condenser, s.map, 3.0).value;
    const double Ms = module_separating(s.condenser, s.map, q).value;
    CHECK(Ms == doctest::Approx(*closed_form_separating(s, q)).epsilon(1e-8));
    CHECK(std::pow(M, 1 / 3.0) * std::pow(Ms, 1 / q) == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("twist integral") {
    CHECK(twist_integral(3, 2.0, 2.0) == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(twist_integral(2, 2.0, 2.0) == doctest::Approx(std::log(2.0) + 1.5).epsilon(1e-12));
}

TEST_CASE("errors") {
    CHECK_THROWS_AS(make_scenario("nope", {}), UnknownScenario);
    CHECK_THROWS_AS(make_scenario("cylinder", {{"p", 1.0}}), InvalidParameter);
    CHECK_THROWS_AS(conical(0.0, -1, 1, 1, 2), InvalidParameter);
}

}
