#include <doctest.h>

#include <cmath>
#include <numbers>

#include "pmod/errors.hpp"
#include "pmod/planar.hpp"

using namespace pmod;
using namespace pmod::planar;
using std::numbers::pi;

TEST_SUITE("planar") {

TEST_CASE("Wirtinger data") {
    const auto sq = make_map("square", {{"shift", 0.0}});
    CHECK(jacobian(sq, {1.0, 0.0}) == doctest::Approx(4.0).epsilon(1e-8));
    CHECK(std::abs(beltrami(sq, {0.7, 0.3})) < 1e-8);
    const auto aff = make_map("affine", {{"k", 0.25}});
    const auto mu = beltrami(aff, {0.3, -0.4});
    CHECK(mu.real() == doctest::Approx(0.25).epsilon(1e-8));
    CHECK(std::abs(mu.imag()) < 1e-8);
}

TEST_CASE("directional dilatation") {
    CHECK(directional_dilatation(1.0 / 3, 0.0) == doctest::Approx(2.0).epsilon(1e-14));
    const cplx mu{0.2, -0.1};
    for (double a : {0.0, 0.4, 1.3})
        CHECK(directional_dilatation(mu, a) == doctest::Approx(directional_dilatation(mu, a + pi)).epsilon(1e-14));
    CHECK(max_dilatation(mu) >= directional_dilatation(mu, 0.4));
}

TEST_CASE("rectangle and annulus values") {
    const auto id = make_map("identity");
    CHECK(rodin2d_module(id, 2.0) == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(annulus_radial_image_module(id, 2.0) == doctest::Approx(9.06472028365438762).epsilon(1e-10));
    CHECK(annulus_circle_image_module(id, 2.0) == doctest::Approx(std::log(2.0) / (2 * pi)).epsilon(1e-10));
    // conformal map keeps the module of the rectangle
    CHECK(rodin2d_module(make_map("square", {{"shift", 1.0}}), 0.2) == doctest::Approx(5.0).epsilon(1e-8));
}

TEST_CASE("radial stretch") {
    // D_theta = kappa for r -> r^kappa: bounds collapse onto log b^kappa / 2 pi
    const double k = 2.0, b = 2.0;
    const auto rb = ring_module_bounds(make_map("radial-stretch", {{"kappa", k}}), b);
    CHECK(rb.lower == doctest::Approx(k * std::log(b) / (2 * pi)).epsilon(1e-8));
    CHECK(rb.upper == doctest::Approx(k * std::log(b) / (2 * pi)).epsilon(1e-8));
    CHECK(rb.cs_upper == doctest::Approx(k * std::log(b) / (2 * pi)).epsilon(1e-8));
}

TEST_CASE("ring bounds are ordered") {
    for (const auto& [name, key, v] : std::vector<std::tuple<std::string, std::string, double>>{
             {"affine", "k", 0.3}, {"radial-perturbation", "eps", 0.3}, {"angular-shear", "k", 1.0}}) {
        const auto rb = ring_module_bounds(make_map(name, {{key, v}}), 2.0);
        CAPTURE(name);
        CHECK(rb.lower <= rb.upper * (1 + 1e-10));
        CHECK(rb.upper <= rb.cs_upper * (1 + 1e-10));
    }
    // frozen values of the smooth radial perturbation, eps = 0.3, b = 2
    const auto rp = ring_module_bounds(make_map("radial-perturbation", {{"eps", 0.3}}), 2.0);
    CHECK(rp.lower == doctest::Approx(0.104505175632).epsilon(1e-9));
    CHECK(rp.upper == doctest::Approx(0.105236474107).epsilon(1e-9));
}

TEST_CASE("log spirals") {
    const auto id = make_map("identity");
    for (double beta : {0.0, 0.5, 1.0, 2.0}) {
        const double expected = 2 * pi / ((1 + beta * beta) * std::log(3.0));
        CHECK(log_spiral_image_module(id, 3.0, beta) == doctest::Approx(expected).epsilon(1e-10));
        CHECK(log_spiral_image_module_rect(id, 3.0, beta) == doctest::Approx(expected).epsilon(1e-6));
    }
    const auto rp = make_map("radial-perturbation", {{"eps", 0.3}});
    CHECK(log_spiral_image_module(rp, 2.0, 0.5) ==
          doctest::Approx(log_spiral_image_module_rect(rp, 2.0, 0.5)).epsilon(1e-6));
}

TEST_CASE("parallelogram") {
    const auto pb = parallelogram_bounds(pi / 3, 1.0);
    CHECK(pb.slant_module == doctest::Approx(0.866025403784438647).epsilon(1e-14));
    CHECK(pb.sigma_bound == doctest::Approx(0.288675134594812882).epsilon(1e-14));
    CHECK(rodin2d_module(make_map("shear", {{"theta", pi / 3}}), std::sin(pi / 3)) ==
          doctest::Approx(pb.slant_module).epsilon(1e-10));
    const auto rect = parallelogram_bounds(pi / 2, 2.0);
    CHECK(rect.slant_module == doctest::Approx(0.5));
    CHECK(std::abs(rect.sigma_bound) < 1e-15);
    CHECK(parallelogram_rate(0.1, 1.0) == doctest::Approx(0.01));
    CHECK(parallelogram_rate(0.0, 1.0) == 0.0);
    CHECK(shear_max_dilatation(pi / 3) >= 1.0 / std::pow(std::sin(pi / 3), 2));
    CHECK_THROWS_AS(parallelogram_bounds(2.0, 1.0), InvalidParameter);
}

}
