#include <doctest.h>

#include <cmath>
#include <numbers>

#include "pmod/carnot.hpp"
#include "pmod/errors.hpp"

using namespace pmod;
using namespace pmod::carnot;
using std::numbers::pi;

TEST_SUITE("carnot") {

TEST_CASE("homogeneous norms") {
    const auto H = GroupSpec::heisenberg();
    CHECK(homogeneous_norm(H, std::vector<double>{1.0, 0.0, 0.0}) == doctest::Approx(1.0));
    CHECK(homogeneous_norm(H, std::vector<double>{0.0, 0.0, 1.0}) == doctest::Approx(1.0));
    // (|u|^4 + 16|z|^2)^(1/4) puts the unit t-point at 1/4
    CHECK(homogeneous_norm(GroupSpec::htype(2, 1), std::vector<double>{0.0, 0.0, 0.25}) ==
          doctest::Approx(1.0));
    const std::vector<double> g{0.3, -0.8, 0.5};
    CHECK(homogeneous_norm(H, dilate(H, g, 2.5)) == doctest::Approx(2.5 * homogeneous_norm(H, g)).epsilon(1e-14));
    CHECK(GroupSpec::parse("htype:4,3").Q() == 10);
    CHECK(GroupSpec::parse("euclidean:3").name() == "euclidean:3");
}

TEST_CASE("horizontal gradient of the norm on the unit sphere") {
    const auto H = GroupSpec::heisenberg();
    const GroupFn N = [&H](std::span<const double> x) { return homogeneous_norm(H, x); };
    for (double al : {-1.2, 0.0, 0.7}) {
        const SpherePoint xi{{0.9, al}};
        CHECK(horizontal_gradient_norm(H, N, sphere_embed(H, xi)) == doctest::Approx(std::sqrt(std::cos(al))).epsilon(1e-9));
    }
}

TEST_CASE("radial flow") {
    const auto H = GroupSpec::heisenberg();
    const SpherePoint xi{{0.4, -0.6}};
    const auto tr = radial_flow(H, xi, 3.0);
    const auto cf = flow_point(H, xi, 3.0);
    for (int i = 0; i < 3; ++i) CHECK(std::abs(tr.end[i] - cf[i]) < 1e-9);
    for (std::size_t i = 0; i < tr.s.size(); ++i)
        CHECK(homogeneous_norm(H, tr.points[i]) == doctest::Approx(tr.s[i]).epsilon(1e-9));
    CHECK(flow_speed(H, xi, 2.0) * std::sqrt(std::cos(-0.6)) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("sphere constants") {
    const auto H = GroupSpec::heisenberg();
    // 4 sqrt(2 pi) Gamma(3/4)^2 and C_S1(p), evaluated separately at 30 digits
    CHECK(sphere_area(H) == doctest::Approx(15.0562742376627475).epsilon(1e-9));
    const double frozen[] = {12.5663706143591730, 10.9832489998049920, 9.86960440108935862, 8.37758040957278197};
    const double ps[] = {2, 3, 4, 6};
    for (int i = 0; i < 4; ++i) {
        CHECK(c_s1_quadrature(H, ps[i]) == doctest::Approx(frozen[i]).epsilon(1e-9));
        CHECK(c_s1_closed_form(H, ps[i]) == doctest::Approx(frozen[i]).epsilon(1e-14));
    }
    CHECK(c_s1_quadrature(GroupSpec::euclidean(3), 2.0) == doctest::Approx(4 * pi).epsilon(1e-9));
    // the displayed H-type expression differs from quadrature by pi^(k/2)
    const double ratio = htype_display_constant(4, 3, 2.0) / c_s1_quadrature(GroupSpec::htype(4, 3), 2.0);
    CHECK(ratio == doctest::Approx(pi * pi).epsilon(1e-8));
}

TEST_CASE("ring modules") {
    const auto H = GroupSpec::heisenberg();
    const double e = std::exp(1.0);
    CHECK(module_connecting_ring(H, 4.0, 1.0, e).value == doctest::Approx(pi * pi).epsilon(1e-8));
    // p = 2, b = 2: 4 pi / (3/8)
    CHECK(module_connecting_ring(H, 2.0, 1.0, 2.0).value == doctest::Approx(33.5103216382911279).epsilon(1e-9));
    CHECK(module_connecting_ring_closed(H, 2.0, 1.0, 2.0).value == doctest::Approx(33.5103216382911279).epsilon(1e-12));
    const auto E3 = GroupSpec::euclidean(3);
    CHECK(module_connecting_ring(E3, 3.0, 1.0, 2.0).value == doctest::Approx(4 * pi / std::pow(std::log(2.0), 2)).epsilon(1e-9));
    for (auto [G, p] : {std::pair{E3, 2.0}, std::pair{E3, 3.0}, std::pair{H, 2.0}, std::pair{H, 4.0}}) {
        const auto cap = capacity_check(G, p, 1.0, 2.0);
        CHECK(cap.cap_value == doctest::Approx(cap.module_value).epsilon(1e-8));
    }
    CHECK(heisenberg_ring_volume_ambient(1.0, 2.0) == doctest::Approx(pi * pi * 15.0 / 2).epsilon(1e-6));
}

TEST_CASE("twist map") {
    const double b = 1 + pi / 4;
    CHECK(std::abs(twist::horizontality_residual(0.3, 0.1, 1.4)) < 1e-9);
    CHECK(twist::speed_fd(0.3, 0.1, 1.4) == doctest::Approx(twist::speed(0.1, 1.4)).epsilon(1e-8));
    // regression values of the polar Rodin integral
    CHECK(twist::module(2.0, b).value == doctest::Approx(22.016203039368).epsilon(1e-8));
    CHECK(twist::module(4.0, b).value == doctest::Approx(20.547591221552).epsilon(1e-8));
    const auto rho = twist::extremal_density(2.0, b);
    CHECK(curve_integral(rho, twist::curve_of(2.0, -0.4, b), 1e-9) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK_THROWS_AS(twist::module(2.0, 1 + pi), DomainError);
}

}
