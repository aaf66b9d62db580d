#include <doctest.h>

#include <cmath>
#include <numbers>

#include "pmod/core.hpp"
#include "pmod/errors.hpp"

using namespace pmod;
using std::numbers::pi;

namespace {

DensityField ring_density(double b) {
    const double L = std::log(b);
    return DensityField::closed_form(
        [L](std::span<const double> x) { return 1.0 / (std::hypot(x[0], x[1]) * L); },
        Patch::annulus(1.0, b));
}

}  // namespace

TEST_SUITE("core") {

TEST_CASE("energy of simple densities") {
    auto one = DensityField::closed_form([](std::span<const double>) { return 1.0; },
                                         Patch::rectangle(0, 2, 0, 3));
    CHECK(energy(one, 2.0) == doctest::Approx(6.0).epsilon(1e-12));
    // 2 pi / log 2, computed separately at 30 digits
    CHECK(energy(ring_density(2.0), 2.0) == doctest::Approx(9.06472028365438762).epsilon(1e-10));
    CHECK(energy(one.scaled(2.0), 3.0) == doctest::Approx(48.0).epsilon(1e-12));
    CHECK_THROWS_AS(energy(one, 1.0), InvalidParameter);
}

TEST_CASE("curve integrals") {
    const auto rho = ring_density(2.0);
    CHECK(curve_integral(rho, Polyline({{1.0, 0.0}, {2.0, 0.0}})) == doctest::Approx(1.0).epsilon(1e-10));
    auto c = DensityField::closed_form([](std::span<const double>) { return 2.0; },
                                       Patch::rectangle(0, 1, 0, 1));
    CHECK(curve_integral(c, Polyline({{0, 0}, {0.3, 0.4}, {0.3, 1.0}})) == doctest::Approx(2.2).epsilon(1e-12));
    ParametricCurve arc;
    arc.t0 = 0;
    arc.t1 = pi / 2;
    arc.point = [](double t) { return Vec{1.5 * std::cos(t), 1.5 * std::sin(t)}; };
    CHECK(curve_integral(rho, Curve(arc)) == doctest::Approx(pi / 2 / std::log(2.0)).epsilon(1e-9));
}

TEST_CASE("admissibility over a family") {
    const double b = 2.0;
    CurveFamilySampler radial{"radial", 0.0, 2 * pi, [b](double t) -> Curve {
                                  return Polyline({{std::cos(t), std::sin(t)}, {b * std::cos(t), b * std::sin(t)}});
                              }};
    const auto rep = check_admissible(ring_density(b), radial, 40);
    CHECK(rep.admissible);
    CHECK(rep.min_integral == doctest::Approx(1.0).epsilon(1e-9));
    const auto half = check_admissible(ring_density(b).scaled(0.5), radial, 40);
    CHECK_FALSE(half.admissible);
    CHECK(half.violating.size() == half.params.size());
}

TEST_CASE("Beurling checker") {
    const double b = 2.0;
    CurveFamilySampler verticals{"verticals", 0.0, 1.0, [b](double x) -> Curve {
                                     return Polyline({{x, 0.0}, {x, b}});
                                 }};
    const auto rect = Patch::rectangle(0, 1, 0, b);
    const std::vector<Field> perts = {
        {[](std::span<const double>) { return 1.0; }, "constant"},
        {[b](std::span<const double> x) { return -std::sin(2 * pi * x[1] / b); }, "odd"},
        {[](std::span<const double> x) { return std::sin(2 * pi * x[0]); }, "not applicable"}};
    auto rho0 = DensityField::closed_form([b](std::span<const double>) { return 1.0 / b; }, rect);
    const auto ok = check_extremality(rho0, verticals, perts, 2.0);
    CHECK(ok.extremal);
    CHECK_FALSE(ok.results[2].applicable);

    auto bent = DensityField::closed_form(
        [b](std::span<const double> x) { return (1.0 + 0.1 * std::sin(2 * pi * x[1] / b)) / b; }, rect);
    const auto bad = check_extremality(bent, verticals, perts, 2.0);
    CHECK_FALSE(bad.extremal);
    // -(0.1/b) * int_0^b sin^2 dy = -0.05
    CHECK(bad.results[1].pairing == doctest::Approx(-0.05).epsilon(1e-8));
}

TEST_CASE("grid densities") {
    auto d = DensityField::from_grid({1, 2, 3, 4}, 2, 2, 0.0, 0.0, 0.5);
    CHECK(d(std::vector<double>{0.25, 0.25}) == 1.0);
    CHECK(d(std::vector<double>{0.75, 0.75}) == 4.0);
    CHECK(d(std::vector<double>{1.5, 0.2}) == 0.0);
    CHECK(energy(d, 2.0, 1e-8) == doctest::Approx(0.25 * 30).epsilon(1e-6));
}

}
