#include <doctest.h>

#include <cmath>
#include <numbers>

#include "pmod/errors.hpp"
#include "pmod/oracle.hpp"

using namespace pmod;
using namespace pmod::oracle;
using std::numbers::pi;

TEST_SUITE("oracle") {

TEST_CASE("grid and traversal") {
    const auto g = make_grid(rectangle(1.0, 2.0), 10);
    CHECK(g.nx == 10);
    CHECK(g.ny == 20);
    CHECK(g.active_cells() == 200);
    const auto cells = segment_cells(g, {0.05, 0.0}, {0.05, 2.0});
    double total = 0.0;
    for (const auto& [idx, len] : cells) total += len;
    CHECK(cells.size() == 20);
    CHECK(total == doctest::Approx(2.0).epsilon(1e-12));
    std::vector<double> rho(g.nx * g.ny, 1.0);
    CHECK(path_integral(g, rho, Polyline({{0.0, 0.0}, {1.0, 2.0}})) == doctest::Approx(std::sqrt(5.0)).epsilon(1e-12));
}

TEST_CASE("rectangle connecting module") {
    const auto R = rectangle(1.0, 2.0);
    const auto r = solve_modulus(make_grid(R, 40), DiscreteFamily::connecting(R), 2.0);
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(0.5).epsilon(0.02));
    CHECK(r.lower <= r.value);
    const auto r3 = solve_modulus(make_grid(R, 30), DiscreteFamily::connecting(R), 3.0);
    CHECK(r3.value == doctest::Approx(0.25).epsilon(0.02));
}

TEST_CASE("annulus, regression at nx = 60") {
    const auto R = annulus(1.0, 2.0);
    const auto r = solve_modulus(make_grid(R, 60), DiscreteFamily::connecting(R), 2.0);
    CHECK(r.value == doctest::Approx(9.0647202836543876).epsilon(0.02));
    CHECK(r.value == doctest::Approx(9.0459403827).epsilon(1e-4));
}

TEST_CASE("separating modules through the conjugate family") {
    const auto sq = rectangle(1.0, 1.0);
    CHECK(separating_module_2d(make_grid(sq, 40), sq, 2.0).value == doctest::Approx(1.0).epsilon(0.02));
    const auto ann = annulus(1.0, std::exp(1.0));
    CHECK(separating_module_2d(make_grid(ann, 60), ann, 2.0).value == doctest::Approx(1 / (2 * pi)).epsilon(0.02));
    const double s = std::sin(pi / 3);
    const auto par = parallelogram_theta(pi / 3, 1.0);
    const double v = separating_module_2d(make_grid(par, 60), par, 2.0).value;
    CHECK(v >= s * 0.98);
    CHECK(v <= (s + 0.25 / s) * 1.02);
    CHECK(v == doctest::Approx(1.0032836014).epsilon(1e-4));
    const auto P = parallelogram(0.2, 1.0);
    CHECK(separating_module_2d(make_grid(P, 60), P, 2.0).value == doctest::Approx(1.0306563970).epsilon(1e-4));
}

TEST_CASE("explicit families") {
    const auto g = make_grid(rectangle(1.0, 1.0), 20);
    const double x = g.cx(10);
    const auto one = solve_modulus(g, DiscreteFamily::explicit_curves({Polyline({{x, 0.0}, {x, 1.0}})}), 2.0);
    CHECK(one.value == doctest::Approx(g.h).epsilon(1e-3));
    const auto two = solve_modulus(
        g, DiscreteFamily::explicit_curves({Polyline({{x, 0.0}, {x, 1.0}}), Polyline({{0.0, 0.3}, {1.0, 0.9}})}), 2.0);
    CHECK(two.value >= one.value);
    CHECK_THROWS_AS(solve_modulus(g, DiscreteFamily::explicit_curves({Polyline({{0.5, 0.5}, {1.5, 0.5}})}), 2.0),
                    InvalidCurve);
}

TEST_CASE("shortest paths") {
    const auto R = rectangle(1.0, 2.0);
    const auto g = make_grid(R, 20);
    std::vector<double> rho(g.nx * g.ny, 1.0);
    const auto straight = shortest_rho_path(g, R, rho);
    CHECK(straight.cost == doctest::Approx(2.0).epsilon(g.h / 2));

    const auto A = annulus(1.0, 2.0);
    const auto ga = make_grid(A, 60);
    std::vector<double> radial(ga.nx * ga.ny, 0.0);
    for (int j = 0; j < ga.ny; ++j)
        for (int i = 0; i < ga.nx; ++i)
            radial[ga.index(i, j)] = 1.0 / (std::hypot(ga.cx(i), ga.cy(j)) * std::log(2.0));
    CHECK(shortest_rho_path(ga, A, radial).cost == doctest::Approx(1.0).epsilon(0.03));

    // a wall of high density with one gap: the path goes through the gap
    std::vector<double> wall = rho;
    for (int i = 0; i < g.nx - 2; ++i) wall[g.index(i, g.ny / 2)] = 100.0;
    const auto around = shortest_rho_path(g, R, wall);
    CHECK(around.cost < 2.0 + 100.0 * g.h);
    CHECK(around.cost >= straight.cost);
}

TEST_CASE("mapped region") {
    const auto R = mapped(rectangle(1.0, 1.0), [](double x, double y) { return Vec{2 * x, y}; },
                          [](double x, double y) { return Vec{x / 2, y}; }, "wide");
    CHECK(R.x1 >= 2.0);
    const auto r = solve_modulus(make_grid(R, 60), DiscreteFamily::connecting(R), 2.0);
    CHECK(r.value == doctest::Approx(2.0).epsilon(0.02));
}

}
