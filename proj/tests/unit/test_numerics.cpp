#include <doctest.h>

#include <cmath>
#include <numbers>

#include "pmod/errors.hpp"
#include "pmod/numerics.hpp"

using namespace pmod;
using namespace pmod::numerics;
using std::numbers::pi;

TEST_SUITE("numerics") {

TEST_CASE("integrate_1d on smooth integrands") {
    CHECK(integrate_1d([](double x) { return x * x; }, 0, 1).value == doctest::Approx(1.0 / 3).epsilon(1e-14));
    CHECK(integrate_1d([](double x) { return std::sin(x); }, 0, pi).value == doctest::Approx(2.0).epsilon(1e-13));
    // endpoint singularity of integrable type
    CHECK(integrate_1d([](double x) { return 1.0 / std::sqrt(x); }, 0, 1, 1e-9).value ==
          doctest::Approx(2.0).epsilon(1e-8));
}

TEST_CASE("cosine half power against the Gamma identity") {
    // sqrt(pi) Gamma(3/4)/Gamma(5/4), evaluated separately at 30 digits
    const double frozen = 2.39628046947118441;
    const auto r = integrate_1d([](double a) { return std::sqrt(std::cos(a)); }, -pi / 2, pi / 2, 1e-12);
    CHECK(r.value == doctest::Approx(frozen).epsilon(1e-10));
    CHECK(std::sqrt(pi) * gamma_fn(0.75) / gamma_fn(1.25) == doctest::Approx(frozen).epsilon(1e-14));
}

TEST_CASE("linearity") {
    auto f = [](double x) { return std::exp(x) * std::cos(3 * x); };
    auto g = [](double x) { return std::log(1 + x); };
    const double lhs = integrate_1d([&](double x) { return 2 * f(x) - 5 * g(x); }, 0, 2).value;
    const double rhs = 2 * integrate_1d(f, 0, 2).value - 5 * integrate_1d(g, 0, 2).value;
    CHECK(std::abs(lhs - rhs) <= 1e-10 * std::abs(lhs));
}

TEST_CASE("non-integrable integrand reports non-convergence") {
    QuadOptions o;
    o.max_intervals = 200;
    CHECK_THROWS_AS(integrate_1d([](double x) { return 1.0 / x; }, 0, 1, o), NonConvergence);
}

TEST_CASE("iterated quadrature") {
    const auto r = integrate_2d([](double x, double y) { return x * y * y; }, 0, 1, 0, 2);
    CHECK(r.value == doctest::Approx(4.0 / 3).epsilon(1e-12));
    Box box{{0, 1}, {0, 1}, {0, 1}};
    CHECK(integrate_nd([](std::span<const double> u) { return u[0] + u[1] + u[2]; }, box).value ==
          doctest::Approx(1.5).epsilon(1e-12));
}

TEST_CASE("ODE against exponential decay") {
    const auto r = solve_ode([](double, std::span<const double> y, std::span<double> d) { d[0] = -y[0]; },
                             {1.0}, 0.0, 2.0, 1e-12, 1e-12);
    CHECK(r.y[0] == doctest::Approx(std::exp(-2.0)).epsilon(1e-10));
}

TEST_CASE("Gamma function values") {
    CHECK(gamma_fn(0.5) == doctest::Approx(std::sqrt(pi)).epsilon(1e-15));
    CHECK(gamma_fn(5.0) == doctest::Approx(24.0).epsilon(1e-15));
    // reflection: Gamma(1/4) Gamma(3/4) = pi sqrt(2)
    CHECK(gamma_fn(0.25) * gamma_fn(0.75) == doctest::Approx(4.44288293815836625).epsilon(1e-14));
}

TEST_CASE("finite differences") {
    CHECK(derivative_fd([](double x) { return std::sin(x); }, 0.7, 1e-3) ==
          doctest::Approx(std::cos(0.7)).epsilon(1e-12));
    const auto J = jacobian_fd([](std::span<const double> x) { return std::vector<double>{x[0] * x[1], x[0] + x[1]}; },
                               std::vector<double>{2.0, 3.0});
    CHECK(J[0][0] == doctest::Approx(3.0).epsilon(1e-8));
    CHECK(J[0][1] == doctest::Approx(2.0).epsilon(1e-8));
    CHECK(J[1][1] == doctest::Approx(1.0).epsilon(1e-8));
}

}
