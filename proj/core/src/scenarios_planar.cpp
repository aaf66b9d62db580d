#include <chrono>
#include <cmath>
#include <numbers>

#include "pmod/core.hpp"
#include "pmod/oracle.hpp"
#include "pmod/planar.hpp"
#include "pmod/rodin.hpp"
#include "scenario_impl.hpp"

namespace pmod::scenario::detail {

namespace {

using std::numbers::pi;
constexpr double oracle_tol = 0.02;

struct Timed {
    oracle::OracleResult r;
    double seconds = 0.0;
};

void report_oracle(Ctx& c, const std::string& tag, const Timed& t) {
    c.metric(tag + " value", t.r.value);
    c.metric(tag + " lower", t.r.lower);
    c.metric(tag + " gap", t.r.gap);
    c.metric(tag + " iterations", t.r.iterations);
    c.metric(tag + " converged", t.r.converged ? 1.0 : 0.0);
    c.metric(tag + " seconds", t.seconds);
}

Timed connecting(const oracle::Region& R, int nx, double p) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto g = oracle::make_grid(R, nx);
    Timed t{oracle::solve_modulus(g, oracle::DiscreteFamily::connecting(R), p), 0.0};
    t.seconds = seconds_since(t0);
    return t;
}

Timed separating(const oracle::Region& R, int nx, double q) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto g = oracle::make_grid(R, nx);
    Timed t{oracle::separating_module_2d(g, R, q), 0.0};
    t.seconds = seconds_since(t0);
    return t;
}

oracle::Region image(const oracle::Region& base, const planar::PlanarMap& f) {
    return oracle::mapped(
        base,
        [f](double x, double y) {
            const auto w = f.f({x, y});
            return Vec{w.real(), w.imag()};
        },
        [f](double x, double y) {
            const auto w = f.inverse({x, y});
            return Vec{w.real(), w.imag()};
        },
        f.name);
}

void rectangle(Ctx& c) {
    const double a = c.param("a"), b = c.param("b"), p = c.param("p");
    const int nx = c.iparam("nx");
    const double expected = a * std::pow(b, 1.0 - p);
    if (c.want(Level::closed_form)) {
        auto rho = DensityField::closed_form([b](std::span<const double>) { return 1.0 / b; },
                                             Patch::rectangle(0, a, 0, b), "1/b");
        c.equal("energy of 1/b", expected, energy(rho, p), 1e-10, Level::closed_form,
                Source::published, "M_p = a b^(1-p)");
    }
    if (c.want(Level::quadrature)) {
        const auto m = rodin::module_connecting(rodin::cylinder(2, a, 0.0, b),
                                                rodin::CondenserMap::identity(), p);
        c.equal("rodin module", expected, m.value, 1e-10, Level::quadrature, Source::published,
                "M_p = a b^(1-p)");
        if (a == 1.0 && p == 2.0)
            c.equal("planar rodin module", expected,
                    planar::rodin2d_module(planar::make_map("identity"), b), 1e-10,
                    Level::quadrature, Source::published, "M_2 = a/b");
    }
    if (c.want(Level::oracle)) {
        const auto t = connecting(oracle::rectangle(a, b), nx, p);
        report_oracle(c, "oracle", t);
        c.equal("oracle module", expected, t.r.value, oracle_tol, Level::oracle,
                Source::published, "M_p = a b^(1-p)");
        c.at_most("oracle seconds", t.seconds, 30.0, 0.0, Level::oracle, Source::trivial,
                  "runtime budget");
    }
}

void parallelogram(Ctx& c) {
    const double theta = c.param("theta"), h = c.param("h");
    const int nx = c.iparam("nx");
    const auto pb = planar::parallelogram_bounds(theta, h);
    const double s = std::sin(theta);
    if (c.want(Level::closed_form)) {
        c.at_least("max dilatation of the shear", planar::shear_max_dilatation(theta),
                   1.0 / (s * s), 0.0, Level::closed_form, Source::derived,
                   "K(theta) >= 1/sin^2(theta)");
    }
    if (c.want(Level::quadrature)) {
        const auto f = planar::make_map("shear", {{"theta", theta}});
        const double slant = planar::rodin2d_module(f, h * s);
        c.equal("slant module", pb.slant_module, slant, 1e-10, Level::quadrature,
                Source::published, "M_2 = sin(theta)/h");
        auto sc = rodin::make_scenario("shear_cylinder", {{"n", 2},
                                                          {"side", 1.0},
                                                          {"a", 0.0},
                                                          {"b", h * s},
                                                          {"beta", std::cos(theta) / s}});
        const double sigma0 = rodin::module_separating(sc.condenser, sc.map, 2.0).value;
        c.equal("slant times horizontal separating", pb.product, slant * sigma0, 1e-10,
                Level::quadrature, Source::published, "product = sin^2(theta)");
    }
    if (c.want(Level::oracle)) {
        const auto t = separating(oracle::parallelogram_theta(theta, h), nx, 2.0);
        report_oracle(c, "oracle", t);
        c.at_least("oracle separating above h sin", t.r.value, pb.sigma_lower, oracle_tol,
                   Level::oracle, Source::published, "M_2(Sigma') >= h sin(theta)");
        c.at_most("oracle separating below bracket", t.r.value, pb.sigma_lower + pb.sigma_bound,
                  oracle_tol, Level::oracle, Source::published,
                  "M_2(Sigma') <= h sin(theta) + h cos^2(theta)/sin(theta)");
        c.at_most("oracle separating below 1/slant", t.r.value, 1.0 / pb.slant_module,
                  oracle_tol, Level::oracle, Source::derived, "M_2(Sigma') <= 1/M_2(Gamma')");
    }
}

void parallelogram_rate(Ctx& c) {
    const double eps = c.param("eps"), b = c.param("b");
    const int nx = c.iparam("nx");
    const double rate = planar::parallelogram_rate(eps, b);
    c.metric("rate", rate);
    if (c.want(Level::oracle)) {
        const auto t = separating(oracle::parallelogram(eps, b), nx, 2.0);
        report_oracle(c, "oracle", t);
        c.at_most("|M(P) - M(Q)|", std::abs(t.r.value - b), rate, oracle_tol * b, Level::oracle,
                  Source::published, "|M(P(eps)) - b| <= eps^2/b", false);
        c.at_least("M(P) >= M(Q)", t.r.value, b, oracle_tol, Level::oracle, Source::derived,
                   "module non-decreasing in eps");
    }
}

void annulus(Ctx& c) {
    const double b = c.param("b"), p = c.param("p");
    const int nx = c.iparam("nx");
    auto sc = rodin::make_scenario("spherical_ring", {{"n", 2}, {"a", 1.0}, {"b", b}, {"p", p}});
    const double expected = *rodin::closed_form_reference(sc);
    if (c.want(Level::closed_form)) {
        const double L = std::log(b);
        auto rho = DensityField::closed_form(
            [L](std::span<const double> x) { return 1.0 / (std::hypot(x[0], x[1]) * L); },
            Patch::annulus(1.0, b), "1/(r log b)");
        if (p == 2.0)
            c.equal("energy of 1/(r log b)", 2 * pi / L, energy(rho, 2.0), 1e-10,
                    Level::closed_form, Source::published, "M_2 = 2 pi/log b");
    }
    if (c.want(Level::quadrature)) {
        c.equal("rodin module", expected, rodin::module_connecting(sc.condenser, sc.map, p).value,
                1e-10, Level::quadrature, Source::published, "ring module");
        if (p == 2.0) {
            const auto id = planar::make_map("identity");
            const double rad = planar::annulus_radial_image_module(id, b);
            const double circ = planar::annulus_circle_image_module(id, b);
            c.equal("radial module", 2 * pi / std::log(b), rad, 1e-10, Level::quadrature,
                    Source::published, "M_2 = 2 pi/log b");
            c.equal("circle module", std::log(b) / (2 * pi), circ, 1e-10, Level::quadrature,
                    Source::published, "M_2 = log b/(2 pi)");
            c.equal("radial times circle", 1.0, rad * circ, 1e-10, Level::quadrature,
                    Source::published, "product = 1");
        }
    }
    if (c.want(Level::oracle)) {
        const auto R = oracle::annulus(1.0, b);
        const auto t = connecting(R, nx, p);
        report_oracle(c, "oracle connecting", t);
        c.equal("oracle connecting", expected, t.r.value, oracle_tol, Level::oracle,
                Source::published, "ring module");
        if (p == 2.0) {
            const auto s = separating(R, nx, 2.0);
            report_oracle(c, "oracle separating", s);
            c.equal("oracle separating", std::log(b) / (2 * pi), s.r.value, oracle_tol,
                    Level::oracle, Source::published, "M_2 = log b/(2 pi)");
        }
    }
}

void log_spiral(Ctx& c) {
    const double beta = c.param("beta"), b = c.param("b");
    const double expected = 2 * pi / ((1 + beta * beta) * std::log(b));
    const auto id = planar::make_map("identity");
    if (c.want(Level::closed_form)) {
        c.equal("spiral formula", expected, planar::log_spiral_image_module(id, b, beta), 1e-10,
                Level::closed_form, Source::published, "2 pi/((1+beta^2) log b)");
    }
    if (c.want(Level::quadrature)) {
        c.equal("spiral through rectangle chart", expected,
                planar::log_spiral_image_module_rect(id, b, beta), 1e-6, Level::quadrature,
                Source::published, "2 pi/((1+beta^2) log b)");
        const auto rb = planar::ring_module_bounds(planar::make_map("log-spiral", {{"beta", beta}}), b);
        c.equal("spiral map upper bound", (1 + beta * beta) * std::log(b) / (2 * pi), rb.cs_upper,
                1e-8, Level::quadrature, Source::derived, "(1+beta^2) log b/(2 pi)");
    }
}

void ring_bounds(Ctx& c, const std::string& map, const std::string& key) {
    const double b = c.param("b");
    const int nx = c.iparam("nx");
    const auto f = planar::make_map(map, {{key, c.param(key)}});
    const auto rb = planar::ring_module_bounds(f, b);
    c.metric("lower", rb.lower);
    c.metric("upper", rb.upper);
    c.metric("cs_upper", rb.cs_upper);
    if (c.want(Level::quadrature)) {
        c.at_most("lower <= upper", rb.lower, rb.upper, 1e-10, Level::quadrature,
                  Source::published, "circle bound below radial bound");
        c.at_most("upper <= dilatation bound", rb.upper, rb.cs_upper, 1e-10, Level::quadrature,
                  Source::published, "radial bound below dilatation integral");
    }
    if (c.want(Level::oracle)) {
        const auto t = separating(image(oracle::annulus(1.0, b), f), nx, 2.0);
        report_oracle(c, "oracle", t);
        c.at_least("oracle >= lower", t.r.value, rb.lower, oracle_tol, Level::oracle,
                   Source::published, "ring module bounds");
        c.at_most("oracle <= upper", t.r.value, rb.upper, oracle_tol, Level::oracle,
                  Source::published, "ring module bounds");
    }
}

void square_map(Ctx& c) {
    const double b = c.param("b"), shift = c.param("shift");
    const int nx = c.iparam("nx");
    const auto f = planar::make_map("square", {{"shift", shift}});
    if (c.want(Level::quadrature)) {
        c.equal("rodin module", 1.0 / b, planar::rodin2d_module(f, b), 1e-8, Level::quadrature,
                Source::derived, "conformal invariance, M_2 = 1/b");
    }
    if (c.want(Level::oracle)) {
        const auto t = connecting(image(oracle::rectangle(1.0, b), f), nx, 2.0);
        report_oracle(c, "oracle", t);
        c.equal("oracle module", 1.0 / b, t.r.value, oracle_tol, Level::oracle, Source::derived,
                "conformal invariance, M_2 = 1/b");
    }
}

}  // namespace

void register_planar(std::vector<Entry>& out) {
    out.push_back({"rectangle", {{"a", 1.0}, {"b", 2.0}, {"p", 2.0}, {"nx", 200}}, rectangle});
    out.push_back({"parallelogram", {{"theta", pi / 3}, {"h", 1.0}, {"nx", 100}}, parallelogram});
    out.push_back({"parallelogram-rate", {{"eps", 0.2}, {"b", 1.0}, {"nx", 100}}, parallelogram_rate});
    out.push_back({"annulus", {{"b", 2.0}, {"p", 2.0}, {"nx", 100}}, annulus});
    out.push_back({"log-spiral", {{"beta", 1.0}, {"b", std::exp(1.0)}}, log_spiral});
    out.push_back({"ring-bounds-affine", {{"b", 2.0}, {"k", 0.3}, {"nx", 100}},
                   [](Ctx& c) { ring_bounds(c, "affine", "k"); }});
    out.push_back({"ring-bounds-radial-perturbation", {{"b", 2.0}, {"eps", 0.3}, {"nx", 100}},
                   [](Ctx& c) { ring_bounds(c, "radial-perturbation", "eps"); }});
    out.push_back({"ring-bounds-log-spiral", {{"b", 2.0}, {"beta", 1.0}, {"nx", 100}},
                   [](Ctx& c) { ring_bounds(c, "log-spiral", "beta"); }});
    out.push_back({"ring-bounds-angular-shear", {{"b", 2.0}, {"k", 1.0}, {"nx", 100}},
                   [](Ctx& c) { ring_bounds(c, "angular-shear", "k"); }});
    out.push_back({"square-map", {{"b", 0.5}, {"shift", 1.0}, {"nx", 100}}, square_map});
}

}  // namespace pmod::scenario::detail
