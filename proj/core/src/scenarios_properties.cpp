#include <cmath>
#include <numbers>

#include "pmod/core.hpp"
#include "pmod/numerics.hpp"
#include "pmod/oracle.hpp"
#include "pmod/rodin.hpp"
#include "scenario_impl.hpp"

namespace pmod::scenario::detail {

namespace {

using std::numbers::pi;

Polyline segment(double x0, double y0, double x1, double y1) {
    return Polyline({{x0, y0}, {x1, y1}});
}

double explicit_module(const oracle::Grid& g, std::vector<Polyline> curves, double p = 2.0) {
    return oracle::solve_modulus(g, oracle::DiscreteFamily::explicit_curves(std::move(curves)), p)
        .value;
}

void oracle_monotonicity(Ctx& c) {
    if (!c.want(Level::oracle)) return;
    const int nx = c.iparam("nx");
    const auto g = oracle::make_grid(oracle::rectangle(1.0, 1.0), nx);
    const std::vector<Polyline> A = {segment(0.1, 0, 0.1, 1), segment(0.3, 0, 0.3, 1),
                                     segment(0.5, 0, 0.5, 1)};
    std::vector<Polyline> B = A;
    B.push_back(segment(0, 0, 1, 1));
    B.push_back(segment(0.2, 0, 1, 0.8));
    const std::vector<Polyline> C = {segment(0, 0.25, 1, 0.25), segment(0, 0.75, 1, 0.75)};
    std::vector<Polyline> AC = A;
    AC.insert(AC.end(), C.begin(), C.end());

    const double mA = explicit_module(g, A), mB = explicit_module(g, B);
    const double mC = explicit_module(g, C), mAC = explicit_module(g, AC);
    c.metric("M(A)", mA);
    c.metric("M(B)", mB);
    c.metric("M(C)", mC);
    c.metric("M(A u C)", mAC);
    c.at_least("adding curves does not decrease the module", mB, mA, 1e-3, Level::oracle,
               Source::published, "E subset E' implies M(E) <= M(E')");
    c.at_most("subadditivity", mAC, mA + mC, 1e-3, Level::oracle, Source::published,
              "M(E u E') <= M(E) + M(E')");

    // one vertical curve through cell centres: the optimum spreads 1/L over the cells it crosses
    const double h = g.h;
    const double x = g.cx(nx / 2);
    const double single = explicit_module(g, {segment(x, 0, x, 1)});
    c.equal("single straight curve", h / 1.0, single, 1e-3, Level::oracle, Source::trivial,
            "m(support)/L^2");
    const auto g2 = oracle::make_grid(oracle::rectangle(1.0, 1.0), 2 * nx);
    const double finer = explicit_module(g2, {segment(g2.cx(nx), 0, g2.cx(nx), 1)});
    c.equal("single curve module halves with h", 0.5 * single, finer, 1e-3, Level::oracle,
            Source::trivial, "m(support)/L^2 shrinks with h");
}

void oracle_refinement(Ctx& c) {
    if (!c.want(Level::oracle)) return;
    const double a = 1.0, b = 2.0;
    const auto R = oracle::rectangle(a, b);
    std::vector<double> vals;
    for (int nx : {25, 50, 100}) {
        const auto r = oracle::solve_modulus(oracle::make_grid(R, nx),
                                             oracle::DiscreteFamily::connecting(R), 2.0);
        vals.push_back(r.value);
        c.metric("nx=" + std::to_string(nx), r.value);
    }
    c.at_most("refinement change", std::abs(vals[2] - vals[1]) / vals[2], 0.0, 0.01,
              Level::oracle, Source::trivial, "h -> h/2 moves the value < 1%", false);
    const double e0 = std::abs(vals[0] - a / b), e1 = std::abs(vals[1] - a / b),
                 e2 = std::abs(vals[2] - a / b);
    c.at_most("error trend, first halving", e1, e0, 1e-4, Level::oracle, Source::trivial,
              "non-increasing error", false);
    c.at_most("error trend, second halving", e2, e1, 1e-4, Level::oracle, Source::trivial,
              "non-increasing error", false);

    // primal feasibility: the oracle never beats a known admissible density
    const auto g = oracle::make_grid(R, 50);
    const double m = oracle::solve_modulus(g, oracle::DiscreteFamily::connecting(R), 2.0).value;
    auto rho = DensityField::closed_form([b](std::span<const double>) { return 1.0 / b; },
                                         Patch::rectangle(0, a, 0, b));
    c.at_most("oracle <= energy of 1/b", m, energy(rho, 2.0), 2e-3, Level::oracle,
              Source::trivial, "primal feasibility");
    auto tilted = DensityField::closed_form(
        [b](std::span<const double> x) { return (1.0 + 0.4 * x[0]) / b; },
        Patch::rectangle(0, a, 0, b));
    c.at_most("oracle <= energy of a tilted density", m, energy(tilted, 2.0), 2e-3,
              Level::oracle, Source::trivial, "primal feasibility");

    // duality on the square: bottom-top curves against the left-right family
    const auto sq = oracle::rectangle(1.0, 1.0);
    const auto gs = oracle::make_grid(sq, 60);
    const double conn = oracle::solve_modulus(gs, oracle::DiscreteFamily::connecting(sq), 2.0).value;
    const double sep = oracle::separating_module_2d(gs, sq, 2.0).value;
    c.metric("square connecting", conn);
    c.metric("square separating", sep);
    c.equal("square duality product", 1.0, conn * sep, 0.04, Level::oracle, Source::trivial,
            "self-conjugate square");
}

void core_invariants(Ctx& c) {
    const double p = 2.5, k = 3.0, b = 2.0;
    auto rho = DensityField::closed_form(
        [b](std::span<const double> x) { return 1.0 / (std::hypot(x[0], x[1]) * std::log(b)); },
        Patch::annulus(1.0, b));
    c.equal("energy scaling", std::pow(k, p) * energy(rho, p), energy(rho.scaled(k), p), 1e-10,
            Level::quadrature, Source::trivial, "E(k rho) = k^p E(rho)");

    auto wavy = DensityField::closed_form(
        [](std::span<const double> x) { return 1.0 + 0.5 * std::sin(3 * x[0]) * std::cos(x[1]); },
        Patch::rectangle(0, 2, 0, 2));
    const Polyline A({{0.1, 0.2}, {1.3, 0.9}}), B({{1.3, 0.9}, {1.7, 1.8}, {0.4, 1.5}});
    c.equal("line integral additivity", curve_integral(wavy, A) + curve_integral(wavy, B),
            curve_integral(wavy, A.concat(B)), 1e-10, Level::quadrature, Source::trivial,
            "int over concatenation");
    ParametricCurve pc;
    pc.t0 = 0.0;
    pc.t1 = 1.0;
    pc.point = [](double t) { return Vec{0.1 + 1.2 * t * t, 0.2 + 0.7 * t * t}; };
    c.equal("reparametrization invariance", curve_integral(wavy, A),
            curve_integral(wavy, Curve(pc)), 1e-9, Level::quadrature, Source::trivial,
            "int rho ds independent of parametrization");

    CurveFamilySampler fam{"verticals", 0.0, 2.0, [](double x) -> Curve {
                               return Polyline({{x, 0.0}, {x, 2.0}});
                           }};
    const auto adm = check_admissible(wavy, fam, 33);
    const auto normalized = wavy.scaled(1.0 / adm.min_integral);
    c.equal("rescaled density is admissible", 1.0,
            check_admissible(normalized, fam, 33).min_integral, 1e-10, Level::quadrature,
            Source::trivial, "rho / min int rho");

    for (double pp : {2.0, 3.0}) {
        const std::map<std::string, double> P = {{"n", 3}, {"p", pp}, {"a", 0.0}, {"b", 1.0}, {"c", 2.0}};
        auto base = rodin::make_scenario("cylinder", P);
        auto scaled = rodin::make_scenario("scaled_cylinder", P);
        const double m0 = rodin::module_connecting(base.condenser, base.map, pp).value;
        const double m1 = rodin::module_connecting(scaled.condenser, scaled.map, pp).value;
        c.equal("dilation law, p=" + std::to_string(static_cast<int>(pp)),
                std::pow(2.0, 3 - pp) * m0, m1, 1e-10, Level::quadrature, Source::trivial,
                "M_p(c Gamma) = c^(n-p) M_p(Gamma)");
    }

    auto f = [](double x) { return std::exp(-x) * std::cos(4 * x); };
    auto g = [](double x) { return 1.0 / (1.0 + x * x); };
    const double I = numerics::integrate_1d([&](double x) { return 2 * f(x) - 3 * g(x); }, 0, 3).value;
    c.equal("quadrature linearity",
            2 * numerics::integrate_1d(f, 0, 3).value - 3 * numerics::integrate_1d(g, 0, 3).value, I,
            1e-10, Level::quadrature, Source::trivial, "int (a f + b g)");
}

void extremality_catalog(Ctx& c) {
    if (!c.want(Level::quadrature)) return;
    const double a = 1.0, b = 2.0;
    auto verdict = [&](const std::string& name, const ExtremalityReport& r, bool expect) {
        std::size_t used = 0;
        for (const auto& x : r.results) used += x.applicable;
        c.metric(name + " applicable perturbations", static_cast<double>(used));
        c.equal(name, expect ? 1.0 : 0.0, r.extremal ? 1.0 : 0.0, 0.0, Level::quadrature,
                Source::derived, "Beurling criterion", false);
    };

    CurveFamilySampler verticals{"verticals", 0.0, a, [b](double x) -> Curve {
                                     return Polyline({{x, 0.0}, {x, b}});
                                 }};
    const auto rect = Patch::rectangle(0, a, 0, b);
    const std::vector<Field> rect_perts = {
        {[](std::span<const double>) { return 1.0; }, "constant"},
        {[a, b](std::span<const double> x) { return 0.5 * x[0] / (a * b); }, "admissible tilt"},
        {[b](std::span<const double> x) { return std::cos(2 * pi * x[1] / b); }, "zero mean in y"},
        {[b](std::span<const double> x) { return -std::sin(2 * pi * x[1] / b) / b; }, "odd in y"},
        {[a](std::span<const double> x) { return std::sin(2 * pi * x[0] / a); }, "sign change in x"}};
    auto rho_rect = DensityField::closed_form([b](std::span<const double>) { return 1.0 / b; }, rect);
    verdict("rectangle 1/b", check_extremality(rho_rect, verticals, rect_perts, 2.0), true);
    verdict("rectangle 1/b, p=3", check_extremality(rho_rect, verticals, rect_perts, 3.0), true);

    CurveFamilySampler radial{"radial", 0.0, 2 * pi, [b](double t) -> Curve {
                                  return Polyline({{std::cos(t), std::sin(t)},
                                                   {b * std::cos(t), b * std::sin(t)}});
                              }};
    const double L = std::log(b);
    auto rho_ann = DensityField::closed_form(
        [L](std::span<const double> x) { return 1.0 / (std::hypot(x[0], x[1]) * L); },
        Patch::annulus(1.0, b));
    const std::vector<Field> ann_perts = {
        {[](std::span<const double> x) { return 1.0 / (x[0] * x[0] + x[1] * x[1]); }, "1/r^2"},
        {[L](std::span<const double> x) {
             const double r = std::hypot(x[0], x[1]);
             return std::sin(2 * pi * std::log(r) / L) / r;
         },
         "oscillating in log r"},
        {[](std::span<const double> x) { return x[0] / (x[0] * x[0] + x[1] * x[1]); }, "cos/r"}};
    verdict("annulus 1/(r log b)", check_extremality(rho_ann, radial, ann_perts, 2.0), true);

    auto sc = rodin::make_scenario("shear_cylinder",
                                   {{"n", 2}, {"side", 1.0}, {"a", 0.0}, {"b", 1.0}, {"beta", 0.5}});
    const auto rho_sh = rodin::extremal_density_connecting(sc.condenser, sc.map, 2.0);
    const auto slants = rodin::connecting_family(sc.condenser, sc.map, {0.5}, 0);
    const std::vector<Field> sh_perts = {
        {[](std::span<const double>) { return 1.0; }, "constant"},
        {[](std::span<const double> x) { return std::sin(2 * pi * x[1]); }, "zero mean along slants"}};
    verdict("sheared cylinder", check_extremality(rho_sh, slants, sh_perts, 2.0), true);

    // 10% oscillation along the curves: still admissible, not extremal
    auto perturbed = DensityField::closed_form(
        [b](std::span<const double> x) { return (1.0 + 0.1 * std::sin(2 * pi * x[1] / b)) / b; },
        rect);
    verdict("perturbed rectangle density rejected",
            check_extremality(perturbed, verticals, rect_perts, 2.0), false);
}

}  // namespace

void register_properties(std::vector<Entry>& out) {
    out.push_back({"oracle-monotonicity", {{"nx", 40}}, oracle_monotonicity});
    out.push_back({"oracle-refinement", {}, oracle_refinement});
    out.push_back({"core-invariants", {}, core_invariants});
    out.push_back({"extremality-catalog", {}, extremality_catalog});
}

}  // namespace pmod::scenario::detail
