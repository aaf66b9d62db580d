#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "pmod/carnot.hpp"
#include "pmod/core.hpp"
#include "pmod/oracle.hpp"
#include "pmod/rodin.hpp"
#include "scenario_impl.hpp"

namespace pmod::scenario::detail {

namespace {

using std::numbers::pi;
using carnot::GroupSpec;
using carnot::SpherePoint;

rodin::Scenario build(const std::string& rodin_name, const Params& P) {
    std::map<std::string, double> kv;
    for (const auto& [k, v] : P)
        if (k != "nx") kv[k] = v;
    return rodin::make_scenario(rodin_name, kv);
}

oracle::Region cone_region(double beta, double x0, double x1, double a, double b) {
    oracle::Region R;
    R.name = "cone";
    R.x0 = std::min(beta * b * x0, beta * a * x0);
    R.x1 = std::max(beta * b * x1, beta * a * x1);
    R.y0 = a;
    R.y1 = b;
    R.contains = [=](double x, double y) {
        return y >= a && y <= b && x >= beta * y * x0 && x <= beta * y * x1;
    };
    R.level = [](double, double y) { return y; };
    R.level0 = a;
    R.level1 = b;
    return R;
}

void euclidean(Ctx& c, const std::string& rodin_name) {
    const auto sc = build(rodin_name, c.report.params);
    const double p = sc.p, q = p / (p - 1);
    const auto closed = rodin::closed_form_reference(sc);
    if (closed) c.metric("closed form", *closed);
    if (!c.want(Level::quadrature) && !c.want(Level::oracle)) return;

    const double M = rodin::module_connecting(sc.condenser, sc.map, p).value;
    c.metric("module", M);
    if (c.want(Level::quadrature)) {
        if (closed)
            c.equal("module vs closed form", *closed, M, 1e-8, Level::quadrature,
                    Source::published, "rodin closed form");
        const bool planar_fields = sc.condenser.n == 2 && rodin_name != "sphere_twist" &&
                                   rodin_name != "sphere_log_twist";
        if (planar_fields) {
            const auto rho = rodin::extremal_density_connecting(sc.condenser, sc.map, p);
            const auto& box = sc.condenser.base.params;
            const double mid = 0.5 * (box[0].first + box[0].second);
            const auto fam = rodin::connecting_family(sc.condenser, sc.map, {mid}, 0);
            const auto adm = check_admissible(rho, fam, 9, 1e-8);
            const auto [lo, hi] = std::minmax_element(adm.integrals.begin(), adm.integrals.end());
            c.equal("min line integral of rho0", 1.0, *lo, 1e-8, Level::quadrature,
                    Source::derived, "extremal density is admissible");
            c.equal("max line integral of rho0", 1.0, *hi, 1e-8, Level::quadrature,
                    Source::derived, "extremal density is admissible");
        }
    }
    if (c.want(Level::quadrature) && rodin_name != "sphere_twist" &&
        rodin_name != "sphere_log_twist" && rodin_name != "conical_cylinder") {
        const double Ms = rodin::module_separating(sc.condenser, sc.map, q).value;
        c.metric("separating module", Ms);
        if (auto cs = rodin::closed_form_separating(sc, q))
            c.equal("separating vs closed form", *cs, Ms, 1e-8, Level::quadrature,
                    Source::derived, "separating closed form");
        if (rodin_name == "shear_cylinder") {
            const double beta = c.param("beta");
            const double prod = std::pow(M, q) * std::pow(Ms, p);
            c.equal("(M_p)^q (M_q)^p", std::pow(1 + beta * beta, -0.5 * p * q), prod, 1e-8,
                    Level::quadrature, Source::published, "(1+beta^2)^(-pq/2)");
            if (beta != 0.0)
                c.at_most("shear product below 1", prod, 1.0 - 1e-6, 0.0, Level::quadrature,
                          Source::published, "product differs from 1", false);
        } else {
            c.equal("M_p^(1/p) M_q^(1/q)", 1.0, std::pow(M, 1 / p) * std::pow(Ms, 1 / q), 1e-8,
                    Level::quadrature, Source::published, "duality product = 1");
        }
    }
    if (rodin_name == "conical_cylinder" && c.want(Level::oracle)) {
        const auto R = cone_region(c.param("beta"), c.param("x0"), c.param("x1"), c.param("a"),
                                   c.param("b"));
        const auto g = oracle::make_grid(R, c.iparam("nx"));
        const auto r = oracle::solve_modulus(g, oracle::DiscreteFamily::connecting(R), p);
        c.metric("oracle value", r.value);
        c.metric("oracle gap", r.gap);
        c.at_least("oracle >= rodin module", r.value, M, 0.02, Level::oracle, Source::derived,
                   "subfamily has smaller module");
    }
}

void twist_inequality(Ctx& c) {
    const double p = c.param("p"), r = c.param("r");
    const int n = c.iparam("n");
    const double lhs = rodin::twist_integral(n, p, r);
    const double rhs = std::abs(p - n) < 1e-12
                           ? std::log(r)
                           : (p - 1) / std::abs(p - n) *
                                 std::abs(std::pow(r, (p - n) / (p - 1)) - 1.0);
    c.metric("integral", lhs);
    c.metric("bound", rhs);
    c.at_least("twist integral bound", lhs, rhs, 1e-12, Level::quadrature, Source::published,
               "int (1+t^2)^(q/2) t^((n-1)(1-q)) dt >= untwisted");
    if (n == 2) {
        auto tw = rodin::make_scenario("sphere_twist", {{"n", 2}, {"p", p}, {"b", r}});
        auto ring = rodin::make_scenario("spherical_ring", {{"n", 2}, {"p", p}, {"b", r}});
        c.at_most("twisted module <= ring module", *rodin::closed_form_reference(tw),
                  *rodin::closed_form_reference(ring), 1e-12, Level::closed_form,
                  Source::published, "M_p(twist) <= M_p(Gamma_0)");
    }
}

std::vector<SpherePoint> sphere_samples(const GroupSpec& G) {
    if (G.kind == carnot::GroupKind::heisenberg)
        return {SpherePoint{{0.3, 0.2}}, SpherePoint{{1.0, -0.7}}, SpherePoint{{2.5, 1.1}},
                SpherePoint{{4.0, -1.3}}};
    std::vector<SpherePoint> out;
    const std::vector<Vec> base = {{0.3, 0.4, 0.5}, {2.0, 1.0, 2.2}, {5.0, 2.7, 0.9}};
    for (const auto& v : base) out.push_back(SpherePoint{Vec(v.begin(), v.begin() + (G.k - 1))});
    return out;
}

void ring(Ctx& c, const GroupSpec& G) {
    const double p = c.param("p"), a = c.param("a"), b = c.param("b");
    const double q = p / (p - 1);
    const double Q = G.Q();
    const bool heis = G.kind == carnot::GroupKind::heisenberg;
    const auto closed = carnot::module_connecting_ring_closed(G, p, a, b).value;
    c.metric("closed form", closed);
    if (heis && p == 4.0 && c.want(Level::closed_form))
        c.equal("closed form vs pi^2/(log b/a)^3", pi * pi / std::pow(std::log(b / a), 3), closed,
                1e-12, Level::closed_form, Source::published, "M_4 = pi^2/(log b/a)^3");
    if (!c.want(Level::quadrature)) return;

    const double M = carnot::module_connecting_ring(G, p, a, b).value;
    c.equal("module vs closed form", closed, M, 1e-8, Level::quadrature, Source::published,
            "C_S1 C_ab^(1-p)");
    if (heis && p == 4.0)
        c.equal("module vs pi^2/(log b/a)^3", pi * pi / std::pow(std::log(b / a), 3), M, 1e-8,
                Level::quadrature, Source::published, "M_4 = pi^2/(log b/a)^3");
    const auto cap = carnot::capacity_check(G, p, a, b);
    c.equal("capacity vs module", cap.module_value, cap.cap_value, 1e-8, Level::quadrature,
            Source::published, "cap_p = M_p");

    const auto rc = carnot::ring_constants(G, p, a, b);
    c.equal("K_ab(q) vs C_ab(p)", rc.C_ab, rc.K_ab, 1e-10, Level::quadrature, Source::published,
            "K_ab(q,Q) = C_ab(p,Q)");
    c.equal("K_S1(q) vs C_S1(p)", rc.C_S1, rc.K_S1, 1e-10, Level::quadrature, Source::published,
            "K_S1(q) = C_S1(p)");
    const double Ms = carnot::module_separating_ring(G, q, a, b).value;
    c.equal("M_p^(1/p) M_q^(1/q)", 1.0, std::pow(M, 1 / p) * std::pow(Ms, 1 / q), 1e-10,
            Level::quadrature, Source::published, "duality product = 1");

    const auto conn = carnot::extremal_density_ring(G, p, a, b, carnot::FamilyKind::connecting);
    const auto sep = carnot::extremal_density_ring(G, q, a, b, carnot::FamilyKind::separating);
    const double factor = std::pow(rc.C_ab, p - 1) / rc.C_S1;
    double worst = 0.0;
    const auto xis = sphere_samples(G);
    for (const auto& xi : xis) {
        for (double t : {0.2, 0.55, 0.9}) {
            const Vec x = carnot::flow_point(G, xi, a + t * (b - a));
            const double lhs = sep(x), rhs = factor * std::pow(conn(x), p - 1);
            worst = std::max(worst, std::abs(lhs - rhs) / std::abs(rhs));
        }
    }
    c.at_most("density relation, worst sample", worst, 0.0, 1e-8, Level::quadrature,
              Source::published, "rho0 = C_ab^(p-1) C_S1^(-1) varrho0^(p-1)", false);

    double worst_line = 0.0;
    for (const auto& xi : xis) {
        ParametricCurve curve;
        curve.t0 = a;
        curve.t1 = b;
        curve.point = [G, xi](double s) { return carnot::flow_point(G, xi, s); };
        curve.velocity = [G, xi](double s) { return Vec{carnot::flow_speed(G, xi, s)}; };
        worst_line = std::max(worst_line, std::abs(curve_integral(conn, curve, 1e-11) - 1.0));
    }
    c.at_most("connecting density along flow lines", worst_line, 0.0, 1e-8, Level::quadrature,
              Source::published, "int varrho0 ds = 1", false);

    double worst_sphere = 0.0;
    for (double t : {0.3, 0.7}) {
        const double s = a + t * (b - a);
        const double I = carnot::sphere_integral(G, [&](const SpherePoint& xi) {
            return sep(carnot::flow_point(G, xi, s)) * carnot::lambda(G, xi);
        }, 1e-10);
        worst_sphere = std::max(worst_sphere, std::abs(std::pow(s, Q - 1) * I - 1.0));
    }
    c.at_most("separating density over spheres", worst_sphere, 0.0, 1e-8, Level::quadrature,
              Source::published, "int_{S_s} rho0 dS = 1", false);
}

void heisenberg_flow(Ctx& c) {
    const auto H = GroupSpec::heisenberg();
    const double s1 = c.param("s1");
    std::vector<SpherePoint> xis = sphere_samples(H);
    xis.push_back(SpherePoint{{c.param("theta"), c.param("alpha")}});
    double end_err = 0.0, norm_err = 0.0, speed_err = 0.0, lam_err = 0.0;
    for (const auto& xi : xis) {
        const auto tr = carnot::radial_flow(H, xi, s1);
        const Vec cf = carnot::flow_point(H, xi, s1);
        for (std::size_t i = 0; i < cf.size(); ++i)
            end_err = std::max(end_err, std::abs(tr.end[i] - cf[i]));
        for (std::size_t i = 0; i < tr.s.size(); ++i)
            norm_err = std::max(norm_err,
                                std::abs(carnot::homogeneous_norm(H, tr.points[i]) - tr.s[i]));
        const double al = xi.coords[1];
        for (double s : {1.0, 0.5 * (1 + s1), s1})
            speed_err = std::max(speed_err,
                                 std::abs(carnot::flow_speed(H, xi, s) * std::sqrt(std::cos(al)) - 1));
        const Vec g = carnot::sphere_embed(H, xi);
        const double fd = carnot::horizontal_gradient_norm(
            H, [&H](std::span<const double> x) { return carnot::homogeneous_norm(H, x); }, g);
        lam_err = std::max(lam_err, std::abs(fd - carnot::lambda(H, xi)));
    }
    c.at_most("ODE endpoint vs closed form", end_err, 0.0, 1e-9, Level::quadrature,
              Source::derived, "closed-form radial flow", false);
    c.at_most("N along trajectories minus s", norm_err, 0.0, 1e-8, Level::quadrature,
              Source::published, "N(phi(s, xi)) = s", false);
    c.at_most("speed times sqrt(cos alpha) minus 1", speed_err, 0.0, 1e-9, Level::quadrature,
              Source::published, "|phi'|_0 sqrt(cos alpha) = 1", false);
    c.at_most("lambda by differencing", lam_err, 0.0, 1e-8, Level::quadrature, Source::derived,
              "lambda = sqrt(cos alpha)", false);
}

void heisenberg_twist(Ctx& c) {
    const double p = c.param("p"), b = c.param("b");
    const auto H = GroupSpec::heisenberg();
    double horiz = 0.0, speed = 0.0;
    for (double th : {0.4, 2.0, 5.1})
        for (double al : {-1.2, 0.0, 0.2})
            for (double r : {1.0, 0.5 * (1 + b), b}) {
                horiz = std::max(horiz, std::abs(carnot::twist::horizontality_residual(th, al, r)));
                speed = std::max(speed, std::abs(carnot::twist::speed_fd(th, al, r) /
                                                     carnot::twist::speed(al, r) - 1));
            }
    c.at_most("horizontality residual", horiz, 0.0, 1e-9, Level::quadrature, Source::derived,
              "twisted curves are horizontal", false);
    c.at_most("speed by differencing", speed, 0.0, 1e-8, Level::quadrature, Source::derived,
              "|c'|_0 = (1/2) sqrt((4+r^2)/cos(alpha+r-1))", false);

    const auto rho = carnot::twist::extremal_density(p, b);
    double line = 0.0;
    for (double al : {-1.2, 0.0, 0.5})
        line = std::max(line, std::abs(curve_integral(rho, carnot::twist::curve_of(1.0, al, b), 1e-9) - 1));
    c.at_most("rho0 along twisted curves", line, 0.0, 1e-6, Level::quadrature, Source::derived,
              "int rho0 ds = 1", false);

    const double Mt = carnot::twist::module(p, b).value;
    const double M0 = carnot::module_connecting_ring(H, p, 1.0, b).value;
    c.metric("twist module", Mt);
    c.metric("untwisted module", M0);
    c.at_most("twist module <= radial module", Mt, M0, 1e-10, Level::quadrature,
              Source::published, "M_p(twist) <= M_p(Gamma_0)");
}

void carnot_constants(Ctx& c) {
    const auto H = GroupSpec::heisenberg();
    const auto H21 = GroupSpec::htype(2, 1);
    for (double p : {2.0, 3.0, 4.0, 6.0}) {
        const std::string tag = "p=" + std::to_string(static_cast<int>(p));
        const double quad = carnot::c_s1_quadrature(H, p);
        c.equal("C_S1 quadrature vs Gamma form, " + tag, carnot::c_s1_closed_form(H, p), quad,
                1e-8, Level::quadrature, Source::published,
                "2 pi sqrt(pi) Gamma(p/4+1/2)/Gamma(p/4+1)");
        c.equal("C_S1 vs 4 x H-type(2,1), " + tag, quad, 4 * carnot::c_s1_quadrature(H21, p),
                1e-10, Level::quadrature, Source::derived, "t-scaling between the two norms");
    }
    for (auto [k, l] : {std::pair{2, 1}, std::pair{4, 3}, std::pair{8, 7}}) {
        const auto G = GroupSpec::htype(k, l);
        const std::string tag = G.name();
        for (double p : {2.0, 4.0}) {
            const double quad = carnot::c_s1_quadrature(G, p);
            c.equal("H-type C_S1 quadrature vs Gamma form, " + tag + ", p=" +
                        std::to_string(static_cast<int>(p)),
                    carnot::c_s1_closed_form(G, p), quad, 1e-8, Level::quadrature,
                    Source::derived, "Gamma form from the (|u|,|z|) integral");
            c.metric("displayed over quadrature, " + tag + ", p=" + std::to_string(static_cast<int>(p)),
                     carnot::htype_display_constant(k, l, p) / quad);
        }
    }
    const double g34 = std::tgamma(0.75);
    c.equal("sphere area", 4 * std::sqrt(2 * pi) * g34 * g34, carnot::sphere_area(H), 1e-8,
            Level::quadrature, Source::published, "4 sqrt(2 pi) Gamma(3/4)^2");

    const double a = 1.0, b = 2.0;
    const auto patch = carnot::ring_patch(H, a, b);
    const auto one = DensityField::closed_form([](std::span<const double>) { return 1.0; }, patch);
    const double vol_polar = energy(one, 2.0);
    c.equal("ring volume, polar vs ambient", carnot::heisenberg_ring_volume_ambient(a, b),
            vol_polar, 1e-6, Level::quadrature, Source::derived, "spherical integration");

    std::mt19937 gen(20240607);
    std::uniform_real_distribution<double> u(-2.0, 2.0), sd(0.1, 5.0);
    double worst = 0.0;
    for (const auto& G : {H, H21, GroupSpec::htype(4, 3), GroupSpec::euclidean(3)}) {
        for (int i = 0; i < 50; ++i) {
            Vec g(G.dim());
            for (double& v : g) v = u(gen);
            const double s = sd(gen);
            const double lhs = carnot::homogeneous_norm(G, carnot::dilate(G, g, s));
            worst = std::max(worst, std::abs(lhs / (s * carnot::homogeneous_norm(G, g)) - 1));
        }
    }
    c.at_most("norm homogeneity", worst, 0.0, 1e-12, Level::closed_form, Source::trivial,
              "N(delta_s g) = s N(g)", false);
}

}  // namespace

void register_space(std::vector<Entry>& out) {
    auto add = [&](const std::string& name, const std::string& rodin_name, Params d) {
        out.push_back({name, std::move(d), [rodin_name](Ctx& c) { euclidean(c, rodin_name); }});
    };
    add("cylinder", "cylinder", {{"n", 3}, {"p", 3}, {"side", 1.0}, {"a", 0.0}, {"b", 2.0}});
    add("shear-cylinder", "shear_cylinder",
        {{"n", 2}, {"p", 2}, {"side", 1.0}, {"a", 0.0}, {"b", 1.0}, {"beta", 1.0}});
    add("scaled-cylinder", "scaled_cylinder",
        {{"n", 2}, {"p", 3}, {"side", 1.0}, {"a", 0.0}, {"b", 1.0}, {"c", 2.0}});
    add("spherical-ring", "spherical_ring", {{"n", 3}, {"p", 2}, {"a", 1.0}, {"b", 2.0}});
    add("sphere-twist", "sphere_twist", {{"n", 2}, {"p", 2}, {"a", 1.0}, {"b", 2.0}});
    add("sphere-log-twist", "sphere_log_twist",
        {{"n", 3}, {"p", 2}, {"a", 1.0}, {"b", 2.0}, {"beta", 1.0}});
    add("conical-cylinder", "conical_cylinder",
        {{"p", 2}, {"beta", 0.5}, {"x0", -1.0}, {"x1", 1.0}, {"a", 1.0}, {"b", 2.0}, {"nx", 100}});
    out.push_back({"twist-inequality", {{"p", 2}, {"n", 3}, {"r", 2.0}}, twist_inequality});
    out.push_back({"heisenberg-ring", {{"p", 4}, {"a", 1.0}, {"b", std::exp(1.0)}},
                   [](Ctx& c) { ring(c, GroupSpec::heisenberg()); }});
    out.push_back({"euclidean-ring", {{"n", 3}, {"p", 2}, {"a", 1.0}, {"b", 2.0}},
                   [](Ctx& c) { ring(c, GroupSpec::euclidean(c.iparam("n"))); }});
    out.push_back({"heisenberg-flow", {{"theta", 0.0}, {"alpha", pi / 4}, {"s1", 2.0}},
                   heisenberg_flow});
    out.push_back({"heisenberg-twist", {{"p", 2}, {"b", 1 + pi / 4}}, heisenberg_twist});
    out.push_back({"carnot-constants", {}, carnot_constants});
}

}  // namespace pmod::scenario::detail
