#include "pmod/carnot.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>

#include "pmod/errors.hpp"
#include "pmod/numerics.hpp"
#include "pmod/rodin.hpp"

namespace pmod::carnot {

namespace {

constexpr double pi = std::numbers::pi;

void require_flow(const GroupSpec& G) {
    if (G.kind == GroupKind::htype)
        throw InvalidParameter("frames, flows and sphere charts are only available for "
                               "euclidean and heisenberg groups");
}

double sq(double x) { return x * x; }

}  // namespace

std::string GroupSpec::name() const {
    switch (kind) {
        case GroupKind::euclidean: return "euclidean:" + std::to_string(k);
        case GroupKind::heisenberg: return "heisenberg";
        case GroupKind::htype: return "htype:" + std::to_string(k) + "," + std::to_string(l);
    }
    return "?";
}

GroupSpec GroupSpec::euclidean(int n) {
    if (n < 1) throw InvalidParameter("euclidean group needs n >= 1");
    return {GroupKind::euclidean, n, 0};
}

GroupSpec GroupSpec::heisenberg() { return {GroupKind::heisenberg, 2, 1}; }

GroupSpec GroupSpec::htype(int k, int l) {
    if (k < 1 || l < 1) throw InvalidParameter("htype needs k, l >= 1");
    return {GroupKind::htype, k, l};
}

GroupSpec GroupSpec::parse(const std::string& s) {
    if (s == "heisenberg") return heisenberg();
    if (s.rfind("euclidean:", 0) == 0) return euclidean(std::stoi(s.substr(10)));
    if (s.rfind("htype:", 0) == 0) {
        const auto rest = s.substr(6);
        const auto comma = rest.find(',');
        if (comma == std::string::npos) throw InvalidParameter("htype spec is htype:k,l");
        return htype(std::stoi(rest.substr(0, comma)), std::stoi(rest.substr(comma + 1)));
    }
    throw InvalidParameter("unknown group: " + s);
}

double homogeneous_norm(const GroupSpec& G, std::span<const double> g) {
    switch (G.kind) {
        case GroupKind::euclidean: {
            double s = 0.0;
            for (double v : g) s += v * v;
            return std::sqrt(s);
        }
        case GroupKind::heisenberg:
            return std::pow(sq(g[0] * g[0] + g[1] * g[1]) + g[2] * g[2], 0.25);
        case GroupKind::htype: {
            double u2 = 0.0, z2 = 0.0;
            for (int i = 0; i < G.k; ++i) u2 += g[i] * g[i];
            for (int i = 0; i < G.l; ++i) z2 += g[G.k + i] * g[G.k + i];
            return std::pow(u2 * u2 + 16.0 * z2, 0.25);
        }
    }
    return 0.0;
}

Vec dilate(const GroupSpec& G, std::span<const double> g, double s) {
    Vec out(g.begin(), g.end());
    for (int i = 0; i < static_cast<int>(out.size()); ++i) out[i] *= (i < G.k) ? s : s * s;
    return out;
}

Vec horizontal_gradient(const GroupSpec& G, const GroupFn& F, std::span<const double> g) {
    require_flow(G);
    Vec x(g.begin(), g.end());
    Vec d(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double h = 1e-3 * std::max(1.0, std::abs(x[i]));
        const double xi = x[i];
        d[i] = numerics::derivative_fd(
            [&](double v) {
                x[i] = v;
                const double r = F(x);
                x[i] = xi;
                return r;
            },
            xi, h);
    }
    if (G.kind == GroupKind::euclidean) return d;
    return {d[0] + 2.0 * x[1] * d[2], d[1] - 2.0 * x[0] * d[2]};
}

double horizontal_gradient_norm(const GroupSpec& G, const GroupFn& F, std::span<const double> g) {
    const Vec v = horizontal_gradient(G, F, g);
    double s = 0.0;
    for (double c : v) s += c * c;
    return std::sqrt(s);
}

Vec sphere_embed(const GroupSpec& G, const SpherePoint& xi) {
    require_flow(G);
    if (G.kind == GroupKind::euclidean) return rodin::sphere_point(G.k, xi.coords);
    const double th = xi.coords[0], al = xi.coords[1];
    const double rc = std::sqrt(std::cos(al));
    return {rc * std::cos(th), rc * std::sin(th), std::sin(al)};
}

double lambda(const GroupSpec& G, const SpherePoint& xi) {
    require_flow(G);
    if (G.kind == GroupKind::euclidean) return 1.0;
    return std::sqrt(std::cos(xi.coords[1]));
}

Vec flow_point(const GroupSpec& G, const SpherePoint& xi, double s) {
    require_flow(G);
    if (G.kind == GroupKind::euclidean) {
        Vec x = rodin::sphere_point(G.k, xi.coords);
        for (double& v : x) v *= s;
        return x;
    }
    const double th = xi.coords[0], al = xi.coords[1];
    const double rc = s * std::sqrt(std::cos(al));
    const double ang = th - std::tan(al) * std::log(s);
    return {rc * std::cos(ang), rc * std::sin(ang), s * s * std::sin(al)};
}

FlowTrajectory radial_flow(const GroupSpec& G, const SpherePoint& xi, double s1, double tol) {
    require_flow(G);
    if (!(s1 > 0.0)) throw InvalidParameter("radial_flow: s1 must be positive");
    auto rhs = [&G](double s, std::span<const double> y, std::span<double> dy) {
        const double N = homogeneous_norm(G, y);
        if (G.kind == GroupKind::euclidean) {
            // grad_0 N = x/|x|, unit length
            for (std::size_t i = 0; i < y.size(); ++i) dy[i] = (N / s) * y[i] / N;
            return;
        }
        const double rho2 = y[0] * y[0] + y[1] * y[1];
        if (rho2 < 1e-300) throw DomainError("radial_flow: reached the characteristic set");
        const double N3 = N * N * N;
        const double a1 = (rho2 * y[0] + y[2] * y[1]) / N3;  // X1 N
        const double a2 = (rho2 * y[1] - y[2] * y[0]) / N3;  // X2 N
        const double a2sum = a1 * a1 + a2 * a2;
        const double c1 = (N / s) * a1 / a2sum;
        const double c2 = (N / s) * a2 / a2sum;
        dy[0] = c1;
        dy[1] = c2;
        dy[2] = 2.0 * y[1] * c1 - 2.0 * y[0] * c2;
    };
    FlowTrajectory tr;
    const Vec y0 = sphere_embed(G, xi);
    tr.s.push_back(1.0);
    tr.points.push_back(y0);
    auto obs = [&tr](double s, std::span<const double> y) {
        tr.s.push_back(s);
        tr.points.emplace_back(y.begin(), y.end());
    };
    auto res = numerics::solve_ode(rhs, y0, 1.0, s1, tol, tol, obs);
    tr.end = res.y;
    tr.steps = res.steps;
    return tr;
}

double flow_speed(const GroupSpec& G, const SpherePoint& xi, double s) {
    require_flow(G);
    const double h = 1e-3 * s;
    const std::size_t m = G.kind == GroupKind::euclidean ? G.k : 2;
    double sum = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double d =
            numerics::derivative_fd([&](double v) { return flow_point(G, xi, v)[i]; }, s, h);
        sum += d * d;
    }
    return std::sqrt(sum);
}

double sphere_integral(const GroupSpec& G, const std::function<double(const SpherePoint&)>& f,
                       double tol) {
    require_flow(G);
    if (G.kind == GroupKind::heisenberg) {
        return numerics::integrate_2d(
                   [&](double th, double al) { return f(SpherePoint{{th, al}}); }, 0.0, 2 * pi,
                   -pi / 2, pi / 2, tol)
            .value;
    }
    const int n = G.k;
    if (n == 1) return f(SpherePoint{{0.0}}) + f(SpherePoint{{pi}});
    numerics::Box box{{0.0, 2 * pi}};
    for (int i = 1; i < n - 1; ++i) box.push_back({0.0, pi});
    return numerics::integrate_nd(
               [&](std::span<const double> a) {
                   return f(SpherePoint{Vec(a.begin(), a.end())}) * rodin::sphere_weight(n, a);
               },
               box, tol)
        .value;
}

double sphere_area(const GroupSpec& G) {
    return sphere_integral(G, [&G](const SpherePoint& xi) { return lambda(G, xi); });
}

namespace {

double htype_quadrature(int k, int l, double p, double tol) {
    auto area = [](int m) { return 2.0 * std::pow(pi, 0.5 * m) / std::tgamma(0.5 * m); };
    const double Q = k + 2.0 * l;
    // Q * int_{N<=1} (|u|/N)^p dg in (|u|, |z|) polar coordinates
    auto outer = [&](double ru) {
        const double zmax = std::sqrt(std::max(0.0, 1.0 - std::pow(ru, 4))) / 4.0;
        if (zmax <= 0.0) return 0.0;
        auto inner = [&](double rz) {
            const double N = std::pow(std::pow(ru, 4) + 16.0 * rz * rz, 0.25);
            if (N == 0.0) return 0.0;
            return std::pow(ru / N, p) * std::pow(ru, k - 1) * std::pow(rz, l - 1);
        };
        return numerics::integrate_1d(inner, 0.0, zmax, tol / 10).value;
    };
    const double I = numerics::integrate_1d(outer, 0.0, 1.0, tol).value;
    return Q * area(k) * area(l) * I;
}

}  // namespace

double c_s1_quadrature(const GroupSpec& G, double p, double tol) {
    if (!(p > 0.0)) throw InvalidParameter("C_S1 needs p > 0");
    if (G.kind == GroupKind::htype) return htype_quadrature(G.k, G.l, p, tol);
    return sphere_integral(
        G, [&](const SpherePoint& xi) { return std::pow(lambda(G, xi), p); }, tol);
}

double c_s1_closed_form(const GroupSpec& G, double p) {
    using numerics::gamma_fn;
    switch (G.kind) {
        case GroupKind::euclidean: return rodin::sphere_area(G.k);
        case GroupKind::heisenberg:
            return 2 * pi * std::sqrt(pi) * gamma_fn(p / 4 + 0.5) / gamma_fn(p / 4 + 1);
        case GroupKind::htype: {
            const double k = G.k, l = G.l;
            return 2 * std::pow(pi, (k + l) / 2) * gamma_fn((p + k) / 4) /
                   (std::pow(4.0, l) * gamma_fn(k / 2) * gamma_fn((k + 2 * l + p) / 4));
        }
    }
    return 0.0;
}

double htype_display_constant(int k, int l, double p) {
    using numerics::gamma_fn;
    return 2 * std::pow(pi, k + 0.5 * l) * gamma_fn((k + p) / 4) /
           (std::pow(4.0, l) * gamma_fn(0.5 * k) * gamma_fn((k + 2.0 * l + p) / 4));
}

namespace {

void check_ring(double p, double a, double b) {
    if (!(p > 1.0)) throw InvalidParameter("exponent must exceed 1");
    if (!(a > 0.0 && b > a)) throw InvalidParameter("ring needs 0 < a < b");
}

}  // namespace

RingConstants ring_constants(const GroupSpec& G, double p, double a, double b, double tol) {
    check_ring(p, a, b);
    RingConstants rc;
    rc.p = p;
    rc.q = p / (p - 1.0);
    rc.a = a;
    rc.b = b;
    rc.Q = G.Q();
    const double Q = rc.Q, q = rc.q;
    rc.C_ab = numerics::integrate_1d([&](double s) { return std::pow(s, (1 - Q) / (p - 1)); }, a,
                                     b, tol)
                  .value;
    rc.K_ab = numerics::integrate_1d([&](double s) { return std::pow(s, (1 - q) * (Q - 1)); }, a,
                                     b, tol)
                  .value;
    rc.C_S1 = c_s1_quadrature(G, p, tol);
    rc.K_S1 = c_s1_quadrature(G, q / (q - 1.0), tol);
    rc.tau_connecting = (p - Q) / (p - 1) - 1;
    rc.tau_separating = (q - 1) * (1 - Q);
    return rc;
}

ModuleEstimate module_connecting_ring(const GroupSpec& G, double p, double a, double b) {
    const auto rc = ring_constants(G, p, a, b);
    return {rc.C_S1 * std::pow(rc.C_ab, 1 - p), Method::quadrature, 0.0, p};
}

ModuleEstimate module_connecting_ring_closed(const GroupSpec& G, double p, double a, double b) {
    check_ring(p, a, b);
    const double Q = G.Q();
    const double C = c_s1_closed_form(G, p);
    double v;
    if (std::abs(p - Q) < 1e-12) {
        v = C * std::pow(std::log(b / a), 1 - Q);
    } else {
        const double e = (p - Q) / (p - 1);
        v = C * std::pow(std::abs(p - Q) / (p - 1), p - 1) *
            std::pow(std::abs(std::pow(b, e) - std::pow(a, e)), 1 - p);
    }
    return {v, Method::closed_form, 0.0, p};
}

ModuleEstimate module_separating_ring(const GroupSpec& G, double q, double a, double b) {
    check_ring(q, a, b);
    const double p = q / (q - 1);
    const auto rc = ring_constants(G, p, a, b);
    return {rc.K_ab * std::pow(rc.K_S1, 1 - q), Method::quadrature, 0.0, q};
}

Patch ring_patch(const GroupSpec& G, double a, double b) {
    require_flow(G);
    Patch P;
    P.dim = G.dim();
    P.params = {{a, b}};
    const int Q = G.Q();
    if (G.kind == GroupKind::heisenberg) {
        P.params.push_back({0.0, 2 * pi});
        P.params.push_back({-pi / 2, pi / 2});
        P.weight = [](std::span<const double> u) { return u[0] * u[0] * u[0]; };
    } else {
        const int n = G.k;
        P.params.push_back({0.0, 2 * pi});
        for (int i = 1; i < n - 1; ++i) P.params.push_back({0.0, pi});
        P.weight = [n, Q](std::span<const double> u) {
            return std::pow(u[0], Q - 1) * rodin::sphere_weight(n, u.subspan(1));
        };
    }
    P.map = [G](std::span<const double> u) {
        SpherePoint xi{Vec(u.begin() + 1, u.end())};
        return flow_point(G, xi, u[0]);
    };
    return P;
}

DensityField extremal_density_ring(const GroupSpec& G, double exponent, double a, double b,
                                   FamilyKind kind) {
    check_ring(exponent, a, b);
    const double Q = G.Q();
    const auto N = [G](std::span<const double> g) { return homogeneous_norm(G, g); };
    ScalarFn fn;
    if (kind == FamilyKind::connecting) {
        const double p = exponent;
        const auto rc = ring_constants(G, p, a, b);
        const double e = (p - Q) / (p - 1);  // tau + 1
        if (std::abs(p - Q) < 1e-12) {
            fn = [=](std::span<const double> g) {
                const double n = N(g);
                if (n < a || n > b) return 0.0;
                return horizontal_gradient_norm(
                           G, [&](std::span<const double> h) { return std::log(N(h)); }, g) /
                       rc.C_ab;
            };
        } else {
            fn = [=](std::span<const double> g) {
                const double n = N(g);
                if (n < a || n > b) return 0.0;
                return horizontal_gradient_norm(
                           G, [&](std::span<const double> h) { return std::pow(N(h), e); }, g) /
                       (std::abs(e) * rc.C_ab);
            };
        }
    } else {
        const double q = exponent;
        const double p = q / (q - 1);
        const auto rc = ring_constants(G, p, a, b);
        const double e = (q - 1) * (1 - Q) + 1;  // tau + 1
        if (std::abs(e) < 1e-12) {
            fn = [=](std::span<const double> g) {
                const double n = N(g);
                if (n < a || n > b) return 0.0;
                const double d = horizontal_gradient_norm(
                    G, [&](std::span<const double> h) { return std::log(N(h)); }, g);
                return std::pow(d, 1 / (q - 1)) / rc.K_S1;
            };
        } else {
            fn = [=](std::span<const double> g) {
                const double n = N(g);
                if (n < a || n > b) return 0.0;
                const double d = horizontal_gradient_norm(
                    G, [&](std::span<const double> h) { return std::pow(N(h), e); }, g);
                return std::pow(std::abs(e), 1 / (1 - q)) * std::pow(d, 1 / (q - 1)) / rc.K_S1;
            };
        }
    }
    return DensityField::closed_form(fn, ring_patch(G, a, b),
                                     kind == FamilyKind::connecting ? "rho0 connecting"
                                                                    : "rho0 separating");
}

CapacityReport capacity_check(const GroupSpec& G, double p, double a, double b, double tol) {
    check_ring(p, a, b);
    const double Q = G.Q();
    const double e = (p - Q) / (p - 1);
    const auto N = [G](std::span<const double> g) { return homogeneous_norm(G, g); };
    GroupFn u;
    if (std::abs(p - Q) < 1e-12) {
        u = [=](std::span<const double> g) { return std::log(N(g) / a) / std::log(b / a); };
    } else {
        const double ae = std::pow(a, e), be = std::pow(b, e);
        u = [=](std::span<const double> g) { return (std::pow(N(g), e) - ae) / (be - ae); };
    }
    const Patch P = ring_patch(G, a, b);
    auto integrand = [&](std::span<const double> w) {
        const Vec g = P.map(w);
        return std::pow(horizontal_gradient_norm(G, u, g), p) * P.weight(w);
    };
    CapacityReport rep;
    rep.cap_value = numerics::integrate_nd(integrand, P.params, tol).value;
    rep.module_value = module_connecting_ring(G, p, a, b).value;
    return rep;
}

double heisenberg_ring_volume_ambient(double a, double b) {
    // cylindrical coordinates: 2 pi rho d rho dt over a^4 <= rho^4 + t^2 <= b^4
    auto slab = [&](double rho) {
        const double r4 = std::pow(rho, 4);
        const double outer = std::sqrt(std::max(0.0, std::pow(b, 4) - r4));
        const double inner = std::sqrt(std::max(0.0, std::pow(a, 4) - r4));
        return 2 * pi * rho * 2.0 * (outer - inner);
    };
    // split at rho = a where the inner boundary ends
    return numerics::integrate_1d(slab, 0.0, a, 1e-12).value +
           numerics::integrate_1d(slab, a, b, 1e-12).value;
}

ModuleEstimate heisenberg_polar_rodin(const std::function<double(double, double)>& v,
                                      const std::function<double(double, double)>& J, double p,
                                      double b, double alpha_lo, double alpha_hi, double tol) {
    if (!(p > 1.0)) throw InvalidParameter("exponent must exceed 1");
    const double q = p / (p - 1);
    auto ell = [&](double al) {
        auto g = [&](double r) {
            const double W = J(r, al) * r * r * r;
            return std::pow(v(r, al) / W, q) * W;
        };
        try {
            return numerics::integrate_1d(g, 1.0, b, tol * 1e-2).value;
        } catch (const NonConvergence&) {
            return std::numeric_limits<double>::infinity();
        }
    };
    auto outer = [&](double al) {
        const double l = ell(al);
        return std::isfinite(l) ? std::pow(l, 1 - p) : 0.0;
    };
    const auto r = numerics::integrate_1d(outer, alpha_lo, alpha_hi, tol);
    return {2 * pi * r.value, Method::quadrature, 2 * pi * r.abs_error, p};
}

namespace twist {

double omega1(double alpha, double r) {
    const double I =
        numerics::integrate_1d([&](double s) { return std::tan(alpha + s - 1) / s; }, 1.0, r, 1e-14)
            .value;
    return 0.5 * (1 - r) - I;
}

double alpha_max(double b) { return pi / 2 - (b - 1); }

Vec curve(double theta, double alpha, double r) {
    const double be = alpha + r - 1;
    const double rc = r * std::sqrt(std::cos(be));
    const double ps = theta + omega1(alpha, r);
    return {rc * std::cos(ps), rc * std::sin(ps), r * r * std::sin(be)};
}

double speed(double alpha, double r) {
    const double c = std::cos(alpha + r - 1);
    if (!(c > 0.0)) return std::numeric_limits<double>::infinity();
    return 0.5 * std::sqrt((4 + r * r) / c);
}

namespace {

Vec curve_derivative(double theta, double alpha, double r) {
    const double h = 1e-3;
    Vec d(3);
    for (int i = 0; i < 3; ++i)
        d[i] = numerics::derivative_fd([&](double s) { return curve(theta, alpha, s)[i]; }, r, h);
    return d;
}

}  // namespace

double speed_fd(double theta, double alpha, double r) {
    const Vec d = curve_derivative(theta, alpha, r);
    return std::hypot(d[0], d[1]);
}

double horizontality_residual(double theta, double alpha, double r) {
    const Vec x = curve(theta, alpha, r);
    const Vec d = curve_derivative(theta, alpha, r);
    return d[2] - 2 * (d[0] * x[1] - d[1] * x[0]);
}

Vec locate(std::span<const double> y) {
    const double r = homogeneous_norm(GroupSpec::heisenberg(), y);
    const double be = std::asin(std::clamp(y[2] / (r * r), -1.0, 1.0));
    const double al = be - (r - 1);
    double th = std::atan2(y[1], y[0]) - omega1(al, r);
    th = std::fmod(th, 2 * pi);
    if (th < 0) th += 2 * pi;
    return {th, al, r};
}

double ell(double alpha, double p, double b) {
    const double q = p / (p - 1);
    if (alpha <= -pi / 2 || alpha >= alpha_max(b)) return std::numeric_limits<double>::infinity();
    return numerics::integrate_1d(
               [&](double r) {
                   const double W = r * r * r;
                   return std::pow(speed(alpha, r) / W, q) * W;
               },
               1.0, b, 1e-12)
        .value;
}

ModuleEstimate module(double p, double b) {
    if (!(b > 1.0 && b < 1 + pi / 2))
        throw DomainError("twist module needs 1 < b < 1 + pi/2");
    return heisenberg_polar_rodin([](double r, double al) { return speed(al, r); },
                                  [](double, double) { return 1.0; }, p, b, -pi / 2,
                                  alpha_max(b), 1e-8);
}

DensityField extremal_density(double p, double b) {
    if (!(b > 1.0 && b < 1 + pi / 2))
        throw DomainError("twist density needs 1 < b < 1 + pi/2");
    auto cache = std::make_shared<std::pair<double, double>>(std::nan(""), 0.0);
    auto fn = [p, b, cache](std::span<const double> y) {
        const Vec loc = locate(y);
        const double al = loc[1], r = loc[2];
        if (r < 1.0 || r > b) return 0.0;
        if (!(cache->first == al)) *cache = {al, ell(al, p, b)};
        const double l = cache->second;
        if (!std::isfinite(l)) return 0.0;
        return std::pow(speed(al, r) / (r * r * r), 1 / (p - 1)) / l;
    };
    Patch P;
    P.dim = 3;
    P.params = {{1.0, b}, {0.0, 2 * pi}, {-pi / 2, alpha_max(b)}};
    P.map = [](std::span<const double> u) { return curve(u[1], u[2], u[0]); };
    P.weight = [](std::span<const double> u) { return u[0] * u[0] * u[0]; };
    return DensityField::closed_form(fn, P, "rho0 twist");
}

ParametricCurve curve_of(double theta, double alpha, double b) {
    ParametricCurve c;
    c.t0 = 1.0;
    c.t1 = b;
    c.point = [theta, alpha](double r) { return curve(theta, alpha, r); };
    // horizontal components only, so |velocity| is the sub-Riemannian speed
    c.velocity = [theta, alpha](double r) {
        const Vec d = curve_derivative(theta, alpha, r);
        return Vec{d[0], d[1]};
    };
    return c;
}

}  // namespace twist

}  // namespace pmod::carnot
