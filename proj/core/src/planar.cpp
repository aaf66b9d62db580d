#include "pmod/planar.hpp"

#include <cmath>
#include <numbers>

#include "pmod/errors.hpp"
#include "pmod/numerics.hpp"

namespace pmod::planar {

namespace {

constexpr double pi = std::numbers::pi;

double get(const std::map<std::string, double>& m, const std::string& k, double def) {
    auto it = m.find(k);
    return it == m.end() ? def : it->second;
}

}  // namespace

Wirtinger wirtinger(const PlanarMap& f, cplx z) {
    const double h = 1e-3 * std::max(1.0, std::abs(z));
    auto fx = [&](double s) { return f.f(cplx(s, z.imag())); };
    auto fy = [&](double s) { return f.f(cplx(z.real(), s)); };
    // fourth order central differences of the complex components
    auto d4 = [h](auto&& g, double s) {
        return (-g(s + 2 * h) + 8.0 * g(s + h) - 8.0 * g(s - h) + g(s - 2 * h)) / (12.0 * h);
    };
    const cplx dx = d4(fx, z.real());
    const cplx dy = d4(fy, z.imag());
    const double a = dx.real(), c = dx.imag();
    const double b = dy.real(), d = dy.imag();
    return {cplx((a + d) / 2, (c - b) / 2), cplx((a - d) / 2, (c + b) / 2)};
}

cplx beltrami(const PlanarMap& f, cplx z) {
    if (f.mu) return f.mu(z);
    const auto w = wirtinger(f, z);
    if (std::abs(w.fz) == 0.0) throw DegenerateError("beltrami: f_z vanishes");
    return w.fzbar / w.fz;
}

double jacobian(const PlanarMap& f, cplx z) {
    const auto w = wirtinger(f, z);
    return std::norm(w.fz) - std::norm(w.fzbar);
}

double directional_dilatation(cplx mu, double alpha) {
    const double m2 = std::norm(mu);
    if (m2 >= 1.0) throw OrientationError("directional_dilatation: |mu| >= 1");
    if (1.0 - m2 < 1e-12) throw DegenerateError("directional_dilatation: 1-|mu|^2 below 1e-12");
    return std::norm(1.0 + std::polar(1.0, -2.0 * alpha) * mu) / (1.0 - m2);
}

double max_dilatation(cplx mu) {
    const double m = std::abs(mu);
    if (m >= 1.0) throw OrientationError("max_dilatation: |mu| >= 1");
    return (1.0 + m) / (1.0 - m);
}

double rodin2d_module(const PlanarMap& f, double b, double tol) {
    if (!(b > 0.0)) throw InvalidParameter("rodin2d_module: b must be positive");
    auto ell = [&](double x) {
        auto integrand = [&](double t) {
            const auto w = wirtinger(f, cplx(x, t));
            const double J = std::norm(w.fz) - std::norm(w.fzbar);
            if (!(J > 0.0)) throw OrientationError("rodin2d_module: J_f must be positive");
            return std::norm(w.fz - w.fzbar) / J;
        };
        return numerics::integrate_1d(integrand, 0.0, b, tol * 1e-2).value;
    };
    return numerics::integrate_1d([&](double x) { return 1.0 / ell(x); }, 0.0, 1.0, tol).value;
}

namespace {

double d_theta(const PlanarMap& f, double r, double th, double shift) {
    return directional_dilatation(beltrami(f, std::polar(r, th)), th + shift);
}

void check_ring(double b) {
    if (!(b > 1.0)) throw InvalidParameter("ring needs b > 1");
}

}  // namespace

double annulus_radial_image_module(const PlanarMap& f, double b, double tol) {
    check_ring(b);
    auto inner = [&](double th) {
        return numerics::integrate_1d([&](double r) { return d_theta(f, r, th, 0.0) / r; }, 1.0, b,
                                      tol * 1e-2)
            .value;
    };
    return numerics::integrate_1d([&](double th) { return 1.0 / inner(th); }, 0.0, 2 * pi, tol)
        .value;
}

double annulus_circle_image_module(const PlanarMap& f, double b, double tol) {
    check_ring(b);
    auto inner = [&](double r) {
        return numerics::integrate_1d([&](double th) { return d_theta(f, r, th, pi / 2); }, 0.0,
                                      2 * pi, tol * 1e-2)
            .value;
    };
    return numerics::integrate_1d([&](double r) { return 1.0 / (inner(r) * r); }, 1.0, b, tol)
        .value;
}

RingBounds ring_module_bounds(const PlanarMap& f, double b, double tol) {
    RingBounds rb;
    rb.lower = annulus_circle_image_module(f, b, tol);
    rb.upper = 1.0 / annulus_radial_image_module(f, b, tol);
    const double I =
        numerics::integrate_2d([&](double th, double r) { return d_theta(f, r, th, 0.0) / r; },
                               0.0, 2 * pi, 1.0, b, tol)
            .value;
    rb.cs_upper = I / (4 * pi * pi);
    return rb;
}

double log_spiral_image_module(const PlanarMap& f, double b, double beta, double tol) {
    check_ring(b);
    const double ab = std::atan(beta);
    auto inner = [&](double th) {
        auto g = [&](double r) {
            const double psi = th - beta * std::log(r);
            // direction of the spiral r -> r e^{i psi(r)} is psi - arctan(beta)
            const double D = directional_dilatation(beltrami(f, std::polar(r, psi)), psi - ab);
            return (1.0 + beta * beta) * D / r;
        };
        return numerics::integrate_1d(g, 1.0, b, tol * 1e-2).value;
    };
    return numerics::integrate_1d([&](double th) { return 1.0 / inner(th); }, 0.0, 2 * pi, tol)
        .value;
}

double log_spiral_image_module_rect(const PlanarMap& f, double b, double beta, double tol) {
    check_ring(b);
    PlanarMap g;
    g.name = f.name + " on polar chart";
    g.f = [f, beta](cplx w) {
        const double r = 1.0 + w.imag();
        return f.f(std::polar(r, -2 * pi * w.real() - beta * std::log(r)));
    };
    return rodin2d_module(g, b - 1.0, tol);
}

ParallelogramBounds parallelogram_bounds(double theta, double h) {
    if (!(theta > 0.0 && theta <= pi / 2)) throw InvalidParameter("theta must lie in (0, pi/2]");
    if (!(h > 0.0)) throw InvalidParameter("h must be positive");
    ParallelogramBounds pb;
    const double s = std::sin(theta), c = std::cos(theta);
    pb.slant_module = s / h;
    pb.product = s * s;
    pb.sigma_lower = h * s;
    pb.sigma_bound = h * c * c / s;
    return pb;
}

double parallelogram_rate(double eps, double b) {
    if (!(eps >= 0.0) || !(b > 0.0)) throw InvalidParameter("need eps >= 0 and b > 0");
    return eps * eps / b;
}

double shear_max_dilatation(double theta) {
    if (!(theta > 0.0 && theta <= pi / 2)) throw InvalidParameter("theta must lie in (0, pi/2]");
    const double ct = std::cos(theta) / std::sin(theta);
    return 1.0 + 0.5 * ct * ct + 0.5 * ct * std::sqrt(4.0 + ct * ct);
}

std::vector<std::string> map_names() {
    return {"identity",     "scale",  "square",      "shear",
            "log-spiral",   "radial-stretch", "angular-shear", "radial-perturbation",
            "affine"};
}

PlanarMap make_map(const std::string& name, const std::map<std::string, double>& P) {
    PlanarMap m;
    m.name = name;
    if (name == "identity") {
        m.f = [](cplx z) { return z; };
        m.inverse = m.f;
        m.mu = [](cplx) { return cplx(0.0); };
    } else if (name == "scale") {
        const double c = get(P, "c", 2.0);
        m.f = [c](cplx z) { return c * z; };
        m.inverse = [c](cplx w) { return w / c; };
        m.mu = [](cplx) { return cplx(0.0); };
    } else if (name == "square") {
        // (z + s)^2, conformal away from -s
        const double s = get(P, "shift", 1.0);
        m.f = [s](cplx z) { return (z + s) * (z + s); };
        m.inverse = [s](cplx w) { return std::sqrt(w) - s; };
        m.mu = [](cplx) { return cplx(0.0); };
    } else if (name == "shear") {
        const double theta = get(P, "theta", pi / 3);
        const double ct = std::cos(theta) / std::sin(theta);
        m.f = [ct](cplx z) { return cplx(z.real() + ct * z.imag(), z.imag()); };
        m.inverse = [ct](cplx w) { return cplx(w.real() - ct * w.imag(), w.imag()); };
    } else if (name == "log-spiral") {
        const double beta = get(P, "beta", 1.0);
        m.f = [beta](cplx z) { return z * std::polar(1.0, beta * std::log(std::abs(z))); };
        m.inverse = [beta](cplx w) { return w * std::polar(1.0, -beta * std::log(std::abs(w))); };
    } else if (name == "radial-stretch") {
        const double k = get(P, "kappa", 2.0);
        m.f = [k](cplx z) { return std::polar(std::pow(std::abs(z), k), std::arg(z)); };
        m.inverse = [k](cplx w) { return std::polar(std::pow(std::abs(w), 1.0 / k), std::arg(w)); };
    } else if (name == "angular-shear") {
        const double k = get(P, "k", 1.0);
        m.f = [k](cplx z) { return z * std::polar(1.0, k * (std::abs(z) - 1.0)); };
        m.inverse = [k](cplx w) { return w * std::polar(1.0, -k * (std::abs(w) - 1.0)); };
    } else if (name == "radial-perturbation") {
        const double e = get(P, "eps", 0.3);
        if (!(std::abs(e) < 1.0)) throw InvalidParameter("radial-perturbation needs |eps| < 1");
        m.f = [e](cplx z) {
            const double th = std::arg(z);
            return std::polar(std::pow(std::abs(z), 1.0 + e * std::cos(th)), th);
        };
        m.inverse = [e](cplx w) {
            const double th = std::arg(w);
            return std::polar(std::pow(std::abs(w), 1.0 / (1.0 + e * std::cos(th))), th);
        };
    } else if (name == "affine") {
        const double k = get(P, "k", 0.3);
        if (!(std::abs(k) < 1.0)) throw InvalidParameter("affine needs |k| < 1");
        m.f = [k](cplx z) { return z + k * std::conj(z); };
        m.inverse = [k](cplx w) { return (w - k * std::conj(w)) / (1.0 - k * k); };
        m.mu = [k](cplx) { return cplx(k); };
    } else {
        throw UnknownScenario("unknown planar map: " + name);
    }
    return m;
}

}  // namespace pmod::planar
