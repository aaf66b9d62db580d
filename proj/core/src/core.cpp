#include "pmod/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>

#include <boost/math/quadrature/gauss.hpp>

#include "pmod/errors.hpp"

namespace pmod {

Patch Patch::rectangle(double x0, double x1, double y0, double y1) {
    Patch p;
    p.params = {{x0, x1}, {y0, y1}};
    p.map = [](std::span<const double> u) { return Vec(u.begin(), u.end()); };
    p.weight = [](std::span<const double>) { return 1.0; };
    p.dim = 2;
    return p;
}

Patch Patch::annulus(double r0, double r1) {
    if (!(r0 > 0.0 && r1 > r0)) throw InvalidParameter("annulus needs 0 < r0 < r1");
    Patch p;
    p.params = {{r0, r1}, {0.0, 2.0 * std::numbers::pi}};
    p.map = [](std::span<const double> u) {
        return Vec{u[0] * std::cos(u[1]), u[0] * std::sin(u[1])};
    };
    p.weight = [](std::span<const double> u) { return u[0]; };
    p.dim = 2;
    return p;
}

double DensityField::operator()(std::span<const double> x) const { return eval(x); }

DensityField DensityField::closed_form(ScalarFn fn, Patch support, std::string label) {
    DensityField d;
    d.dim = support.dim;
    d.eval = std::move(fn);
    d.support = std::move(support);
    d.label = std::move(label);
    return d;
}

DensityField DensityField::from_grid(std::vector<double> values, int nx, int ny, double x0,
                                     double y0, double h, std::string label) {
    if (static_cast<std::size_t>(nx) * ny != values.size())
        throw InvalidParameter("from_grid: value count does not match grid");
    auto data = std::make_shared<std::vector<double>>(std::move(values));
    auto fn = [data, nx, ny, x0, y0, h](std::span<const double> x) {
        const int i = static_cast<int>(std::floor((x[0] - x0) / h));
        const int j = static_cast<int>(std::floor((x[1] - y0) / h));
        if (i < 0 || j < 0 || i >= nx || j >= ny) return 0.0;
        return (*data)[static_cast<std::size_t>(j) * nx + i];
    };
    return closed_form(fn, Patch::rectangle(x0, x0 + nx * h, y0, y0 + ny * h), std::move(label));
}

DensityField DensityField::scaled(double c) const {
    DensityField d = *this;
    auto inner = eval;
    d.eval = [inner, c](std::span<const double> x) { return c * inner(x); };
    return d;
}

const char* to_string(Method m) {
    switch (m) {
        case Method::closed_form: return "closed_form";
        case Method::quadrature: return "quadrature";
        case Method::oracle: return "oracle";
    }
    return "?";
}

double energy(const DensityField& rho, double p, double tol) {
    if (!(p > 1.0)) throw InvalidParameter("energy: p must exceed 1");
    const Patch& s = rho.support;
    auto integrand = [&](std::span<const double> u) {
        const Vec x = s.map(u);
        const double r = rho.eval(x);
        if (r < 0.0) throw InvalidDensity("energy: density is negative");
        if (r == 0.0) return 0.0;
        return std::pow(r, p) * s.weight(u);
    };
    try {
        return numerics::integrate_nd(integrand, s.params, tol).value;
    } catch (const NonConvergence& e) {
        throw DivergentEnergy("energy: quadrature did not converge, energy may be infinite",
                              e.partial);
    } catch (const DomainError& e) {
        throw DivergentEnergy(std::string("energy: ") + e.what(),
                              std::numeric_limits<double>::infinity());
    }
}

Polyline::Polyline(std::vector<Vec> v) : vertices(std::move(v)) {
    if (vertices.size() < 2) throw InvalidCurve("polyline needs at least two vertices");
    const std::size_t d = vertices[0].size();
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        if (vertices[i].size() != d) throw InvalidCurve("polyline vertices differ in dimension");
        if (i > 0 && vertices[i] == vertices[i - 1])
            throw InvalidCurve("polyline has repeated consecutive vertices");
    }
}

namespace {

double dist(const Vec& a, const Vec& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
    return std::sqrt(s);
}

double norm(const Vec& a) {
    double s = 0.0;
    for (double v : a) s += v * v;
    return std::sqrt(s);
}

// Composite 8-point Gauss-Legendre on one segment, halving until stable.
double segment_integral(const ScalarFn& f, const Vec& a, const Vec& b, double rel_tol) {
    using GL = boost::math::quadrature::gauss<double, 8>;
    const double L = dist(a, b);
    Vec x(a.size());
    auto g = [&](double s) {
        for (std::size_t i = 0; i < a.size(); ++i) x[i] = a[i] + (b[i] - a[i]) * (s / L);
        return f(x);
    };
    auto composite = [&](int panels) {
        double sum = 0.0;
        const double w = L / panels;
        for (int k = 0; k < panels; ++k) sum += GL::integrate(g, k * w, (k + 1) * w);
        return sum;
    };
    double prev = composite(1);
    for (int panels = 2; panels <= (1 << 18); panels *= 2) {
        const double cur = composite(panels);
        const double diff = std::abs(cur - prev);
        if (diff <= rel_tol * std::abs(cur) || diff <= 1e-15 * L) return cur;
        prev = cur;
    }
    throw NonConvergence("curve_integral: segment refinement did not converge", prev, 0.0);
}

double curve_integral_fn(const ScalarFn& f, const Polyline& c, double rel_tol) {
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < c.vertices.size(); ++i)
        total += segment_integral(f, c.vertices[i], c.vertices[i + 1], rel_tol);
    return total;
}

double curve_integral_fn(const ScalarFn& f, const ParametricCurve& c, double tol) {
    if (!c.point || !(c.t1 > c.t0)) throw InvalidCurve("parametric curve is empty");
    const double h = (c.t1 - c.t0) * 1e-3;
    auto speed = [&](double t) {
        if (c.velocity) return norm(c.velocity(t));
        Vec v(c.point(t).size());
        for (std::size_t i = 0; i < v.size(); ++i) {
            v[i] = numerics::derivative_fd([&](double s) { return c.point(s)[i]; }, t, h);
        }
        return norm(v);
    };
    return numerics::integrate_1d([&](double t) { return f(c.point(t)) * speed(t); }, c.t0,
                                  c.t1, tol)
        .value;
}

double curve_integral_fn(const ScalarFn& f, const Curve& c, double tol) {
    return std::visit([&](const auto& cc) { return curve_integral_fn(f, cc, tol); }, c);
}

}  // namespace

double Polyline::length() const {
    double L = 0.0;
    for (std::size_t i = 0; i + 1 < vertices.size(); ++i) L += dist(vertices[i], vertices[i + 1]);
    return L;
}

Polyline Polyline::concat(const Polyline& other) const {
    std::vector<Vec> v = vertices;
    auto it = other.vertices.begin();
    if (v.back() == *it) ++it;
    v.insert(v.end(), it, other.vertices.end());
    return Polyline(std::move(v));
}

double curve_integral(const DensityField& rho, const Polyline& curve, double rel_tol) {
    return curve_integral_fn(rho.eval, curve, rel_tol);
}

double curve_integral(const DensityField& rho, const ParametricCurve& curve, double tol) {
    return curve_integral_fn(rho.eval, curve, tol);
}

double curve_integral(const DensityField& rho, const Curve& curve, double tol) {
    return curve_integral_fn(rho.eval, curve, tol);
}

namespace {

std::vector<double> sample_params(const CurveFamilySampler& fam, int n) {
    if (n < 1) throw InvalidParameter("need at least one sample");
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i) out[i] = fam.lo + (i + 0.5) * (fam.hi - fam.lo) / n;
    return out;
}

}  // namespace

AdmissibilityReport check_admissible(const DensityField& rho, const CurveFamilySampler& family,
                                     int n_samples, double tol) {
    AdmissibilityReport rep;
    rep.params = sample_params(family, n_samples);
    rep.min_integral = std::numeric_limits<double>::infinity();
    for (double s : rep.params) {
        const double v = curve_integral(rho, family.sample(s));
        rep.integrals.push_back(v);
        if (v < rep.min_integral) {
            rep.min_integral = v;
            rep.argmin = s;
        }
        if (v < 1.0 - tol) rep.violating.push_back(s);
    }
    rep.admissible = rep.violating.empty();
    return rep;
}

ExtremalityReport check_extremality(const DensityField& rho0, const CurveFamilySampler& family,
                                    const std::vector<Field>& perturbations, double p,
                                    int n_samples, double tol) {
    ExtremalityReport rep;
    const auto params = sample_params(family, n_samples);
    const Patch& s = rho0.support;
    for (const auto& g : perturbations) {
        PerturbationResult r;
        r.label = g.label;
        r.min_curve_integral = std::numeric_limits<double>::infinity();
        for (double t : params)
            r.min_curve_integral =
                std::min(r.min_curve_integral, curve_integral_fn(g.eval, family.sample(t), 1e-10));
        r.applicable = r.min_curve_integral >= -tol;
        auto integrand = [&](std::span<const double> u) {
            const Vec x = s.map(u);
            const double r0 = rho0.eval(x);
            return g.eval(x) * std::pow(r0, p - 1.0) * s.weight(u);
        };
        r.pairing = numerics::integrate_nd(integrand, s.params, 1e-10).value;
        r.passed = !r.applicable || r.pairing >= -tol;
        if (!r.passed) rep.extremal = false;
        rep.results.push_back(std::move(r));
    }
    return rep;
}

}  // namespace pmod
