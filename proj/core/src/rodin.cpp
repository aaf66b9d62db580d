#include "pmod/rodin.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Dense>

#include "pmod/errors.hpp"
#include "pmod/numerics.hpp"

namespace pmod::rodin {

namespace {

constexpr double pi = std::numbers::pi;

double vnorm(const Vec& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

double get(const std::map<std::string, double>& m, const std::string& k, double def) {
    auto it = m.find(k);
    return it == m.end() ? def : it->second;
}

Eigen::MatrixXd to_eigen(const std::vector<std::vector<double>>& J) {
    Eigen::MatrixXd M(J.size(), J.empty() ? 0 : J[0].size());
    for (std::size_t i = 0; i < J.size(); ++i)
        for (std::size_t j = 0; j < J[i].size(); ++j) M(i, j) = J[i][j];
    return M;
}

void check_p(double p) {
    if (!(p > 1.0)) throw InvalidParameter("exponent must exceed 1");
}

}  // namespace

CondenserMap CondenserMap::identity() {
    CondenserMap m;
    m.f = [](std::span<const double> y) { return Vec(y.begin(), y.end()); };
    m.inverse = m.f;
    m.jac = [](std::span<const double>) { return 1.0; };
    return m;
}

double jac_f(const CondenserMap& f, std::span<const double> y) {
    if (f.jac) return f.jac(y);
    return std::abs(to_eigen(numerics::jacobian_fd(f.f, y)).determinant());
}

double curve_speed(const Condenser& c, const CondenserMap& f, std::span<const double> x,
                   double t) {
    if (f.velocity) return vnorm(f.velocity(x, t));
    const double h = (c.b - c.a) * 1e-3;
    const Vec y0 = f.f(c.embed(x, t));
    Vec v(y0.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        v[i] = numerics::derivative_fd([&](double s) { return f.f(c.embed(x, s))[i]; }, t, h);
    }
    return vnorm(v);
}

double ell_connecting(const Condenser& c, const CondenserMap& f, double p,
                      std::span<const double> x, double tol) {
    check_p(p);
    const double q = p / (p - 1.0);
    auto integrand = [&](double t) {
        const Vec y = c.embed(x, t);
        const double I = c.jac_u(x, t) * jac_f(f, y);
        if (!(I > 0.0)) throw DomainError("ell_connecting: vanishing Jacobian");
        const double s = curve_speed(c, f, x, t);
        return std::pow(s / I, q) * I;
    };
    return numerics::integrate_1d(integrand, c.a, c.b, tol).value;
}

ModuleEstimate module_connecting(const Condenser& c, const CondenserMap& f, double p, double tol) {
    check_p(p);
    auto integrand = [&](std::span<const double> x) {
        const double l = ell_connecting(c, f, p, x, tol * 1e-2);
        return std::pow(l, 1.0 - p) * c.base.weight(x);
    };
    auto r = numerics::integrate_nd(integrand, c.base.params, tol);
    return {r.value, Method::quadrature, r.abs_error, p};
}

double extremal_density_connecting_at(const Condenser& c, const CondenserMap& f, double p,
                                      std::span<const double> x, double t) {
    const double l = ell_connecting(c, f, p, x);
    const Vec y = c.embed(x, t);
    const double I = c.jac_u(x, t) * jac_f(f, y);
    return std::pow(curve_speed(c, f, x, t) / I, 1.0 / (p - 1.0)) / l;
}

namespace {

Patch image_patch(const Condenser& c, const CondenserMap& f) {
    Patch s;
    s.params = c.base.params;
    s.params.push_back({c.a, c.b});
    s.dim = c.n;
    const std::size_t k = c.base.params.size();
    s.map = [c, f, k](std::span<const double> u) { return f.f(c.embed(u.first(k), u[k])); };
    s.weight = [c, f, k](std::span<const double> u) {
        const Vec y = c.embed(u.first(k), u[k]);
        return c.jac_u(u.first(k), u[k]) * jac_f(f, y) * c.base.weight(u.first(k));
    };
    return s;
}

}  // namespace

DensityField extremal_density_connecting(const Condenser& c, const CondenserMap& f, double p) {
    if (!c.locate || !f.inverse)
        throw InvalidParameter("extremal density needs an inverse map and a chart");
    const std::size_t k = c.base.params.size();
    auto fn = [c, f, p, k](std::span<const double> y) {
        const Vec xt = c.locate(f.inverse(y));
        const double t = xt[k];
        if (t < c.a || t > c.b) return 0.0;
        return extremal_density_connecting_at(c, f, p, std::span<const double>(xt).first(k), t);
    };
    return DensityField::closed_form(fn, image_patch(c, f), "rho0 connecting");
}

double grad_t_norm(const Condenser& c, const CondenserMap& f, std::span<const double> x,
                   double t) {
    const std::size_t k = x.size();
    if (f.inverse && c.locate) {
        // gradient of y -> t(f^-1(y)) by a fourth order stencil
        Vec y = f.f(c.embed(x, t));
        double s2 = 0.0;
        for (std::size_t i = 0; i < y.size(); ++i) {
            const double h = 1e-3 * std::max(1.0, std::abs(y[i]));
            const double yi = y[i];
            auto tt = [&](double v) {
                y[i] = v;
                const double r = c.locate(f.inverse(y))[k];
                y[i] = yi;
                return r;
            };
            const double d = numerics::derivative_fd(tt, yi, h);
            s2 += d * d;
        }
        return std::sqrt(s2);
    }
    Vec z(x.begin(), x.end());
    z.push_back(t);
    auto F = [&](std::span<const double> u) { return f.f(c.embed(u.first(k), u[k])); };
    const Eigen::MatrixXd J = to_eigen(numerics::jacobian_fd(F, z));
    if (J.rows() != J.cols()) throw DomainError("surface_jacobian: chart dimension mismatch");
    Eigen::FullPivLU<Eigen::MatrixXd> lu(J);
    if (!lu.isInvertible()) throw DomainError("surface_jacobian: singular chart");
    const Eigen::MatrixXd Ji = lu.inverse();
    return Ji.row(J.rows() - 1).norm();
}

double surface_jacobian(const Condenser& c, const CondenserMap& f, std::span<const double> x,
                        double t) {
    const Vec y = c.embed(x, t);
    return grad_t_norm(c, f, x, t) * c.jac_u(x, t) * jac_f(f, y);
}

double ell_separating(const Condenser& c, const CondenserMap& f, double q, double t, double tol) {
    check_p(q);
    const double p = q / (q - 1.0);
    auto integrand = [&](std::span<const double> x) {
        const Vec y = c.embed(x, t);
        const double I = c.jac_u(x, t) * jac_f(f, y);
        return std::pow(grad_t_norm(c, f, x, t), p) * I * c.base.weight(x);
    };
    return numerics::integrate_nd(integrand, c.base.params, tol).value;
}

ModuleEstimate module_separating(const Condenser& c, const CondenserMap& f, double q, double tol) {
    check_p(q);
    auto integrand = [&](double t) { return std::pow(ell_separating(c, f, q, t), 1.0 - q); };
    auto r = numerics::integrate_1d(integrand, c.a, c.b, tol);
    return {r.value, Method::quadrature, r.abs_error, q};
}

CurveFamilySampler connecting_family(const Condenser& c, const CondenserMap& f,
                                     std::vector<double> base_point, std::size_t vary) {
    CurveFamilySampler fam;
    fam.name = "f(Gamma_0)";
    fam.lo = c.base.params.at(vary).first;
    fam.hi = c.base.params.at(vary).second;
    fam.sample = [c, f, base_point, vary](double s) -> Curve {
        Vec x = base_point;
        x[vary] = s;
        ParametricCurve pc;
        pc.t0 = c.a;
        pc.t1 = c.b;
        pc.point = [c, f, x](double t) { return f.f(c.embed(x, t)); };
        if (f.velocity) pc.velocity = [f, x](double t) { return f.velocity(x, t); };
        return pc;
    };
    return fam;
}

Condenser cylinder(int n, double side, double a, double b) {
    if (n < 2) throw InvalidParameter("cylinder needs n >= 2");
    if (!(side > 0.0) || !(b > a)) throw InvalidParameter("cylinder needs side > 0 and b > a");
    Condenser c;
    c.n = n;
    c.a = a;
    c.b = b;
    c.base.params.assign(n - 1, {0.0, side});
    c.base.dim = n - 1;
    c.base.map = [](std::span<const double> u) { return Vec(u.begin(), u.end()); };
    c.base.weight = [](std::span<const double>) { return 1.0; };
    c.embed = [](std::span<const double> x, double t) {
        Vec y(x.begin(), x.end());
        y.push_back(t);
        return y;
    };
    c.jac_u = [](std::span<const double>, double) { return 1.0; };
    c.locate = [](std::span<const double> y) { return Vec(y.begin(), y.end()); };
    return c;
}

Vec sphere_point(int n, std::span<const double> th) {
    Vec x(n);
    // x1 = sin th1 prod_{j>1} sin thj, x_{k+1} = cos thk prod_{j>k} sin thj
    for (int k = 0; k < n; ++k) {
        double v = (k == 0) ? std::sin(th[0]) : std::cos(th[k - 1]);
        for (int j = std::max(k, 1); j < n - 1; ++j) v *= std::sin(th[j]);
        x[k] = v;
    }
    return x;
}

double sphere_weight(int n, std::span<const double> th) {
    double w = 1.0;
    for (int k = 1; k < n - 1; ++k) w *= std::pow(std::sin(th[k]), k);
    return w;
}

double sphere_area(int n) { return 2.0 * std::pow(pi, 0.5 * n) / std::tgamma(0.5 * n); }

Condenser spherical_ring(int n, double a, double b) {
    if (n < 2) throw InvalidParameter("spherical ring needs n >= 2");
    if (!(a > 0.0 && b > a)) throw InvalidParameter("spherical ring needs 0 < a < b");
    Condenser c;
    c.n = n;
    c.a = a;
    c.b = b;
    c.base.params.push_back({0.0, 2.0 * pi});
    for (int k = 1; k < n - 1; ++k) c.base.params.push_back({0.0, pi});
    c.base.dim = n - 1;
    c.base.map = [n](std::span<const double> u) { return sphere_point(n, u); };
    c.base.weight = [n](std::span<const double> u) { return sphere_weight(n, u); };
    c.embed = [n](std::span<const double> x, double t) {
        Vec y = sphere_point(n, x);
        for (double& v : y) v *= t;
        return y;
    };
    c.jac_u = [n](std::span<const double>, double t) { return std::pow(t, n - 1); };
    c.locate = [n](std::span<const double> y) {
        const double t = vnorm(Vec(y.begin(), y.end()));
        Vec out(n);
        double s2 = y[0] * y[0];
        double th1 = std::atan2(y[0], y[1]);
        if (th1 < 0) th1 += 2.0 * pi;
        out[0] = th1;
        s2 += y[1] * y[1];
        for (int k = 2; k < n; ++k) {
            out[k - 1] = std::atan2(std::sqrt(s2), y[k]);
            s2 += y[k] * y[k];
        }
        out[n - 1] = t;
        return out;
    };
    return c;
}

Condenser conical(double beta, double x0, double x1, double a, double b) {
    if (!(beta > 0.0 && a > 0.0 && b > a && x1 > x0))
        throw InvalidParameter("conical condenser needs beta > 0, 0 < a < b, x0 < x1");
    Condenser c;
    c.n = 2;
    c.a = a;
    c.b = b;
    c.base.params = {{x0, x1}};
    c.base.dim = 1;
    c.base.map = [](std::span<const double> u) { return Vec(u.begin(), u.end()); };
    c.base.weight = [](std::span<const double>) { return 1.0; };
    c.embed = [beta](std::span<const double> x, double t) { return Vec{beta * t * x[0], t}; };
    c.jac_u = [beta](std::span<const double>, double t) { return beta * t; };
    c.locate = [beta](std::span<const double> y) { return Vec{y[0] / (beta * y[1]), y[1]}; };
    return c;
}

CondenserMap shear(int n, double beta) {
    CondenserMap m;
    m.f = [n, beta](std::span<const double> y) {
        Vec z(y.begin(), y.end());
        z[0] += beta * y[n - 1];
        return z;
    };
    m.inverse = [n, beta](std::span<const double> y) {
        Vec z(y.begin(), y.end());
        z[0] -= beta * y[n - 1];
        return z;
    };
    m.jac = [](std::span<const double>) { return 1.0; };
    return m;
}

CondenserMap scaling(int n, double c) {
    if (!(c > 0.0)) throw InvalidParameter("scaling factor must be positive");
    CondenserMap m;
    m.f = [c](std::span<const double> y) {
        Vec z(y.begin(), y.end());
        for (double& v : z) v *= c;
        return z;
    };
    m.inverse = [c](std::span<const double> y) {
        Vec z(y.begin(), y.end());
        for (double& v : z) v /= c;
        return z;
    };
    m.jac = [n, c](std::span<const double>) { return std::pow(c, n); };
    return m;
}

CondenserMap sphere_rotation(int n, std::function<double(double)> angle,
                             std::function<double(double)> dangle) {
    (void)n;
    auto rotate = [angle](std::span<const double> y, double sign) {
        Vec z(y.begin(), y.end());
        const double phi = sign * angle(vnorm(z));
        const double c = std::cos(phi), s = std::sin(phi);
        z[0] = y[0] * c + y[1] * s;
        z[1] = y[1] * c - y[0] * s;
        return z;
    };
    CondenserMap m;
    m.f = [rotate](std::span<const double> y) { return rotate(y, 1.0); };
    m.inverse = [rotate](std::span<const double> y) { return rotate(y, -1.0); };
    m.jac = [](std::span<const double>) { return 1.0; };
    if (dangle) {
        m.velocity = [n, angle, dangle](std::span<const double> x, double t) {
            const Vec u = sphere_point(n, x);
            const double phi = angle(t), dphi = dangle(t);
            const double c = std::cos(phi), s = std::sin(phi);
            Vec v = u;
            v[0] = u[0] * c + u[1] * s + t * dphi * (-u[0] * s + u[1] * c);
            v[1] = u[1] * c - u[0] * s + t * dphi * (-u[1] * s - u[0] * c);
            return v;
        };
    }
    return m;
}

double twist_integral(int n, double p, double r) {
    const double q = p / (p - 1.0);
    return numerics::integrate_1d(
               [&](double t) {
                   return std::pow(1.0 + t * t, 0.5 * q) * std::pow(t, (n - 1) * (1.0 - q));
               },
               1.0, r, 1e-13)
        .value;
}

std::vector<std::string> scenario_names() {
    return {"cylinder",     "shear_cylinder",   "scaled_cylinder", "spherical_ring",
            "sphere_twist", "sphere_log_twist", "conical_cylinder"};
}

Scenario make_scenario(const std::string& name, const std::map<std::string, double>& P) {
    Scenario s;
    s.name = name;
    s.params = P;
    s.p = get(P, "p", 2.0);
    check_p(s.p);
    const int n = static_cast<int>(get(P, "n", 2));
    if (name == "cylinder" || name == "shear_cylinder" || name == "scaled_cylinder") {
        s.condenser = cylinder(n, get(P, "side", 1.0), get(P, "a", 0.0), get(P, "b", 1.0));
        if (name == "cylinder") s.map = CondenserMap::identity();
        else if (name == "shear_cylinder") s.map = shear(n, get(P, "beta", 1.0));
        else s.map = scaling(n, get(P, "c", 2.0));
    } else if (name == "spherical_ring" || name == "sphere_twist" || name == "sphere_log_twist") {
        const double r = get(P, "r", get(P, "b", 2.0));
        s.condenser = spherical_ring(n, get(P, "a", 1.0), r);
        if (name == "spherical_ring") {
            s.map = CondenserMap::identity();
        } else if (name == "sphere_twist") {
            s.map = sphere_rotation(n, [](double t) { return t - 1.0; }, [](double) { return 1.0; });
        } else {
            const double beta = get(P, "beta", 1.0);
            s.map = sphere_rotation(
                n, [beta](double t) { return beta * std::log(t); },
                [beta](double t) { return beta / t; });
        }
    } else if (name == "conical_cylinder") {
        s.condenser = conical(get(P, "beta", 0.2), get(P, "x0", -1.0), get(P, "x1", 1.0),
                              get(P, "a", 1.0), get(P, "b", 2.0));
        s.map = CondenserMap::identity();
    } else {
        throw UnknownScenario("unknown Euclidean scenario: " + name);
    }
    return s;
}

std::optional<double> closed_form_reference(const Scenario& s) {
    const auto& P = s.params;
    const double p = s.p;
    const int n = s.condenser.n;
    const double a = s.condenser.a, b = s.condenser.b;
    if (s.name == "cylinder" || s.name == "shear_cylinder" || s.name == "scaled_cylinder") {
        double H = std::pow(get(P, "side", 1.0), n - 1);
        double len = b - a;
        double stretch = 1.0;
        if (s.name == "shear_cylinder") {
            const double beta = get(P, "beta", 1.0);
            stretch = std::pow(1.0 + beta * beta, -0.5 * p);
        } else if (s.name == "scaled_cylinder") {
            const double c = get(P, "c", 2.0);
            H *= std::pow(c, n - 1);
            len *= c;
        }
        return stretch * H * std::pow(len, 1.0 - p);
    }
    if (s.name == "spherical_ring" || s.name == "sphere_log_twist" || s.name == "sphere_twist") {
        if (a != 1.0) return std::nullopt;
        const double r = b;
        const double w = sphere_area(n);
        if (s.name == "sphere_twist") {
            // the rotation speed is sqrt(1+t^2) only in the plane
            if (n != 2) return std::nullopt;
            return std::pow(twist_integral(n, p, r), 1.0 - p) * w;
        }
        double ring;
        if (std::abs(p - n) < 1e-12) {
            ring = w * std::pow(std::log(r), 1.0 - n);
        } else {
            const double e = (p - n) / (p - 1.0);
            ring = std::pow(std::abs(p - n) / (p - 1.0), p - 1.0) *
                   std::pow(std::abs(std::pow(r, e) - 1.0), 1.0 - p) * w;
        }
        if (s.name == "spherical_ring") return ring;
        if (n != 2) return std::nullopt;
        const double beta = get(P, "beta", 1.0);
        return std::pow(1.0 + beta * beta, -0.5 * p) * ring;
    }
    return std::nullopt;
}

std::optional<double> closed_form_separating(const Scenario& s, double q) {
    const int n = s.condenser.n;
    const double a = s.condenser.a, b = s.condenser.b;
    if (s.name == "cylinder" || s.name == "shear_cylinder" || s.name == "scaled_cylinder") {
        double H = std::pow(get(s.params, "side", 1.0), n - 1);
        double len = b - a;
        if (s.name == "scaled_cylinder") {
            const double c = get(s.params, "c", 2.0);
            H *= std::pow(c, n - 1);
            len *= c;
        }
        return len / std::pow(H, q - 1.0);
    }
    if (s.name == "spherical_ring") {
        const double w = sphere_area(n);
        const double e = (n - 1) * (1.0 - q);
        const double K = std::abs(e + 1.0) < 1e-12
                             ? std::log(b / a)
                             : (std::pow(b, e + 1.0) - std::pow(a, e + 1.0)) / (e + 1.0);
        return K * std::pow(w, 1.0 - q);
    }
    return std::nullopt;
}

}  // namespace pmod::rodin
