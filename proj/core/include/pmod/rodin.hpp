#pragma once

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pmod/core.hpp"

namespace pmod::rodin {

/// Omega = u(D x [a,b]). The base D is a parametrized (n-1)-dimensional patch:
/// `base.params` is its parameter box and `base.weight` its surface density.
struct Condenser {
    int n = 2;
    Patch base;
    double a = 0.0;
    double b = 1.0;
    std::function<Vec(std::span<const double> x, double t)> embed;
    /// J_u relative to surface measure on D times dt.
    std::function<double(std::span<const double> x, double t)> jac_u;
    /// Inverse of `embed`: point in R^n -> (base params..., t).
    std::function<Vec(std::span<const double> y)> locate;
};

struct CondenserMap {
    std::function<Vec(std::span<const double>)> f;
    std::function<Vec(std::span<const double>)> inverse;   ///< optional
    std::function<double(std::span<const double>)> jac;    ///< optional J_f
    /// Optional analytic d/dt f(u(x,t)).
    std::function<Vec(std::span<const double> x, double t)> velocity;

    static CondenserMap identity();
};

double jac_f(const CondenserMap& f, std::span<const double> y);
/// |d/dt f(u(x,t))|, finite differences with step (b-a)*1e-3 unless analytic.
double curve_speed(const Condenser& c, const CondenserMap& f, std::span<const double> x, double t);

/// l(x) = int_a^b (|c'|/I_f)^q I_f dt with I_f = J_u J_f.
double ell_connecting(const Condenser& c, const CondenserMap& f, double p,
                      std::span<const double> x, double tol = 1e-12);
/// M_p(f(Gamma_0)) = int_D l^(1-p) dH.
ModuleEstimate module_connecting(const Condenser& c, const CondenserMap& f, double p,
                                 double tol = 1e-10);
/// rho_0 at the image point f(u(x,t)).
double extremal_density_connecting_at(const Condenser& c, const CondenserMap& f, double p,
                                      std::span<const double> x, double t);
/// rho_0 as a field on the image; requires `locate` and `f.inverse`.
DensityField extremal_density_connecting(const Condenser& c, const CondenserMap& f, double p);

/// |grad (t o f^-1)| * I_f at f(u(x,t)).
double surface_jacobian(const Condenser& c, const CondenserMap& f, std::span<const double> x,
                        double t);
double grad_t_norm(const Condenser& c, const CondenserMap& f, std::span<const double> x, double t);
/// l(t) = int_D |grad t|^p I_f dH, p the conjugate of q.
double ell_separating(const Condenser& c, const CondenserMap& f, double q, double t,
                      double tol = 1e-11);
/// M_q(f(Sigma_0)) = int_a^b l^(1-q) dt.
ModuleEstimate module_separating(const Condenser& c, const CondenserMap& f, double q,
                                 double tol = 1e-10);

/// Curves t -> f(u(x,t)) for x ranging over one coordinate of the base.
CurveFamilySampler connecting_family(const Condenser& c, const CondenserMap& f,
                                     std::vector<double> base_point, std::size_t vary = 0);

// Standard condensers.
/// D = [0,s]^(n-1), u(x,t) = (x,t).
Condenser cylinder(int n, double side, double a, double b);
/// D = unit sphere in R^n via spherical angles, u(x,t) = t x.
Condenser spherical_ring(int n, double a, double b);
/// 2D cone {(beta t x, t)}, x in [x0,x1].
Condenser conical(double beta, double x0, double x1, double a, double b);

/// Point on the unit sphere of R^n from angles theta_1..theta_{n-1}.
Vec sphere_point(int n, std::span<const double> angles);
double sphere_weight(int n, std::span<const double> angles);
double sphere_area(int n);

// Maps.
CondenserMap shear(int n, double beta);
CondenserMap scaling(int n, double c);
/// Rotation by angle(t) in the (x_1, x_2) plane of the sphere parametrization.
CondenserMap sphere_rotation(int n, std::function<double(double)> angle,
                             std::function<double(double)> dangle);

struct Scenario {
    std::string name;
    Condenser condenser;
    CondenserMap map;
    double p = 2.0;
    std::map<std::string, double> params;
};

std::vector<std::string> scenario_names();
/// Build a registered scenario. Keys: n, p, a, b, side, beta, r, x0, x1.
Scenario make_scenario(const std::string& name, const std::map<std::string, double>& params);
/// Published closed form, if the scenario has one for these parameters.
std::optional<double> closed_form_reference(const Scenario& s);
/// Closed form for M_q of the separating family where one is known.
std::optional<double> closed_form_separating(const Scenario& s, double q);

/// int_1^r (1+t^2)^(q/2) t^((n-1)(1-q)) dt, the twist integral.
double twist_integral(int n, double p, double r);

}  // namespace pmod::rodin
