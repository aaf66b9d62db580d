#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "pmod/core.hpp"

namespace pmod::carnot {

enum class GroupKind { euclidean, heisenberg, htype };

/// heisenberg: coordinates (x1, x2, t), N = ((x1^2+x2^2)^2 + t^2)^(1/4),
///   X1 = d/dx1 + 2 x2 d/dt, X2 = d/dx2 - 2 x1 d/dt.
/// htype(k,l): coordinates (u, z), N = (|u|^4 + 16|z|^2)^(1/4).
struct GroupSpec {
    GroupKind kind = GroupKind::euclidean;
    int k = 2;  ///< dim V1
    int l = 0;  ///< dim V2

    int Q() const { return k + 2 * l; }
    int dim() const { return k + l; }
    std::string name() const;

    static GroupSpec euclidean(int n);
    static GroupSpec heisenberg();
    static GroupSpec htype(int k, int l);
    /// "euclidean:n", "heisenberg", "htype:k,l"
    static GroupSpec parse(const std::string& s);
};

double homogeneous_norm(const GroupSpec& G, std::span<const double> g);
/// Dilation delta_s.
Vec dilate(const GroupSpec& G, std::span<const double> g, double s);

using GroupFn = std::function<double(std::span<const double>)>;

/// Frame derivatives (X_1 F, ..., X_k F) from fourth order partials.
Vec horizontal_gradient(const GroupSpec& G, const GroupFn& F, std::span<const double> g);
double horizontal_gradient_norm(const GroupSpec& G, const GroupFn& F, std::span<const double> g);

/// heisenberg: (theta, alpha); euclidean: the n-1 spherical angles.
struct SpherePoint {
    std::vector<double> coords;
};

Vec sphere_embed(const GroupSpec& G, const SpherePoint& xi);
/// ||grad_0 N|| on S_1, closed form.
double lambda(const GroupSpec& G, const SpherePoint& xi);

/// Closed-form radial flow phi(s, xi).
Vec flow_point(const GroupSpec& G, const SpherePoint& xi, double s);

struct FlowTrajectory {
    std::vector<double> s;
    std::vector<Vec> points;
    Vec end;
    std::size_t steps = 0;
};

/// Integrates d phi/ds = (N/s) grad_0 N / ||grad_0 N||^2 from s = 1 to s1.
FlowTrajectory radial_flow(const GroupSpec& G, const SpherePoint& xi, double s1,
                           double tol = 1e-12);

/// Horizontal speed ||phi'||_0 of the closed-form flow, by differencing.
double flow_speed(const GroupSpec& G, const SpherePoint& xi, double s);

/// int_{S_1} f dv. Heisenberg: dv = d alpha d theta.
double sphere_integral(const GroupSpec& G, const std::function<double(const SpherePoint&)>& f,
                       double tol = 1e-11);
double sphere_area(const GroupSpec& G);

struct RingConstants {
    double C_ab = 0, C_S1 = 0, K_ab = 0, K_S1 = 0;
    double p = 2, q = 2, a = 1, b = 2;
    int Q = 2;
    double tau_connecting = 0;
    double tau_separating = 0;
};

RingConstants ring_constants(const GroupSpec& G, double p, double a, double b,
                             double tol = 1e-12);

/// C_S1(p) by quadrature.
double c_s1_quadrature(const GroupSpec& G, double p, double tol = 1e-12);
/// C_S1(p) via Gamma functions.
double c_s1_closed_form(const GroupSpec& G, double p);
/// The H-type Gamma expression as commonly displayed, kept for comparison only.
double htype_display_constant(int k, int l, double p);

ModuleEstimate module_connecting_ring(const GroupSpec& G, double p, double a, double b);
/// Case forms: p != Q power law, p = Q logarithmic.
ModuleEstimate module_connecting_ring_closed(const GroupSpec& G, double p, double a, double b);
ModuleEstimate module_separating_ring(const GroupSpec& G, double q, double a, double b);

/// (s, sphere coordinates) chart of R_ab with volume weight s^(Q-1) dv.
Patch ring_patch(const GroupSpec& G, double a, double b);

enum class FamilyKind { connecting, separating };

/// Extremal density; `exponent` is p for connecting and q for separating.
DensityField extremal_density_ring(const GroupSpec& G, double exponent, double a, double b,
                                   FamilyKind kind);

struct CapacityReport {
    double cap_value = 0.0;
    double module_value = 0.0;
};

/// p-capacity of the extremal potential on R_ab against the connecting module.
CapacityReport capacity_check(const GroupSpec& G, double p, double a, double b,
                              double tol = 1e-9);

/// Volume of R_ab in Cartesian coordinates (Heisenberg only).
double heisenberg_ring_volume_ambient(double a, double b);

namespace twist {

double omega1(double alpha, double r);
double alpha_max(double b);
Vec curve(double theta, double alpha, double r);
/// 1/2 sqrt((4 + r^2) / cos(alpha + r - 1))
double speed(double alpha, double r);
/// ||c'||_0 by differencing the curve.
double speed_fd(double theta, double alpha, double r);
/// t' - 2 (x1' x2 - x2' x1) along the curve.
double horizontality_residual(double theta, double alpha, double r);
/// (theta, alpha, r) of a point of the image.
Vec locate(std::span<const double> y);

double ell(double alpha, double p, double b);
ModuleEstimate module(double p, double b);
DensityField extremal_density(double p, double b);
ParametricCurve curve_of(double theta, double alpha, double b);

}  // namespace twist

/// 2 pi int ell^(1-p) d alpha with ell(alpha) = int_1^b (v/W)^q W dr, W = J r^3,
/// for a contact map given in polar coordinates by its speed v(r, alpha).
ModuleEstimate heisenberg_polar_rodin(const std::function<double(double r, double alpha)>& v,
                                      const std::function<double(double r, double alpha)>& J,
                                      double p, double b, double alpha_lo, double alpha_hi,
                                      double tol = 1e-10);

}  // namespace pmod::carnot
