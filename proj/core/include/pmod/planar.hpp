#pragma once

#include <complex>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace pmod::planar {

using cplx = std::complex<double>;

struct PlanarMap {
    std::string name;
    std::function<cplx(cplx)> f;
    std::function<cplx(cplx)> mu;       ///< optional analytic Beltrami coefficient
    std::function<cplx(cplx)> inverse;  ///< optional
};

struct Wirtinger {
    cplx fz;
    cplx fzbar;
};

/// From the real Jacobian [[a,b],[c,d]] of f at z.
Wirtinger wirtinger(const PlanarMap& f, cplx z);
cplx beltrami(const PlanarMap& f, cplx z);
double jacobian(const PlanarMap& f, cplx z);

/// |1 + e^{-2 i alpha} mu|^2 / (1 - |mu|^2).
double directional_dilatation(cplx mu, double alpha);
double max_dilatation(cplx mu);

/// M_2(f(Gamma_0)) over Q = [0,1] x [0,b], curves t -> f(x + i t).
double rodin2d_module(const PlanarMap& f, double b, double tol = 1e-10);

/// Radial segments of the ring 1 < |z| < b and their images.
double annulus_radial_image_module(const PlanarMap& f, double b, double tol = 1e-10);
/// Circles |z| = r and their images.
double annulus_circle_image_module(const PlanarMap& f, double b, double tol = 1e-10);

struct RingBounds {
    double lower = 0.0;      ///< M_2 of the image circles
    double upper = 0.0;      ///< 1 / M_2 of the image radial segments
    double cs_upper = 0.0;   ///< (2 pi)^-2 int D_{f,theta} / |z|^2 dm
};
RingBounds ring_module_bounds(const PlanarMap& f, double b, double tol = 1e-10);

/// Images of logarithmic spirals theta - beta log r in the ring 1 < |z| < b.
double log_spiral_image_module(const PlanarMap& f, double b, double beta, double tol = 1e-10);
/// The same family through the rectangle formula applied to the polar chart.
double log_spiral_image_module_rect(const PlanarMap& f, double b, double beta, double tol = 1e-10);

struct ParallelogramBounds {
    double slant_module = 0.0;  ///< M_2(Gamma'_theta) = sin(theta)/h
    double product = 0.0;       ///< M_2(Gamma'_theta) * M_2(Sigma'_0) = sin^2(theta)
    double sigma_lower = 0.0;   ///< h sin(theta)
    double sigma_bound = 0.0;   ///< h cos^2(theta)/sin(theta)
};
ParallelogramBounds parallelogram_bounds(double theta, double h);
double parallelogram_rate(double eps, double b);

/// Maximal dilatation of (x, y) -> (x + y cot(theta), y).
double shear_max_dilatation(double theta);

std::vector<std::string> map_names();
/// Registered test maps. Keys depend on the map: k, eps, beta, kappa, c, theta, h, b.
PlanarMap make_map(const std::string& name, const std::map<std::string, double>& params = {});

}  // namespace pmod::planar
