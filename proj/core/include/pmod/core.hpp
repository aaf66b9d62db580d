#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "pmod/numerics.hpp"

namespace pmod {

using Vec = std::vector<double>;
using ScalarFn = std::function<double(std::span<const double>)>;

/// A region given as the image of a parameter box. `weight` is the volume
/// density of `map` with respect to Lebesgue measure on the box.
struct Patch {
    numerics::Box params;
    std::function<Vec(std::span<const double>)> map;
    ScalarFn weight;
    int dim = 2;

    static Patch rectangle(double x0, double x1, double y0, double y1);
    /// Polar coordinates (r, theta) over r0 <= r <= r1.
    static Patch annulus(double r0, double r1);
};

struct DensityField {
    int dim = 2;
    ScalarFn eval;
    Patch support;
    std::string label;

    double operator()(std::span<const double> x) const;
    static DensityField closed_form(ScalarFn fn, Patch support, std::string label = {});
    /// Piecewise constant on an nx-by-ny grid of square cells starting at (x0, y0).
    static DensityField from_grid(std::vector<double> values, int nx, int ny, double x0,
                                  double y0, double h, std::string label = {});
    DensityField scaled(double c) const;
};

/// Signed scalar field used as a perturbation in the extremality test.
struct Field {
    ScalarFn eval;
    std::string label;
};

struct Polyline {
    std::vector<Vec> vertices;

    explicit Polyline(std::vector<Vec> v);
    double length() const;
    Polyline concat(const Polyline& other) const;
};

struct ParametricCurve {
    double t0 = 0.0;
    double t1 = 1.0;
    std::function<Vec(double)> point;
    /// Optional analytic velocity. When absent a finite difference is used.
    std::function<Vec(double)> velocity;
};

using Curve = std::variant<Polyline, ParametricCurve>;

struct CurveFamilySampler {
    std::string name;
    double lo = 0.0;
    double hi = 1.0;
    std::function<Curve(double)> sample;
};

enum class Method { closed_form, quadrature, oracle };
const char* to_string(Method m);

struct ModuleEstimate {
    double value = 0.0;
    Method method = Method::quadrature;
    double abs_error = 0.0;
    double p = 2.0;
};

double energy(const DensityField& rho, double p, double tol = 1e-10);

double curve_integral(const DensityField& rho, const Polyline& curve, double rel_tol = 1e-10);
double curve_integral(const DensityField& rho, const ParametricCurve& curve, double tol = 1e-10);
double curve_integral(const DensityField& rho, const Curve& curve, double tol = 1e-10);

struct AdmissibilityReport {
    bool admissible = false;
    double min_integral = 0.0;
    double argmin = 0.0;
    std::vector<double> params;
    std::vector<double> integrals;
    std::vector<double> violating;
};

AdmissibilityReport check_admissible(const DensityField& rho, const CurveFamilySampler& family,
                                     int n_samples = 64, double tol = 1e-8);

struct PerturbationResult {
    std::string label;
    bool applicable = false;   ///< min over sampled curves of the line integral is >= 0
    double min_curve_integral = 0.0;
    double pairing = 0.0;      ///< integral of g * rho0^(p-1)
    bool passed = true;
};

struct ExtremalityReport {
    bool extremal = true;
    std::vector<PerturbationResult> results;
};

/// A density rho0 is extremal when every g with nonnegative integrals over the
/// family pairs nonnegatively with rho0^(p-1).
ExtremalityReport check_extremality(const DensityField& rho0, const CurveFamilySampler& family,
                                    const std::vector<Field>& perturbations, double p,
                                    int n_samples = 32, double tol = 1e-8);

}  // namespace pmod
