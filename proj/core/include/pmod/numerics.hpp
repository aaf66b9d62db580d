#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <utility>
#include <vector>

namespace pmod::numerics {

struct QuadResult {
    double value = 0.0;
    double abs_error = 0.0;
    std::size_t evaluations = 0;
};

struct QuadOptions {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    std::size_t max_intervals = 4000;
};

using Fn1 = std::function<double(double)>;
using FnN = std::function<double(std::span<const double>)>;
using Box = std::vector<std::pair<double, double>>;

/// Global adaptive Gauss-Kronrod (7/15). Accepts when the summed error
/// estimate is below max(abs_tol, rel_tol*|I|). Throws NonConvergence.
QuadResult integrate_1d(const Fn1& f, double a, double b, const QuadOptions& opt);
QuadResult integrate_1d(const Fn1& f, double a, double b, double tol = 1e-10);

/// Iterated quadrature over [x0,x1]x[y0,y1]; inner integrals use tol/10.
QuadResult integrate_2d(const std::function<double(double, double)>& f,
                        double x0, double x1, double y0, double y1, double tol = 1e-10);

/// Iterated quadrature over a box, first coordinate outermost.
QuadResult integrate_nd(const FnN& f, const Box& box, double tol = 1e-10);

struct OdeResult {
    double t = 0.0;
    std::vector<double> y;
    std::size_t steps = 0;
};

using OdeRhs = std::function<void(double t, std::span<const double> y, std::span<double> dydt)>;

using OdeObserver = std::function<void(double t, std::span<const double> y)>;

/// Dormand-Prince 5(4) with step control. `observer` sees every accepted step.
OdeResult solve_ode(const OdeRhs& rhs, std::vector<double> y0, double t0, double t1,
                    double rel_tol = 1e-9, double abs_tol = 1e-9,
                    const OdeObserver& observer = {});

using VecFn = std::function<std::vector<double>(std::span<const double>)>;

/// Central differences, h_j = eps^(1/3) * max(1, |x_j|). Row i holds dF_i/dx_j.
std::vector<std::vector<double>> jacobian_fd(const VecFn& F, std::span<const double> x);

double gamma_fn(double x);

/// Fourth order central difference for a scalar function of one variable.
double derivative_fd(const Fn1& f, double x, double h);

}  // namespace pmod::numerics
