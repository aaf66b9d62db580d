#include "pmod/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/numeric/odeint.hpp>

#include "pmod/errors.hpp"

namespace pmod::numerics {

namespace {

struct Panel {
    double a, b, value, error, l1;
    bool operator<(const Panel& o) const { return error < o.error; }
};

Panel gk15(const Fn1& f, double a, double b) {
    using GK = boost::math::quadrature::gauss_kronrod<double, 15>;
    using G = boost::math::quadrature::gauss<double, 7>;
    static const auto& xk = GK::abscissa();
    static const auto& wk = GK::weights();
    static const auto& wg = G::weights();
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);
    double kron = wk[0] * fc;
    double gauss = wg[0] * fc;
    double l1 = std::abs(kron);
    for (std::size_t i = 1; i < xk.size(); ++i) {
        const double f1 = f(c - h * xk[i]);
        const double f2 = f(c + h * xk[i]);
        kron += wk[i] * (f1 + f2);
        l1 += wk[i] * (std::abs(f1) + std::abs(f2));
        // Gauss nodes sit at the even Kronrod indices
        if (i % 2 == 0) gauss += wg[i / 2] * (f1 + f2);
    }
    const double v = kron * h;
    const double err = std::abs((kron - gauss) * h);
    if (!std::isfinite(v) || !std::isfinite(err)) {
        throw DomainError("integrand is not finite on [" + std::to_string(a) + ", " +
                          std::to_string(b) + "]");
    }
    return {a, b, v, err, l1 * std::abs(h)};
}

}  // namespace

QuadResult integrate_1d(const Fn1& f, double a, double b, const QuadOptions& opt) {
    if (a == b) return {0.0, 0.0, 0};
    if (b < a) {
        auto r = integrate_1d(f, b, a, opt);
        r.value = -r.value;
        return r;
    }
    std::priority_queue<Panel> heap;
    std::size_t evals = 0;
    heap.push(gk15(f, a, b));
    evals += 15;
    double value = heap.top().value;
    double error = heap.top().error;
    double l1 = heap.top().l1;
    constexpr double eps = std::numeric_limits<double>::epsilon();

    auto done = [&] {
        const double target = std::max(opt.abs_tol, opt.rel_tol * std::abs(value));
        return error <= target || error <= 50.0 * eps * l1;
    };

    while (!done()) {
        if (heap.size() >= opt.max_intervals) {
            throw NonConvergence("integrate_1d: subdivision limit reached", value, error);
        }
        Panel worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) {
            throw NonConvergence("integrate_1d: interval too small to subdivide", value, error);
        }
        Panel left{}, right{};
        try {
            left = gk15(f, worst.a, mid);
            right = gk15(f, mid, worst.b);
        } catch (const DomainError&) {
            throw NonConvergence("integrate_1d: integrand blows up inside the interval", value,
                                 error);
        }
        evals += 30;
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        l1 += left.l1 + right.l1 - worst.l1;
        heap.push(left);
        heap.push(right);
    }

    // resum to remove drift from the running updates
    double v = 0.0, e = 0.0;
    while (!heap.empty()) {
        v += heap.top().value;
        e += heap.top().error;
        heap.pop();
    }
    return {v, e, evals};
}

QuadResult integrate_1d(const Fn1& f, double a, double b, double tol) {
    QuadOptions opt;
    opt.abs_tol = tol;
    opt.rel_tol = tol;
    return integrate_1d(f, a, b, opt);
}

QuadResult integrate_2d(const std::function<double(double, double)>& f,
                        double x0, double x1, double y0, double y1, double tol) {
    std::size_t evals = 0;
    auto outer = [&](double x) {
        auto r = integrate_1d([&](double y) { return f(x, y); }, y0, y1, tol / 10.0);
        evals += r.evaluations;
        return r.value;
    };
    auto r = integrate_1d(outer, x0, x1, tol);
    r.evaluations = evals;
    return r;
}

QuadResult integrate_nd(const FnN& f, const Box& box, double tol) {
    if (box.empty()) throw InvalidParameter("integrate_nd: empty box");
    const std::size_t n = box.size();
    std::vector<double> x(n);
    std::size_t evals = 0;

    std::function<double(std::size_t, double)> level = [&](std::size_t k, double t) -> double {
        if (k == n) {
            ++evals;
            return f(std::span<const double>(x));
        }
        auto g = [&](double xk) {
            x[k] = xk;
            return level(k + 1, t / 10.0);
        };
        return integrate_1d(g, box[k].first, box[k].second, t).value;
    };
    QuadResult r;
    r.value = level(0, tol);
    r.abs_error = tol * std::max(1.0, std::abs(r.value));
    r.evaluations = evals;
    return r;
}

OdeResult solve_ode(const OdeRhs& rhs, std::vector<double> y0, double t0, double t1,
                    double rel_tol, double abs_tol, const OdeObserver& observer) {
    namespace odeint = boost::numeric::odeint;
    using State = std::vector<double>;
    auto system = [&](const State& y, State& dy, double t) {
        rhs(t, std::span<const double>(y), std::span<double>(dy));
    };
    auto stepper = odeint::make_controlled(abs_tol, rel_tol, odeint::runge_kutta_dopri5<State>());

    OdeResult out;
    State y = std::move(y0);
    double t = t0;
    const double dir = t1 >= t0 ? 1.0 : -1.0;
    double dt = dir * std::max(1e-6, 1e-3 * std::abs(t1 - t0));
    const std::size_t max_steps = 1000000;

    while (dir * (t1 - t) > 0.0) {
        if (dir * (t + dt - t1) > 0.0) dt = t1 - t;
        State last = y;
        const double t_last = t;
        auto res = stepper.try_step(system, y, t, dt);
        if (res == odeint::success) {
            ++out.steps;
            if (observer) observer(t, std::span<const double>(y));
            if (out.steps > max_steps) {
                throw SingularityError("solve_ode: step limit exceeded", t, y);
            }
        } else if (std::abs(dt) < 1e-14 * std::max(1.0, std::abs(t))) {
            throw SingularityError("solve_ode: step size underflow", t_last, last);
        }
        for (double v : y) {
            if (!std::isfinite(v)) throw SingularityError("solve_ode: state blew up", t_last, last);
        }
    }
    out.t = t;
    out.y = std::move(y);
    return out;
}

std::vector<std::vector<double>> jacobian_fd(const VecFn& F, std::span<const double> x) {
    const double h0 = std::cbrt(std::numeric_limits<double>::epsilon());
    std::vector<double> xp(x.begin(), x.end());
    std::vector<std::vector<double>> cols;
    for (std::size_t j = 0; j < x.size(); ++j) {
        const double h = h0 * std::max(1.0, std::abs(x[j]));
        xp[j] = x[j] + h;
        auto fp = F(xp);
        xp[j] = x[j] - h;
        auto fm = F(xp);
        xp[j] = x[j];
        std::vector<double> c(fp.size());
        for (std::size_t i = 0; i < fp.size(); ++i) c[i] = (fp[i] - fm[i]) / (2.0 * h);
        cols.push_back(std::move(c));
    }
    const std::size_t m = cols.empty() ? 0 : cols[0].size();
    std::vector<std::vector<double>> J(m, std::vector<double>(x.size()));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < x.size(); ++j) J[i][j] = cols[j][i];
    return J;
}

double gamma_fn(double x) {
    if (!(x > 0.0)) throw DomainError("gamma_fn: argument must be positive");
    return std::tgamma(x);
}

double derivative_fd(const Fn1& f, double x, double h) {
    return (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) / (12 * h);
}

}  // namespace pmod::numerics
