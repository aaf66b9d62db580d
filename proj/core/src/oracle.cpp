#include "pmod/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <queue>
#include <unordered_set>

#include "pmod/errors.hpp"

namespace pmod::oracle {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

struct Piece {
    int di, dj;
    double len;  // in units of h
};

// Cells crossed by the segment (0,0) -> (u,v) in cell units, centers at integers.
std::vector<Piece> unit_traversal(double u, double v) {
    std::vector<double> ts{0.0, 1.0};
    auto crossings = [&ts](double d) {
        if (d == 0.0) return;
        const double lo = std::min(0.0, d), hi = std::max(0.0, d);
        for (double k = std::ceil(lo - 0.5) + 0.5; k < hi; k += 1.0)
            if (k > lo) ts.push_back(k / d);
    };
    crossings(u);
    crossings(v);
    std::sort(ts.begin(), ts.end());
    const double L = std::hypot(u, v);
    std::vector<Piece> out;
    for (std::size_t k = 0; k + 1 < ts.size(); ++k) {
        const double dt = ts[k + 1] - ts[k];
        if (dt < 1e-12) continue;
        const double tm = 0.5 * (ts[k] + ts[k + 1]);
        const int i = static_cast<int>(std::floor(tm * u + 0.5));
        const int j = static_cast<int>(std::floor(tm * v + 0.5));
        if (!out.empty() && out.back().di == i && out.back().dj == j)
            out.back().len += dt * L;
        else
            out.push_back({i, j, dt * L});
    }
    return out;
}

struct Direction {
    int di, dj;
    std::vector<Piece> pieces;
};

std::vector<Direction> make_stencil(int K) {
    if (K < 1) throw InvalidParameter("stencil radius must be >= 1");
    std::vector<Direction> dirs;
    for (int di = -K; di <= K; ++di)
        for (int dj = -K; dj <= K; ++dj) {
            if (di == 0 && dj == 0) continue;
            if (std::gcd(std::abs(di), std::abs(dj)) != 1) continue;
            dirs.push_back({di, dj, unit_traversal(di, dj)});
        }
    return dirs;
}

struct Sparse {
    std::vector<int> idx;
    std::vector<double> coef;

    double dot(const std::vector<double>& rho) const {
        double v = 0.0;
        for (std::size_t k = 0; k < idx.size(); ++k) v += coef[k] * rho[idx[k]];
        return v;
    }
};

Sparse compress(std::vector<std::pair<int, double>> v) {
    std::sort(v.begin(), v.end());
    Sparse s;
    for (const auto& [i, c] : v) {
        if (c <= 0.0 || i < 0) continue;
        if (!s.idx.empty() && s.idx.back() == i)
            s.coef.back() += c;
        else {
            s.idx.push_back(i);
            s.coef.push_back(c);
        }
    }
    return s;
}

// Segment pieces restricted to masked cells.
std::vector<std::pair<int, double>> masked_pieces(const Grid& g, const Vec& a, const Vec& b) {
    auto v = segment_cells(g, a, b);
    for (auto& pc : v)
        if (pc.first >= 0 && !g.mask[pc.first]) pc.first = -1;
    return v;
}

struct Plates {
    std::vector<int> src, dst;
    // straight segment from the cell center to the plate, along the level gradient
    std::vector<Sparse> cap0, cap1;
};

Plates find_plates(const Grid& g, const Region& R) {
    Plates P;
    const std::size_t n = g.mask.size();
    P.cap0.resize(n);
    P.cap1.resize(n);
    const double e = 0.25 * g.h;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const int id = g.index(i, j);
            if (!g.mask[id]) continue;
            const double x = g.cx(i), y = g.cy(j);
            const double lv = R.level(x, y);
            const double gx = (R.level(x + e, y) - R.level(x - e, y)) / (2 * e);
            const double gy = (R.level(x, y + e) - R.level(x, y - e)) / (2 * e);
            const double gn = std::hypot(gx, gy);
            if (!(gn > 0.0)) continue;
            const double ux = gx / gn, uy = gy / gn;
            const double d0 = std::max(0.0, (lv - R.level0) / gn);
            const double d1 = std::max(0.0, (R.level1 - lv) / gn);
            if (d0 < g.h) {
                P.cap0[id] = d0 > 0.0 ? compress(masked_pieces(g, {x, y}, {x - d0 * ux, y - d0 * uy}))
                                      : Sparse{};
                P.src.push_back(id);
            }
            if (d1 < g.h) {
                P.cap1[id] = d1 > 0.0 ? compress(masked_pieces(g, {x, y}, {x + d1 * ux, y + d1 * uy}))
                                      : Sparse{};
                P.dst.push_back(id);
            }
        }
    if (P.src.empty() || P.dst.empty()) throw DisconnectedError("plates are empty at this resolution");
    return P;
}

struct Dijkstra {
    std::vector<double> dist;
    std::vector<int> pred;      // previous cell
    std::vector<int> pred_dir;  // direction used to arrive
};

class Graph {
public:
    Graph(const Grid& g, int K) : g_(g), dirs_(make_stencil(K)) {}

    // cost of moving from cell id along direction d, inf if a crossed cell is outside
    double edge(int i, int j, const Direction& d, const std::vector<double>& rho) const {
        double c = 0.0;
        for (const auto& pc : d.pieces) {
            const int a = i + pc.di, b = j + pc.dj;
            if (a < 0 || b < 0 || a >= g_.nx || b >= g_.ny) return inf;
            const int id = g_.index(a, b);
            if (!g_.mask[id]) return inf;
            c += pc.len * rho[id];
        }
        return c * g_.h;
    }

    Dijkstra run(const Plates& P, const std::vector<double>& rho) const {
        const std::size_t n = g_.mask.size();
        Dijkstra D{std::vector<double>(n, inf), std::vector<int>(n, -1), std::vector<int>(n, -1)};
        using Item = std::pair<double, int>;
        std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
        for (int s : P.src) {
            const double c = P.cap0[s].dot(rho);
            if (c < D.dist[s]) {
                D.dist[s] = c;
                pq.push({c, s});
            }
        }
        while (!pq.empty()) {
            const auto [du, u] = pq.top();
            pq.pop();
            if (du > D.dist[u]) continue;
            const int i = u % g_.nx, j = u / g_.nx;
            for (int k = 0; k < static_cast<int>(dirs_.size()); ++k) {
                const auto& d = dirs_[k];
                const int a = i + d.di, b = j + d.dj;
                if (a < 0 || b < 0 || a >= g_.nx || b >= g_.ny) continue;
                const int v = g_.index(a, b);
                if (!g_.mask[v]) continue;
                const double w = edge(i, j, d, rho);
                if (w == inf) continue;
                const double nd = du + w;
                if (nd < D.dist[v]) {
                    D.dist[v] = nd;
                    D.pred[v] = u;
                    D.pred_dir[v] = k;
                    pq.push({nd, v});
                }
            }
        }
        return D;
    }

    std::vector<int> trace(const Dijkstra& D, int t) const {
        std::vector<int> path{t};
        while (D.pred[path.back()] >= 0) path.push_back(D.pred[path.back()]);
        std::reverse(path.begin(), path.end());
        return path;
    }

    // length coefficients of a traced path, caps included
    Sparse coefficients(const Dijkstra& D, const std::vector<int>& path, const Plates& P) const {
        std::vector<std::pair<int, double>> v;
        for (const Sparse* c : {&P.cap0[path.front()], &P.cap1[path.back()]})
            for (std::size_t k = 0; k < c->idx.size(); ++k) v.push_back({c->idx[k], c->coef[k]});
        for (std::size_t k = 1; k < path.size(); ++k) {
            const int u = path[k - 1];
            const auto& d = dirs_[D.pred_dir[path[k]]];
            const int i = u % g_.nx, j = u / g_.nx;
            for (const auto& pc : d.pieces) v.push_back({g_.index(i + pc.di, j + pc.dj), pc.len * g_.h});
        }
        return compress(std::move(v));
    }

private:
    const Grid& g_;
    std::vector<Direction> dirs_;
};

/// Dual coordinate ascent for min sum m rho^p s.t. a_j . rho >= 1.
class Inner {
public:
    Inner(std::size_t n, double p, double m) : p_(p), m_(m), c_(n, 0.0), rho_(n, 0.0) {}

    void add(Sparse s) {
        double k2 = 0.0;
        for (double a : s.coef) k2 += a * a;
        rows_.push_back(std::move(s));
        lambda_.push_back(0.0);
        k2_.push_back(k2 / (p_ * m_));
    }

    std::size_t size() const { return rows_.size(); }

    double dot(const Sparse& s) const {
        double v = 0.0;
        for (std::size_t k = 0; k < s.idx.size(); ++k) v += s.coef[k] * rho_[s.idx[k]];
        return v;
    }

    bool solve(double tol, int max_sweeps) {
        for (int sweep = 0; sweep < max_sweeps; ++sweep) {
            double worst = 0.0;
            for (std::size_t j = 0; j < rows_.size(); ++j) worst = std::max(worst, step(j));
            if (worst < tol) return true;
        }
        return false;
    }

    double energy() const {
        double e = 0.0;
        for (double r : rho_) e += std::pow(r, p_);
        return e * m_;
    }

    double dual() const {
        double s = std::accumulate(lambda_.begin(), lambda_.end(), 0.0);
        double cr = 0.0;
        for (std::size_t i = 0; i < c_.size(); ++i) cr += c_[i] * rho_[i];
        return s - (1.0 - 1.0 / p_) * cr;
    }

    std::size_t active() const {
        return static_cast<std::size_t>(
            std::count_if(lambda_.begin(), lambda_.end(), [](double l) { return l > 0.0; }));
    }

    const std::vector<double>& rho() const { return rho_; }
    const std::vector<Sparse>& rows() const { return rows_; }

private:
    double rho_of(double c) const {
        if (c <= 0.0) return 0.0;
        return p_ == 2.0 ? c / (2.0 * m_) : std::pow(c / (p_ * m_), 1.0 / (p_ - 1.0));
    }

    // returns the residual before the update
    double step(std::size_t j) {
        const Sparse& s = rows_[j];
        const double val = dot(s);
        double& lam = lambda_[j];
        const double resid = lam > 0.0 ? std::abs(val - 1.0) : std::max(0.0, 1.0 - val);
        if (resid == 0.0) return 0.0;
        double delta;
        if (p_ == 2.0) {
            delta = (1.0 - val) / k2_[j];
        } else {
            delta = solve_delta(j, val);
        }
        if (lam + delta < 0.0) delta = -lam;
        if (delta == 0.0) return resid;
        lam += delta;
        for (std::size_t k = 0; k < s.idx.size(); ++k) {
            const int i = s.idx[k];
            c_[i] = std::max(0.0, c_[i] + delta * s.coef[k]);
            rho_[i] = rho_of(c_[i]);
        }
        return resid;
    }

    // root of phi(d) = sum a_i rho(c_i + d a_i) - 1 by safeguarded Newton
    double solve_delta(std::size_t j, double val) {
        const Sparse& s = rows_[j];
        auto phi = [&](double d, double* dphi) {
            double f = -1.0, df = 0.0;
            const double e = 1.0 / (p_ - 1.0);
            for (std::size_t k = 0; k < s.idx.size(); ++k) {
                const double a = s.coef[k];
                const double c = c_[s.idx[k]] + d * a;
                if (c <= 0.0) continue;
                const double r = std::pow(c / (p_ * m_), e);
                f += a * r;
                df += a * a * e * r / c;
            }
            if (dphi) *dphi = df;
            return f;
        };
        double lo, hi;
        if (val < 1.0) {
            lo = 0.0;
            hi = std::max(1e-300, (1.0 - val) / std::max(k2_[j], 1e-300));
            while (phi(hi, nullptr) < 0.0) hi *= 2.0;
        } else {
            hi = 0.0;
            lo = -lambda_[j];
            if (phi(lo, nullptr) >= 0.0) return lo;
        }
        double d = 0.5 * (lo + hi);
        for (int it = 0; it < 100; ++it) {
            double df;
            const double f = phi(d, &df);
            if (std::abs(f) < 1e-13) break;
            if (f < 0.0)
                lo = d;
            else
                hi = d;
            double nd = df > 0.0 ? d - f / df : 0.5 * (lo + hi);
            if (!(nd > lo && nd < hi)) nd = 0.5 * (lo + hi);
            d = nd;
            if (hi - lo < 1e-15 * std::max(1.0, std::abs(d))) break;
        }
        return d;
    }

    double p_, m_;
    std::vector<double> c_, rho_;
    std::vector<Sparse> rows_;
    std::vector<double> lambda_, k2_;
};

std::uint64_t path_hash(const std::vector<int>& path) {
    std::uint64_t h = 1469598103934665603ull;
    for (int v : path) {
        h ^= static_cast<std::uint64_t>(v) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        h *= 1099511628211ull;
    }
    return h;
}

void check_p(double p) {
    if (!(p > 1.0)) throw InvalidParameter("oracle exponent must exceed 1");
}

OracleResult finish(const Inner& in, double p, double m, double min_len, int iters, bool conv) {
    OracleResult r;
    r.p = p;
    r.iterations = iters;
    r.constraints = in.size();
    r.active = in.active();
    r.min_length = min_len;
    const double E = in.energy();
    r.value = min_len > 0.0 ? E / std::pow(min_len, p) : inf;
    r.upper = r.value;
    r.lower = std::min(in.dual(), r.value);
    r.gap = std::max(0.0, r.upper - r.lower);
    r.converged = conv;
    r.rho = in.rho();
    if (min_len > 0.0)
        for (double& v : r.rho) v /= min_len;
    (void)m;
    return r;
}

}  // namespace

std::size_t Grid::active_cells() const {
    return static_cast<std::size_t>(std::count(mask.begin(), mask.end(), std::uint8_t{1}));
}

Region rectangle(double a, double b) {
    if (!(a > 0.0 && b > 0.0)) throw InvalidParameter("rectangle needs a, b > 0");
    Region R;
    R.name = "rectangle";
    R.x0 = 0;
    R.x1 = a;
    R.y0 = 0;
    R.y1 = b;
    R.contains = [a, b](double x, double y) { return x >= 0 && x <= a && y >= 0 && y <= b; };
    R.level = [](double, double y) { return y; };
    R.level0 = 0;
    R.level1 = b;
    return R;
}

Region parallelogram(double shift, double height) {
    if (!(height > 0.0)) throw InvalidParameter("parallelogram needs height > 0");
    Region R;
    R.name = "parallelogram";
    R.x0 = std::min(0.0, shift);
    R.x1 = std::max(1.0, 1.0 + shift);
    R.y0 = 0;
    R.y1 = height;
    const double s = shift / height;
    R.contains = [s, height](double x, double y) {
        const double u = x - s * y;
        return y >= 0 && y <= height && u >= 0 && u <= 1;
    };
    R.level = [](double, double y) { return y; };
    R.level0 = 0;
    R.level1 = height;
    return R;
}

Region parallelogram_theta(double theta, double h) {
    if (!(theta > 0.0 && theta <= std::numbers::pi / 2))
        throw InvalidParameter("theta must lie in (0, pi/2]");
    return parallelogram(h * std::cos(theta), h * std::sin(theta));
}

Region annulus(double r0, double r1) {
    if (!(r0 > 0.0 && r1 > r0)) throw InvalidParameter("annulus needs 0 < r0 < r1");
    Region R;
    R.name = "annulus";
    R.x0 = R.y0 = -r1;
    R.x1 = R.y1 = r1;
    R.contains = [r0, r1](double x, double y) {
        const double r = std::hypot(x, y);
        return r >= r0 && r <= r1;
    };
    R.level = [](double x, double y) { return std::hypot(x, y); };
    R.level0 = r0;
    R.level1 = r1;
    return R;
}

Region mapped(const Region& base, const std::function<Vec(double, double)>& forward,
              const std::function<Vec(double, double)>& inverse, const std::string& name) {
    Region R;
    R.name = name;
    double x0 = inf, x1 = -inf, y0 = inf, y1 = -inf;
    const int n = 400;
    for (int a = 0; a <= n; ++a)
        for (int b = 0; b <= n; ++b) {
            const double x = base.x0 + (base.x1 - base.x0) * a / n;
            const double y = base.y0 + (base.y1 - base.y0) * b / n;
            if (!base.contains(x, y)) continue;
            const Vec w = forward(x, y);
            x0 = std::min(x0, w[0]);
            x1 = std::max(x1, w[0]);
            y0 = std::min(y0, w[1]);
            y1 = std::max(y1, w[1]);
        }
    if (!(x1 > x0 && y1 > y0)) throw DegenerateError("mapped region is empty");
    const double pad = 0.02 * std::max(x1 - x0, y1 - y0);
    R.x0 = x0 - pad;
    R.x1 = x1 + pad;
    R.y0 = y0 - pad;
    R.y1 = y1 + pad;
    auto bc = base.contains;
    auto bl = base.level;
    R.contains = [bc, inverse](double x, double y) {
        const Vec z = inverse(x, y);
        return bc(z[0], z[1]);
    };
    R.level = [bl, inverse](double x, double y) {
        const Vec z = inverse(x, y);
        return bl(z[0], z[1]);
    };
    R.level0 = base.level0;
    R.level1 = base.level1;
    return R;
}

Grid make_grid(const Region& R, int nx) {
    if (nx < 2) throw InvalidParameter("grid needs at least 2 cells across");
    Grid g;
    g.x0 = R.x0;
    g.y0 = R.y0;
    g.h = (R.x1 - R.x0) / nx;
    g.nx = nx;
    const double ny = (R.y1 - R.y0) / g.h;
    g.ny = static_cast<int>(std::ceil(ny - 1e-9));
    g.mask.assign(static_cast<std::size_t>(g.nx) * g.ny, 0);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) g.mask[g.index(i, j)] = R.contains(g.cx(i), g.cy(j)) ? 1 : 0;
    if (g.active_cells() == 0) throw DegenerateError("grid mask is empty");
    return g;
}

DiscreteFamily DiscreteFamily::explicit_curves(std::vector<Polyline> c) {
    DiscreteFamily f;
    f.kind = FamilyKind::explicit_polylines;
    f.curves = std::move(c);
    return f;
}

DiscreteFamily DiscreteFamily::connecting(Region r) {
    DiscreteFamily f;
    f.kind = FamilyKind::connecting;
    f.region = std::move(r);
    return f;
}

DiscreteFamily DiscreteFamily::separating(Region r) {
    DiscreteFamily f;
    f.kind = FamilyKind::separating_conjugate;
    f.region = std::move(r);
    return f;
}

std::vector<std::pair<int, double>> segment_cells(const Grid& g, const Vec& a, const Vec& b) {
    // to cell units with centers at integers
    const double ua = (a[0] - g.x0) / g.h - 0.5, va = (a[1] - g.y0) / g.h - 0.5;
    const double ub = (b[0] - g.x0) / g.h - 0.5, vb = (b[1] - g.y0) / g.h - 0.5;
    const double du = ub - ua, dv = vb - va;
    std::vector<double> ts{0.0, 1.0};
    auto crossings = [&ts](double s0, double d) {
        if (d == 0.0) return;
        const double lo = std::min(s0, s0 + d), hi = std::max(s0, s0 + d);
        for (double k = std::ceil(lo - 0.5) + 0.5; k < hi; k += 1.0)
            if (k > lo) ts.push_back((k - s0) / d);
    };
    crossings(ua, du);
    crossings(va, dv);
    std::sort(ts.begin(), ts.end());
    const double L = std::hypot(b[0] - a[0], b[1] - a[1]);
    std::vector<std::pair<int, double>> out;
    for (std::size_t k = 0; k + 1 < ts.size(); ++k) {
        const double dt = ts[k + 1] - ts[k];
        if (dt < 1e-13) continue;
        const double tm = 0.5 * (ts[k] + ts[k + 1]);
        const int i = static_cast<int>(std::floor(ua + tm * du + 0.5));
        const int j = static_cast<int>(std::floor(va + tm * dv + 0.5));
        const int id = (i < 0 || j < 0 || i >= g.nx || j >= g.ny) ? -1 : g.index(i, j);
        if (!out.empty() && out.back().first == id)
            out.back().second += dt * L;
        else
            out.push_back({id, dt * L});
    }
    return out;
}

double path_integral(const Grid& g, const std::vector<double>& rho, const Polyline& path) {
    double s = 0.0;
    for (std::size_t k = 1; k < path.vertices.size(); ++k)
        for (const auto& [id, len] : segment_cells(g, path.vertices[k - 1], path.vertices[k]))
            if (id >= 0) s += len * rho[id];
    return s;
}

PathResult shortest_rho_path(const Grid& g, const Region& R, const std::vector<double>& rho,
                             int stencil) {
    if (rho.size() != g.mask.size()) throw InvalidParameter("rho does not match the grid");
    const Plates P = find_plates(g, R);
    const Graph G(g, stencil);
    const Dijkstra D = G.run(P, rho);
    int best = -1;
    double bc = inf;
    for (int t : P.dst) {
        const double c = D.dist[t] + P.cap1[t].dot(rho);
        if (c < bc) {
            bc = c;
            best = t;
        }
    }
    if (best < 0) throw DisconnectedError("plates are not connected in the grid");
    const auto cells = G.trace(D, best);
    std::vector<Vec> v;
    for (int c : cells) v.push_back({g.cx(c % g.nx), g.cy(c / g.nx)});
    if (v.size() < 2) throw DegenerateError("shortest path is a single cell");
    return {Polyline(std::move(v)), bc};
}

OracleResult solve_modulus(const Grid& g, const DiscreteFamily& fam, double p,
                           const OracleOptions& opt) {
    check_p(p);
    if (fam.kind == FamilyKind::separating_conjugate)
        return separating_module_2d(g, fam.region, p, opt);
    const double m = g.m_cell();
    Inner in(g.mask.size(), p, m);

    if (fam.kind == FamilyKind::explicit_polylines) {
        if (fam.curves.empty()) throw InvalidParameter("explicit family is empty");
        for (const auto& c : fam.curves) {
            std::vector<std::pair<int, double>> v;
            for (std::size_t k = 1; k < c.vertices.size(); ++k)
                for (const auto& [id, len] : segment_cells(g, c.vertices[k - 1], c.vertices[k])) {
                    if (id < 0 || !g.mask[id]) throw InvalidCurve("explicit curve leaves the grid mask");
                    v.push_back({id, len});
                }
            in.add(compress(std::move(v)));
        }
        const bool ok = in.solve(opt.inner_tol, opt.max_sweeps);
        double min_len = inf;
        for (const auto& row : in.rows()) min_len = std::min(min_len, in.dot(row));
        return finish(in, p, m, min_len, 1, ok);
    }

    const Plates P = find_plates(g, fam.region);
    const Graph G(g, opt.stencil);
    std::unordered_set<std::uint64_t> seen;

    auto add_paths = [&](const Dijkstra& D, const std::vector<double>& rho, double thresh) {
        std::vector<std::pair<double, int>> cand;
        for (int t : P.dst) {
            const double c = D.dist[t] + P.cap1[t].dot(rho);
            if (c < thresh) cand.push_back({c, t});
        }
        std::sort(cand.begin(), cand.end());
        int added = 0;
        for (const auto& [c, t] : cand) {
            if (added >= opt.paths_per_round) break;
            const auto path = G.trace(D, t);
            if (!seen.insert(path_hash(path)).second) continue;
            in.add(G.coefficients(D, path, P));
            ++added;
        }
        return added;
    };

    // geometric shortest paths seed the active set
    {
        const std::vector<double> one(g.mask.size(), 1.0);
        const Dijkstra D = G.run(P, one);
        if (add_paths(D, one, inf) == 0) throw DisconnectedError("plates are not connected in the grid");
    }

    double min_len = 0.0;
    bool conv = false;
    int it = 0;
    for (; it < opt.max_outer; ++it) {
        in.solve(opt.inner_tol, opt.max_sweeps);
        const auto& rho = in.rho();
        const Dijkstra D = G.run(P, rho);
        min_len = inf;
        for (int t : P.dst) min_len = std::min(min_len, D.dist[t] + P.cap1[t].dot(rho));
        if (min_len == inf) throw DisconnectedError("plates are not connected in the grid");
        if (min_len >= 1.0 - opt.tol) {
            conv = true;
            break;
        }
        if (add_paths(D, rho, 1.0 - 0.5 * opt.tol) == 0) break;
    }
    return finish(in, p, m, min_len, it + 1, conv);
}

OracleResult separating_module_2d(const Grid& g, const Region& R, double q,
                                  const OracleOptions& opt) {
    check_p(q);
    const double p = q / (q - 1.0);
    OracleResult r = solve_modulus(g, DiscreteFamily::connecting(R), p, opt);
    const double e = -q / p;
    OracleResult s = r;
    s.p = q;
    s.value = std::pow(r.value, e);
    s.lower = s.value;
    s.upper = r.lower > 0.0 ? std::pow(r.lower, e) : inf;
    s.gap = s.upper - s.lower;
    return s;
}

}  // namespace pmod::oracle
