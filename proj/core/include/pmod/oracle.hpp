#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "pmod/core.hpp"

namespace pmod::oracle {

/// Planar condenser: a domain with a level function whose sublevel
/// level0 and superlevel level1 are the two plates.
struct Region {
    std::string name;
    double x0 = 0, x1 = 1, y0 = 0, y1 = 1;  ///< bounding box
    std::function<bool(double, double)> contains;
    std::function<double(double, double)> level;
    double level0 = 0.0;
    double level1 = 1.0;
};

/// [0,a]x[0,b], plates y = 0 and y = b.
Region rectangle(double a, double b);
/// Vertices 0, 1, 1+shift+i*height, shift+i*height; plates are the horizontal sides.
Region parallelogram(double shift, double height);
/// Sides 1 and h meeting at angle theta.
Region parallelogram_theta(double theta, double h);
/// r0 <= |z| <= r1, plates are the two circles.
Region annulus(double r0, double r1);
/// Image of `base` under a homeomorphism with known inverse.
Region mapped(const Region& base, const std::function<Vec(double, double)>& forward,
              const std::function<Vec(double, double)>& inverse, const std::string& name);

struct Grid {
    double x0 = 0, y0 = 0, h = 1;
    int nx = 0, ny = 0;
    std::vector<std::uint8_t> mask;
    double m_cell() const { return h * h; }
    int index(int i, int j) const { return j * nx + i; }
    double cx(int i) const { return x0 + (i + 0.5) * h; }
    double cy(int j) const { return y0 + (j + 0.5) * h; }
    std::size_t active_cells() const;
};

/// Square cells, `nx` across the bounding box; a cell belongs to the mask
/// when its center lies in the region.
Grid make_grid(const Region& R, int nx);

struct OracleOptions {
    double tol = 2e-3;         ///< stop once every discrete path has rho-length >= 1 - tol
    double inner_tol = 1e-3;   ///< active constraint residual in the inner solve
    int max_outer = 300;
    int max_sweeps = 20000;
    int stencil = 3;           ///< neighbour offsets with max(|di|,|dj|) <= stencil
    int paths_per_round = 2000;
};

struct OracleResult {
    double value = 0.0;   ///< energy of the admissible rescaled density (upper bound)
    double lower = 0.0;   ///< dual value of the active set
    double upper = 0.0;
    double gap = 0.0;
    double min_length = 0.0;
    std::size_t constraints = 0;
    std::size_t active = 0;
    int iterations = 0;
    bool converged = false;
    double p = 2.0;
    std::vector<double> rho;  ///< per cell, rescaled to be admissible
};

enum class FamilyKind { explicit_polylines, connecting, separating_conjugate };

struct DiscreteFamily {
    FamilyKind kind = FamilyKind::connecting;
    std::vector<Polyline> curves;
    Region region;

    static DiscreteFamily explicit_curves(std::vector<Polyline> c);
    static DiscreteFamily connecting(Region r);
    static DiscreteFamily separating(Region r);
};

/// Minimises sum rho^p m_cell subject to the discrete length constraints.
/// For separating_conjugate, `p` is the exponent of the separating family.
OracleResult solve_modulus(const Grid& grid, const DiscreteFamily& family, double p,
                           const OracleOptions& opt = {});

/// M_q of the separating family through the conjugate connecting family.
OracleResult separating_module_2d(const Grid& grid, const Region& R, double q,
                                  const OracleOptions& opt = {});

struct PathResult {
    Polyline path;
    double cost = 0.0;
};

/// Cheapest plate-to-plate path in the stencil graph; cost includes the end caps.
PathResult shortest_rho_path(const Grid& grid, const Region& R, const std::vector<double>& rho,
                             int stencil = 3);

/// Exact int_gamma rho ds for a piecewise constant rho; cells outside the grid count as 0.
double path_integral(const Grid& grid, const std::vector<double>& rho, const Polyline& path);

/// Cells crossed by the segment and the length inside each.
std::vector<std::pair<int, double>> segment_cells(const Grid& grid, const Vec& a, const Vec& b);

}  // namespace pmod::oracle
