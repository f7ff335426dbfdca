#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "mwr/geometry.hpp"

namespace mwr {

enum class NodeMask : std::uint8_t { Exterior = 0, BoundaryAdjacent = 1, Interior = 2 };

/// Fractional distances (in units of h) from a node to the boundary
/// along +x, -x, +y, -y. 1.0 when the neighbour in that direction is a
/// regular unknown.
struct ArmSet {
    double px = 1.0, mx = 1.0, py = 1.0, my = 1.0;
    double operator[](int k) const { return k == 0 ? px : k == 1 ? mx : k == 2 ? py : my; }
};

/// A scalar field sampled on a uniform Cartesian grid, masked against a
/// convex body. Values at exterior nodes are zero. Nodes that fall on
/// the boundary itself (arm distance ~ 0) are kept in the mask but
/// pinned to the Dirichlet value 0 and never treated as unknowns.
struct GridFunction {
    Vec2 origin{};
    double h = 0.0;
    int nx = 0;
    int ny = 0;
    std::vector<double> values;       // row-major, ix + nx*iy
    std::vector<NodeMask> mask;
    std::vector<ArmSet> arms;         // meaningful at in-body nodes
    std::vector<std::uint8_t> pinned; // 1 for on-boundary nodes
    std::vector<double> cell_weight;  // clipped cell area per node
    ConvexBody body;

    int index(int ix, int iy) const { return ix + nx * iy; }
    Vec2 node(int ix, int iy) const { return {origin.x + h * ix, origin.y + h * iy}; }
    bool in(int ix, int iy) const {
        return ix >= 0 && iy >= 0 && ix < nx && iy < ny && mask[index(ix, iy)] != NodeMask::Exterior;
    }
    bool unknown(int ix, int iy) const { return in(ix, iy) && !pinned[index(ix, iy)]; }
    int in_count() const;
    double max_abs() const;
    /// max |du/dx|, |du/dy| one-sided difference over adjacent in-body
    /// node pairs; a Lipschitz estimate used for slack budgets.
    double lipschitz_estimate() const;
    GridFunction translated(Vec2 t) const;
};

/// Zero-valued masked grid over the body; bounding box padded by h.
/// Throws ResolutionError when h is not below a third of the inradius
/// estimate. Boundary arm fractions are found by bisection to 1e-10*h.
GridFunction discretize(const ConvexBody& body, double h);

/// Re-mask an existing grid layout against a body (used when loading
/// saved fields; identical procedure to discretize).
GridFunction make_grid(const ConvexBody& body, Vec2 origin, double h, int nx, int ny);

/// Bilinear interpolation; 0 outside the grid. Cells touching exterior
/// nodes blend against the stored zeros, consistent with u = 0 on the
/// boundary.
double sample(const GridFunction& gf, Vec2 x);

/// L^q norm over the body, q > 0 or +infinity. Finite q uses clipped
/// cell weights; q = infinity is the max over in-body nodes.
double lq_norm(const GridFunction& gf, double q);

/// Clipped cell area of {u >= t}.
double superlevel_measure(const GridFunction& gf, double t);

}  // namespace mwr
