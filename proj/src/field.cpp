#include "mwr/field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mwr/errors.hpp"

namespace mwr {

namespace {

constexpr double kPinThreshold = 1e-6;  // arm fraction below which a node is on the boundary

double inradius_estimate(const ConvexBody& body) {
    const std::vector<double>& h = body.support_samples();
    const int m = body.direction_count();
    double w = std::numeric_limits<double>::infinity();
    for (int j = 0; j < m / 2; ++j) w = std::min(w, 0.5 * (h[j] + h[j + m / 2]));
    return w;
}

// largest t in [0,1] with node + t*h*dir still inside, by bisection
double arm_fraction(const ConvexBody& body, Vec2 node, Vec2 dir, double h) {
    double lo = 0.0, hi = 1.0;
    while (hi - lo > 1e-10) {
        const double mid = 0.5 * (lo + hi);
        if (contains(body, node + (mid * h) * dir)) lo = mid; else hi = mid;
    }
    return lo;
}

}  // namespace

int GridFunction::in_count() const {
    int n = 0;
    for (NodeMask m : mask) n += (m != NodeMask::Exterior);
    return n;
}

double GridFunction::max_abs() const {
    double v = 0.0;
    for (int i = 0; i < nx * ny; ++i)
        if (mask[i] != NodeMask::Exterior) v = std::max(v, std::abs(values[i]));
    return v;
}

double GridFunction::lipschitz_estimate() const {
    double best = 0.0;
    for (int iy = 0; iy < ny; ++iy) {
        for (int ix = 0; ix < nx; ++ix) {
            if (!in(ix, iy)) continue;
            const double v = values[index(ix, iy)];
            if (ix + 1 < nx && in(ix + 1, iy)) best = std::max(best, std::abs(values[index(ix + 1, iy)] - v));
            if (iy + 1 < ny && in(ix, iy + 1)) best = std::max(best, std::abs(values[index(ix, iy + 1)] - v));
        }
    }
    return best / h;
}

GridFunction GridFunction::translated(Vec2 t) const {
    GridFunction out = *this;
    out.origin = origin + t;
    out.body = body.translated(t);
    return out;
}

GridFunction make_grid(const ConvexBody& body, Vec2 origin, double h, int nx, int ny) {
    GridFunction gf;
    gf.origin = origin;
    gf.h = h;
    gf.nx = nx;
    gf.ny = ny;
    gf.body = body;
    const int n = nx * ny;
    gf.values.assign(n, 0.0);
    gf.mask.assign(n, NodeMask::Exterior);
    gf.arms.assign(n, ArmSet{});
    gf.pinned.assign(n, 0);
    gf.cell_weight.assign(n, 0.0);

    std::vector<std::uint8_t> inside(n, 0);
    for (int iy = 0; iy < ny; ++iy)
        for (int ix = 0; ix < nx; ++ix)
            inside[gf.index(ix, iy)] = contains(body, gf.node(ix, iy)) ? 1 : 0;

    auto inside_at = [&](int ix, int iy) {
        return ix >= 0 && iy >= 0 && ix < nx && iy < ny && inside[gf.index(ix, iy)];
    };

    // first pass: arm fractions toward exterior neighbours, pinning
    static const Vec2 dirs[4] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
    for (int iy = 0; iy < ny; ++iy) {
        for (int ix = 0; ix < nx; ++ix) {
            const int id = gf.index(ix, iy);
            if (!inside[id]) continue;
            const Vec2 p = gf.node(ix, iy);
            ArmSet a;
            double* slot[4] = {&a.px, &a.mx, &a.py, &a.my};
            const int nbx[4] = {ix + 1, ix - 1, ix, ix};
            const int nby[4] = {iy, iy, iy + 1, iy - 1};
            bool on_boundary = false;
            for (int k = 0; k < 4; ++k) {
                if (inside_at(nbx[k], nby[k])) continue;
                const double f = arm_fraction(body, p, dirs[k], h);
                *slot[k] = f;
                if (f < kPinThreshold) on_boundary = true;
            }
            gf.arms[id] = a;
            gf.pinned[id] = on_boundary ? 1 : 0;
        }
    }

    // second pass: masks; a node bordering an exterior or pinned
    // neighbour is boundary-adjacent
    for (int iy = 0; iy < ny; ++iy) {
        for (int ix = 0; ix < nx; ++ix) {
            const int id = gf.index(ix, iy);
            if (!inside[id]) continue;
            const int nbx[4] = {ix + 1, ix - 1, ix, ix};
            const int nby[4] = {iy, iy, iy + 1, iy - 1};
            bool adjacent = gf.pinned[id] != 0;
            for (int k = 0; k < 4 && !adjacent; ++k) {
                if (!inside_at(nbx[k], nby[k]) || gf.pinned[gf.index(nbx[k], nby[k])]) adjacent = true;
            }
            gf.mask[id] = adjacent ? NodeMask::BoundaryAdjacent : NodeMask::Interior;
        }
    }

    // clipped cell weights; arms at pinned nodes are ~0 outward so the
    // cell naturally collapses onto its inward half
    for (int iy = 0; iy < ny; ++iy) {
        for (int ix = 0; ix < nx; ++ix) {
            const int id = gf.index(ix, iy);
            if (!inside[id]) continue;
            const ArmSet& a = gf.arms[id];
            const double hw_x = std::min(a.px, 0.5) + std::min(a.mx, 0.5);
            const double hw_y = std::min(a.py, 0.5) + std::min(a.my, 0.5);
            gf.cell_weight[id] = hw_x * hw_y * h * h;
        }
    }
    return gf;
}

GridFunction discretize(const ConvexBody& body, double h) {
    if (!(h > 0.0)) throw std::invalid_argument("discretize: h must be positive");
    const double inr = inradius_estimate(body);
    if (!(h < inr / 3.0)) throw ResolutionError("discretize: body too thin for grid spacing h");
    const auto [lo, hi] = body.bbox();
    const Vec2 origin{lo.x - h, lo.y - h};
    const int nx = static_cast<int>(std::ceil((hi.x + h - origin.x) / h)) + 1;
    const int ny = static_cast<int>(std::ceil((hi.y + h - origin.y) / h)) + 1;
    return make_grid(body, origin, h, nx, ny);
}

double sample(const GridFunction& gf, Vec2 x) {
    const double fx = (x.x - gf.origin.x) / gf.h;
    const double fy = (x.y - gf.origin.y) / gf.h;
    if (fx < 0.0 || fy < 0.0 || fx > gf.nx - 1 || fy > gf.ny - 1) return 0.0;
    int ix = static_cast<int>(fx);
    int iy = static_cast<int>(fy);
    ix = std::min(ix, gf.nx - 2);
    iy = std::min(iy, gf.ny - 2);
    const double tx = fx - ix;
    const double ty = fy - iy;
    const double v00 = gf.values[gf.index(ix, iy)];
    const double v10 = gf.values[gf.index(ix + 1, iy)];
    const double v01 = gf.values[gf.index(ix, iy + 1)];
    const double v11 = gf.values[gf.index(ix + 1, iy + 1)];
    return (1 - tx) * (1 - ty) * v00 + tx * (1 - ty) * v10 + (1 - tx) * ty * v01 + tx * ty * v11;
}

double lq_norm(const GridFunction& gf, double q) {
    if (!(q > 0.0)) throw std::invalid_argument("lq_norm: q must be positive or infinite");
    if (std::isinf(q)) {
        double v = 0.0;
        for (int i = 0; i < gf.nx * gf.ny; ++i)
            if (gf.mask[i] != NodeMask::Exterior) v = std::max(v, std::abs(gf.values[i]));
        return v;
    }
    double s = 0.0;
    for (int i = 0; i < gf.nx * gf.ny; ++i) {
        if (gf.mask[i] == NodeMask::Exterior) continue;
        s += std::pow(std::abs(gf.values[i]), q) * gf.cell_weight[i];
    }
    return std::pow(s, 1.0 / q);
}

double superlevel_measure(const GridFunction& gf, double t) {
    if (t < 0.0) throw std::invalid_argument("superlevel_measure: t must be >= 0");
    double s = 0.0;
    for (int i = 0; i < gf.nx * gf.ny; ++i) {
        if (gf.mask[i] == NodeMask::Exterior) continue;
        if (gf.values[i] >= t) s += gf.cell_weight[i];
    }
    return s;
}

}  // namespace mwr
