#include "mwr/pde.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "mwr/errors.hpp"
#include "mwr/rng.hpp"

namespace mwr {

namespace {

constexpr double kArmBisectTol = 1e-10;

}  // namespace

// ---------------------------------------------------------------------------
// SourceTerm / OperatorSpec

SourceTerm SourceTerm::constant(double c) {
    if (!(c >= 0.0)) throw std::invalid_argument("SourceTerm: constant must be nonnegative");
    SourceTerm s;
    s.kind = Kind::Constant;
    s.value = c;
    return s;
}

SourceTerm SourceTerm::radial(const std::string& profile_id) {
    if (profile_id != "gauss" && profile_id != "one_minus_r2" && profile_id != "r2")
        throw std::invalid_argument("SourceTerm: unknown radial profile '" + profile_id + "'");
    SourceTerm s;
    s.kind = Kind::Radial;
    s.profile = profile_id;
    return s;
}

SourceTerm SourceTerm::sampled(GridFunction g) {
    SourceTerm s;
    s.kind = Kind::Sampled;
    s.grid = std::make_shared<GridFunction>(std::move(g));
    return s;
}

double SourceTerm::eval(Vec2 x) const {
    switch (kind) {
        case Kind::Constant:
            return value;
        case Kind::Radial: {
            const double r2 = norm2(x);
            if (profile == "gauss") return std::exp(-r2);
            if (profile == "one_minus_r2") return std::max(1.0 - r2, 0.0);
            return r2;
        }
        case Kind::Sampled:
            return std::max(sample(*grid, x), 0.0);
    }
    return 0.0;
}

std::string SourceTerm::describe() const {
    switch (kind) {
        case Kind::Constant:
            return "constant " + std::to_string(value);
        case Kind::Radial:
            return "radial " + profile;
        case Kind::Sampled:
            return "sampled";
    }
    return "";
}

bool SourceTerm::same_as(const SourceTerm& other) const {
    if (kind != other.kind) return false;
    if (kind == Kind::Constant) return value == other.value;
    if (kind == Kind::Radial) return profile == other.profile;
    return grid == other.grid;
}

void OperatorSpec::validate() const {
    if (kind == OperatorKind::PucciMinus) {
        if (!(lambda > 0.0) || !(Lambda >= lambda))
            throw std::invalid_argument("OperatorSpec: need 0 < lambda <= Lambda");
        if (direction_count < 2) throw std::invalid_argument("OperatorSpec: direction_count must be >= 2");
    }
}

// ---------------------------------------------------------------------------
// Poisson

namespace {

struct PoissonNode {
    int id;
    int east, west, north, south;  // -1 when the arm ends on the boundary
    double ae, aw, an, as;
    double f;
};

std::vector<PoissonNode> build_poisson_stencils(const GridFunction& gf, const SourceTerm& f) {
    std::vector<PoissonNode> nodes;
    for (int iy = 0; iy < gf.ny; ++iy) {
        for (int ix = 0; ix < gf.nx; ++ix) {
            if (!gf.unknown(ix, iy)) continue;
            const int id = gf.index(ix, iy);
            const ArmSet& a = gf.arms[id];
            PoissonNode n;
            n.id = id;
            n.ae = a.px;
            n.aw = a.mx;
            n.an = a.py;
            n.as = a.my;
            n.east = gf.unknown(ix + 1, iy) ? gf.index(ix + 1, iy) : -1;
            n.west = gf.unknown(ix - 1, iy) ? gf.index(ix - 1, iy) : -1;
            n.north = gf.unknown(ix, iy + 1) ? gf.index(ix, iy + 1) : -1;
            n.south = gf.unknown(ix, iy - 1) ? gf.index(ix, iy - 1) : -1;
            n.f = f.eval(gf.node(ix, iy));
            nodes.push_back(n);
        }
    }
    return nodes;
}

double max_source(const std::vector<PoissonNode>& nodes) {
    double m = 0.0;
    for (const PoissonNode& n : nodes) m = std::max(m, std::abs(n.f));
    return m;
}

}  // namespace

GridFunction solve_poisson(const ConvexBody& body, const SourceTerm& f, const SolveParams& params) {
    GridFunction gf = discretize(body, params.h);
    const std::vector<PoissonNode> nodes = build_poisson_stencils(gf, f);
    const double h2 = gf.h * gf.h;
    const double tol = params.resolved_tol() * std::max(1.0, max_source(nodes));
    const double omega = params.relaxation;
    std::vector<double>& u = gf.values;

    double residual = std::numeric_limits<double>::infinity();
    for (int iter = 0; iter < params.max_iters; ++iter) {
        residual = 0.0;
        for (const PoissonNode& n : nodes) {
            const double ue = n.east >= 0 ? u[n.east] : 0.0;
            const double uw = n.west >= 0 ? u[n.west] : 0.0;
            const double un = n.north >= 0 ? u[n.north] : 0.0;
            const double us = n.south >= 0 ? u[n.south] : 0.0;
            const double lap =
                (2.0 / h2) * (ue / (n.ae * (n.ae + n.aw)) + uw / (n.aw * (n.ae + n.aw)) - u[n.id] / (n.ae * n.aw)) +
                (2.0 / h2) * (un / (n.an * (n.an + n.as)) + us / (n.as * (n.an + n.as)) - u[n.id] / (n.an * n.as));
            const double r = lap + n.f;
            const double diag = (2.0 / h2) * (1.0 / (n.ae * n.aw) + 1.0 / (n.an * n.as));
            residual = std::max(residual, std::abs(r));
            u[n.id] += omega * r / diag;
        }
        if (residual <= tol) {
            for (double& v : u)
                if (v < 0.0 && v > -10.0 * tol) v = 0.0;
            return gf;
        }
    }
    throw SolverError("solve_poisson: no convergence within max_iters (residual " + std::to_string(residual) + ")",
                      residual);
}

std::vector<double> laplacian_apply(const GridFunction& gf, const SourceTerm& f) {
    const std::vector<PoissonNode> nodes = build_poisson_stencils(gf, f);
    const double h2 = gf.h * gf.h;
    std::vector<double> out(gf.values.size(), 0.0);
    const std::vector<double>& u = gf.values;
    for (const PoissonNode& n : nodes) {
        const double ue = n.east >= 0 ? u[n.east] : 0.0;
        const double uw = n.west >= 0 ? u[n.west] : 0.0;
        const double un = n.north >= 0 ? u[n.north] : 0.0;
        const double us = n.south >= 0 ? u[n.south] : 0.0;
        out[n.id] =
            (2.0 / h2) * (ue / (n.ae * (n.ae + n.aw)) + uw / (n.aw * (n.ae + n.aw)) - u[n.id] / (n.ae * n.aw)) +
            (2.0 / h2) * (un / (n.an * (n.an + n.as)) + us / (n.as * (n.an + n.as)) - u[n.id] / (n.an * n.as)) +
            n.f;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Pucci wide stencil

namespace {

// One directional arm: either an interpolated interior point (4 corner
// nodes with bilinear weights) or a boundary hit at fraction alpha of
// the full arm length (value 0 there).
struct PucciArm {
    double alpha = 1.0;
    int c[4] = {-1, -1, -1, -1};
    double w[4] = {0, 0, 0, 0};
};

struct PucciNode {
    int id;
    double f;
    std::vector<PucciArm> arms;  // 4 per frame: +e, -e, +e_perp, -e_perp
};

struct PucciScheme {
    std::vector<PucciNode> nodes;
    int frames;
    double s;  // arm length
};

double boundary_fraction(const ConvexBody& body, Vec2 from, Vec2 dir, double len) {
    double lo = 0.0, hi = 1.0;
    while (hi - lo > kArmBisectTol) {
        const double mid = 0.5 * (lo + hi);
        if (contains(body, from + (mid * len) * dir)) lo = mid; else hi = mid;
    }
    return std::max(lo, 1e-9);
}

PucciArm make_arm(const GridFunction& gf, Vec2 from, Vec2 dir, double len) {
    PucciArm arm;
    const Vec2 q = from + len * dir;
    if (!contains(gf.body, q)) {
        arm.alpha = boundary_fraction(gf.body, from, dir, len);
        return arm;
    }
    const double fx = (q.x - gf.origin.x) / gf.h;
    const double fy = (q.y - gf.origin.y) / gf.h;
    int ix = std::clamp(static_cast<int>(fx), 0, gf.nx - 2);
    int iy = std::clamp(static_cast<int>(fy), 0, gf.ny - 2);
    const double tx = fx - ix;
    const double ty = fy - iy;
    arm.c[0] = gf.index(ix, iy);
    arm.c[1] = gf.index(ix + 1, iy);
    arm.c[2] = gf.index(ix, iy + 1);
    arm.c[3] = gf.index(ix + 1, iy + 1);
    arm.w[0] = (1 - tx) * (1 - ty);
    arm.w[1] = tx * (1 - ty);
    arm.w[2] = (1 - tx) * ty;
    arm.w[3] = tx * ty;
    return arm;
}

PucciScheme build_pucci_scheme(const GridFunction& gf, const OperatorSpec& spec, int stencil_mult) {
    PucciScheme scheme;
    scheme.frames = spec.direction_count;
    scheme.s = stencil_mult * gf.h;
    const int K = scheme.frames;
    for (int iy = 0; iy < gf.ny; ++iy) {
        for (int ix = 0; ix < gf.nx; ++ix) {
            if (!gf.unknown(ix, iy)) continue;
            PucciNode node;
            node.id = gf.index(ix, iy);
            node.f = spec.source.eval(gf.node(ix, iy));
            node.arms.reserve(4 * K);
            const Vec2 p = gf.node(ix, iy);
            for (int k = 0; k < K; ++k) {
                const double theta = std::numbers::pi * k / (2.0 * K);
                const Vec2 e{std::cos(theta), std::sin(theta)};
                const Vec2 ep{-e.y, e.x};
                node.arms.push_back(make_arm(gf, p, e, scheme.s));
                node.arms.push_back(make_arm(gf, p, -e, scheme.s));
                node.arms.push_back(make_arm(gf, p, ep, scheme.s));
                node.arms.push_back(make_arm(gf, p, -ep, scheme.s));
            }
            scheme.nodes.push_back(std::move(node));
        }
    }
    return scheme;
}

double arm_value(const PucciArm& arm, const std::vector<double>& u) {
    if (arm.c[0] < 0) return 0.0;
    return arm.w[0] * u[arm.c[0]] + arm.w[1] * u[arm.c[1]] + arm.w[2] * u[arm.c[2]] + arm.w[3] * u[arm.c[3]];
}

// directional second difference with Shortley-Weller arm lengths
inline double second_difference(double vplus, double vminus, double ucenter, double lp, double lm) {
    return 2.0 * (vplus / (lp * (lp + lm)) + vminus / (lm * (lm + lp)) - ucenter / (lp * lm));
}

// scheme value min_k frame_k; when root_out is given it receives the
// smallest per-frame root of frame_k(center) + f = 0 (each frame is
// decreasing in the center value, so that min is the root of the full
// scheme; branch weights are taken at the current iterate)
double scheme_value_at(const PucciNode& node, const PucciScheme& scheme, const OperatorSpec& spec,
                       const std::vector<double>& u, double* root_out = nullptr) {
    const double s = scheme.s;
    double best = std::numeric_limits<double>::infinity();
    double best_root = std::numeric_limits<double>::infinity();
    for (int k = 0; k < scheme.frames; ++k) {
        double frame = 0.0;
        double rhs = node.f;
        double diag = 0.0;
        for (int d = 0; d < 2; ++d) {
            const PucciArm& ap = node.arms[4 * k + 2 * d];
            const PucciArm& am = node.arms[4 * k + 2 * d + 1];
            const double lp = ap.alpha * s;
            const double lm = am.alpha * s;
            const double vp = arm_value(ap, u);
            const double vm = arm_value(am, u);
            const double dd = second_difference(vp, vm, u[node.id], lp, lm);
            const double c = dd >= 0.0 ? spec.lambda : spec.Lambda;
            frame += c * dd;
            rhs += c * 2.0 * (vp / (lp * (lp + lm)) + vm / (lm * (lm + lp)));
            diag += c * 2.0 / (lp * lm);
        }
        best = std::min(best, frame);
        best_root = std::min(best_root, rhs / diag);
    }
    if (root_out) *root_out = best_root;
    return best;
}

}  // namespace

std::vector<double> pucci_apply(const GridFunction& gf, const OperatorSpec& spec, int stencil_mult) {
    spec.validate();
    const PucciScheme scheme = build_pucci_scheme(gf, spec, stencil_mult);
    std::vector<double> out(gf.values.size(), 0.0);
    for (const PucciNode& node : scheme.nodes) out[node.id] = scheme_value_at(node, scheme, spec, gf.values);
    return out;
}

GridFunction solve_pucci(const ConvexBody& body, const OperatorSpec& spec, const SolveParams& params) {
    spec.validate();
    if (spec.kind != OperatorKind::PucciMinus) throw std::invalid_argument("solve_pucci: spec must be pucci_minus");
    GridFunction gf = discretize(body, params.h);
    const double h2 = gf.h * gf.h;
    const double dt_bound = h2 / (4.0 * spec.Lambda);
    const double dt = params.pseudo_dt > 0 ? params.pseudo_dt : params.dt_safety * dt_bound;
    if (dt > dt_bound * (1.0 + 1e-12))
        throw std::invalid_argument("solve_pucci: pseudo_dt violates the stability bound h^2/(4 Lambda)");

    const PucciScheme scheme = build_pucci_scheme(gf, spec, params.stencil_mult);
    double fmax = 0.0;
    for (const PucciNode& n : scheme.nodes) fmax = std::max(fmax, std::abs(n.f));
    const double tol = params.resolved_tol() * std::max(1.0, fmax);
    std::vector<double>& u = gf.values;

    // per-node monotone step bound; boundary arms need smaller steps
    // than the interior h^2/(4 Lambda)
    std::vector<double> dt_node(scheme.nodes.size());
    for (std::size_t i = 0; i < scheme.nodes.size(); ++i) {
        const PucciNode& node = scheme.nodes[i];
        double worst = 0.0;
        for (int k = 0; k < scheme.frames; ++k) {
            double c = 0.0;
            for (int d = 0; d < 2; ++d) {
                const PucciArm& ap = node.arms[4 * k + 2 * d];
                const PucciArm& am = node.arms[4 * k + 2 * d + 1];
                c += 2.0 / (ap.alpha * scheme.s * am.alpha * scheme.s);
            }
            worst = std::max(worst, spec.Lambda * c);
        }
        dt_node[i] = std::min(dt, params.dt_safety / worst);
    }

    double residual = std::numeric_limits<double>::infinity();
    double best_residual = std::numeric_limits<double>::infinity();
    double omega = params.pucci_relaxation;
    int stall = 0;
    std::vector<double> rhs(params.pucci_marching ? scheme.nodes.size() : 0);
    for (int iter = 0; iter < params.max_iters; ++iter) {
        residual = 0.0;
        if (params.pucci_marching) {
            // forward Euler in pseudo-time
            for (std::size_t i = 0; i < scheme.nodes.size(); ++i)
                rhs[i] = scheme_value_at(scheme.nodes[i], scheme, spec, u) + scheme.nodes[i].f;
            for (std::size_t i = 0; i < scheme.nodes.size(); ++i) {
                residual = std::max(residual, std::abs(rhs[i]));
                u[scheme.nodes[i].id] += dt_node[i] * rhs[i];
            }
        } else {
            // nonlinear SOR sweeps toward the local Bellman root; drop
            // the over-relaxation if the residual stalls (frame
            // switching can limit-cycle at omega > 1)
            for (const PucciNode& node : scheme.nodes) {
                double root = 0.0;
                const double r = scheme_value_at(node, scheme, spec, u, &root) + node.f;
                residual = std::max(residual, std::abs(r));
                u[node.id] += omega * (root - u[node.id]);
            }
            if (residual < best_residual) {
                best_residual = residual;
                stall = 0;
            } else if (++stall >= 50 && omega > 1.0) {
                omega = 1.0;
                stall = 0;
            }
        }
        if (residual <= tol) {
            for (double& v : u)
                if (v < 0.0 && v > -10.0 * tol) v = 0.0;
            return gf;
        }
    }
    throw SolverError("solve_pucci: no convergence within max_iters (residual " + std::to_string(residual) + ")",
                      residual);
}

// ---------------------------------------------------------------------------
// diagnostics

double torsional_rigidity(const GridFunction& gf) { return lq_norm(gf, 1.0); }

namespace {

Vec2 nearest_boundary_point(const ConvexBody& body, Vec2 p) {
    // walk outward along the distance gradient estimated by central
    // differences; one Newton-ish step is enough for the corner test
    const double d = boundary_distance(body, p);
    const double eps = 1e-6;
    const double gx = (boundary_distance(body, {p.x + eps, p.y}) - boundary_distance(body, {p.x - eps, p.y})) / (2 * eps);
    const double gy = (boundary_distance(body, {p.x, p.y + eps}) - boundary_distance(body, {p.x, p.y - eps})) / (2 * eps);
    const double g = std::hypot(gx, gy);
    if (g < 1e-12) return p;
    return p - (d / g) * Vec2{gx, gy};
}

double nearest_vertex_distance(const ConvexBody& body, Vec2 p) {
    const std::vector<Vec2>* corners = nullptr;
    if (body.kind() == BodyKind::Polygon) corners = &body.vertices();
    else if (body.has_offset_form() && body.offset_radius() == 0.0) corners = &body.offset_core();
    if (!corners) return std::numeric_limits<double>::infinity();  // smooth boundary
    double d = std::numeric_limits<double>::infinity();
    for (const Vec2& v : *corners) d = std::min(d, norm(p - v));
    return d;
}

}  // namespace

HopfReport hopf_boundary_check(const GridFunction& gf, double corner_exclusion) {
    if (corner_exclusion < 0) corner_exclusion = gf.h;
    HopfReport rep;
    rep.min_slope = std::numeric_limits<double>::infinity();
    for (int iy = 0; iy < gf.ny; ++iy) {
        for (int ix = 0; ix < gf.nx; ++ix) {
            const int id = gf.index(ix, iy);
            if (gf.mask[id] != NodeMask::BoundaryAdjacent || gf.pinned[id]) continue;
            const Vec2 p = gf.node(ix, iy);
            const double d = boundary_distance(gf.body, p);
            if (d < 0.3 * gf.h) {
                ++rep.excluded;
                continue;
            }
            const Vec2 q = nearest_boundary_point(gf.body, p);
            if (nearest_vertex_distance(gf.body, q) < corner_exclusion) {
                ++rep.excluded;
                continue;
            }
            ++rep.tested;
            rep.min_slope = std::min(rep.min_slope, gf.values[id] / d);
        }
    }
    if (rep.tested == 0) rep.min_slope = 0.0;
    rep.pass = rep.tested > 0 && rep.min_slope > 0.0;
    return rep;
}

double pucci_minus_value(double lambda, double Lambda, const Sym2& a) {
    const double mean = 0.5 * (a.xx + a.yy);
    const double dev = std::hypot(0.5 * (a.xx - a.yy), a.xy);
    const double e1 = mean + dev;
    const double e2 = mean - dev;
    double v = 0.0;
    v += e1 > 0 ? lambda * e1 : Lambda * e1;
    v += e2 > 0 ? lambda * e2 : Lambda * e2;
    return v;
}

namespace {

double operator_value(const OperatorSpec& spec, Vec2 x, const Sym2& hess) {
    const double f = spec.source.eval(x);
    if (spec.kind == OperatorKind::Poisson) return hess.xx + hess.yy + f;
    return pucci_minus_value(spec.lambda, spec.Lambda, hess) + f;
}

}  // namespace

double transformed_operator_value(const OperatorSpec& spec, double p, Vec2 theta, Vec2 x, double t,
                                  const Sym2& a) {
    if (!(p >= 0.0)) throw std::invalid_argument("transformed_operator_value: p must be >= 0");
    (void)theta;  // the implemented operators have no gradient dependence
    if (p == 0.0) {
        const double scale = std::exp(t);
        return operator_value(spec, x, {scale * a.xx, scale * a.xy, scale * a.yy});
    }
    if (!(t > 0.0)) throw std::invalid_argument("transformed_operator_value: t must be positive for p > 0");
    const double scale = std::pow(t, 1.0 / p - 3.0);
    return operator_value(spec, x, {scale * a.xx, scale * a.xy, scale * a.yy});
}

namespace {

// g_p of the combination condition, for sources f = f(x)
double source_g(const SourceTerm& f, double p, Vec2 x, double t) {
    if (p == 0.0) return std::exp(-t) * f.eval(x);
    return std::pow(t, 3.0 - 1.0 / p) * f.eval(x);
}

}  // namespace

SourceConditionReport check_source_condition(const SourceTerm& f0, const ConvexBody& b0, const SourceTerm& f1,
                                             const ConvexBody& b1, const SourceTerm& fmu, double mu, double p,
                                             std::uint64_t seed, int samples) {
    if (!(mu > 0.0 && mu < 1.0)) throw std::invalid_argument("check_source_condition: mu must lie in (0,1)");
    if (!(p >= 0.0)) throw std::invalid_argument("check_source_condition: p must be >= 0");
    Rng rng(seed);
    SourceConditionReport rep;
    rep.min_slack = std::numeric_limits<double>::infinity();
    for (int i = 0; i < samples; ++i) {
        const Vec2 x0 = rng.point_in(b0);
        const Vec2 x1 = rng.point_in(b1);
        const double t0 = rng.uniform(0.05, 4.0);
        const double t1 = rng.uniform(0.05, 4.0);
        const double lhs = source_g(fmu, p, (1.0 - mu) * x0 + mu * x1, (1.0 - mu) * t0 + mu * t1);
        const double rhs = (1.0 - mu) * source_g(f0, p, x0, t0) + mu * source_g(f1, p, x1, t1);
        const double slack = lhs - rhs;
        if (slack < rep.min_slack) {
            rep.min_slack = slack;
            rep.witness_x0 = x0;
            rep.witness_x1 = x1;
            rep.witness_t0 = t0;
            rep.witness_t1 = t1;
        }
    }
    const double tol = 1e-9;
    rep.pass = rep.min_slack >= -tol;
    if (f0.same_as(f1) && f0.same_as(fmu)) {
        rep.midpoint_checked = true;
        rep.midpoint_min_slack = std::numeric_limits<double>::infinity();
        for (int i = 0; i < samples; ++i) {
            const Vec2 x0 = rng.point_in(b0);
            const Vec2 x1 = rng.point_in(b0);
            const Vec2 mid = 0.5 * (x0 + x1);
            const double slack = f0.eval(mid) - 0.5 * (f0.eval(x0) + f0.eval(x1));
            if (slack < rep.midpoint_min_slack) {
                rep.midpoint_min_slack = slack;
                rep.midpoint_witness = mid;
            }
        }
        rep.pass = rep.pass && rep.midpoint_min_slack >= -tol;
    }
    return rep;
}

LevelSetConvexityReport check_transform_levelset_convexity(const OperatorSpec& spec, double p, std::uint64_t seed,
                                                           int samples) {
    if (!(p > 0.0)) throw std::invalid_argument("check_transform_levelset_convexity: p must be positive");
    Rng rng(seed);
    LevelSetConvexityReport rep;
    rep.min_slack = std::numeric_limits<double>::infinity();
    const Vec2 x{0.0, 0.0};
    for (int i = 0; i < samples; ++i) {
        // draw two points on the zero set: random Hessian directions,
        // trace rescaled so that G(x, t, A) = 0
        auto on_zero_set = [&](double t) {
            Sym2 a{rng.uniform(-1.0, 1.0), rng.uniform(-0.5, 0.5), rng.uniform(-1.0, 1.0)};
            // shift the xx entry until the transformed value vanishes
            for (int it = 0; it < 60; ++it) {
                const double v = transformed_operator_value(spec, p, {0, 0}, x, t, a);
                if (std::abs(v) < 1e-12) break;
                const double vxx = transformed_operator_value(spec, p, {0, 0}, x, t, {a.xx + 1e-4, a.xy, a.yy});
                const double dv = (vxx - v) / 1e-4;
                if (std::abs(dv) < 1e-12) break;
                a.xx -= v / dv;
            }
            return a;
        };
        const double t0 = rng.uniform(0.2, 3.0);
        const double t1 = rng.uniform(0.2, 3.0);
        const Sym2 a0 = on_zero_set(t0);
        const Sym2 a1 = on_zero_set(t1);
        const double tm = 0.5 * (t0 + t1);
        const Sym2 am{0.5 * (a0.xx + a1.xx), 0.5 * (a0.xy + a1.xy), 0.5 * (a0.yy + a1.yy)};
        const double v = transformed_operator_value(spec, p, {0, 0}, x, tm, am);
        rep.min_slack = std::min(rep.min_slack, v);
    }
    rep.pass = rep.min_slack >= -1e-7;
    return rep;
}

}  // namespace mwr
