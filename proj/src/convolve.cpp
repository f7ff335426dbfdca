#include "mwr/convolve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "mwr/errors.hpp"

namespace mwr {

namespace {

// The scan maximizes a strictly monotone transform of M_p instead of
// M_p itself: (1-mu) a^p + mu b^p for p > 0 and the weighted log for
// p = 0. Candidate ranking is unchanged and the per-candidate cost
// drops to one pow (sqrt/cbrt fast paths for the common exponents).
enum class PowKind { Half, Third, One, Log, General };

PowKind classify(double p) {
    if (p == 0.5) return PowKind::Half;
    if (p == 1.0) return PowKind::One;
    if (p == 0.0) return PowKind::Log;
    if (std::abs(p - 1.0 / 3.0) < 1e-15) return PowKind::Third;
    return PowKind::General;
}

double bilinear(const GridFunction& gf, double x, double y) {
    const double fx = (x - gf.origin.x) / gf.h;
    const double fy = (y - gf.origin.y) / gf.h;
    if (fx < 0.0 || fy < 0.0 || fx > gf.nx - 1 || fy > gf.ny - 1) return 0.0;
    int ix = std::min(static_cast<int>(fx), gf.nx - 2);
    int iy = std::min(static_cast<int>(fy), gf.ny - 2);
    const double tx = fx - ix;
    const double ty = fy - iy;
    const double* v = gf.values.data();
    const int i0 = ix + gf.nx * iy;
    return (1 - tx) * ((1 - ty) * v[i0] + ty * v[i0 + gf.nx]) +
           tx * ((1 - ty) * v[i0 + 1] + ty * v[i0 + 1 + gf.nx]);
}

// contiguous in-body index range per grid row; {1, 0} when empty
std::vector<std::pair<int, int>> row_ranges(const GridFunction& gf) {
    std::vector<std::pair<int, int>> r(gf.ny, {1, 0});
    for (int iy = 0; iy < gf.ny; ++iy) {
        int lo = -1, hi = -2;
        for (int ix = 0; ix < gf.nx; ++ix) {
            if (gf.mask[gf.index(ix, iy)] != NodeMask::Exterior) {
                if (lo < 0) lo = ix;
                hi = ix;
            }
        }
        if (lo >= 0) r[iy] = {lo, hi};
    }
    return r;
}

struct Candidate {
    double score = -std::numeric_limits<double>::infinity();
    bool found = false;
    Vec2 x0{}, x1{};
    double v0 = 0.0, v1 = 0.0;
};

// lazily cached x-intervals of `body` at the heights induced by a
// (target row, source row) pair
class IntervalCache {
public:
    IntervalCache(const ConvexBody& body, int target_rows, int source_rows)
        : body_(body), rows_(source_rows), data_(static_cast<std::size_t>(target_rows) * source_rows) {}

    const std::pair<double, double>& get(int it, int is, double y) {
        Entry& e = data_[static_cast<std::size_t>(it) * rows_ + is];
        if (!e.ready) {
            e.iv = x_interval_at_height(body_, y);
            e.ready = true;
        }
        return e.iv;
    }

private:
    struct Entry {
        bool ready = false;
        std::pair<double, double> iv{1.0, 0.0};
    };
    const ConvexBody& body_;
    int rows_;
    std::vector<Entry> data_;
};

struct ScanContext {
    const GridFunction* nodes_field;    // x iterates over this field's nodes
    const GridFunction* sampled_field;  // the partner evaluated bilinearly
    const std::vector<std::pair<int, int>>* node_rows;
    std::vector<double> node_pow;       // transform of nodes_field values
    double w_node = 0.5, w_samp = 0.5;  // transform weights (node side, sampled side)
    double c_node = 0.5, c_samp = 0.5;  // x = c_node * x_node + c_samp * x_samp
    bool node_is_u0 = true;
    double margin = 1e-6;
};

template <class Pow>
void scan_direction(const ScanContext& ctx, IntervalCache& cache, Vec2 xbar, int target_row, Pow&& powp,
                    Candidate& best) {
    const GridFunction& nf = *ctx.nodes_field;
    const GridFunction& sf = *ctx.sampled_field;
    const double inv_c = 1.0 / ctx.c_samp;
    for (int iy = 0; iy < nf.ny; ++iy) {
        const auto [rlo, rhi] = (*ctx.node_rows)[iy];
        if (rlo > rhi) continue;
        const double y_node = nf.origin.y + nf.h * iy;
        const double y_samp = inv_c * (xbar.y - ctx.c_node * y_node);
        const auto& iv = cache.get(target_row, iy, y_samp);
        if (iv.first > iv.second) continue;
        // derived sampled x decreases as the node x grows
        const double x_node_lo = (xbar.x - ctx.c_samp * iv.second) / ctx.c_node;
        const double x_node_hi = (xbar.x - ctx.c_samp * iv.first) / ctx.c_node;
        int ilo = static_cast<int>(std::ceil((x_node_lo - nf.origin.x) / nf.h - 1e-9));
        int ihi = static_cast<int>(std::floor((x_node_hi - nf.origin.x) / nf.h + 1e-9));
        ilo = std::max(ilo, rlo);
        ihi = std::min(ihi, rhi);
        const double safe_lo = iv.first + ctx.margin;
        const double safe_hi = iv.second - ctx.margin;
        for (int ix = ilo; ix <= ihi; ++ix) {
            const double xn = nf.origin.x + nf.h * ix;
            const double xs = inv_c * (xbar.x - ctx.c_node * xn);
            if (xs < safe_lo || xs > safe_hi) {
                if (!contains(sf.body, {xs, y_samp})) continue;
            }
            const double vs = bilinear(sf, xs, y_samp);
            const double score = ctx.w_node * ctx.node_pow[ix + nf.nx * iy] + ctx.w_samp * powp(vs);
            if (score > best.score || !best.found) {
                best.score = score;
                best.found = true;
                const Vec2 pn{xn, y_node};
                const Vec2 ps{xs, y_samp};
                best.x0 = ctx.node_is_u0 ? pn : ps;
                best.x1 = ctx.node_is_u0 ? ps : pn;
                best.v0 = ctx.node_is_u0 ? nf.values[ix + nf.nx * iy] : vs;
                best.v1 = ctx.node_is_u0 ? vs : nf.values[ix + nf.nx * iy];
            }
        }
    }
}

template <class Pow>
ConvolutionResult convolve_with(const GridFunction& u0, const GridFunction& u1, double mu, double p,
                                double h_out, Pow&& powp) {
    const ConvexBody target_body = minkowski_combine(u0.body, u1.body, mu);
    const double h = h_out > 0 ? h_out : std::max(u0.h, u1.h);
    ConvolutionResult res;
    res.field = discretize(target_body, h);
    res.spec = PMeanSpec::binary(p, mu);
    res.mu = mu;
    res.p = p;
    const int n = res.field.nx * res.field.ny;
    res.argmax_x0.assign(n, Vec2{});
    res.argmax_x1.assign(n, Vec2{});

    const std::vector<std::pair<int, int>> rows0 = row_ranges(u0);
    const std::vector<std::pair<int, int>> rows1 = row_ranges(u1);

    auto make_pow_table = [&](const GridFunction& gf) {
        std::vector<double> t(gf.values.size(), -std::numeric_limits<double>::infinity());
        for (int iy = 0; iy < gf.ny; ++iy)
            for (int ix = 0; ix < gf.nx; ++ix)
                if (gf.mask[gf.index(ix, iy)] != NodeMask::Exterior)
                    t[gf.index(ix, iy)] = powp(gf.values[gf.index(ix, iy)]);
        return t;
    };

    const auto [b1lo, b1hi] = u1.body.bbox();
    const auto [b0lo, b0hi] = u0.body.bbox();
    const double margin1 = 1e-6 * std::max(1.0, std::max(std::abs(b1lo.x), std::abs(b1hi.x)));
    const double margin0 = 1e-6 * std::max(1.0, std::max(std::abs(b0lo.x), std::abs(b0hi.x)));

    ScanContext fwd;
    fwd.nodes_field = &u0;
    fwd.sampled_field = &u1;
    fwd.node_rows = &rows0;
    fwd.node_pow = make_pow_table(u0);
    fwd.w_node = 1.0 - mu;
    fwd.w_samp = mu;
    fwd.c_node = 1.0 - mu;
    fwd.c_samp = mu;
    fwd.node_is_u0 = true;
    fwd.margin = margin1;

    ScanContext rev;
    rev.nodes_field = &u1;
    rev.sampled_field = &u0;
    rev.node_rows = &rows1;
    rev.node_pow = make_pow_table(u1);
    rev.w_node = mu;
    rev.w_samp = 1.0 - mu;
    rev.c_node = mu;
    rev.c_samp = 1.0 - mu;
    rev.node_is_u0 = false;
    rev.margin = margin0;

    IntervalCache cache_fwd(u1.body, res.field.ny, u0.ny);
    IntervalCache cache_rev(u0.body, res.field.ny, u1.ny);

    GridFunction& out = res.field;
    for (int iy = 0; iy < out.ny; ++iy) {
        for (int ix = 0; ix < out.nx; ++ix) {
            const int id = out.index(ix, iy);
            if (out.mask[id] == NodeMask::Exterior) continue;
            if (out.pinned[id]) {
                out.values[id] = 0.0;  // on the boundary of the combination
                continue;
            }
            const Vec2 xbar = out.node(ix, iy);
            Candidate best;
            scan_direction(fwd, cache_fwd, xbar, iy, powp, best);
            if (!best.found) scan_direction(rev, cache_rev, xbar, iy, powp, best);
            if (!best.found) {
                if (out.mask[id] == NodeMask::Interior)
                    throw InternalError("convolve_binary: no admissible splitting at an interior node");
                out.values[id] = 0.0;
                continue;
            }
            out.values[id] = p_mean(best.v0, best.v1, mu, p);
            res.argmax_x0[id] = best.x0;
            res.argmax_x1[id] = best.x1;
        }
    }
    return res;
}

}  // namespace

ConvolutionResult convolve_binary(const GridFunction& u0, const GridFunction& u1, double mu, double p,
                                  double h_out) {
    if (!(mu > 0.0 && mu < 1.0)) throw std::invalid_argument("convolve_binary: mu must lie in (0,1)");
    if (!(p >= 0.0 && p < 1.0)) throw std::invalid_argument("convolve_binary: p must lie in [0,1)");
    switch (classify(p)) {
        case PowKind::Half:
            return convolve_with(u0, u1, mu, p, h_out, [](double v) { return std::sqrt(v); });
        case PowKind::Third:
            return convolve_with(u0, u1, mu, p, h_out, [](double v) { return std::cbrt(v); });
        case PowKind::One:
            return convolve_with(u0, u1, mu, p, h_out, [](double v) { return v; });
        case PowKind::Log:
            return convolve_with(u0, u1, mu, p, h_out, [](double v) { return std::log(v); });
        case PowKind::General:
            break;
    }
    return convolve_with(u0, u1, mu, p, h_out, [p](double v) { return std::pow(v, p); });
}

ConvolutionResult convolve_multi(const std::vector<GridFunction>& fields, const PMeanSpec& weights,
                                 double p, double h_out) {
    if (fields.size() < 2) throw std::invalid_argument("convolve_multi: need at least two fields");
    if (fields.size() != weights.weights.size())
        throw std::invalid_argument("convolve_multi: fields/weights length mismatch");
    if (!(p >= 0.0 && p < 1.0)) throw std::invalid_argument("convolve_multi: p must lie in [0,1)");
    double wsum = weights.weights[0];
    ConvolutionResult acc;
    acc.field = fields[0];
    for (std::size_t k = 1; k < fields.size(); ++k) {
        const double wk = weights.weights[k];
        const double mu_k = wk / (wsum + wk);
        acc = convolve_binary(acc.field, fields[k], mu_k, p, h_out);
        wsum += wk;
    }
    return acc;
}

MonotonePReport monotone_in_p_check(const GridFunction& u0, const GridFunction& u1, double mu,
                                    std::vector<double> p_list, double h_out) {
    if (!std::is_sorted(p_list.begin(), p_list.end()))
        throw std::invalid_argument("monotone_in_p_check: p_list must be ascending");
    MonotonePReport rep;
    rep.p_list = p_list;
    for (double p : p_list) rep.fields.push_back(convolve_binary(u0, u1, mu, p, h_out).field);
    for (std::size_t k = 1; k < rep.fields.size(); ++k) {
        const GridFunction& a = rep.fields[k - 1];
        const GridFunction& b = rep.fields[k];
        for (std::size_t i = 0; i < a.values.size(); ++i) {
            if (a.mask[i] == NodeMask::Exterior) continue;
            rep.max_violation = std::max(rep.max_violation, a.values[i] - b.values[i]);
        }
    }
    rep.pass = rep.max_violation <= 1e-12;
    return rep;
}

namespace {

Vec2 sampled_gradient(const GridFunction& gf, Vec2 x) {
    const double d = gf.h;
    return {(bilinear(gf, x.x + d, x.y) - bilinear(gf, x.x - d, x.y)) / (2 * d),
            (bilinear(gf, x.x, x.y + d) - bilinear(gf, x.x, x.y - d)) / (2 * d)};
}

double corner_distance(const ConvexBody& body, Vec2 x) {
    const std::vector<Vec2>* corners = nullptr;
    if (body.kind() == BodyKind::Polygon) corners = &body.vertices();
    else if (body.has_offset_form() && body.offset_radius() == 0.0) corners = &body.offset_core();
    if (!corners) return std::numeric_limits<double>::infinity();
    double d = std::numeric_limits<double>::infinity();
    for (const Vec2& v : *corners) d = std::min(d, norm(x - v));
    return d;
}

}  // namespace

LagrangeReport lagrange_diagnostic(const ConvolutionResult& result, const GridFunction& u0,
                                   const GridFunction& u1, double p) {
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("lagrange_diagnostic: p must lie in (0,1)");
    LagrangeReport rep;
    const GridFunction& out = result.field;
    int below = 0;
    for (int iy = 0; iy < out.ny; ++iy) {
        for (int ix = 0; ix < out.nx; ++ix) {
            const int id = out.index(ix, iy);
            if (out.mask[id] == NodeMask::Exterior || out.pinned[id]) continue;
            if (boundary_distance(out.body, out.node(ix, iy)) <= 4.0 * out.h) continue;
            const Vec2 x0 = result.argmax_x0[id];
            const Vec2 x1 = result.argmax_x1[id];
            // gradient stencils need room, and polygon corners are
            // excluded: the boundary slope hypothesis is unreliable there
            if (boundary_distance(u0.body, x0) <= 2.0 * u0.h || boundary_distance(u1.body, x1) <= 2.0 * u1.h ||
                corner_distance(u0.body, x0) < u0.h || corner_distance(u1.body, x1) < u1.h) {
                ++rep.excluded;
                continue;
            }
            const double a = bilinear(u0, x0.x, x0.y);
            const double b = bilinear(u1, x1.x, x1.y);
            if (a <= 0.0 || b <= 0.0) {
                ++rep.excluded;
                continue;
            }
            const Vec2 r0 = std::pow(a, p - 1.0) * sampled_gradient(u0, x0);
            const Vec2 r1 = std::pow(b, p - 1.0) * sampled_gradient(u1, x1);
            const double scale = std::max(norm(r0), norm(r1));
            const double mismatch = scale > 0 ? norm(r0 - r1) / scale : 0.0;
            ++rep.tested;
            rep.max_rel_mismatch = std::max(rep.max_rel_mismatch, mismatch);
            if (mismatch < rep.threshold) ++below;
        }
    }
    rep.fraction_below_threshold = rep.tested > 0 ? static_cast<double>(below) / rep.tested : 1.0;
    return rep;
}

}  // namespace mwr
