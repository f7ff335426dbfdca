#include "mwr/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace mwr {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kContainTol = 1e-12;

double snap_trig(double v) {
    for (double target : {0.0, 1.0, -1.0}) {
        if (std::abs(v - target) < 1e-15) return target;
    }
    return v;
}

}  // namespace

Rotation::Rotation(double angle_radians)
    : angle_(angle_radians), c_(snap_trig(std::cos(angle_radians))), s_(snap_trig(std::sin(angle_radians))) {}

DirectionGrid::DirectionGrid(int m) : count(m) {
    if (m < 8 || m % 4 != 0) throw std::invalid_argument("DirectionGrid: count must be >= 8 and divisible by 4");
}

Vec2 DirectionGrid::direction(int j) const {
    const double phi = 2.0 * kPi * j / count;
    return {std::cos(phi), std::sin(phi)};
}

double DirectionGrid::delta() const { return 2.0 * kPi / count; }

int DirectionGrid::nearest(Vec2 xi) const {
    double phi = std::atan2(xi.y, xi.x);
    if (phi < 0) phi += 2.0 * kPi;
    int j = static_cast<int>(std::llround(phi / delta()));
    return j % count;
}

const DirectionGrid& DirectionGrid::shared() {
    static const DirectionGrid grid(720);
    return grid;
}

// ---------------------------------------------------------------------------
// polygon utilities

double polygon_area(const std::vector<Vec2>& v) {
    double s = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const Vec2& a = v[i];
        const Vec2& b = v[(i + 1) % v.size()];
        s += cross(a, b);
    }
    return 0.5 * s;
}

double polygon_perimeter(const std::vector<Vec2>& v) {
    double s = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) s += norm(v[(i + 1) % v.size()] - v[i]);
    return s;
}

namespace {

double point_segment_distance(Vec2 p, Vec2 a, Vec2 b) {
    const Vec2 e = b - a;
    const double len2 = norm2(e);
    if (len2 == 0.0) return norm(p - a);
    double t = dot(p - a, e) / len2;
    t = std::clamp(t, 0.0, 1.0);
    return norm(p - (a + t * e));
}

}  // namespace

double polygon_signed_distance(const std::vector<Vec2>& v, Vec2 p) {
    if (v.size() == 1) return norm(p - v[0]);
    bool inside = true;
    double min_d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < v.size(); ++i) {
        const Vec2& a = v[i];
        const Vec2& b = v[(i + 1) % v.size()];
        if (cross(b - a, p - a) < 0.0) inside = false;
        min_d = std::min(min_d, point_segment_distance(p, a, b));
    }
    return inside ? -min_d : min_d;
}

std::vector<Vec2> convex_hull(std::vector<Vec2> pts) {
    std::sort(pts.begin(), pts.end(), [](Vec2 a, Vec2 b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
    pts.erase(std::unique(pts.begin(), pts.end(), [](Vec2 a, Vec2 b) { return a.x == b.x && a.y == b.y; }),
              pts.end());
    const std::size_t n = pts.size();
    if (n < 3) return pts;
    std::vector<Vec2> hull(2 * n);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {
        while (k >= 2 && cross(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0) --k;
        hull[k++] = pts[i];
    }
    const std::size_t lower = k + 1;
    for (std::size_t i = n - 1; i-- > 0;) {
        while (k >= lower && cross(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    return hull;
}

namespace {

std::size_t lowest_vertex(const std::vector<Vec2>& v) {
    std::size_t k = 0;
    for (std::size_t i = 1; i < v.size(); ++i) {
        if (v[i].y < v[k].y || (v[i].y == v[k].y && v[i].x < v[k].x)) k = i;
    }
    return k;
}

void rotate_to_lowest(std::vector<Vec2>& v) {
    std::rotate(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(lowest_vertex(v)), v.end());
}

// Edge angles lifted monotonically into [0, 2*pi); starting the walk at
// the lowest vertex guarantees the first edge angle lies in [0, pi).
std::vector<double> lifted_edge_angles(const std::vector<Vec2>& v) {
    std::vector<double> ang(v.size());
    double prev = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const Vec2 e = v[(i + 1) % v.size()] - v[i];
        double a = std::atan2(e.y, e.x);
        if (a < 0) a += 2.0 * kPi;
        while (i > 0 && a < prev - 1e-9) a += 2.0 * kPi;
        ang[i] = a;
        prev = a;
    }
    return ang;
}

std::vector<Vec2> dedup_collinear(std::vector<Vec2> v) {
    // drop zero-length edges
    std::vector<Vec2> w;
    for (const Vec2& p : v) {
        if (w.empty() || norm(p - w.back()) > 1e-14) w.push_back(p);
    }
    while (w.size() > 1 && norm(w.front() - w.back()) <= 1e-14) w.pop_back();
    if (w.size() < 3) return w;
    // merge collinear consecutive edges, tolerance 1e-12 on the turn sine
    std::vector<Vec2> out;
    const std::size_t n = w.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 a = w[(i + n - 1) % n];
        const Vec2 b = w[i];
        const Vec2 c = w[(i + 1) % n];
        const Vec2 e1 = b - a;
        const Vec2 e2 = c - b;
        if (std::abs(cross(e1, e2)) > 1e-12 * norm(e1) * norm(e2)) out.push_back(b);
    }
    return out.size() >= 3 ? out : w;
}

}  // namespace

std::vector<Vec2> polygon_minkowski_sum(const std::vector<Vec2>& pa, const std::vector<Vec2>& pb) {
    if (pa.empty() || pb.empty()) throw std::invalid_argument("polygon_minkowski_sum: empty polygon");
    if (pa.size() == 1 || pb.size() == 1) {
        const std::vector<Vec2>& poly = pa.size() == 1 ? pb : pa;
        const Vec2 shift = pa.size() == 1 ? pa[0] : pb[0];
        std::vector<Vec2> out = poly;
        for (Vec2& p : out) p = p + shift;
        return out;
    }
    std::vector<Vec2> a = pa, b = pb;
    rotate_to_lowest(a);
    rotate_to_lowest(b);
    const std::vector<double> ang_a = lifted_edge_angles(a);
    const std::vector<double> ang_b = lifted_edge_angles(b);
    const std::size_t n = a.size(), m = b.size();
    std::vector<Vec2> out;
    out.reserve(n + m);
    std::size_t i = 0, j = 0;
    Vec2 cur = a[0] + b[0];
    while (i < n || j < m) {
        out.push_back(cur);
        const double aa = i < n ? ang_a[i] : std::numeric_limits<double>::infinity();
        const double ab = j < m ? ang_b[j] : std::numeric_limits<double>::infinity();
        if (aa < ab - 1e-12) {
            cur = cur + (a[(i + 1) % n] - a[i]);
            ++i;
        } else if (ab < aa - 1e-12) {
            cur = cur + (b[(j + 1) % m] - b[j]);
            ++j;
        } else {
            cur = cur + (a[(i + 1) % n] - a[i]) + (b[(j + 1) % m] - b[j]);
            ++i;
            ++j;
        }
    }
    return dedup_collinear(std::move(out));
}

// ---------------------------------------------------------------------------
// ConvexBody

void ConvexBody::fill_samples() {
    const DirectionGrid grid(direction_count_);
    samples_.resize(direction_count_);
    for (int j = 0; j < direction_count_; ++j) samples_[j] = support_exact(grid.direction(j));
}

double ConvexBody::support_exact(Vec2 xi) const {
    if (kind_ == BodyKind::Polygon) {
        double best = -std::numeric_limits<double>::infinity();
        for (const Vec2& v : vertices_) best = std::max(best, dot(v, xi));
        return best;
    }
    if (kind_ == BodyKind::Disc) return dot(center_, xi) + radius_;
    if (has_offset_form_) {
        double best = -std::numeric_limits<double>::infinity();
        for (const Vec2& v : core_) best = std::max(best, dot(v, xi));
        return best + core_radius_;
    }
    return samples_[DirectionGrid(direction_count_).nearest(xi)];
}

ConvexBody ConvexBody::polygon(std::vector<Vec2> ccw) {
    // drop a duplicated closing vertex
    while (ccw.size() > 1 && norm(ccw.front() - ccw.back()) <= 1e-14) ccw.pop_back();
    if (ccw.size() < 3) throw std::invalid_argument("ConvexBody::polygon: fewer than 3 vertices");
    double scale = 0.0;
    for (const Vec2& v : ccw) scale = std::max({scale, std::abs(v.x), std::abs(v.y)});
    const double tol = 1e-12 * std::max(1.0, scale * scale);
    int strict = 0;
    const std::size_t n = ccw.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 e1 = ccw[(i + 1) % n] - ccw[i];
        const Vec2 e2 = ccw[(i + 2) % n] - ccw[(i + 1) % n];
        const double c = cross(e1, e2);
        if (c < -tol) throw std::invalid_argument("ConvexBody::polygon: vertices not convex counterclockwise");
        if (c > tol) ++strict;
    }
    if (strict < 3) throw std::invalid_argument("ConvexBody::polygon: degenerate (fewer than 3 corners)");
    ConvexBody b;
    b.kind_ = BodyKind::Polygon;
    b.vertices_ = std::move(ccw);
    b.core_ = b.vertices_;
    b.core_radius_ = 0.0;
    b.has_offset_form_ = true;
    b.mean_width_ = polygon_perimeter(b.vertices_) / kPi;
    b.fill_samples();
    return b;
}

ConvexBody ConvexBody::disc(Vec2 center, double radius) {
    if (!(radius > 0.0)) throw std::invalid_argument("ConvexBody::disc: radius must be positive");
    ConvexBody b;
    b.kind_ = BodyKind::Disc;
    b.center_ = center;
    b.radius_ = radius;
    b.core_ = {center};
    b.core_radius_ = radius;
    b.has_offset_form_ = true;
    b.mean_width_ = 2.0 * radius;
    b.fill_samples();
    return b;
}

ConvexBody ConvexBody::from_support_samples(std::vector<double> samples, const DirectionGrid& grid,
                                            double mean_width_override) {
    if (static_cast<int>(samples.size()) != grid.count)
        throw std::invalid_argument("ConvexBody::from_support_samples: sample count mismatch");
    ConvexBody b;
    b.kind_ = BodyKind::SupportOnly;
    b.has_offset_form_ = false;
    b.direction_count_ = grid.count;
    b.samples_ = std::move(samples);
    if (std::isnan(mean_width_override)) {
        double sum = 0.0;
        for (double s : b.samples_) sum += s;
        b.mean_width_ = 2.0 * sum / grid.count;
    } else {
        b.mean_width_ = mean_width_override;
    }
    return b;
}

ConvexBody ConvexBody::translated(Vec2 t) const {
    ConvexBody b = *this;
    for (Vec2& v : b.vertices_) v = v + t;
    for (Vec2& v : b.core_) v = v + t;
    b.center_ = b.center_ + t;
    b.fill_samples();
    return b;
}

ConvexBody ConvexBody::rotated(const Rotation& rho) const {
    ConvexBody b = *this;
    for (Vec2& v : b.vertices_) v = rho.apply(v);
    for (Vec2& v : b.core_) v = rho.apply(v);
    b.center_ = rho.apply(b.center_);
    if (has_offset_form_) {
        b.fill_samples();
    } else {
        const DirectionGrid grid(direction_count_);
        for (int j = 0; j < direction_count_; ++j)
            b.samples_[j] = samples_[grid.nearest(rho.apply_inverse(grid.direction(j)))];
    }
    return b;
}

Vec2 ConvexBody::centroid() const {
    if (kind_ == BodyKind::Disc) return center_;
    if (kind_ == BodyKind::Polygon || (has_offset_form_ && core_radius_ == 0.0)) {
        const std::vector<Vec2>& v = kind_ == BodyKind::Polygon ? vertices_ : core_;
        double a = 0.0;
        Vec2 c{};
        for (std::size_t i = 0; i < v.size(); ++i) {
            const Vec2& p = v[i];
            const Vec2& q = v[(i + 1) % v.size()];
            const double w = cross(p, q);
            a += w;
            c = c + w * (p + q);
        }
        return (1.0 / (3.0 * a)) * c;
    }
    if (has_offset_form_) {
        if (core_.size() == 1) return core_[0];
        // core (+) r B decomposes into the core, edge strips, and vertex
        // sectors; accumulate area-weighted centroids of the three parts.
        const std::vector<Vec2>& v = core_;
        const double r = core_radius_;
        const std::size_t n = v.size();
        double area_sum = polygon_area(v);
        Vec2 cp = ConvexBody::polygon(v).centroid();
        Vec2 moment = area_sum * cp;
        for (std::size_t i = 0; i < n; ++i) {
            const Vec2 a = v[i];
            const Vec2 b = v[(i + 1) % n];
            const Vec2 e = b - a;
            const double len = norm(e);
            if (len < 1e-15) continue;
            const Vec2 nrm = (1.0 / len) * Vec2{e.y, -e.x};
            const double strip_area = len * r;
            const Vec2 strip_c = 0.5 * (a + b) + (0.5 * r) * nrm;
            area_sum += strip_area;
            moment = moment + strip_area * strip_c;
            // sector at vertex b: between this edge normal and the next
            const Vec2 e2 = v[(i + 2) % n] - b;
            const double len2 = norm(e2);
            const Vec2 nrm2 = (1.0 / len2) * Vec2{e2.y, -e2.x};
            double phi = std::atan2(cross(nrm, nrm2), dot(nrm, nrm2));
            if (phi < 0) phi += 2.0 * kPi;
            if (phi < 1e-15) continue;
            const double sec_area = 0.5 * phi * r * r;
            Vec2 bis = nrm + nrm2;
            const double bl = norm(bis);
            Vec2 sec_c = b;
            if (bl > 1e-15) {
                bis = (1.0 / bl) * bis;
                const double d = (4.0 * r * std::sin(phi / 2.0)) / (3.0 * phi);
                sec_c = b + d * bis;
            }
            area_sum += sec_area;
            moment = moment + sec_area * sec_c;
        }
        return (1.0 / area_sum) * moment;
    }
    // raw samples: bounding-box midpoint
    return {0.5 * (support_exact({1, 0}) - support_exact({-1, 0})),
            0.5 * (support_exact({0, 1}) - support_exact({0, -1}))};
}

std::pair<Vec2, Vec2> ConvexBody::bbox() const {
    return {Vec2{-support_exact({-1, 0}), -support_exact({0, -1})},
            Vec2{support_exact({1, 0}), support_exact({0, 1})}};
}

// ---------------------------------------------------------------------------
// operations

double support_eval(const ConvexBody& body, Vec2 xi) {
    if (std::abs(norm(xi) - 1.0) > 1e-9) throw std::invalid_argument("support_eval: direction must be a unit vector");
    if (body.kind() == BodyKind::SupportOnly)
        return body.support_samples()[DirectionGrid(body.direction_count()).nearest(xi)];
    return body.support_exact(xi);
}

ConvexBody minkowski_combine(const ConvexBody& b0, const ConvexBody& b1, double mu) {
    if (!(mu > 0.0 && mu < 1.0)) throw std::invalid_argument("minkowski_combine: mu must lie in (0,1)");
    if (b0.direction_count_ != b1.direction_count_)
        throw std::invalid_argument("minkowski_combine: direction grids differ");
    auto scaled = [](const std::vector<Vec2>& v, double t) {
        std::vector<Vec2> out = v;
        for (Vec2& p : out) p = t * p;
        return out;
    };
    if (b0.kind() == BodyKind::Polygon && b1.kind() == BodyKind::Polygon) {
        return ConvexBody::polygon(
            polygon_minkowski_sum(scaled(b0.vertices_, 1.0 - mu), scaled(b1.vertices_, mu)));
    }
    ConvexBody b;
    b.kind_ = BodyKind::SupportOnly;
    b.direction_count_ = b0.direction_count_;
    b.samples_.resize(b.direction_count_);
    for (int j = 0; j < b.direction_count_; ++j)
        b.samples_[j] = (1.0 - mu) * b0.samples_[j] + mu * b1.samples_[j];
    b.mean_width_ = (1.0 - mu) * b0.mean_width_ + mu * b1.mean_width_;
    if (b0.has_offset_form_ && b1.has_offset_form_) {
        b.has_offset_form_ = true;
        b.core_ = polygon_minkowski_sum(scaled(b0.core_, 1.0 - mu), scaled(b1.core_, mu));
        b.core_radius_ = (1.0 - mu) * b0.core_radius_ + mu * b1.core_radius_;
    }
    return b;
}

double mean_width(const ConvexBody& body) { return body.exact_mean_width(); }

double mean_width_quadrature(const ConvexBody& body) {
    double sum = 0.0;
    for (double s : body.support_samples()) sum += s;
    return 2.0 * sum / body.direction_count();
}

double area(const ConvexBody& body) {
    if (body.kind() == BodyKind::Polygon) return polygon_area(body.vertices());
    if (body.kind() == BodyKind::Disc) return kPi * body.disc_radius() * body.disc_radius();
    if (body.has_offset_form()) {
        const std::vector<Vec2>& core = body.offset_core();
        const double r = body.offset_radius();
        const double core_area = core.size() >= 3 ? polygon_area(core) : 0.0;
        const double core_per = core.size() >= 2 ? polygon_perimeter(core) : 0.0;
        return core_area + r * core_per + kPi * r * r;
    }
    const std::vector<double>& h = body.support_samples();
    const int m = body.direction_count();
    const double dphi = 2.0 * kPi / m;
    double sum = 0.0;
    for (int j = 0; j < m; ++j) {
        const double hp = (h[(j + 1) % m] - h[(j + m - 1) % m]) / (2.0 * dphi);
        sum += h[j] * h[j] - hp * hp;
    }
    return 0.5 * sum * dphi;
}

double boundary_distance(const ConvexBody& body, Vec2 x) {
    if (body.kind() == BodyKind::Disc) return body.disc_radius() - norm(x - body.disc_center());
    if (body.has_offset_form())
        return body.offset_radius() - polygon_signed_distance(body.offset_core(), x);
    const DirectionGrid grid(body.direction_count());
    double d = std::numeric_limits<double>::infinity();
    const std::vector<double>& h = body.support_samples();
    for (int j = 0; j < grid.count; ++j) d = std::min(d, h[j] - dot(x, grid.direction(j)));
    return d;
}

bool contains(const ConvexBody& body, Vec2 x) { return boundary_distance(body, x) >= -kContainTol; }

double hausdorff_distance(const ConvexBody& b0, const ConvexBody& b1) {
    if (b0.direction_count() != b1.direction_count())
        throw std::invalid_argument("hausdorff_distance: direction grids differ");
    const std::vector<double>& h0 = b0.support_samples();
    const std::vector<double>& h1 = b1.support_samples();
    double d = 0.0;
    for (std::size_t j = 0; j < h0.size(); ++j) d = std::max(d, std::abs(h0[j] - h1[j]));
    return d;
}

ConvexBody rotation_mean(const ConvexBody& body, int m) {
    if (m < 1) throw std::invalid_argument("rotation_mean: m must be >= 1");
    ConvexBody b;
    b.kind_ = BodyKind::SupportOnly;
    b.has_offset_form_ = false;
    b.direction_count_ = body.direction_count_;
    b.samples_.assign(b.direction_count_, 0.0);
    const DirectionGrid grid(b.direction_count_);
    for (int i = 0; i < m; ++i) {
        const Rotation rho(2.0 * kPi * i / m);
        for (int j = 0; j < b.direction_count_; ++j)
            b.samples_[j] += body.support_exact(rho.apply_inverse(grid.direction(j)));
    }
    for (double& s : b.samples_) s /= m;
    b.mean_width_ = body.mean_width_;
    return b;
}

std::pair<double, double> x_interval_at_height(const ConvexBody& body, double y) {
    constexpr double kEmptyLo = 1.0, kEmptyHi = 0.0;
    if (body.kind() == BodyKind::Disc) {
        const Vec2 c = body.disc_center();
        const double r = body.disc_radius();
        const double dy = y - c.y;
        if (std::abs(dy) > r + kContainTol) return {kEmptyLo, kEmptyHi};
        const double half = std::sqrt(std::max(r * r - dy * dy, 0.0));
        return {c.x - half, c.x + half};
    }
    if (body.kind() == BodyKind::Polygon || (body.has_offset_form() && body.offset_radius() == 0.0)) {
        const std::vector<Vec2>& v = body.kind() == BodyKind::Polygon ? body.vertices() : body.offset_core();
        double lo = -std::numeric_limits<double>::infinity();
        double hi = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < v.size(); ++i) {
            const Vec2 a = v[i];
            const Vec2 e = v[(i + 1) % v.size()] - a;
            // outward normal (e.y, -e.x); half-plane n.x * x <= c - n.y * y
            const double nx = e.y, ny = -e.x;
            const double rhs = nx * a.x + ny * a.y - ny * y + kContainTol * std::max(1.0, norm(e));
            if (std::abs(nx) < 1e-14 * std::max(1.0, std::abs(ny))) {
                if (0.0 > rhs) return {kEmptyLo, kEmptyHi};
            } else if (nx > 0) {
                hi = std::min(hi, rhs / nx);
            } else {
                lo = std::max(lo, rhs / nx);
            }
        }
        if (lo > hi) return {kEmptyLo, kEmptyHi};
        return {lo, hi};
    }
    // generic convex body: boundary_distance(., y) is concave in x;
    // ternary search for the peak, then bisect both flanks for the roots
    const auto [bmin, bmax] = body.bbox();
    double lo = bmin.x - 1e-9, hi = bmax.x + 1e-9;
    auto f = [&](double x) { return boundary_distance(body, {x, y}); };
    double a = lo, c = hi;
    for (int it = 0; it < 200 && (c - a) > 1e-13 * std::max(1.0, std::abs(c) + std::abs(a)); ++it) {
        const double m1 = a + (c - a) / 3.0;
        const double m2 = c - (c - a) / 3.0;
        if (f(m1) < f(m2)) a = m1; else c = m2;
    }
    const double peak = 0.5 * (a + c);
    if (f(peak) < -kContainTol) return {kEmptyLo, kEmptyHi};
    auto root = [&](double in, double out) {
        for (int it = 0; it < 100; ++it) {
            const double mid = 0.5 * (in + out);
            if (f(mid) >= -kContainTol) in = mid; else out = mid;
            if (std::abs(out - in) < 1e-13 * std::max(1.0, std::abs(mid))) break;
        }
        return in;
    };
    return {root(peak, lo), root(peak, hi)};
}

}  // namespace mwr
