#pragma once

#include <cmath>
#include <limits>
#include <utility>
#include <vector>

namespace mwr {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double t, Vec2 a) { return {t * a.x, t * a.y}; }
inline Vec2 operator-(Vec2 a) { return {-a.x, -a.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm2(Vec2 a) { return a.x * a.x + a.y * a.y; }
inline double norm(Vec2 a) { return std::sqrt(norm2(a)); }

/// Planar rotation about the origin. Entries are snapped to exact
/// {0, +-1} near quarter turns so that lattice-aligned rotations
/// permute grid nodes without rounding.
class Rotation {
public:
    explicit Rotation(double angle_radians);

    Vec2 apply(Vec2 p) const { return {c_ * p.x - s_ * p.y, s_ * p.x + c_ * p.y}; }
    Vec2 apply_inverse(Vec2 p) const { return {c_ * p.x + s_ * p.y, -s_ * p.x + c_ * p.y}; }
    Rotation inverse() const { return Rotation(-angle_); }
    double angle() const { return angle_; }

private:
    double angle_;
    double c_;
    double s_;
};

/// M equally spaced unit directions xi_j = (cos(2*pi*j/M), sin(2*pi*j/M)).
/// Quadrature grid for support-function integrals; M >= 8 and divisible
/// by 4 so that +-xi pairs and the axis directions are all present.
struct DirectionGrid {
    int count = 720;

    explicit DirectionGrid(int m = 720);

    Vec2 direction(int j) const;
    double delta() const;
    int nearest(Vec2 xi) const;

    static const DirectionGrid& shared();
};

enum class BodyKind { Polygon, Disc, SupportOnly };

/// A planar convex body. Dual representation: an exact form (vertex
/// polygon, disc, or polygon-offset-by-a-radius) where available, plus
/// support-function samples on the direction grid. The mean width is
/// propagated exactly through combination and rotation means.
class ConvexBody {
public:
    ConvexBody() = default;

    static ConvexBody polygon(std::vector<Vec2> ccw_vertices);
    static ConvexBody disc(Vec2 center, double radius);
    /// Support-only body from raw samples; no exact membership form.
    /// mean_width_override replaces the quadrature value when the caller
    /// knows the exact one (e.g. reloading a saved body).
    static ConvexBody from_support_samples(std::vector<double> samples, const DirectionGrid& grid,
                                           double mean_width_override = std::numeric_limits<double>::quiet_NaN());

    BodyKind kind() const { return kind_; }
    const std::vector<Vec2>& vertices() const { return vertices_; }
    Vec2 disc_center() const { return center_; }
    double disc_radius() const { return radius_; }
    const std::vector<double>& support_samples() const { return samples_; }
    int direction_count() const { return direction_count_; }

    bool has_offset_form() const { return has_offset_form_; }
    const std::vector<Vec2>& offset_core() const { return core_; }
    double offset_radius() const { return core_radius_; }

    /// Mean width carried exactly from construction (perimeter/pi for
    /// polygons, diameter for discs, linear under combination,
    /// preserved by rotation means). NaN for raw-sample bodies.
    double exact_mean_width() const { return mean_width_; }

    ConvexBody translated(Vec2 t) const;
    ConvexBody rotated(const Rotation& rho) const;
    Vec2 centroid() const;
    /// Axis-aligned bounding box {min, max}.
    std::pair<Vec2, Vec2> bbox() const;

    // internal-precision support value (exact for any body with an
    // offset form, nearest-sample for raw-sample bodies)
    double support_exact(Vec2 xi) const;

private:
    BodyKind kind_ = BodyKind::Polygon;
    std::vector<Vec2> vertices_;
    Vec2 center_{};
    double radius_ = 0.0;
    bool has_offset_form_ = false;
    std::vector<Vec2> core_;
    double core_radius_ = 0.0;
    int direction_count_ = 720;
    std::vector<double> samples_;
    double mean_width_ = 0.0;

    void fill_samples();
    friend ConvexBody minkowski_combine(const ConvexBody&, const ConvexBody&, double);
    friend ConvexBody rotation_mean(const ConvexBody&, int);
};

/// h_Omega(xi) = max over the body of <xi, y>. xi must be a unit vector
/// (tolerance 1e-9). Exact for polygon and disc kinds; support-only
/// bodies return the stored sample at the nearest grid direction.
double support_eval(const ConvexBody& body, Vec2 xi);

/// (1-mu)*b0 + mu*b1. Two polygons combine into the exact Minkowski-sum
/// polygon (rotating edge sweep); any other pair becomes a support-only
/// body whose samples are the convex combination of the inputs', with
/// the exact core-polygon + radius form retained for membership when
/// both inputs carry one.
ConvexBody minkowski_combine(const ConvexBody& b0, const ConvexBody& b1, double mu);

/// Mean width. Polygons use perimeter/pi, discs the diameter; derived
/// bodies return the exactly propagated value.
double mean_width(const ConvexBody& body);

/// Trapezoid-rule mean width (1/pi) * integral of h over S^1 on the
/// direction grid, regardless of kind.
double mean_width_quadrature(const ConvexBody& body);

/// Area: shoelace for polygons, pi r^2 for discs, Steiner formula for
/// offset forms, support quadrature (1/2) * integral (h^2 - h'^2) for
/// raw-sample bodies.
double area(const ConvexBody& body);

/// Membership with the boundary counted inside (tolerance 1e-12).
bool contains(const ConvexBody& body, Vec2 x);

/// Distance to the boundary, positive inside and negative outside.
/// Exact for bodies with an offset form; raw-sample bodies use the
/// polyhedral outer bound min_j (h_j - <x, xi_j>).
double boundary_distance(const ConvexBody& body, Vec2 x);

/// max_j |h0(xi_j) - h1(xi_j)| over the direction grid.
double hausdorff_distance(const ConvexBody& b0, const ConvexBody& b1);

/// (1/m) (rho_1 Omega + ... + rho_m Omega) with rho_i the rotation by
/// 2 pi (i-1)/m; support-only result, mean width preserved exactly.
ConvexBody rotation_mean(const ConvexBody& body, int m);

/// {x : (x, y) in body}; returns {lo, hi} with lo > hi when empty.
std::pair<double, double> x_interval_at_height(const ConvexBody& body, double y);

// polygon utilities
double polygon_area(const std::vector<Vec2>& ccw);
double polygon_perimeter(const std::vector<Vec2>& ccw);
/// Signed distance to a CCW convex polygon; negative inside.
double polygon_signed_distance(const std::vector<Vec2>& ccw, Vec2 p);
/// Exact Minkowski sum of two CCW convex polygons (either may be a
/// single point) by the rotating edge-merge sweep.
std::vector<Vec2> polygon_minkowski_sum(const std::vector<Vec2>& a, const std::vector<Vec2>& b);
/// Monotone-chain hull, CCW without collinear points.
std::vector<Vec2> convex_hull(std::vector<Vec2> pts);

}  // namespace mwr
