#include <cmath>
#include <numbers>

#include "doctest.h"
#include "mwr/geometry.hpp"
#include "mwr/rng.hpp"
#include "mwr/verify.hpp"
#include "support/oracles.hpp"

using namespace mwr;

namespace {
const double kPi = std::numbers::pi;

ConvexBody unit_square() { return ConvexBody::polygon({{-1, -1}, {1, -1}, {1, 1}, {-1, 1}}); }
}  // namespace

TEST_CASE("support function evaluation") {
    const ConvexBody sq = unit_square();
    CHECK(support_eval(sq, {1, 0}) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(support_eval(sq, {std::sqrt(0.5), std::sqrt(0.5)}) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
    const ConvexBody di = ConvexBody::disc({0, 0}, 1.0);
    for (int j = 0; j < 16; ++j) {
        const double phi = 2 * kPi * j / 16.0;
        CHECK(support_eval(di, {std::cos(phi), std::sin(phi)}) == doctest::Approx(1.0).epsilon(1e-13));
    }
    CHECK_THROWS_AS(support_eval(sq, {1.0, 1.0}), std::invalid_argument);
}

TEST_CASE("rotation round trip and quarter turns") {
    const Rotation rho(0.7321);
    const Vec2 p{1.25, -0.5};
    const Vec2 back = rho.apply_inverse(rho.apply(p));
    CHECK(norm(back - p) < 1e-12);
    CHECK(norm(rho.inverse().apply(rho.apply(p)) - p) < 1e-12);
    const Rotation quarter(kPi / 2);
    const Vec2 q = quarter.apply({1.0, 0.0});
    CHECK(q.x == 0.0);
    CHECK(q.y == 1.0);
}

TEST_CASE("polygon validation") {
    CHECK_THROWS_AS(ConvexBody::polygon({{0, 0}, {1, 0}}), std::invalid_argument);
    // clockwise
    CHECK_THROWS_AS(ConvexBody::polygon({{-1, -1}, {-1, 1}, {1, 1}, {1, -1}}), std::invalid_argument);
    // collinear chain
    CHECK_THROWS_AS(ConvexBody::polygon({{0, 0}, {1, 0}, {2, 0}, {3, 0}}), std::invalid_argument);
    // non-convex
    CHECK_THROWS_AS(ConvexBody::polygon({{0, 0}, {2, 0}, {0.1, 0.1}, {0, 2}}), std::invalid_argument);
    CHECK_THROWS_AS(ConvexBody::disc({0, 0}, 0.0), std::invalid_argument);
}

TEST_CASE("minkowski combination of a body with itself") {
    const ConvexBody sq = unit_square();
    const ConvexBody c = minkowski_combine(sq, sq, 0.5);
    REQUIRE(c.kind() == BodyKind::Polygon);
    for (int j = 0; j < 720; ++j)
        CHECK(c.support_samples()[j] == doctest::Approx(sq.support_samples()[j]).epsilon(1e-14));
    CHECK(area(c) == doctest::Approx(4.0).epsilon(1e-13));
}

TEST_CASE("square plus disc: support, area, membership") {
    const ConvexBody sq = unit_square();
    const ConvexBody di = ConvexBody::disc({0, 0}, 1.0);
    const ConvexBody mix = minkowski_combine(sq, di, 0.5);
    CHECK(mix.kind() == BodyKind::SupportOnly);
    const DirectionGrid& grid = DirectionGrid::shared();
    for (int j = 0; j < grid.count; j += 5) {
        const Vec2 xi = grid.direction(j);
        const double expect = 0.5 * (std::abs(xi.x) + std::abs(xi.y)) + 0.5;
        CHECK(std::abs(mix.support_samples()[j] - expect) < 1e-12);
        const double additive = 0.5 * sq.support_samples()[j] + 0.5 * di.support_samples()[j];
        CHECK(std::abs(mix.support_samples()[j] - additive) < 1e-12);
    }
    CHECK(std::abs(area(mix) - (3.0 + kPi / 4.0)) < 1e-6);
    CHECK(contains(mix, {0, 0}));
    CHECK(!contains(mix, {1.2, 0}));  // support at (1,0) is 1.0
    CHECK(contains(mix, {0.99, 0}));
}

TEST_CASE("minkowski sum matches the hull-of-sums oracle") {
    Rng rng(31337);
    for (int trial = 0; trial < 40; ++trial) {
        const ConvexBody a = random_convex_polygon(rng);
        const ConvexBody b = random_convex_polygon(rng);
        const double mu = rng.uniform(0.15, 0.85);
        const ConvexBody sum = minkowski_combine(a, b, mu);
        std::vector<Vec2> sa = a.vertices(), sb = b.vertices();
        for (Vec2& v : sa) v = (1.0 - mu) * v;
        for (Vec2& v : sb) v = mu * v;
        const ConvexBody oracle = ConvexBody::polygon(oracles::hull_sum(sa, sb));
        CHECK(std::abs(area(sum) - area(oracle)) < 1e-10);
        for (int j = 0; j < 720; j += 11)
            CHECK(std::abs(sum.support_samples()[j] - oracle.support_samples()[j]) < 1e-10);
    }
}

TEST_CASE("mean width") {
    CHECK(mean_width(ConvexBody::disc({0, 0}, 1.0)) == doctest::Approx(2.0).epsilon(1e-14));
    const ConvexBody sq = unit_square();
    CHECK(mean_width(sq) == doctest::Approx(8.0 / kPi).epsilon(1e-15));
    CHECK(std::abs(mean_width_quadrature(sq) - 8.0 / kPi) < 1e-3);

    Rng rng(999);
    for (int trial = 0; trial < 30; ++trial) {
        const ConvexBody a = random_convex_polygon(rng);
        const ConvexBody b = random_convex_polygon(rng);
        const double mu = rng.uniform(0.1, 0.9);
        const double lhs = mean_width(minkowski_combine(a, b, mu));
        const double rhs = (1.0 - mu) * mean_width(a) + mu * mean_width(b);
        CHECK(std::abs(lhs - rhs) < 1e-9);
    }
}

TEST_CASE("area basics") {
    CHECK(area(unit_square()) == doctest::Approx(4.0));
    CHECK(area(ConvexBody::disc({0, 0}, 1.0)) == doctest::Approx(kPi));
    // quadrature path for a raw-sample body (disc samples)
    std::vector<double> samples(720, 1.0);
    const ConvexBody raw = ConvexBody::from_support_samples(samples, DirectionGrid::shared());
    CHECK(area(raw) == doctest::Approx(kPi).epsilon(1e-6));
}

TEST_CASE("contains") {
    const ConvexBody sq = unit_square();
    CHECK(contains(sq, {0, 0}));
    CHECK(contains(sq, {1.0, 0.0}));  // boundary counts inside
    CHECK(!contains(sq, {1.01, 0}));
    const ConvexBody di = ConvexBody::disc({0.5, 0}, 0.25);
    CHECK(contains(di, {0.75, 0}));
    CHECK(!contains(di, {0.7501, 0.01}));
}

TEST_CASE("hausdorff distance") {
    const ConvexBody sq = unit_square();
    CHECK(hausdorff_distance(sq, sq) == 0.0);
    CHECK(hausdorff_distance(ConvexBody::disc({0, 0}, 1.0), ConvexBody::disc({0, 0}, 2.0)) ==
          doctest::Approx(1.0).epsilon(1e-14));
    // extremum of | |cos|+|sin| - 4/pi | sits at the axis directions
    const double expect = 4.0 / kPi - 1.0;
    CHECK(hausdorff_distance(sq, ConvexBody::disc({0, 0}, 4.0 / kPi)) == doctest::Approx(expect).epsilon(1e-6));
}

TEST_CASE("hausdorff is a metric on samples") {
    Rng rng(777);
    for (int trial = 0; trial < 25; ++trial) {
        const ConvexBody a = random_convex_polygon(rng);
        const ConvexBody b = random_convex_polygon(rng);
        const ConvexBody c = random_convex_polygon(rng);
        const double dab = hausdorff_distance(a, b);
        CHECK(dab == hausdorff_distance(b, a));
        CHECK(hausdorff_distance(a, c) <= dab + hausdorff_distance(b, c) + 1e-12);
    }
}

TEST_CASE("rotation mean") {
    const ConvexBody sq = unit_square();
    CHECK_THROWS_AS(rotation_mean(sq, 0), std::invalid_argument);
    const ConvexBody m1 = rotation_mean(sq, 1);
    for (int j = 0; j < 720; j += 3) CHECK(std::abs(m1.support_samples()[j] - sq.support_samples()[j]) < 1e-12);
    const ConvexBody di = ConvexBody::disc({0, 0}, 0.75);
    const ConvexBody dm = rotation_mean(di, 9);
    for (int j = 0; j < 720; j += 3) CHECK(std::abs(dm.support_samples()[j] - 0.75) < 1e-12);

    const ConvexBody target = ConvexBody::disc({0, 0}, 4.0 / kPi);
    double prev = std::numeric_limits<double>::infinity();
    for (int m : {4, 8, 16, 32, 64}) {
        const ConvexBody rm = rotation_mean(sq, m);
        CHECK(std::abs(mean_width(rm) - mean_width(sq)) < 1e-9);
        const double d = hausdorff_distance(rm, target);
        CHECK(d <= prev + 1e-12);
        prev = d;
    }
    CHECK(prev <= 0.01);
    CHECK(hausdorff_distance(rotation_mean(sq, 32), target) <= 0.01);
}

TEST_CASE("brunn-minkowski on random polygon pairs") {
    Rng rng(20240101);
    for (int trial = 0; trial < 60; ++trial) {
        const ConvexBody a = random_convex_polygon(rng);
        const ConvexBody b = random_convex_polygon(rng);
        const double mu = rng.uniform(0.1, 0.9);
        const double lhs = std::sqrt(area(minkowski_combine(a, b, mu)));
        const double rhs = (1.0 - mu) * std::sqrt(area(a)) + mu * std::sqrt(area(b));
        CHECK(lhs >= rhs - 1e-9);
    }
}

TEST_CASE("x interval at height") {
    const ConvexBody sq = unit_square();
    auto [lo, hi] = x_interval_at_height(sq, 0.25);
    CHECK(lo == doctest::Approx(-1.0).epsilon(1e-9));
    CHECK(hi == doctest::Approx(1.0).epsilon(1e-9));
    auto [elo, ehi] = x_interval_at_height(sq, 1.5);
    CHECK(elo > ehi);
    const ConvexBody di = ConvexBody::disc({0.5, 0.5}, 0.5);
    auto [dlo, dhi] = x_interval_at_height(di, 0.5);
    CHECK(dlo == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(dhi == doctest::Approx(1.0).epsilon(1e-9));
    // rounded square: generic concave-distance path
    const ConvexBody mix = minkowski_combine(sq, ConvexBody::disc({0, 0}, 1.0), 0.5);
    auto [mlo, mhi] = x_interval_at_height(mix, 0.0);
    CHECK(mlo == doctest::Approx(-1.0).epsilon(1e-7));
    CHECK(mhi == doctest::Approx(1.0).epsilon(1e-7));
    auto [clo, chi] = x_interval_at_height(mix, 0.9);
    CHECK(contains(mix, {0.5 * (clo + chi), 0.9}));
    CHECK(!contains(mix, {chi + 1e-5, 0.9}));
}

TEST_CASE("centroid") {
    CHECK(norm(unit_square().centroid()) < 1e-14);
    const ConvexBody tri = ConvexBody::polygon({{0, 0}, {3, 0}, {0, 3}});
    CHECK(norm(tri.centroid() - Vec2{1.0, 1.0}) < 1e-12);
    CHECK(norm(ConvexBody::disc({0.3, -0.2}, 0.5).centroid() - Vec2{0.3, -0.2}) < 1e-14);
    // offset form centroid against a fine-mesh mass centroid
    const ConvexBody mix = minkowski_combine(ConvexBody::polygon({{0, 0}, {2, 0}, {2, 1}, {0, 1}}),
                                             ConvexBody::disc({0.5, 0}, 1.0), 0.5);
    const Vec2 c = mix.centroid();
    double mass = 0.0;
    Vec2 mom{};
    const double h = 0.01;
    for (double x = -2; x <= 3; x += h)
        for (double y = -2; y <= 3; y += h)
            if (contains(mix, {x, y})) {
                mass += 1.0;
                mom = mom + Vec2{x, y};
            }
    const Vec2 mc = (1.0 / mass) * mom;
    CHECK(norm(c - mc) < 2 * h);
}
