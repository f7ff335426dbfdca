#include <cmath>
#include <limits>

#include "doctest.h"
#include "mwr/field.hpp"
#include "mwr/means.hpp"
#include "mwr/pde.hpp"
#include "mwr/rng.hpp"
#include "support/oracles.hpp"

using namespace mwr;

namespace {
const double kInf = std::numeric_limits<double>::infinity();
}

TEST_CASE("p_mean branches") {
    CHECK(p_mean(1.0, 4.0, 0.5, 0.0) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(p_mean(0.0, 7.0, 0.3, -1.0) == 0.0);
    CHECK(p_mean(1.0, 4.0, 0.5, 0.5) == doctest::Approx(2.25).epsilon(1e-14));
    CHECK(p_mean(1.0, 4.0, 0.5, kInf) == 4.0);
    CHECK(p_mean(1.0, 4.0, 0.5, -kInf) == 1.0);
    CHECK(p_mean(0.0, 4.0, 0.25, 0.0) == 0.0);
    CHECK(p_mean(0.0, 4.0, 0.5, 1.0) == doctest::Approx(2.0));
    CHECK_THROWS_AS(p_mean(-1.0, 1.0, 0.5, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(p_mean(1.0, 1.0, 0.0, 1.0), std::invalid_argument);
}

TEST_CASE("p_mean idempotence for every p") {
    for (double p : {-kInf, -2.0, -1.0, 0.0, 0.25, 0.5, 1.0, 3.0, kInf}) {
        CHECK(p_mean(0.7, 0.7, 0.3, p) == 0.7);
        CHECK(p_mean(0.0, 0.0, 0.3, p) == 0.0);
    }
}

TEST_CASE("jensen monotonicity in p") {
    Rng rng(42);
    const std::vector<double> ps = {-kInf, -3.0, -1.0, -0.5, 0.0, 1.0 / 3, 0.5, 1.0, 2.0, kInf};
    for (int trial = 0; trial < 200; ++trial) {
        const double a = rng.uniform(0.0, 5.0);
        const double b = rng.uniform(1e-6, 5.0);
        const double mu = rng.uniform(0.05, 0.95);
        double prev = -1.0;
        for (double p : ps) {
            const double v = p_mean(a, b, mu, p);
            CHECK(v >= prev - 1e-12 * std::max(1.0, v));
            prev = v;
        }
    }
}

TEST_CASE("positive homogeneity") {
    Rng rng(43);
    for (int trial = 0; trial < 100; ++trial) {
        const double a = rng.uniform(0.0, 3.0);
        const double b = rng.uniform(0.0, 3.0);
        const double mu = rng.uniform(0.1, 0.9);
        const double t = rng.uniform(0.0, 4.0);
        for (double p : {-1.0, 0.0, 0.5, 2.0}) {
            const double lhs = p_mean(t * a, t * b, mu, p);
            const double rhs = t * p_mean(a, b, mu, p);
            CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(rhs)));
        }
    }
}

TEST_CASE("continuity at a vanishing argument for p >= 0") {
    for (double p : {0.0, 0.5, 1.0, 2.0}) {
        const double limit = p_mean(0.0, 2.0, 0.4, p);
        double prev_gap = std::numeric_limits<double>::infinity();
        for (int k = 2; k <= 10; ++k) {
            const double gap = std::abs(p_mean(std::pow(10.0, -k), 2.0, 0.4, p) - limit);
            CHECK(gap <= prev_gap + 1e-15);
            prev_gap = gap;
        }
        CHECK(prev_gap < 1e-4);
    }
}

TEST_CASE("p_mean_multi") {
    const PMeanSpec equal3(1.0, {1.0 / 3, 1.0 / 3, 1.0 / 3});
    CHECK(p_mean_multi({1, 2, 3}, equal3) == doctest::Approx(2.0).epsilon(1e-14));
    const PMeanSpec geo3(0.0, {1.0 / 3, 1.0 / 3, 1.0 / 3});
    CHECK(p_mean_multi({1, 8, 27}, geo3) == doctest::Approx(6.0).epsilon(1e-12));
    for (double p : {-kInf, -1.0, 0.0, 0.5, kInf})
        CHECK(p_mean_multi({0.9, 0.9, 0.9}, PMeanSpec(p, {0.2, 0.3, 0.5})) == 0.9);
    CHECK_THROWS_AS(p_mean_multi({1, 2}, equal3), std::invalid_argument);
    // binary consistency: exact agreement with p_mean
    Rng rng(7);
    for (int trial = 0; trial < 100; ++trial) {
        const double a = rng.uniform(0.0, 2.0), b = rng.uniform(0.0, 2.0);
        const double mu = rng.uniform(0.1, 0.9);
        for (double p : {-1.0, 0.0, 0.5, 2.0})
            CHECK(p_mean_multi({a, b}, PMeanSpec::binary(p, mu)) == p_mean(a, b, mu, p));
    }
    // zero rule for p < 0
    CHECK(p_mean_multi({0.0, 1.0, 2.0}, PMeanSpec(-2.0, {0.25, 0.25, 0.5})) == 0.0);
}

TEST_CASE("PMeanSpec validation") {
    CHECK_THROWS_AS(PMeanSpec(1.0, {0.5, 0.6}), std::invalid_argument);
    CHECK_THROWS_AS(PMeanSpec(1.0, {1.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(PMeanSpec(1.0, {}), std::invalid_argument);
    const PMeanSpec b = PMeanSpec::binary(0.5, 0.3);
    CHECK(b.weights[0] == doctest::Approx(0.7));
    CHECK(b.weights[1] == doctest::Approx(0.3));
}

TEST_CASE("corollary exponent") {
    CHECK(corollary_exponent(0.5, kInf, 2) == 0.5);
    CHECK(corollary_exponent(0.5, 2.0, 2) == doctest::Approx(1.0 / 3).epsilon(1e-15));
    CHECK(corollary_exponent(0.0, 5.0, 2) == 0.0);
    CHECK_THROWS_AS(corollary_exponent(-0.1, 1.0, 2), std::invalid_argument);
    CHECK_THROWS_AS(corollary_exponent(0.5, 0.0, 2), std::invalid_argument);
}

TEST_CASE("borell-brascamp-lieb exponent") {
    CHECK(bbl_exponent(kInf, 2) == doctest::Approx(0.5));
    CHECK(bbl_exponent(-0.5, 2) == -kInf);
    CHECK(bbl_exponent(1.0, 2) == doctest::Approx(1.0 / 3).epsilon(1e-15));
    CHECK_THROWS_AS(bbl_exponent(-0.51, 2), std::invalid_argument);
}

TEST_CASE("p from beta") {
    CHECK(p_from_beta(1.0) == doctest::Approx(1.0 / 3).epsilon(1e-15));
    CHECK(p_from_beta(kInf) == 0.5);
    CHECK(p_from_beta(2.0) == doctest::Approx(0.4).epsilon(1e-15));
    CHECK_THROWS_AS(p_from_beta(0.99), std::invalid_argument);
}

TEST_CASE("is_p_concave") {
    const ConvexBody di = ConvexBody::disc({0, 0}, 1.0);
    GridFunction constant = oracles::fill(discretize(di, 1.0 / 16), [](Vec2) { return 3.25; });
    CHECK(is_p_concave(constant, 2.0).concave);
    CHECK(is_p_concave(constant, -1.0).concave);

    // sampled analytic torsion profile: the square root is concave
    GridFunction torsion = oracles::fill(discretize(di, 1.0 / 32), [](Vec2 x) { return (1.0 - norm2(x)) / 4.0; });
    CHECK(is_p_concave(torsion, 0.5).concave);

    // solver output needs the solver+sampling slack
    SolveParams sp;
    sp.h = 1.0 / 32;
    GridFunction solved = solve_poisson(di, SourceTerm::constant(1.0), sp);
    CHECK(is_p_concave(solved, 0.5, 1e-6).concave);

    GridFunction vee = oracles::fill(discretize(di, 1.0 / 16), [](Vec2 x) { return norm(x); });
    const PConcavityReport rep = is_p_concave(vee, 1.0);
    CHECK(!rep.concave);
    CHECK(rep.deficit > 0.0);
    // the witness pair straddles the kink at the origin
    CHECK(norm(0.5 * (rep.witness_a + rep.witness_b)) < norm(rep.witness_a));
}
