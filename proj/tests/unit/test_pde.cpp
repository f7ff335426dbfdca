#include <cmath>
#include <numbers>

#include "doctest.h"
#include "mwr/errors.hpp"
#include "mwr/field.hpp"
#include "mwr/means.hpp"
#include "mwr/pde.hpp"
#include "mwr/rng.hpp"
#include "support/oracles.hpp"

using namespace mwr;

namespace {
const double kPi = std::numbers::pi;
const double kInf = std::numeric_limits<double>::infinity();

ConvexBody unit_square() { return ConvexBody::polygon({{-1, -1}, {1, -1}, {1, 1}, {-1, 1}}); }

double max_error_vs(const GridFunction& u, double (*exact)(Vec2)) {
    double err = 0.0;
    for (int iy = 0; iy < u.ny; ++iy)
        for (int ix = 0; ix < u.nx; ++ix)
            if (u.in(ix, iy))
                err = std::max(err, std::abs(u.values[u.index(ix, iy)] - exact(u.node(ix, iy))));
    return err;
}

OperatorSpec pucci12() {
    OperatorSpec op;
    op.kind = OperatorKind::PucciMinus;
    op.lambda = 1.0;
    op.Lambda = 2.0;
    op.source = SourceTerm::constant(1.0);
    op.direction_count = 8;
    return op;
}
}  // namespace

TEST_CASE("poisson torsion on the disc: analytic oracle and grid convergence") {
    const ConvexBody di = ConvexBody::disc({0, 0}, 1.0);
    double prev = kInf;
    for (double h : {1.0 / 16, 1.0 / 32, 1.0 / 64}) {
        SolveParams sp;
        sp.h = h;
        const GridFunction u = solve_poisson(di, SourceTerm::constant(1.0), sp);
        const double err = max_error_vs(u, [](Vec2 x) { return (1.0 - norm2(x)) / 4.0; });
        CHECK(err < prev);
        prev = err;
    }
    CHECK(prev <= 5e-3);
}

TEST_CASE("poisson torsion on the square against the classical series solution") {
    SolveParams sp;
    sp.h = 1.0 / 64;
    const GridFunction u = solve_poisson(unit_square(), SourceTerm::constant(1.0), sp);
    double err = 0.0;
    for (int iy = 0; iy < u.ny; ++iy)
        for (int ix = 0; ix < u.nx; ++ix) {
            if (!u.in(ix, iy)) continue;
            const Vec2 x = u.node(ix, iy);
            err = std::max(err, std::abs(u.values[u.index(ix, iy)] - oracles::torsion_square_value(x.x, x.y)));
        }
    CHECK(err < 5e-4);
    const double tau_series = oracles::torsion_square_integral();
    CHECK(tau_series == doctest::Approx(0.5623).epsilon(2e-4));
    CHECK(std::abs(torsional_rigidity(u) - tau_series) / tau_series < 1e-3);
    // the square root of the solved field passes the sampled concavity test
    CHECK(is_p_concave(u, 0.5, 1e-6).concave);
}

TEST_CASE("poisson zero source gives the zero solution") {
    SolveParams sp;
    sp.h = 1.0 / 16;
    const GridFunction u = solve_poisson(unit_square(), SourceTerm::constant(0.0), sp);
    CHECK(u.max_abs() == 0.0);
}

TEST_CASE("poisson linearity in the source") {
    SolveParams sp;
    sp.h = 1.0 / 16;
    const ConvexBody di = ConvexBody::disc({0, 0}, 1.0);
    const GridFunction u1 = solve_poisson(di, SourceTerm::constant(1.0), sp);
    const GridFunction u2 = solve_poisson(di, SourceTerm::constant(2.0), sp);
    double dev = 0.0;
    for (int i = 0; i < u1.nx * u1.ny; ++i) dev = std::max(dev, std::abs(u2.values[i] - 2.0 * u1.values[i]));
    CHECK(dev <= 2.0 * sp.resolved_tol() * 10);
}

TEST_CASE("discrete maximum principle and source monotonicity") {
    SolveParams sp;
    sp.h = 1.0 / 16;
    const ConvexBody di = ConvexBody::disc({0, 0}, 1.0);
    const GridFunction big = solve_poisson(di, SourceTerm::constant(1.0), sp);
    const GridFunction small = solve_poisson(di, SourceTerm::radial("gauss"), sp);  // exp(-r^2) <= 1
    for (int i = 0; i < big.nx * big.ny; ++i) {
        CHECK(big.values[i] >= 0.0);
        CHECK(small.values[i] >= 0.0);
        CHECK(big.values[i] >= small.values[i] - 2.0 * sp.resolved_tol());
    }
    // strictly positive at interior nodes for a nontrivial source
    for (int iy = 0; iy < big.ny; ++iy)
        for (int ix = 0; ix < big.nx; ++ix)
            if (big.mask[big.index(ix, iy)] == NodeMask::Interior) CHECK(big.values[big.index(ix, iy)] > 0.0);
}

TEST_CASE("poisson failure to converge raises") {
    SolveParams sp;
    sp.h = 1.0 / 32;
    sp.max_iters = 3;
    CHECK_THROWS_AS(solve_poisson(ConvexBody::disc({0, 0}, 1.0), SourceTerm::constant(1.0), sp), SolverError);
}

TEST_CASE("pucci disc oracle") {
    SolveParams sp;
    sp.h = 1.0 / 32;
    const GridFunction u = solve_pucci(ConvexBody::disc({0, 0}, 1.0), pucci12(), sp);
    const double err = max_error_vs(u, [](Vec2 x) { return (1.0 - norm2(x)) / 8.0; });
    CHECK(err <= 2e-2);
}

TEST_CASE("pucci with equal parameters matches poisson") {
    SolveParams sp;
    sp.h = 1.0 / 32;
    OperatorSpec op = pucci12();
    op.Lambda = 1.0;
    const ConvexBody di = ConvexBody::disc({0, 0}, 1.0);
    const GridFunction up = solve_pucci(di, op, sp);
    const GridFunction ul = solve_poisson(di, SourceTerm::constant(1.0), sp);
    double dev = 0.0;
    for (int i = 0; i < up.nx * up.ny; ++i) dev = std::max(dev, std::abs(up.values[i] - ul.values[i]));
    CHECK(dev <= 1e-2);
}

TEST_CASE("pucci zero source gives zero") {
    SolveParams sp;
    sp.h = 1.0 / 16;
    OperatorSpec op = pucci12();
    op.source = SourceTerm::constant(0.0);
    const GridFunction u = solve_pucci(ConvexBody::disc({0, 0}, 1.0), op, sp);
    CHECK(u.max_abs() == 0.0);
}

TEST_CASE("pucci scheme equals the axis laplacian for equal parameters, exactly") {
    // dyadic convex quadratic: every quantity below is computed without
    // rounding, so the degenerate reduction is bit-exact
    const double h = 0.125;
    GridFunction g = oracles::fill(discretize(unit_square(), h),
                                   [](Vec2 x) { return x.x * x.x + x.y * x.y + 0.25 * x.x * x.y; });
    OperatorSpec op = pucci12();
    op.lambda = op.Lambda = 1.0;
    op.source = SourceTerm::constant(0.0);
    const std::vector<double> scheme = pucci_apply(g, op, 5);
    const std::vector<double> lap = laplacian_apply(g, SourceTerm::constant(0.0));
    int compared = 0;
    for (int iy = 0; iy < g.ny; ++iy) {
        for (int ix = 0; ix < g.nx; ++ix) {
            const int id = g.index(ix, iy);
            if (!g.unknown(ix, iy)) continue;
            // limit to nodes whose whole wide stencil has full arms
            if (boundary_distance(g.body, g.node(ix, iy)) < 5 * h * 1.5) continue;
            CHECK(scheme[id] == lap[id]);
            ++compared;
        }
    }
    CHECK(compared > 0);
}

TEST_CASE("pucci matrix form is concave") {
    Rng rng(4242);
    for (int trial = 0; trial < 500; ++trial) {
        const Sym2 a{rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2)};
        const Sym2 b{rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2)};
        const Sym2 mid{0.5 * (a.xx + b.xx), 0.5 * (a.xy + b.xy), 0.5 * (a.yy + b.yy)};
        const double lhs = pucci_minus_value(1.0, 2.5, mid);
        const double rhs = 0.5 * (pucci_minus_value(1.0, 2.5, a) + pucci_minus_value(1.0, 2.5, b));
        CHECK(lhs >= rhs - 1e-12);
    }
}

TEST_CASE("pucci pseudo-time marching agrees with the sweep solver") {
    SolveParams sweep;
    sweep.h = 1.0 / 16;
    SolveParams march = sweep;
    march.pucci_marching = true;
    const ConvexBody di = ConvexBody::disc({0, 0}, 1.0);
    const GridFunction a = solve_pucci(di, pucci12(), sweep);
    const GridFunction b = solve_pucci(di, pucci12(), march);
    double dev = 0.0;
    for (int i = 0; i < a.nx * a.ny; ++i) dev = std::max(dev, std::abs(a.values[i] - b.values[i]));
    CHECK(dev < 5e-4);
}

TEST_CASE("pucci rejects an unstable pseudo time step") {
    SolveParams sp;
    sp.h = 1.0 / 16;
    sp.pseudo_dt = sp.h * sp.h;  // above h^2/(4 Lambda)
    CHECK_THROWS_AS(solve_pucci(ConvexBody::disc({0, 0}, 1.0), pucci12(), sp), std::invalid_argument);
}

TEST_CASE("rotation equivariance of both solvers") {
    const Rotation rho(kPi / 6);
    const ConvexBody sq = unit_square();
    const ConvexBody sqr = sq.rotated(rho);
    SolveParams sp;
    sp.h = 1.0 / 32;
    const double bound_poisson = 3.0 * (2.0 * sp.h * sp.h + 2.0 * sp.resolved_tol() + 2.0 * sp.h * 0.6);
    {
        const GridFunction u = solve_poisson(sq, SourceTerm::constant(1.0), sp);
        const GridFunction ur = solve_poisson(sqr, SourceTerm::constant(1.0), sp);
        double dev = 0.0;
        for (int iy = 0; iy < u.ny; ++iy)
            for (int ix = 0; ix < u.nx; ++ix) {
                if (!u.in(ix, iy)) continue;
                const Vec2 x = u.node(ix, iy);
                if (boundary_distance(sq, x) < 2 * sp.h) continue;
                dev = std::max(dev, std::abs(u.values[u.index(ix, iy)] - sample(ur, rho.apply(x))));
            }
        CHECK(dev < bound_poisson);
    }
    {
        const GridFunction u = solve_pucci(sq, pucci12(), sp);
        const GridFunction ur = solve_pucci(sqr, pucci12(), sp);
        double dev = 0.0;
        for (int iy = 0; iy < u.ny; ++iy)
            for (int ix = 0; ix < u.nx; ++ix) {
                if (!u.in(ix, iy)) continue;
                const Vec2 x = u.node(ix, iy);
                if (boundary_distance(sq, x) < 2 * sp.h) continue;
                dev = std::max(dev, std::abs(u.values[u.index(ix, iy)] - sample(ur, rho.apply(x))));
            }
        CHECK(dev < 3.0 * (0.05 * 2.0 * 0.15 + 2.0 * sp.h * sp.h + 2.0 * sp.h * 0.3));
    }
}

TEST_CASE("torsional rigidity") {
    SolveParams sp;
    sp.h = 1.0 / 32;
    const GridFunction u = solve_poisson(ConvexBody::disc({0, 0}, 1.0), SourceTerm::constant(1.0), sp);
    CHECK(std::abs(torsional_rigidity(u) - kPi / 8.0) / (kPi / 8.0) < 0.01);
    // scaling tau(t Omega) = t^4 tau(Omega) at t = 2
    SolveParams sp2;
    sp2.h = 1.0 / 16;
    const GridFunction u1 = solve_poisson(ConvexBody::disc({0, 0}, 1.0), SourceTerm::constant(1.0), sp2);
    SolveParams sp3;
    sp3.h = 1.0 / 8;
    const GridFunction u2 = solve_poisson(ConvexBody::disc({0, 0}, 2.0), SourceTerm::constant(1.0), sp3);
    CHECK(std::abs(torsional_rigidity(u2) - 16.0 * torsional_rigidity(u1)) / (16.0 * torsional_rigidity(u1)) <
          0.02);
    // domain monotonicity: the square sits inside disc(0, 4/pi + 0.2)
    SolveParams sp4;
    sp4.h = 1.0 / 32;
    const GridFunction us = solve_poisson(unit_square(), SourceTerm::constant(1.0), sp4);
    const GridFunction ud = solve_poisson(ConvexBody::disc({0, 0}, 4.0 / kPi + 0.2), SourceTerm::constant(1.0), sp4);
    CHECK(torsional_rigidity(us) < torsional_rigidity(ud));
}

TEST_CASE("hopf boundary diagnostic") {
    SolveParams sp;
    sp.h = 1.0 / 64;
    const ConvexBody di = ConvexBody::disc({0, 0}, 1.0);
    const GridFunction u = solve_poisson(di, SourceTerm::constant(1.0), sp);
    const HopfReport hr = hopf_boundary_check(u);
    CHECK(hr.pass);
    CHECK(std::abs(hr.min_slope - 0.5) / 0.5 < 0.10);

    const GridFunction zero = discretize(di, sp.h);
    CHECK(!hopf_boundary_check(zero).pass);

    const GridFunction up = solve_pucci(di, pucci12(), sp);
    const HopfReport hp = hopf_boundary_check(up);
    CHECK(hp.pass);
    CHECK(std::abs(hp.min_slope - 0.25) / 0.25 < 0.10);
}

TEST_CASE("transformed operator values") {
    OperatorSpec lap;
    lap.kind = OperatorKind::Poisson;
    lap.source = SourceTerm::constant(1.0);
    // p = 1: G(x,t,A) = F(x, t, 0, t^{-2} A)
    const Sym2 a{2.0, 0.5, -1.0};
    const double t = 1.7;
    CHECK(transformed_operator_value(lap, 1.0, {0, 0}, {0, 0}, t, a) ==
          doctest::Approx((a.xx + a.yy) / (t * t) + 1.0).epsilon(1e-14));
    // p = 1/2, t = 1, A = -I: trace(-I) + 1 = -1
    CHECK(transformed_operator_value(lap, 0.5, {0, 0}, {0, 0}, 1.0, {-1, 0, -1}) ==
          doctest::Approx(-1.0).epsilon(1e-14));
    OperatorSpec pu = pucci12();
    pu.source = SourceTerm::constant(0.0);
    CHECK(transformed_operator_value(pu, 0.5, {0, 0}, {0, 0}, 1.0, {1, 0, -1}) ==
          doctest::Approx(-1.0).epsilon(1e-14));
    // p = 0 branch uses the exponential scaling
    CHECK(transformed_operator_value(lap, 0.0, {0, 0}, {0, 0}, 0.0, {1, 0, 1}) ==
          doctest::Approx(3.0).epsilon(1e-14));
    CHECK_THROWS_AS(transformed_operator_value(lap, 0.5, {0, 0}, {0, 0}, -1.0, a), std::invalid_argument);
    CHECK_THROWS_AS(transformed_operator_value(lap, -0.5, {0, 0}, {0, 0}, 1.0, a), std::invalid_argument);
}

TEST_CASE("source combination condition") {
    const ConvexBody sq = unit_square();
    const ConvexBody di = ConvexBody::disc({0, 0}, 1.0);
    const SourceTerm one = SourceTerm::constant(1.0);
    const SourceConditionReport constant = check_source_condition(one, sq, one, di, one, 0.5, 0.5, 99);
    CHECK(constant.pass);
    CHECK(constant.midpoint_checked);

    // affine source, p = 1/3: the condition reduces to concavity of f
    GridFunction affine = oracles::fill(discretize(ConvexBody::polygon({{-3, -3}, {3, -3}, {3, 3}, {-3, 3}}), 0.25),
                                        [](Vec2 x) { return 1.0 + 0.5 * x.x; });
    const SourceTerm fa = SourceTerm::sampled(affine);
    CHECK(check_source_condition(fa, sq, fa, di, fa, 0.5, 1.0 / 3.0, 99).pass);

    // |x|^2 is convex: the midpoint test fails with a witness
    const SourceTerm fc = SourceTerm::radial("r2");
    const SourceConditionReport bad = check_source_condition(fc, sq, fc, di, fc, 0.5, 1.0 / 3.0, 99);
    CHECK(!bad.pass);
    CHECK(bad.midpoint_min_slack < 0.0);
}

TEST_CASE("operator spec validation") {
    OperatorSpec op = pucci12();
    op.lambda = 3.0;  // above Lambda
    CHECK_THROWS_AS(op.validate(), std::invalid_argument);
    OperatorSpec ok = pucci12();
    ok.direction_count = 1;
    CHECK_THROWS_AS(ok.validate(), std::invalid_argument);
    CHECK_THROWS_AS(SourceTerm::constant(-1.0), std::invalid_argument);
    CHECK_THROWS_AS(SourceTerm::radial("nope"), std::invalid_argument);
}
