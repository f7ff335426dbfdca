#pragma once

#include <vector>

#include "mwr/convolve.hpp"
#include "mwr/field.hpp"
#include "mwr/geometry.hpp"

namespace mwr {

/// u_rho(x) = u(rho^{-1} x) on the rotated body, values by bilinear
/// sampling.
GridFunction rotate_field(const GridFunction& u, const Rotation& rho);

/// The rotation mean (1/m)(rho_1 Omega + ... + rho_m Omega) with
/// equally spaced angles 2 pi (i-1)/m.
ConvexBody sharp_domain(const ConvexBody& body, int m);

/// Equal-weight m-ary (p, 1/m)-convolution of the m rotated copies of
/// u, defined on the rotation mean of its body. The body is centered at
/// its centroid first so the rotations act about the origin.
GridFunction sharp_rearrangement(const GridFunction& u, double p, int m, double h_out = 0.0);

/// One rearrangement experiment: the source field, the per-m domains
/// and convolved fields, and the limit ball of equal mean width.
struct RearrangementRun {
    GridFunction source;   // centered copy of the input
    double p = 0.5;
    std::vector<int> m_list;
    std::vector<ConvexBody> domains;      // rotation means, per m
    std::vector<GridFunction> outputs;    // rearranged fields, per m
    ConvexBody limit_ball;                // disc(0, w/2)
};

RearrangementRun run_rearrangement(const GridFunction& u, double p, std::vector<int> m_list,
                                   double h_out = 0.0);

struct ConvergenceReport {
    std::vector<double> sup_diffs;     // consecutive outputs, resampled on the limit grid
    std::vector<double> domain_dists;  // Hausdorff distance to the limit ball, per m
    bool monotone = true;              // sup_diffs nonincreasing (up to slack) and dists shrinking
    double slack = 0.0;
};

ConvergenceReport rearrangement_convergence(const RearrangementRun& run);

}  // namespace mwr
