#pragma once

#include <vector>

#include "mwr/field.hpp"
#include "mwr/geometry.hpp"
#include "mwr/means.hpp"

namespace mwr {

/// Result of a (p,mu)-convolution: the field on (1-mu) Omega_0 + mu
/// Omega_1 together with, per target node, the maximizing splitting
/// x = (1-mu) x0 + mu x1 recorded for diagnostics.
struct ConvolutionResult {
    GridFunction field;
    std::vector<Vec2> argmax_x0;  // per node, valid at in-body nodes
    std::vector<Vec2> argmax_x1;
    PMeanSpec spec = PMeanSpec::binary(0.5, 0.5);
    double mu = 0.5;
    double p = 0.5;
};

/// Supremal (p,mu)-combination of two nonnegative fields vanishing
/// outside their bodies: at each target node, maximize
/// M_p(u0(x0), u1(x1); mu) over grid nodes x0 of Omega_0 with x1
/// derived and sampled bilinearly (candidates outside Omega_1
/// discarded; a reversed scan catches nodes the primary direction
/// starves). p is restricted to [0, 1); ties break to the first
/// candidate in row-major scan order. h_out <= 0 selects max(h0, h1).
ConvolutionResult convolve_binary(const GridFunction& u0, const GridFunction& u1, double mu, double p,
                                  double h_out = 0.0);

/// m-ary combination as a left fold of binary convolutions with
/// mu_k = w_k / (w_1 + ... + w_k).
ConvolutionResult convolve_multi(const std::vector<GridFunction>& fields, const PMeanSpec& weights,
                                 double p, double h_out = 0.0);

struct MonotonePReport {
    bool pass = true;
    double max_violation = 0.0;  // worst drop between consecutive p runs
    std::vector<double> p_list;
    std::vector<GridFunction> fields;
};

/// Runs convolve_binary for each p on the same target grid and checks
/// pointwise monotonicity (identical candidate sets make it exact up to
/// 1e-12 drift).
MonotonePReport monotone_in_p_check(const GridFunction& u0, const GridFunction& u1, double mu,
                                    std::vector<double> p_list, double h_out = 0.0);

struct LagrangeReport {
    double max_rel_mismatch = 0.0;
    double fraction_below_threshold = 1.0;
    double threshold = 0.1;
    int tested = 0;
    int excluded = 0;
};

/// First-order optimality diagnostic at the recorded argmax pairs:
/// compares u0(x0)^{p-1} Du0(x0) with u1(x1)^{p-1} Du1(x1) for target
/// nodes deeper than 4 h_out, gradients by central differences.
LagrangeReport lagrange_diagnostic(const ConvolutionResult& result, const GridFunction& u0,
                                   const GridFunction& u1, double p);

}  // namespace mwr
