#pragma once

#include <vector>

#include "mwr/field.hpp"
#include "mwr/geometry.hpp"

namespace mwr {

/// The pair (p, weights) governing means and convolutions. Weights are
/// positive and sum to 1 (tolerance 1e-12).
struct PMeanSpec {
    double p = 1.0;  // extended real, +-infinity allowed
    std::vector<double> weights;

    PMeanSpec(double p_value, std::vector<double> w);
    static PMeanSpec binary(double p_value, double mu);
};

/// mu-weighted p-mean of a, b >= 0 with the usual degenerate branches:
/// max for p = +inf, min for p = -inf, geometric mean for p = 0, and 0
/// whenever p < 0 and ab = 0. Continuous in (a, b) for every p.
double p_mean(double a, double b, double mu, double p);

/// m-ary p-mean; zero rule for p < 0 when the product vanishes.
double p_mean_multi(const std::vector<double>& values, const PMeanSpec& spec);

/// q = p r / (n p + r) for finite r, q = p for r = +inf.
double corollary_exponent(double p, double r, int n);

/// The Borell-Brascamp-Lieb exponent: 1/n at s = +inf, s/(ns+1) on
/// (-1/n, +inf), -inf at s = -1/n.
double bbl_exponent(double s, int n);

/// beta/(1+2*beta) for finite beta >= 1, 1/2 for beta = +inf.
double p_from_beta(double beta);

struct PConcavityReport {
    bool concave = true;
    Vec2 witness_a{};
    Vec2 witness_b{};
    double deficit = 0.0;  // worst M_p(v(a),v(b);1/2) - v(mid)
};

/// Sampled midpoint test of p-concavity over all in-body node pairs
/// whose midpoint is again a grid node; tolerance 1e-9 plus the
/// caller's declared interpolation slack.
PConcavityReport is_p_concave(const GridFunction& gf, double p, double extra_slack = 0.0);

}  // namespace mwr
