#include "mwr/means.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace mwr {

PMeanSpec::PMeanSpec(double p_value, std::vector<double> w) : p(p_value), weights(std::move(w)) {
    if (weights.empty()) throw std::invalid_argument("PMeanSpec: empty weight vector");
    double sum = 0.0;
    for (double wi : weights) {
        if (!(wi > 0.0)) throw std::invalid_argument("PMeanSpec: weights must be positive");
        sum += wi;
    }
    if (std::abs(sum - 1.0) > 1e-12) throw std::invalid_argument("PMeanSpec: weights must sum to 1");
}

PMeanSpec PMeanSpec::binary(double p_value, double mu) {
    if (!(mu > 0.0 && mu < 1.0)) throw std::invalid_argument("PMeanSpec: mu must lie in (0,1)");
    return PMeanSpec(p_value, {1.0 - mu, mu});
}

double p_mean(double a, double b, double mu, double p) {
    if (!(a >= 0.0) || !(b >= 0.0)) throw std::invalid_argument("p_mean: arguments must be nonnegative");
    if (!(mu > 0.0 && mu < 1.0)) throw std::invalid_argument("p_mean: mu must lie in (0,1)");
    if (a == b) return a;  // idempotent for every p, including +-inf
    if (std::isinf(p)) return p > 0 ? std::max(a, b) : std::min(a, b);
    if (p == 0.0) return std::pow(a, 1.0 - mu) * std::pow(b, mu);
    if (p < 0.0 && a * b == 0.0) return 0.0;
    return std::pow((1.0 - mu) * std::pow(a, p) + mu * std::pow(b, p), 1.0 / p);
}

double p_mean_multi(const std::vector<double>& values, const PMeanSpec& spec) {
    if (values.size() != spec.weights.size())
        throw std::invalid_argument("p_mean_multi: values/weights length mismatch");
    for (double v : values)
        if (!(v >= 0.0)) throw std::invalid_argument("p_mean_multi: values must be nonnegative");
    const double p = spec.p;
    bool all_equal = true;
    bool any_zero = false;
    for (double v : values) {
        all_equal = all_equal && v == values[0];
        any_zero = any_zero || v == 0.0;
    }
    if (all_equal) return values[0];
    if (std::isinf(p)) {
        double m = values[0];
        for (double v : values) m = p > 0 ? std::max(m, v) : std::min(m, v);
        return m;
    }
    if (p == 0.0) {
        double prod = 1.0;
        for (std::size_t i = 0; i < values.size(); ++i) prod *= std::pow(values[i], spec.weights[i]);
        return prod;
    }
    if (p < 0.0 && any_zero) return 0.0;
    double s = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) s += spec.weights[i] * std::pow(values[i], p);
    return std::pow(s, 1.0 / p);
}

double corollary_exponent(double p, double r, int n) {
    if (!(p >= 0.0)) throw std::invalid_argument("corollary_exponent: p must be >= 0");
    if (!(r > 0.0)) throw std::invalid_argument("corollary_exponent: r must be positive");
    if (n < 1) throw std::invalid_argument("corollary_exponent: n must be >= 1");
    if (std::isinf(r)) return p;
    return p * r / (n * p + r);
}

double bbl_exponent(double s, int n) {
    if (n < 1) throw std::invalid_argument("bbl_exponent: n must be >= 1");
    const double floor_s = -1.0 / n;
    if (s < floor_s) throw std::invalid_argument("bbl_exponent: s must be >= -1/n");
    if (std::isinf(s)) return 1.0 / n;
    if (s == floor_s) return -std::numeric_limits<double>::infinity();
    return s / (n * s + 1.0);
}

double p_from_beta(double beta) {
    if (!(beta >= 1.0)) throw std::invalid_argument("p_from_beta: beta must be >= 1");
    if (std::isinf(beta)) return 0.5;
    return beta / (1.0 + 2.0 * beta);
}

PConcavityReport is_p_concave(const GridFunction& gf, double p, double extra_slack) {
    const double tol = 1e-9 + extra_slack;
    PConcavityReport rep;
    std::vector<std::pair<int, int>> nodes;
    for (int iy = 0; iy < gf.ny; ++iy)
        for (int ix = 0; ix < gf.nx; ++ix)
            if (gf.in(ix, iy)) nodes.push_back({ix, iy});
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        for (std::size_t j = i + 1; j < nodes.size(); ++j) {
            const int sx = nodes[i].first + nodes[j].first;
            const int sy = nodes[i].second + nodes[j].second;
            if (sx % 2 || sy % 2) continue;
            const int mx = sx / 2, my = sy / 2;
            if (!gf.in(mx, my)) continue;
            const double va = gf.values[gf.index(nodes[i].first, nodes[i].second)];
            const double vb = gf.values[gf.index(nodes[j].first, nodes[j].second)];
            const double vm = gf.values[gf.index(mx, my)];
            const double rhs = p_mean(va, vb, 0.5, p);
            if (vm < rhs - tol && rhs - vm > rep.deficit) {
                rep.concave = false;
                rep.deficit = rhs - vm;
                rep.witness_a = gf.node(nodes[i].first, nodes[i].second);
                rep.witness_b = gf.node(nodes[j].first, nodes[j].second);
            }
        }
    }
    return rep;
}

}  // namespace mwr
