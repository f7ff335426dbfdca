#pragma once

#include <cstdint>
#include <random>

#include "mwr/geometry.hpp"

namespace mwr {

/// mt19937_64 with explicit bit-to-double conversion, so streams are
/// identical across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
    double uniform(double a, double b) { return a + (b - a) * uniform(); }
    int uniform_int(int lo, int hi) {  // inclusive
        return lo + static_cast<int>(eng_() % static_cast<std::uint64_t>(hi - lo + 1));
    }

    Vec2 point_in(const ConvexBody& body) {
        const auto [lo, hi] = body.bbox();
        for (;;) {
            const Vec2 p{uniform(lo.x, hi.x), uniform(lo.y, hi.y)};
            if (contains(body, p)) return p;
        }
    }

private:
    std::mt19937_64 eng_;
};

}  // namespace mwr
