#pragma once

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "normbis/body.hpp"
#include "normbis/types.hpp"

namespace testing {

using normbis::ConvexBody;
using normbis::Label;
using normbis::Vec;

inline Vec random_gaussian(std::mt19937_64& rng, int n) {
    std::normal_distribution<double> nd;
    Vec v(n);
    for (int i = 0; i < n; ++i) v[i] = nd(rng);
    return v;
}

inline Vec random_unit(std::mt19937_64& rng, int n) {
    for (;;) {
        Vec v = random_gaussian(rng, n);
        const double l = normbis::norm2(v);
        if (l > 1e-6) return v / l;
    }
}

/// Label from a plain sign scan of f(t) = g(ty + x) - g(ty - x) on a uniform
/// grid of (0, t_end]. Any zero or sign change gives BISECTOR.
inline Label grid_label(const ConvexBody& body, const Vec& x, const Vec& y, int count = 10000,
                        double t_end = 100.0, double eps = 1e-9) {
    bool pos = false, neg = false;
    for (int i = 1; i <= count; ++i) {
        const double t = t_end * i / count;
        const double f = body.gauge(y * t + x) - body.gauge(y * t - x);
        if (std::fabs(f) <= eps) return Label::bisector;
        (f > 0 ? pos : neg) = true;
        if (pos && neg) return Label::bisector;
    }
    return pos ? Label::right : Label::left;
}

/// Minimum of t -> g(p + t d) on a dense uniform grid of [-r, r].
inline double grid_min(const ConvexBody& body, const Vec& p, const Vec& d, double r = 4.0, int count = 200000) {
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= count; ++i) best = std::min(best, body.gauge(p + d * (-r + 2.0 * r * i / count)));
    return best;
}

inline ConvexBody cube_as_vertices() {
    normbis::PolytopeV v;
    for (int m = 0; m < 8; ++m) v.vertices.push_back(Vec{m & 1 ? 1.0 : -1.0, m & 2 ? 1.0 : -1.0, m & 4 ? 1.0 : -1.0});
    return ConvexBody::create(3, v);
}

}  // namespace testing
