#pragma once

#include <span>
#include <vector>

#include "normbis/vec.hpp"

namespace normbis::lp {

enum class Status { optimal, unbounded };

struct Solution {
    Status status = Status::optimal;
    double value = 0.0;
    std::vector<double> x;
};

/// maximize <c, x> subject to rows[i] . x <= b[i], x unrestricted in sign.
/// Requires b >= 0 so the origin is a feasible starting vertex. Dense
/// tableau simplex with Bland's rule; sized for tens to a few hundred rows.
Solution maximize_free(std::span<const Vec> rows, std::span<const double> b, const Vec& c);

/// Gauge of conv(vertices) at v through the dual program
/// max <w, v> s.t. <v_j, w> <= 1, whose optimum equals min sum mu_j with
/// sum mu_j v_j = v, mu >= 0.
double vertex_gauge(std::span<const Vec> vertices, const Vec& v);

/// Support function of {k : |<a_i, k>| <= 1} in direction u.
double facet_support(std::span<const Vec> normals, const Vec& u);

}  // namespace normbis::lp
