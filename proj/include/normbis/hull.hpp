#pragma once

#include <span>
#include <vector>

#include "normbis/vec.hpp"

namespace normbis::hull {

struct HullFacets {
    /// Facet planes scaled so that the facet is {k : <a, k> = 1}; duplicates merged.
    std::vector<Vec> normals;
    /// Indices of input points that are hull vertices.
    std::vector<std::size_t> extreme;
};

/// Facet description of conv(points) for dimension 2 or 3. The origin must be
/// an interior point. Throws on degenerate input.
HullFacets convex_hull(std::span<const Vec> points);

}  // namespace normbis::hull
