#pragma once

#include <cstdint>
#include <vector>

#include "normbis/types.hpp"

namespace normbis {

/// Direction mesh on a sphere: antipodally closed vertex set with a graph.
struct SphereMesh {
    int dim = 0;
    std::vector<Vec> vertices;
    std::vector<std::vector<std::size_t>> adjacency;
    /// antipode[i] is the index of -vertices[i].
    std::vector<std::size_t> antipode;
    /// Largest Euclidean edge length between unit vertices.
    double spacing = 0.0;

    std::size_t size() const noexcept { return vertices.size(); }
    std::size_t edge_count() const noexcept;
};

/// n = 2: regular 2^level-gon. n = 3: icosphere with `level` subdivisions.
/// n = 4: 8 * 4^level antipodal pairs of seeded random points with
/// symmetrized 8-nearest-neighbour adjacency.
SphereMesh sphere_mesh(int dim, int level, std::uint64_t seed = 1);

/// Mixed LEFT/RIGHT mesh edge and the bisector points found across it.
struct EdgeCrossing {
    std::size_t left = 0;
    std::size_t right = 0;
    /// Median crossing parameter along the arc from the LEFT vertex.
    double s_median = 0.5;
    std::vector<BisectorPoint> points;
};

struct LabeledMesh {
    SphereMesh mesh;  // vertices normalized to the unit sphere of the body
    /// Per-vertex classification of the vertex direction itself.
    std::vector<RayClassification> rays;
    /// Mesh labels: the ray labels, with one endpoint of every LEFT-RIGHT edge
    /// promoted to BISECTOR (the one nearer the crossing).
    std::vector<Label> labels;
    std::vector<char> promoted;
    std::vector<EdgeCrossing> crossings;

    std::size_t count(Label label) const noexcept;
};

}  // namespace normbis
