#pragma once

#include <span>
#include <vector>

#include "normbis/bisector.hpp"
#include "normbis/body.hpp"
#include "normbis/mesh.hpp"

namespace normbis {

/// Classifies every mesh vertex, then resolves LEFT-RIGHT edges: the bisector
/// crossing along each such edge is located with cross_edge and the endpoint
/// nearer to it is promoted to BISECTOR. Antipodal edges are handled as pairs
/// so the antipodal law holds exactly.
LabeledMesh classify_sphere(const ConvexBody& body, const Vec& x, const SphereMesh& mesh,
                            const ClassifyParams& params = {}, int edge_samples = 16);

struct Components {
    std::size_t count = 0;
    /// Component id per vertex, or SIZE_MAX for vertices outside the label class.
    std::vector<std::size_t> id;
};

Components connected_components(const LabeledMesh& mesh, Label label);

/// No connected piece of the mesh without its BISECTOR vertices holds both
/// LEFT and RIGHT vertices.
bool separation_check(const LabeledMesh& mesh);

/// No LEFT vertex is adjacent to a RIGHT vertex, and every promoted vertex
/// sits on an edge whose crossing produced bisector points.
bool closedness_check(const LabeledMesh& mesh);

/// Boundary of the raw P(x) label set: for every mesh edge joining a raw
/// BISECTOR direction to a non-BISECTOR one, the arc between them is bisected
/// on the classification until the two ends are `resolution` apart; the
/// BISECTOR end is returned (normalized to the unit sphere of the body).
/// Directions of the LEFT-RIGHT edge crossings are appended.
std::vector<Vec> frontier_points(const ConvexBody& body, const Vec& x, const LabeledMesh& mesh,
                                 const ClassifyParams& params = {}, double resolution = 1e-12);

/// Components of the BISECTOR vertices whose geodesic mesh distance from
/// vertex p lies in [r/2, r]. Throws if the annulus holds no such vertex.
int local_branch_count(const LabeledMesh& mesh, std::size_t p, double r);

/// Components of the cloud points with Euclidean distance from p in
/// [r/2, r], points closer than `link` being joined. Throws if the annulus is empty.
int local_branch_count(std::span<const Vec> cloud, const Vec& p, double r, double link);

/// max over a in A of min over b in B of |a - b|.
double directed_hausdorff(std::span<const Vec> a, std::span<const Vec> b);
double hausdorff(std::span<const Vec> a, std::span<const Vec> b);

/// Square root of the smallest eigenvalue of (1/N) sum p p^T: the RMS distance
/// of the points to the best-fitting hyperplane through the origin.
double hyperplane_flatness(std::span<const Vec> points);

}  // namespace normbis
