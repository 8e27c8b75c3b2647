#pragma once

#include <span>
#include <vector>

#include "normbis/body.hpp"
#include "normbis/mesh.hpp"
#include "normbis/ortho.hpp"
#include "normbis/types.hpp"

namespace normbis {

struct ClassifyParams {
    double t0 = 1e-3;           // first grid value
    double ratio = 1.25;        // geometric grid ratio
    double t_max = 1e4;         // last grid value
    double eps_f = 1e-9;        // |f| below this counts as zero
    double eps_asym = 1e-6;     // |f(t_max)| below this suggests an ideal direction
    double eps_t = 1e-10;       // root resolution in t (relative above 1)
    double limit_tol = 1e-4;    // derivative estimate must agree with an ideal verdict
    double ideal_probe = 1e-6;  // relative offset of the neighbour probes for ideal points
    double t_extend = 1e7;      // search limit past t_max when the derivative limit contradicts f(t_max)
};

/// f(t) = gauge(t y + x) - gauge(t y - x).
double delta(const ConvexBody& body, const Vec& x, const Vec& y, double t);

/// The geometric scan grid t0 * ratio^k, capped by and ending at t_max.
std::vector<double> scan_grid(const ClassifyParams& params);

/// Scans f on scan_grid, brackets and refines roots, detects zero intervals.
/// Grid steps with equal end signs are split until convexity of both gauges
/// excludes a root pair inside. Without roots the ray is an ideal BISECTOR
/// direction when f(t_max) is below eps_asym (confirmed by the derivative
/// limit) or when directions arbitrarily close to y have an asymptotic
/// difference of the other sign. A derivative limit opposite to f(t_max)
/// means a root past t_max; it is searched for up to t_extend and the ray is
/// UNRESOLVED if none turns up. Otherwise the label is LEFT or RIGHT by the
/// sign of the tail.
RayClassification classify_direction(const ConvexBody& body, const Vec& x, const Vec& y,
                                     const ClassifyParams& params = {});

/// Parameters t = u / (1 - u) for k midpoints u of a uniform grid on (0, 1);
/// their Phi-images are roughly evenly spread from the centre to the boundary.
std::vector<double> sample_parameters(int k);

/// Points of B(-x, x) on the ray through y. Bounded solution intervals are
/// sampled at their ends, midpoint and the sample_parameters(k) inside;
/// unbounded ones and ideal limits contribute the ideal point of y.
/// Throws if the classification is not BISECTOR.
std::vector<BisectorPoint> bisector_points(const ConvexBody& body, const Vec& x, const RayClassification& ray, int k);

/// z / gauge(z - x) for ordinary points, boundary_point(y) for ideal ones.
Vec phi(const ConvexBody& body, const Vec& x, const BisectorPoint& point);

/// Inverse of phi on chord midpoints: z = m / s, t_z = 1 / s.
BisectorPoint bisector_from_chord(const Chord& chord, const Vec& x);

/// Bisector points between a LEFT direction and a RIGHT direction: for each
/// sampled t, the arc parameter s with f_{y(s)}(t) = 0 is found by bisection.
EdgeCrossing cross_edge(const ConvexBody& body, const Vec& x, const Vec& left_dir, const Vec& right_dir,
                        std::span<const double> ts, const ClassifyParams& params = {});

/// Bisector points on the line w + R x. Along such a line
/// s -> gauge(w + (s-1) x) - gauge(w + (s+1) x) is nonincreasing, so its zero
/// set is one point or one segment; segments are sampled at k + 1 points.
std::vector<BisectorPoint> line_bisector_points(const ConvexBody& body, const Vec& x, const Vec& w, int k,
                                                const ClassifyParams& params = {});

/// line_bisector_points over offsets w = q / (1 - |q|), q on the grid
/// spacing * Z^(n-1) with |q| < 1 - spacing / 2 in the complement of x.
std::vector<BisectorPoint> bisector_line_samples(const ConvexBody& body, const Vec& x, double spacing, int k = 4,
                                                 const ClassifyParams& params = {});

struct TaggedPoint {
    BisectorPoint point;
    std::size_t vertex = 0;  // mesh vertex (for edge samples, the LEFT end)
    bool from_edge = false;
};

/// Bisector points of every BISECTOR ray in the mesh plus the stored edge crossings.
std::vector<TaggedPoint> sample_bisector(const ConvexBody& body, const Vec& x, const LabeledMesh& mesh, int k);

}  // namespace normbis
