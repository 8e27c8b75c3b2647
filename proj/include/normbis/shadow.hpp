#pragma once

#include <optional>
#include <vector>

#include "normbis/body.hpp"
#include "normbis/mesh.hpp"
#include "normbis/types.hpp"

namespace normbis {

inline constexpr double kSharpWidth = 1e-7;
inline constexpr double kOnBoundaryTol = 1e-8;

/// p (on the unit sphere) lies on the shadow boundary S(K, x): p is Birkhoff
/// orthogonal to x. Throws if gauge(p) differs from 1 by more than 1e-8.
bool shadow_boundary_test(const ConvexBody& body, const Vec& x, const Vec& p);

/// Shadow point whose supporting line p + R x touches K only at p.
/// Throws if p is not on the shadow boundary.
bool sharp_point_test(const ConvexBody& body, const Vec& x, const Vec& p, double max_width = kSharpWidth);

/// Orthonormal basis of the Euclidean complement of x.
std::vector<Vec> complement_basis(const Vec& x);

/// Chord of K along h + R x: secant, tangency (half_length 0) or nothing.
std::optional<Chord> chord_through(const ConvexBody& body, const Vec& x, const Vec& h);

/// Chords on the lattice spacing * Z^(n-1) of the complement of x, clipped to
/// the box [-support(b_j), support(b_j)] along each basis vector b_j.
std::vector<Chord> chord_field(const ConvexBody& body, const Vec& x, double spacing);

double default_chord_spacing(int dim) noexcept;

/// Shadow points obtained by minimizing gauge(w + t x) over mesh directions w
/// of the complement of x; flat contact segments are sampled every
/// `segment_spacing` (at most 1000 pieces).
std::vector<Vec> shadow_samples(const ConvexBody& body, const Vec& x, int level, double segment_spacing = 0.05);

/// Shadow point on the supporting line through p: p itself when p is a contact
/// point, otherwise the minimizer of gauge(p + t x) rescaled to the sphere.
Vec shadow_contact(const ConvexBody& body, const Vec& x, const Vec& p);

enum class Provenance { midpoint, shadow };

struct BoundedRepresentation {
    std::vector<Vec> points;
    std::vector<Provenance> tags;
    std::vector<Chord> chords;  // secant chords behind the midpoints

    std::vector<Vec> midpoints() const;
    std::vector<Vec> shadow() const;
};

struct BoundedRepParams {
    double chord_spacing = 0.0;  // 0 selects default_chord_spacing(n)
    int shadow_level = -1;       // complement sampling level; -1 derives it from the spacing
};

/// Midpoints of the secant chords plus shadow points from the mesh directions
/// that pass shadow_boundary_test, from tangency chords and from shadow_samples.
BoundedRepresentation bounded_representation(const ConvexBody& body, const Vec& x, const SphereMesh& mesh,
                                             const BoundedRepParams& params = {});

}  // namespace normbis
