#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "normbis/vec.hpp"

namespace normbis {

/// Unit ball of the l_p norm; p = +infinity is the max norm.
struct LpBall {
    double p = 2.0;
};

/// {k : <normals[i], k> <= offsets[i]}; facets must come in antipodal pairs.
struct PolytopeH {
    std::vector<Vec> normals;
    std::vector<double> offsets;
};

/// conv(vertices); the vertex set must be closed under v -> -v.
struct PolytopeV {
    std::vector<Vec> vertices;
};

/// K = conv(C+ u C-) with C+ = {(1, cos t, sin t) : t in [-pi/2, pi/2]} and
/// C- = -C+, sampled with m + 1 points per arc (arc endpoints are the
/// diameter endpoints (+-1, 0, +-1)).
struct HalfDiskHull {
    int m = 256;
};

using Shape = std::variant<LpBall, PolytopeH, PolytopeV, HalfDiskHull>;

struct ValidationReport {
    bool ok = true;
    std::vector<std::string> failures;
};

ValidationReport validate(int dim, const Shape& shape);

/// Immutable, thread-safe oracle for a centrally symmetric convex body
/// centred at the origin. Copies share the precomputed representation.
class ConvexBody {
public:
    /// Throws Error carrying the validation diagnostics if the body is degenerate.
    static ConvexBody create(int dim, Shape shape, std::optional<double> gauge_tolerance = {});

    static ConvexBody lp_ball(int dim, double p);
    static ConvexBody euclidean(int dim) { return lp_ball(dim, 2.0); }
    /// [-1, 1]^n as an H-polytope.
    static ConvexBody cube(int dim);
    /// conv{+-e_i} as a V-polytope.
    static ConvexBody cross_polytope(int dim);
    static ConvexBody halfdisk_hull(int m = 256);

    int dim() const noexcept;
    const Shape& shape() const noexcept;
    double gauge_tolerance() const noexcept;

    /// Minkowski functional min{t >= 0 : v in tK}.
    double gauge(const Vec& v) const;
    /// max{<u, k> : k in K}. For HalfDiskHull this is the exact (unsampled) body.
    double support(const Vec& u) const;
    /// v / gauge(v).
    Vec boundary_point(const Vec& v) const;

    /// Vertices of the sampled polytope attaining support(u) within tol * |u|.
    /// Only meaningful for vertex-described bodies.
    std::vector<Vec> support_contacts(const Vec& u, double tol) const;

    /// Number of facet planes used by the gauge (0 for closed-form or LP gauges).
    std::size_t facet_count() const noexcept;

    /// Short human-readable tag such as "lp:2" or "halfdisk:256".
    std::string describe() const;

    struct Impl;

private:
    explicit ConvexBody(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
    std::shared_ptr<const Impl> impl_;
};

ValidationReport validate(const ConvexBody& body);

/// Vertices used for the sampled HalfDiskHull polytope.
std::vector<Vec> halfdisk_vertices(int m);

}  // namespace normbis
