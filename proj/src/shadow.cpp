#include "normbis/shadow.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "normbis/ortho.hpp"
#include "normbis/parallel.hpp"

namespace normbis {

namespace {

void require_on_boundary(const ConvexBody& body, const Vec& p, const char* what) {
    const double g = body.gauge(p);
    if (std::fabs(g - 1.0) > kOnBoundaryTol) {
        throw Error(std::string(what) + ": point is not on the unit sphere (gauge " + std::to_string(g) + ")");
    }
}

int level_for_spacing(int h_dim, double spacing) {
    if (h_dim == 2) return std::clamp(static_cast<int>(std::ceil(std::log2(2.0 * std::numbers::pi / spacing))), 2, 12);
    return std::clamp(static_cast<int>(std::ceil(std::log2(1.1 / spacing))), 1, 4);
}

}  // namespace

bool shadow_boundary_test(const ConvexBody& body, const Vec& x, const Vec& p) {
    require_on_boundary(body, p, "shadow_boundary_test");
    return birkhoff_orthogonal(body, p, x);
}

bool sharp_point_test(const ConvexBody& body, const Vec& x, const Vec& p, double max_width) {
    if (!shadow_boundary_test(body, x, p)) throw Error("sharp_point_test: point is not on the shadow boundary");
    const LineScan scan = min_along_line(body, p, x);
    return scan.flat_width() * norm2(x) <= max_width;
}

std::vector<Vec> complement_basis(const Vec& x) {
    const int n = x.dim();
    const Vec u = normalized(x);
    int skip = 0;
    for (int i = 1; i < n; ++i) {
        if (std::fabs(u[i]) > std::fabs(u[skip])) skip = i;
    }
    std::vector<Vec> basis;
    for (int i = 0; i < n; ++i) {
        if (i == skip) continue;
        Vec b = Vec::unit(n, i);
        b -= u * dot(b, u);
        for (const Vec& c : basis) b -= c * dot(b, c);
        basis.push_back(normalized(b));
    }
    return basis;
}

std::optional<Chord> chord_through(const ConvexBody& body, const Vec& x, const Vec& h) {
    const LineRoots roots = line_boundary_roots(body, h, x);
    if (roots.kind == RootKind::none) return std::nullopt;
    Chord c;
    c.offset = h;
    c.contact_lo = roots.t_minus;
    c.contact_hi = roots.t_plus;
    if (roots.kind == RootKind::tangent) {
        const double mid = 0.5 * (roots.t_minus + roots.t_plus);
        c.t_minus = c.t_plus = mid;
        c.midpoint = h + x * mid;
        c.half_length = 0.0;
    } else {
        c.t_minus = roots.t_minus;
        c.t_plus = roots.t_plus;
        c.midpoint = h + x * (0.5 * (roots.t_minus + roots.t_plus));
        c.half_length = 0.5 * (roots.t_plus - roots.t_minus);
    }
    return c;
}

double default_chord_spacing(int dim) noexcept {
    if (dim <= 2) return 0.005;
    if (dim == 3) return 0.02;
    return 0.1;
}

std::vector<Chord> chord_field(const ConvexBody& body, const Vec& x, double spacing) {
    if (!(spacing > 0.0)) throw Error("chord_field: spacing must be positive");
    const std::vector<Vec> basis = complement_basis(x);
    const int m = static_cast<int>(basis.size());
    std::vector<long> extent(static_cast<std::size_t>(m));
    std::size_t total = 1;
    for (int j = 0; j < m; ++j) {
        extent[static_cast<std::size_t>(j)] = static_cast<long>(std::floor(body.support(basis[static_cast<std::size_t>(j)]) / spacing));
        total *= static_cast<std::size_t>(2 * extent[static_cast<std::size_t>(j)] + 1);
    }
    if (total > 20'000'000) throw Error("chord_field: grid too large; increase the spacing");

    std::vector<std::optional<Chord>> slots(total);
    parallel_for(total, [&](std::size_t idx) {
        Vec h(x.dim());
        std::size_t rest = idx;
        for (int j = 0; j < m; ++j) {
            const std::size_t width = static_cast<std::size_t>(2 * extent[static_cast<std::size_t>(j)] + 1);
            const long k = static_cast<long>(rest % width) - extent[static_cast<std::size_t>(j)];
            rest /= width;
            h += basis[static_cast<std::size_t>(j)] * (static_cast<double>(k) * spacing);
        }
        slots[idx] = chord_through(body, x, h);
    });
    std::vector<Chord> out;
    for (auto& s : slots) {
        if (s) out.push_back(std::move(*s));
    }
    return out;
}

std::vector<Vec> shadow_samples(const ConvexBody& body, const Vec& x, int level, double segment_spacing) {
    const std::vector<Vec> basis = complement_basis(x);
    std::vector<Vec> dirs;
    if (basis.size() == 1) {
        dirs = {basis[0], -basis[0]};
    } else {
        const SphereMesh hm = sphere_mesh(static_cast<int>(basis.size()), level);
        for (const Vec& w : hm.vertices) {
            Vec d(x.dim());
            for (std::size_t j = 0; j < basis.size(); ++j) d += basis[j] * w[static_cast<int>(j)];
            dirs.push_back(d);
        }
    }
    std::vector<std::vector<Vec>> per(dirs.size());
    parallel_for(dirs.size(), [&](std::size_t i) {
        const LineScan scan = min_along_line(body, dirs[i], x);
        const double width = scan.flat_width() * norm2(x);
        const int pieces = width > kSharpWidth ? std::min(1000, 1 + static_cast<int>(width / segment_spacing)) : 0;
        if (pieces == 0) {
            per[i].push_back((dirs[i] + x * scan.t_min) / scan.min_value);
            return;
        }
        for (int k = 0; k <= pieces; ++k) {
            const double t = scan.t_lo + (scan.t_hi - scan.t_lo) * k / pieces;
            per[i].push_back(body.boundary_point(dirs[i] + x * t));
        }
    });
    std::vector<Vec> out;
    for (auto& v : per) out.insert(out.end(), v.begin(), v.end());
    return out;
}

Vec shadow_contact(const ConvexBody& body, const Vec& x, const Vec& p) {
    const LineScan scan = min_along_line(body, p, x);
    if (scan.t_lo <= 0.0 && 0.0 <= scan.t_hi) return p;
    return (p + x * scan.t_min) / scan.min_value;
}

std::vector<Vec> BoundedRepresentation::midpoints() const {
    std::vector<Vec> out;
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (tags[i] == Provenance::midpoint) out.push_back(points[i]);
    }
    return out;
}

std::vector<Vec> BoundedRepresentation::shadow() const {
    std::vector<Vec> out;
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (tags[i] == Provenance::shadow) out.push_back(points[i]);
    }
    return out;
}

BoundedRepresentation bounded_representation(const ConvexBody& body, const Vec& x, const SphereMesh& mesh,
                                             const BoundedRepParams& params) {
    require_dim(x, body.dim(), "bounded_representation");
    const double spacing = params.chord_spacing > 0.0 ? params.chord_spacing : default_chord_spacing(body.dim());
    BoundedRepresentation br;
    for (Chord& c : chord_field(body, x, spacing)) {
        if (c.tangent()) {
            br.points.push_back(c.midpoint);
            br.tags.push_back(Provenance::shadow);
        } else {
            br.points.push_back(c.midpoint);
            br.tags.push_back(Provenance::midpoint);
            br.chords.push_back(std::move(c));
        }
    }

    std::vector<std::optional<Vec>> from_mesh(mesh.size());
    parallel_for(mesh.size(), [&](std::size_t i) {
        const Vec p = body.boundary_point(mesh.vertices[i]);
        if (shadow_boundary_test(body, x, p)) from_mesh[i] = shadow_contact(body, x, p);
    });
    for (auto& p : from_mesh) {
        if (p) {
            br.points.push_back(*p);
            br.tags.push_back(Provenance::shadow);
        }
    }

    const int h_dim = body.dim() - 1;
    const int level = params.shadow_level >= 0 ? params.shadow_level : level_for_spacing(h_dim, spacing);
    for (const Vec& p : shadow_samples(body, x, level, spacing)) {
        br.points.push_back(p);
        br.tags.push_back(Provenance::shadow);
    }
    return br;
}

}  // namespace normbis
