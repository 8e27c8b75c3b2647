#include "normbis/body.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>

#include "normbis/hull.hpp"
#include "normbis/lp.hpp"
#include "normbis/simd.hpp"

namespace normbis {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

enum class GaugeMode { closed_form, facets, vertex_lp };

bool all_finite(const Vec& v) {
    for (int i = 0; i < v.dim(); ++i) {
        if (!std::isfinite(v[i])) return false;
    }
    return true;
}

double lp_norm(const Vec& v, double p) {
    const int n = v.dim();
    double mx = 0.0;
    for (int i = 0; i < n; ++i) mx = std::max(mx, std::fabs(v[i]));
    if (mx == 0.0 || p == kInf) return mx;
    if (p == 1.0) {
        double s = 0.0;
        for (int i = 0; i < n; ++i) s += std::fabs(v[i]);
        return s;
    }
    if (p == 2.0) {
        double s = 0.0;
        for (int i = 0; i < n; ++i) s += v[i] * v[i];
        return std::sqrt(s);
    }
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += std::pow(std::fabs(v[i]) / mx, p);
    return mx * std::pow(s, 1.0 / p);
}

/// Sign-canonical representative: first nonzero coordinate positive.
bool is_canonical(const Vec& v) {
    for (int i = 0; i < v.dim(); ++i) {
        if (v[i] != 0.0) return v[i] > 0.0;
    }
    return true;
}

int numeric_rank(std::vector<Vec> rows, double tol) {
    int rank = 0;
    const int n = rows.empty() ? 0 : rows.front().dim();
    std::vector<Vec> basis;
    for (Vec r : rows) {
        for (const Vec& b : basis) r -= b * dot(r, b);
        const double l = norm2(r);
        if (l > tol) {
            basis.push_back(r / l);
            if (++rank == n) break;
        }
    }
    return rank;
}

double vec_scale(std::span<const Vec> vs) {
    double s = 0.0;
    for (const Vec& v : vs) s = std::max(s, norm2(v));
    return s;
}

bool has_antipode(std::span<const Vec> vs, const Vec& v, double tol) {
    return std::any_of(vs.begin(), vs.end(), [&](const Vec& w) { return dist2(w, -v) <= tol; });
}

/// Reduce antipodal facet pairs to one representative each so that
/// max_i |<a_i, v>| is exactly even in v. Throws if a facet lacks a partner.
std::vector<Vec> pair_facets(const std::vector<Vec>& normals) {
    std::vector<char> taken(normals.size(), 0);
    std::vector<Vec> reps;
    for (std::size_t i = 0; i < normals.size(); ++i) {
        if (taken[i]) continue;
        const double tol = 1e-9 * norm2(normals[i]);
        std::size_t partner = normals.size();
        for (std::size_t j = i + 1; j < normals.size(); ++j) {
            if (!taken[j] && dist2(normals[j], -normals[i]) <= tol) {
                partner = j;
                break;
            }
        }
        if (partner == normals.size()) throw Error("body is not centrally symmetric (unpaired facet)");
        taken[i] = taken[partner] = 1;
        const Vec& a = normals[i];
        const Vec& b = normals[partner];
        reps.push_back(is_canonical(a) ? a : b);
    }
    return reps;
}

}  // namespace

struct ConvexBody::Impl {
    int dim = 0;
    Shape shape;
    double tol = 1e-10;
    GaugeMode mode = GaugeMode::closed_form;
    double p = 2.0;
    std::vector<Vec> facet_reps;  // {k : |<a, k>| <= 1}
    simd::SoaBlock facet_block;
    std::vector<Vec> vertices;  // extreme points, when known
};

std::vector<Vec> halfdisk_vertices(int m) {
    if (m < 8) throw Error("halfdisk hull needs m >= 8");
    std::vector<Vec> plus;
    plus.reserve(static_cast<std::size_t>(m) + 1);
    for (int k = 0; k <= m; ++k) {
        double c = 0.0;
        double s = 0.0;
        // Exact mirror symmetry s(m - k) = -s(k) and exact values at the ends and centre.
        const int mirrored = std::min(k, m - k);
        if (2 * mirrored == m) {
            c = 1.0;
        } else if (mirrored != 0) {
            const double theta = -std::numbers::pi / 2 + std::numbers::pi * mirrored / m;
            c = std::cos(theta);
            s = std::sin(theta);
        } else {
            s = -1.0;
        }
        if (k > m - k) s = -s;
        plus.push_back(Vec{1.0, c, s});
    }
    std::vector<Vec> all = plus;
    for (const Vec& v : plus) all.push_back(-v);
    return all;
}

ValidationReport validate(int dim, const Shape& shape) {
    ValidationReport r;
    auto fail = [&](std::string msg) {
        r.ok = false;
        r.failures.push_back(std::move(msg));
    };
    if (dim < 2 || dim > kMaxDim) fail("dimension must be in [2, " + std::to_string(kMaxDim) + "]");

    std::visit(
        [&](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, LpBall>) {
                if (std::isnan(s.p) || s.p < 1.0) fail("lp exponent must satisfy p >= 1");
            } else if constexpr (std::is_same_v<T, HalfDiskHull>) {
                if (dim != 3) fail("halfdisk hull is three-dimensional");
                if (s.m < 8) fail("halfdisk hull needs m >= 8");
            } else if constexpr (std::is_same_v<T, PolytopeH>) {
                if (s.normals.size() != s.offsets.size()) {
                    fail("normals and offsets differ in length");
                    return;
                }
                if (s.normals.empty()) fail("no facets");
                std::vector<Vec> scaled;
                bool interior = true;
                for (std::size_t i = 0; i < s.normals.size(); ++i) {
                    const Vec& u = s.normals[i];
                    if (u.dim() != dim) {
                        fail("facet normal dimension mismatch");
                        return;
                    }
                    if (!all_finite(u) || !std::isfinite(s.offsets[i])) {
                        fail("non-finite facet data");
                        return;
                    }
                    if (!(s.offsets[i] > 0.0) || u.is_zero()) {
                        interior = false;
                        continue;
                    }
                    scaled.push_back(u / s.offsets[i]);
                }
                if (!interior) {
                    fail("origin not interior");
                    return;
                }
                const double sc = vec_scale(scaled);
                for (const Vec& a : scaled) {
                    if (!has_antipode(scaled, a, 1e-9 * sc)) {
                        fail("not centrally symmetric");
                        break;
                    }
                }
                if (numeric_rank(scaled, 1e-9 * sc) < dim) fail("polytope is unbounded");
            } else if constexpr (std::is_same_v<T, PolytopeV>) {
                if (s.vertices.size() < 2) {
                    fail("too few vertices");
                    return;
                }
                for (const Vec& v : s.vertices) {
                    if (v.dim() != dim) {
                        fail("vertex dimension mismatch");
                        return;
                    }
                    if (!all_finite(v)) {
                        fail("non-finite vertex data");
                        return;
                    }
                }
                const double sc = vec_scale(s.vertices);
                for (const Vec& v : s.vertices) {
                    if (!has_antipode(s.vertices, v, 1e-12 * sc)) {
                        fail("not centrally symmetric");
                        break;
                    }
                }
                if (numeric_rank(s.vertices, 1e-9 * sc) < dim) fail("origin not interior");
            }
        },
        shape);
    return r;
}

ConvexBody ConvexBody::create(int dim, Shape shape, std::optional<double> gauge_tolerance) {
    const ValidationReport report = validate(dim, shape);
    if (!report.ok) {
        std::string msg = "invalid body:";
        for (const auto& f : report.failures) msg += " " + f + ";";
        throw Error(msg);
    }
    auto impl = std::make_shared<Impl>();
    impl->dim = dim;
    impl->shape = shape;

    auto use_facets = [&](std::vector<Vec> normals) {
        impl->mode = GaugeMode::facets;
        impl->facet_reps = pair_facets(normals);
        impl->facet_block = simd::SoaBlock(dim, impl->facet_reps.size(), 0.0);
        for (std::size_t i = 0; i < impl->facet_reps.size(); ++i) impl->facet_block.set(i, impl->facet_reps[i].span());
    };
    auto use_vertices = [&](const std::vector<Vec>& vertices) {
        if (dim <= 3) {
            const hull::HullFacets h = hull::convex_hull(vertices);
            for (std::size_t i : h.extreme) impl->vertices.push_back(vertices[i]);
            use_facets(h.normals);
        } else {
            impl->mode = GaugeMode::vertex_lp;
            impl->vertices = vertices;
        }
    };

    std::visit(
        [&](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, LpBall>) {
                impl->mode = GaugeMode::closed_form;
                impl->p = s.p;
            } else if constexpr (std::is_same_v<T, PolytopeH>) {
                std::vector<Vec> normals;
                for (std::size_t i = 0; i < s.normals.size(); ++i) normals.push_back(s.normals[i] / s.offsets[i]);
                use_facets(std::move(normals));
            } else if constexpr (std::is_same_v<T, PolytopeV>) {
                use_vertices(s.vertices);
            } else if constexpr (std::is_same_v<T, HalfDiskHull>) {
                use_vertices(halfdisk_vertices(s.m));
            }
        },
        shape);

    impl->tol = gauge_tolerance.value_or(impl->mode == GaugeMode::vertex_lp ? 1e-8 : 1e-10);
    return ConvexBody(std::move(impl));
}

ConvexBody ConvexBody::lp_ball(int dim, double p) { return create(dim, LpBall{p}); }

ConvexBody ConvexBody::cube(int dim) {
    PolytopeH h;
    for (int i = 0; i < dim; ++i) {
        h.normals.push_back(Vec::unit(dim, i));
        h.normals.push_back(-Vec::unit(dim, i));
        h.offsets.push_back(1.0);
        h.offsets.push_back(1.0);
    }
    return create(dim, std::move(h));
}

ConvexBody ConvexBody::cross_polytope(int dim) {
    PolytopeV v;
    for (int i = 0; i < dim; ++i) {
        v.vertices.push_back(Vec::unit(dim, i));
        v.vertices.push_back(-Vec::unit(dim, i));
    }
    return create(dim, std::move(v));
}

ConvexBody ConvexBody::halfdisk_hull(int m) { return create(3, HalfDiskHull{m}); }

int ConvexBody::dim() const noexcept { return impl_->dim; }
const Shape& ConvexBody::shape() const noexcept { return impl_->shape; }
double ConvexBody::gauge_tolerance() const noexcept { return impl_->tol; }
std::size_t ConvexBody::facet_count() const noexcept { return impl_->facet_reps.size(); }

double ConvexBody::gauge(const Vec& v) const {
    require_dim(v, impl_->dim, "gauge");
    switch (impl_->mode) {
        case GaugeMode::facets:
            return simd::max_abs_dot(impl_->facet_block, v.span());
        case GaugeMode::vertex_lp:
            // Evaluate on the sign-canonical representative so the LP gauge is exactly even.
            return lp::vertex_gauge(impl_->vertices, is_canonical(v) ? v : -v);
        case GaugeMode::closed_form:
            break;
    }
    return lp_norm(v, impl_->p);
}

double ConvexBody::support(const Vec& u) const {
    require_dim(u, impl_->dim, "support");
    if (u.is_zero()) throw Error("support: zero direction");
    if (std::holds_alternative<HalfDiskHull>(impl_->shape)) {
        const double r = std::hypot(u[1], u[2]);
        const double arc_plus = u[1] >= 0.0 ? r : std::fabs(u[2]);
        const double arc_minus = -u[1] >= 0.0 ? r : std::fabs(u[2]);
        return std::max(u[0] + arc_plus, -u[0] + arc_minus);
    }
    if (const auto* ball = std::get_if<LpBall>(&impl_->shape)) {
        const double p = ball->p;
        if (p == 1.0) return lp_norm(u, kInf);
        if (p == kInf) return lp_norm(u, 1.0);
        return lp_norm(u, p / (p - 1.0));
    }
    if (!impl_->vertices.empty()) {
        double best = -kInf;
        for (const Vec& v : impl_->vertices) best = std::max(best, dot(u, v));
        return best;
    }
    return lp::facet_support(impl_->facet_reps, u);
}

Vec ConvexBody::boundary_point(const Vec& v) const {
    require_dim(v, impl_->dim, "boundary_point");
    if (v.is_zero()) throw Error("boundary_point: zero vector");
    return v / gauge(v);
}

std::vector<Vec> ConvexBody::support_contacts(const Vec& u, double tol) const {
    if (impl_->vertices.empty()) throw Error("support_contacts: body has no vertex description");
    const double h = support(u);
    const double slack = tol * norm2(u);
    std::vector<Vec> out;
    for (const Vec& v : impl_->vertices) {
        if (dot(u, v) >= h - slack) out.push_back(v);
    }
    return out;
}

std::string ConvexBody::describe() const {
    return std::visit(
        [&](const auto& s) -> std::string {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, LpBall>) {
                if (s.p == kInf) return "lp:inf";
                char buf[32];
                auto res = std::to_chars(buf, buf + sizeof(buf), s.p);
                return "lp:" + std::string(buf, res.ptr);
            } else if constexpr (std::is_same_v<T, PolytopeH>) {
                return "polytope-h(" + std::to_string(s.normals.size()) + ")";
            } else if constexpr (std::is_same_v<T, PolytopeV>) {
                return "polytope-v(" + std::to_string(s.vertices.size()) + ")";
            } else {
                return "halfdisk:" + std::to_string(s.m);
            }
        },
        impl_->shape);
}

ValidationReport validate(const ConvexBody& body) { return validate(body.dim(), body.shape()); }

}  // namespace normbis
