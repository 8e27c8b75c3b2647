#include "normbis/hull.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numeric>
#include <utility>

namespace normbis::hull {

namespace {

using P3 = std::array<double, 3>;

P3 sub(const P3& a, const P3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
P3 cross(const P3& a, const P3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
double dot3(const P3& a, const P3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
double len3(const P3& a) { return std::sqrt(dot3(a, a)); }

struct Face {
    std::array<int, 3> v;
    P3 n;
    double d;
    bool alive = true;
};

Face make_face(const std::vector<P3>& pts, int a, int b, int c) {
    Face f;
    f.v = {a, b, c};
    P3 n = cross(sub(pts[b], pts[a]), sub(pts[c], pts[a]));
    const double l = len3(n);
    n = {n[0] / l, n[1] / l, n[2] / l};
    f.n = n;
    f.d = dot3(n, pts[a]);
    return f;
}

void merge_normals(HullFacets& out, std::vector<Vec> raw) {
    std::sort(raw.begin(), raw.end(), [](const Vec& a, const Vec& b) {
        for (int i = 0; i < a.dim(); ++i) {
            if (a[i] != b[i]) return a[i] < b[i];
        }
        return false;
    });
    for (const Vec& a : raw) {
        bool dup = false;
        for (const Vec& k : out.normals) {
            if (dist2(a, k) <= 1e-9 * norm2(a)) {
                dup = true;
                break;
            }
        }
        if (!dup) out.normals.push_back(a);
    }
}

HullFacets hull2(std::span<const Vec> points) {
    std::vector<std::size_t> idx(points.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t i, std::size_t j) {
        return points[i][0] < points[j][0] || (points[i][0] == points[j][0] && points[i][1] < points[j][1]);
    });
    auto turn = [&](std::size_t o, std::size_t a, std::size_t b) {
        return (points[a][0] - points[o][0]) * (points[b][1] - points[o][1]) -
               (points[a][1] - points[o][1]) * (points[b][0] - points[o][0]);
    };
    std::vector<std::size_t> h(2 * idx.size());
    std::size_t k = 0;
    for (std::size_t i : idx) {
        while (k >= 2 && turn(h[k - 2], h[k - 1], i) <= 0) --k;
        h[k++] = i;
    }
    for (std::size_t t = idx.size() - 1, lo = k + 1; t-- > 0;) {
        const std::size_t i = idx[t];
        while (k >= lo && turn(h[k - 2], h[k - 1], i) <= 0) --k;
        h[k++] = i;
    }
    h.resize(k - 1);
    if (h.size() < 3) throw Error("convex hull: points are degenerate");

    HullFacets out;
    out.extreme = h;
    std::vector<Vec> raw;
    for (std::size_t i = 0; i < h.size(); ++i) {
        const Vec& a = points[h[i]];
        const Vec& b = points[h[(i + 1) % h.size()]];
        Vec n{b[1] - a[1], a[0] - b[0]};
        const double d = dot(n, a);
        if (!(d > 1e-12 * norm2(n) * norm2(a))) throw Error("convex hull: origin is not interior");
        raw.push_back(n / d);
    }
    merge_normals(out, std::move(raw));
    return out;
}

HullFacets hull3(std::span<const Vec> points) {
    const int np = static_cast<int>(points.size());
    std::vector<P3> pts(points.size());
    double scale = 0.0;
    for (int i = 0; i < np; ++i) {
        pts[i] = {points[i][0], points[i][1], points[i][2]};
        scale = std::max(scale, len3(pts[i]));
    }
    const double eps = 1e-10 * scale;

    // Initial simplex from extreme points.
    int i0 = 0;
    for (int i = 1; i < np; ++i) {
        if (pts[i][0] > pts[i0][0]) i0 = i;
    }
    int i1 = -1;
    double best = eps;
    for (int i = 0; i < np; ++i) {
        const double d = len3(sub(pts[i], pts[i0]));
        if (d > best) best = d, i1 = i;
    }
    if (i1 < 0) throw Error("convex hull: points are degenerate");
    int i2 = -1;
    best = eps;
    const P3 e01 = sub(pts[i1], pts[i0]);
    for (int i = 0; i < np; ++i) {
        const double d = len3(cross(e01, sub(pts[i], pts[i0]))) / len3(e01);
        if (d > best) best = d, i2 = i;
    }
    if (i2 < 0) throw Error("convex hull: points are collinear");
    int i3 = -1;
    best = eps;
    P3 nrm = cross(e01, sub(pts[i2], pts[i0]));
    const double nl = len3(nrm);
    nrm = {nrm[0] / nl, nrm[1] / nl, nrm[2] / nl};
    for (int i = 0; i < np; ++i) {
        const double d = std::fabs(dot3(nrm, sub(pts[i], pts[i0])));
        if (d > best) best = d, i3 = i;
    }
    if (i3 < 0) throw Error("convex hull: points are coplanar");

    const P3 centroid{(pts[i0][0] + pts[i1][0] + pts[i2][0] + pts[i3][0]) / 4,
                      (pts[i0][1] + pts[i1][1] + pts[i2][1] + pts[i3][1]) / 4,
                      (pts[i0][2] + pts[i1][2] + pts[i2][2] + pts[i3][2]) / 4};

    std::vector<Face> faces;
    std::map<std::pair<int, int>, int> edge_face;
    auto add_face = [&](int a, int b, int c) {
        Face f = make_face(pts, a, b, c);
        if (dot3(f.n, centroid) - f.d > 0) {
            std::swap(b, c);
            f = make_face(pts, a, b, c);
        }
        const int id = static_cast<int>(faces.size());
        faces.push_back(f);
        for (int k = 0; k < 3; ++k) edge_face[{f.v[k], f.v[(k + 1) % 3]}] = id;
    };
    add_face(i0, i1, i2);
    add_face(i0, i1, i3);
    add_face(i0, i2, i3);
    add_face(i1, i2, i3);

    std::vector<int> visible;
    std::vector<char> is_visible;
    for (int p = 0; p < np; ++p) {
        if (p == i0 || p == i1 || p == i2 || p == i3) continue;
        visible.clear();
        is_visible.assign(faces.size(), 0);
        for (int f = 0; f < static_cast<int>(faces.size()); ++f) {
            if (faces[f].alive && dot3(faces[f].n, pts[p]) - faces[f].d > eps) {
                visible.push_back(f);
                is_visible[f] = 1;
            }
        }
        if (visible.empty()) continue;

        std::vector<std::pair<int, int>> horizon;
        for (int f : visible) {
            for (int k = 0; k < 3; ++k) {
                const int u = faces[f].v[k];
                const int v = faces[f].v[(k + 1) % 3];
                const auto it = edge_face.find({v, u});
                if (it == edge_face.end()) throw Error("convex hull: broken adjacency");
                if (!is_visible[it->second]) horizon.emplace_back(u, v);
            }
        }
        for (int f : visible) {
            faces[f].alive = false;
            for (int k = 0; k < 3; ++k) edge_face.erase({faces[f].v[k], faces[f].v[(k + 1) % 3]});
        }
        for (const auto& [u, v] : horizon) {
            Face nf = make_face(pts, u, v, p);
            const int id = static_cast<int>(faces.size());
            faces.push_back(nf);
            edge_face[{u, v}] = id;
            edge_face[{v, p}] = id;
            edge_face[{p, u}] = id;
        }
    }

    HullFacets out;
    std::vector<char> used(points.size(), 0);
    std::vector<Vec> raw;
    for (const Face& f : faces) {
        if (!f.alive) continue;
        if (!(f.d > 1e-12 * scale)) throw Error("convex hull: origin is not interior");
        raw.push_back(Vec{f.n[0] / f.d, f.n[1] / f.d, f.n[2] / f.d});
        for (int v : f.v) used[static_cast<std::size_t>(v)] = 1;
    }
    for (std::size_t i = 0; i < used.size(); ++i) {
        if (used[i]) out.extreme.push_back(i);
    }
    merge_normals(out, std::move(raw));
    return out;
}

}  // namespace

HullFacets convex_hull(std::span<const Vec> points) {
    if (points.empty()) throw Error("convex hull: no points");
    const int n = points.front().dim();
    for (const Vec& p : points) require_dim(p, n, "convex hull point");
    if (n == 2) return hull2(points);
    if (n == 3) return hull3(points);
    throw Error("convex hull: only dimensions 2 and 3 are supported");
}

}  // namespace normbis::hull
