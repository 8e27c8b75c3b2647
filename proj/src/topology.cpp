#include "normbis/topology.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <queue>
#include <unordered_map>
#include <utility>

#include "normbis/parallel.hpp"
#include "normbis/simd.hpp"

namespace normbis {

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

struct UnionFind {
    std::vector<std::size_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), std::size_t{0}); }
    std::size_t find(std::size_t a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    }
    void join(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

BisectorPoint negated(const BisectorPoint& p) {
    BisectorPoint q = p;
    q.z = -p.z;
    q.direction = -p.direction;
    return q;
}

simd::SoaBlock pack(std::span<const Vec> pts) {
    simd::SoaBlock block(pts.front().dim(), pts.size(), 1e150);
    for (std::size_t i = 0; i < pts.size(); ++i) block.set(i, pts[i].span());
    return block;
}

// Exact nearest-neighbour distances over a uniform grid of SoA cells. Cells
// are visited in rings of growing Chebyshev radius until no unvisited cell
// can hold a closer point.
class NearestGrid {
public:
    explicit NearestGrid(std::span<const Vec> pts) : dim_(pts.front().dim()) {
        lo_ = hi_ = pts.front();
        for (const Vec& p : pts) {
            for (int d = 0; d < dim_; ++d) {
                lo_[d] = std::min(lo_[d], p[d]);
                hi_[d] = std::max(hi_[d], p[d]);
            }
        }
        double extent = 0.0;
        for (int d = 0; d < dim_; ++d) extent = std::max(extent, hi_[d] - lo_[d]);
        const double per_cell = 8.0;
        cell_ = extent > 0.0 ? extent * std::pow(per_cell / static_cast<double>(pts.size()), 1.0 / dim_) : 1.0;
        if (!(cell_ > 0.0)) cell_ = 1.0;
        for (int d = 0; d < dim_; ++d) cells_[d] = static_cast<long>(std::floor((hi_[d] - lo_[d]) / cell_)) + 1;

        std::vector<std::size_t> key(pts.size());
        for (std::size_t i = 0; i < pts.size(); ++i) key[i] = flat(coord(pts[i]));
        std::vector<std::size_t> order(pts.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return key[a] < key[b]; });
        for (std::size_t i = 0; i < order.size();) {
            std::size_t j = i;
            while (j < order.size() && key[order[j]] == key[order[i]]) ++j;
            simd::SoaBlock block(dim_, j - i, 1e150);
            for (std::size_t r = i; r < j; ++r) block.set(r - i, pts[order[r]].span());
            index_.emplace(key[order[i]], blocks_.size());
            blocks_.push_back(std::move(block));
            i = j;
        }
    }

    double min_sq_dist(const Vec& q) const {
        std::array<long, kMaxDim> c{};
        long max_ring = 0;
        for (int d = 0; d < dim_; ++d) {
            c[d] = static_cast<long>(std::floor((q[d] - lo_[d]) / cell_));
            max_ring = std::max({max_ring, std::abs(c[d]), std::abs(cells_[d] - 1 - c[d])});
        }
        double best = std::numeric_limits<double>::infinity();
        for (long ring = 0; ring <= max_ring; ++ring) {
            visit_ring(c, ring, [&](std::size_t k) {
                const auto it = index_.find(k);
                if (it != index_.end()) best = std::min(best, simd::min_sq_dist(blocks_[it->second], q.span()));
            });
            const double reach = static_cast<double>(ring) * cell_;
            if (best <= reach * reach) break;
        }
        return best;
    }

private:
    std::array<long, kMaxDim> coord(const Vec& p) const {
        std::array<long, kMaxDim> c{};
        for (int d = 0; d < dim_; ++d) {
            c[d] = std::clamp(static_cast<long>(std::floor((p[d] - lo_[d]) / cell_)), 0L, cells_[d] - 1);
        }
        return c;
    }

    std::size_t flat(const std::array<long, kMaxDim>& c) const {
        std::size_t k = 0;
        for (int d = dim_ - 1; d >= 0; --d) k = k * static_cast<std::size_t>(cells_[d]) + static_cast<std::size_t>(c[d]);
        return k;
    }

    // Cells inside the grid at Chebyshev distance exactly `ring` from c.
    template <class Fn>
    void visit_ring(const std::array<long, kMaxDim>& c, long ring, Fn&& fn) const {
        std::array<long, kMaxDim> lo{}, hi{}, cur{};
        for (int d = 0; d < dim_; ++d) {
            lo[d] = std::max(0L, c[d] - ring);
            hi[d] = std::min(cells_[d] - 1, c[d] + ring);
            if (lo[d] > hi[d]) return;
            cur[d] = lo[d];
        }
        while (true) {
            long cheb = 0;
            for (int d = 0; d < dim_; ++d) cheb = std::max(cheb, std::abs(cur[d] - c[d]));
            if (cheb == ring) fn(flat(cur));
            int d = 0;
            while (d < dim_ && ++cur[d] > hi[d]) cur[d] = lo[d], ++d;
            if (d == dim_) break;
        }
    }

    int dim_;
    Vec lo_, hi_;
    double cell_ = 1.0;
    std::array<long, kMaxDim> cells_{};
    std::vector<simd::SoaBlock> blocks_;
    std::unordered_map<std::size_t, std::size_t> index_;
};

}  // namespace

LabeledMesh classify_sphere(const ConvexBody& body, const Vec& x, const SphereMesh& mesh, const ClassifyParams& params,
                            int edge_samples) {
    require_dim(x, body.dim(), "classify_sphere");
    if (mesh.dim != body.dim()) throw Error("classify_sphere: mesh dimension differs from the body");
    LabeledMesh out;
    out.mesh = mesh;
    const std::size_t n = mesh.size();
    for (Vec& v : out.mesh.vertices) v = body.boundary_point(v);
    out.rays.resize(n);
    parallel_for(n, [&](std::size_t i) { out.rays[i] = classify_direction(body, x, out.mesh.vertices[i], params); });
    out.labels.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.labels[i] = out.rays[i].label;
    out.promoted.assign(n, 0);

    // One representative per antipodal pair of mixed edges, stored LEFT first.
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t a = 0; a < n; ++a) {
        if (out.labels[a] != Label::left) continue;
        for (std::size_t b : mesh.adjacency[a]) {
            if (out.labels[b] != Label::right) continue;
            // the antipodal edge is (antipode[b], antipode[a]), also LEFT first
            const std::size_t ma = mesh.antipode[b], mb = mesh.antipode[a];
            const bool mirrored = out.labels[ma] == Label::left && out.labels[mb] == Label::right;
            if (!mirrored || std::make_pair(a, b) <= std::make_pair(ma, mb)) edges.emplace_back(a, b);
        }
    }
    const std::vector<double> ts = sample_parameters(edge_samples);
    std::vector<EdgeCrossing> found(edges.size());
    parallel_for(edges.size(), [&](std::size_t e) {
        const auto [a, b] = edges[e];
        found[e] = cross_edge(body, x, out.mesh.vertices[a], out.mesh.vertices[b], ts, params);
        found[e].left = a;
        found[e].right = b;
    });

    auto promote = [&](std::size_t v) {
        out.promoted[v] = 1;
        out.promoted[mesh.antipode[v]] = 1;
    };
    for (EdgeCrossing& ec : found) {
        const bool near_left = ec.points.empty() || ec.s_median <= 0.5;
        const bool near_right = ec.points.empty() || ec.s_median >= 0.5;
        if (near_left) promote(ec.left);
        if (near_right) promote(ec.right);
        const std::size_t ma = mesh.antipode[ec.right], mb = mesh.antipode[ec.left];
        const bool self_paired = ma == ec.left && mb == ec.right;
        EdgeCrossing mirror_ec;
        if (!self_paired) {
            mirror_ec.left = ma;
            mirror_ec.right = mb;
            mirror_ec.s_median = 1.0 - ec.s_median;
            for (const BisectorPoint& p : ec.points) mirror_ec.points.push_back(negated(p));
        }
        out.crossings.push_back(std::move(ec));
        if (!self_paired) out.crossings.push_back(std::move(mirror_ec));
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (out.promoted[i]) out.labels[i] = Label::bisector;
    }
    return out;
}

Components connected_components(const LabeledMesh& mesh, Label label) {
    const std::size_t n = mesh.labels.size();
    Components c;
    c.id.assign(n, kNone);
    std::vector<std::size_t> stack;
    for (std::size_t s = 0; s < n; ++s) {
        if (mesh.labels[s] != label || c.id[s] != kNone) continue;
        c.id[s] = c.count;
        stack.push_back(s);
        while (!stack.empty()) {
            const std::size_t v = stack.back();
            stack.pop_back();
            for (std::size_t w : mesh.mesh.adjacency[v]) {
                if (mesh.labels[w] == label && c.id[w] == kNone) {
                    c.id[w] = c.count;
                    stack.push_back(w);
                }
            }
        }
        ++c.count;
    }
    return c;
}

bool separation_check(const LabeledMesh& mesh) {
    const std::size_t n = mesh.labels.size();
    UnionFind uf(n);
    for (std::size_t v = 0; v < n; ++v) {
        if (mesh.labels[v] == Label::bisector) continue;
        for (std::size_t w : mesh.mesh.adjacency[v]) {
            if (mesh.labels[w] != Label::bisector) uf.join(v, w);
        }
    }
    std::vector<std::uint8_t> seen(n, 0);
    for (std::size_t v = 0; v < n; ++v) {
        if (mesh.labels[v] == Label::left) seen[uf.find(v)] |= 1;
        if (mesh.labels[v] == Label::right) seen[uf.find(v)] |= 2;
    }
    return std::none_of(seen.begin(), seen.end(), [](std::uint8_t s) { return s == 3; });
}

bool closedness_check(const LabeledMesh& mesh) {
    const std::size_t n = mesh.labels.size();
    for (std::size_t v = 0; v < n; ++v) {
        if (mesh.labels[v] != Label::left) continue;
        for (std::size_t w : mesh.mesh.adjacency[v]) {
            if (mesh.labels[w] == Label::right) return false;
        }
    }
    std::vector<char> backed(n, 0);
    for (const EdgeCrossing& ec : mesh.crossings) {
        if (ec.points.empty()) continue;
        backed[ec.left] = backed[ec.right] = 1;
    }
    for (std::size_t v = 0; v < n; ++v) {
        if (mesh.promoted[v] && !backed[v]) return false;
    }
    return true;
}

std::vector<Vec> frontier_points(const ConvexBody& body, const Vec& x, const LabeledMesh& mesh,
                                 const ClassifyParams& params, double resolution) {
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t a = 0; a < mesh.rays.size(); ++a) {
        if (mesh.rays[a].label != Label::bisector) continue;
        for (std::size_t b : mesh.mesh.adjacency[a]) {
            if (mesh.rays[b].label != Label::bisector) edges.emplace_back(a, b);
        }
    }
    std::vector<Vec> out(edges.size());
    parallel_for(edges.size(), [&](std::size_t e) {
        const Vec& va = mesh.mesh.vertices[edges[e].first];
        const Vec& vb = mesh.mesh.vertices[edges[e].second];
        const double steps = std::ceil(std::log2(std::max(1.0, dist2(va, vb) / resolution)));
        double lo = 0.0, hi = 1.0;
        for (int i = 0; i < static_cast<int>(steps); ++i) {
            const double s = 0.5 * (lo + hi);
            const Vec y = body.boundary_point(lerp(va, vb, s));
            (classify_direction(body, x, y, params).label == Label::bisector ? lo : hi) = s;
        }
        out[e] = body.boundary_point(lerp(va, vb, lo));
    });
    // LEFT-RIGHT crossings: P(x) is thinner than the mesh there
    for (const EdgeCrossing& ec : mesh.crossings) {
        for (const BisectorPoint& p : ec.points) out.push_back(body.boundary_point(p.direction));
    }
    return out;
}

int local_branch_count(const LabeledMesh& mesh, std::size_t p, double r) {
    const std::size_t n = mesh.mesh.size();
    if (p >= n) throw Error("local_branch_count: vertex index out of range");
    const auto& verts = mesh.mesh.vertices;
    std::vector<double> dist(n, std::numeric_limits<double>::infinity());
    using Item = std::pair<double, std::size_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
    dist[p] = 0.0;
    queue.emplace(0.0, p);
    while (!queue.empty()) {
        const auto [d, v] = queue.top();
        queue.pop();
        if (d > dist[v] || d > r) continue;
        for (std::size_t w : mesh.mesh.adjacency[v]) {
            const double nd = d + dist2(verts[v], verts[w]);
            if (nd < dist[w]) {
                dist[w] = nd;
                queue.emplace(nd, w);
            }
        }
    }
    std::vector<char> in(n, 0);
    std::size_t members = 0;
    for (std::size_t v = 0; v < n; ++v) {
        if (mesh.labels[v] == Label::bisector && dist[v] >= 0.5 * r && dist[v] <= r) {
            in[v] = 1;
            ++members;
        }
    }
    if (members == 0) throw Error("local_branch_count: no samples in the annulus");
    UnionFind uf(n);
    for (std::size_t v = 0; v < n; ++v) {
        if (!in[v]) continue;
        for (std::size_t w : mesh.mesh.adjacency[v]) {
            if (in[w]) uf.join(v, w);
        }
    }
    int count = 0;
    for (std::size_t v = 0; v < n; ++v) {
        if (in[v] && uf.find(v) == v) ++count;
    }
    return count;
}

int local_branch_count(std::span<const Vec> cloud, const Vec& p, double r, double link) {
    std::vector<Vec> ring;
    for (const Vec& q : cloud) {
        const double d = dist2(q, p);
        if (d >= 0.5 * r && d <= r) ring.push_back(q);
    }
    if (ring.empty()) throw Error("local_branch_count: no samples in the annulus");
    UnionFind uf(ring.size());
    for (std::size_t i = 0; i < ring.size(); ++i) {
        for (std::size_t j = i + 1; j < ring.size(); ++j) {
            if (dist2(ring[i], ring[j]) <= link) uf.join(i, j);
        }
    }
    int count = 0;
    for (std::size_t i = 0; i < ring.size(); ++i) {
        if (uf.find(i) == i) ++count;
    }
    return count;
}

double directed_hausdorff(std::span<const Vec> a, std::span<const Vec> b) {
    if (a.empty() || b.empty()) throw Error("hausdorff: empty point set");
    std::vector<double> best(a.size());
    if (b.size() <= 1024) {
        const simd::SoaBlock block = pack(b);
        parallel_for(a.size(), [&](std::size_t i) { best[i] = simd::min_sq_dist(block, a[i].span()); });
    } else {
        const NearestGrid grid(b);
        parallel_for(a.size(), [&](std::size_t i) { best[i] = grid.min_sq_dist(a[i]); });
    }
    return std::sqrt(*std::max_element(best.begin(), best.end()));
}

double hausdorff(std::span<const Vec> a, std::span<const Vec> b) {
    return std::max(directed_hausdorff(a, b), directed_hausdorff(b, a));
}

double hyperplane_flatness(std::span<const Vec> points) {
    if (points.empty()) throw Error("hyperplane_flatness: no points");
    const int n = points.front().dim();
    if (points.size() < static_cast<std::size_t>(n)) throw Error("hyperplane_flatness: fewer points than the dimension");
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    for (const Vec& p : points) {
        const Eigen::Map<const Eigen::VectorXd> v(p.data(), n);
        m.noalias() += v * v.transpose();
    }
    m /= static_cast<double>(points.size());
    // The eigenvalue itself carries an absolute error near eps * lambda_max;
    // the Rayleigh quotient of its eigenvector is far more accurate.
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(m);
    const Eigen::VectorXd normal = eig.eigenvectors().col(0);
    double sum = 0.0;
    for (const Vec& p : points) {
        const double d = Eigen::Map<const Eigen::VectorXd>(p.data(), n).dot(normal);
        sum += d * d;
    }
    return std::sqrt(sum / static_cast<double>(points.size()));
}

}  // namespace normbis
