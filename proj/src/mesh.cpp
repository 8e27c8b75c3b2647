#include "normbis/mesh.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <random>
#include <set>

namespace normbis {

namespace {

using Key = std::array<double, kMaxDim>;

Key key_of(const Vec& v) {
    Key k{};
    for (int i = 0; i < v.dim(); ++i) k[static_cast<std::size_t>(i)] = v[i];
    return k;
}

void add_edge(std::vector<std::set<std::size_t>>& adj, std::size_t a, std::size_t b) {
    if (a == b) return;
    adj[a].insert(b);
    adj[b].insert(a);
}

std::vector<std::size_t> component_ids(const std::vector<std::set<std::size_t>>& adj, std::size_t& count) {
    std::vector<std::size_t> comp(adj.size(), SIZE_MAX);
    count = 0;
    std::vector<std::size_t> stack;
    for (std::size_t s = 0; s < adj.size(); ++s) {
        if (comp[s] != SIZE_MAX) continue;
        comp[s] = count;
        stack.push_back(s);
        while (!stack.empty()) {
            const std::size_t v = stack.back();
            stack.pop_back();
            for (std::size_t w : adj[v]) {
                if (comp[w] == SIZE_MAX) comp[w] = count, stack.push_back(w);
            }
        }
        ++count;
    }
    return comp;
}

SphereMesh finish(int dim, std::vector<Vec> vertices, std::vector<std::set<std::size_t>> adj) {
    SphereMesh m;
    m.dim = dim;
    std::map<Key, std::size_t> index;
    for (std::size_t i = 0; i < vertices.size(); ++i) index.emplace(key_of(vertices[i]), i);
    m.antipode.resize(vertices.size());
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        const auto it = index.find(key_of(-vertices[i]));
        if (it == index.end()) throw Error("sphere_mesh: vertex set is not antipodally closed");
        m.antipode[i] = it->second;
    }
    // Close the edge set under the antipodal map.
    for (std::size_t i = 0; i < adj.size(); ++i) {
        for (std::size_t j : std::vector<std::size_t>(adj[i].begin(), adj[i].end())) add_edge(adj, m.antipode[i], m.antipode[j]);
    }
    m.adjacency.resize(adj.size());
    for (std::size_t i = 0; i < adj.size(); ++i) {
        m.adjacency[i].assign(adj[i].begin(), adj[i].end());
        for (std::size_t j : m.adjacency[i]) m.spacing = std::max(m.spacing, dist2(vertices[i], vertices[j]));
    }
    m.vertices = std::move(vertices);
    return m;
}

SphereMesh polygon(int level) {
    if (level < 2 || level > 20) throw Error("sphere_mesh: n = 2 needs level in [2, 20]");
    const std::size_t n = std::size_t{1} << level;
    const std::size_t half = n / 2;
    std::vector<Vec> v(n);
    for (std::size_t k = 0; k < half; ++k) {
        if (4 * k == n) {
            v[k] = Vec{0.0, 1.0};
        } else {
            const double a = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
            v[k] = Vec{std::cos(a), std::sin(a)};
        }
        v[k + half] = -v[k];
    }
    std::vector<std::set<std::size_t>> adj(n);
    for (std::size_t k = 0; k < n; ++k) add_edge(adj, k, (k + 1) % n);
    return finish(2, std::move(v), std::move(adj));
}

SphereMesh icosphere(int level) {
    if (level < 0 || level > 7) throw Error("sphere_mesh: n = 3 needs level in [0, 7]");
    const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
    std::vector<Vec> v;
    for (double a : {-1.0, 1.0}) {
        for (double b : {-1.0, 1.0}) {
            v.push_back(Vec{0.0, a, b * phi});
            v.push_back(Vec{a, b * phi, 0.0});
            v.push_back(Vec{b * phi, 0.0, a});
        }
    }
    for (Vec& p : v) p = normalized(p);
    std::vector<std::array<std::size_t, 3>> faces;
    const double edge = dist2(normalized(Vec{0.0, 1.0, phi}), normalized(Vec{0.0, -1.0, phi}));
    auto adjacent = [&](std::size_t a, std::size_t b) { return std::fabs(dist2(v[a], v[b]) - edge) < 1e-9; };
    for (std::size_t a = 0; a < v.size(); ++a)
        for (std::size_t b = a + 1; b < v.size(); ++b)
            for (std::size_t c = b + 1; c < v.size(); ++c)
                if (adjacent(a, b) && adjacent(b, c) && adjacent(a, c)) faces.push_back({a, b, c});

    for (int l = 0; l < level; ++l) {
        std::map<std::pair<std::size_t, std::size_t>, std::size_t> mid;
        auto midpoint = [&](std::size_t a, std::size_t b) {
            const auto key = std::minmax(a, b);
            const auto it = mid.find(key);
            if (it != mid.end()) return it->second;
            v.push_back(normalized(v[key.first] + v[key.second]));
            mid.emplace(key, v.size() - 1);
            return v.size() - 1;
        };
        std::vector<std::array<std::size_t, 3>> next;
        next.reserve(faces.size() * 4);
        for (const auto& [a, b, c] : faces) {
            const std::size_t ab = midpoint(a, b), bc = midpoint(b, c), ca = midpoint(c, a);
            next.push_back({a, ab, ca});
            next.push_back({b, bc, ab});
            next.push_back({c, ca, bc});
            next.push_back({ab, bc, ca});
        }
        faces = std::move(next);
    }
    std::vector<std::set<std::size_t>> adj(v.size());
    for (const auto& [a, b, c] : faces) {
        add_edge(adj, a, b);
        add_edge(adj, b, c);
        add_edge(adj, c, a);
    }
    return finish(3, std::move(v), std::move(adj));
}

SphereMesh random_knn(int dim, int level, std::uint64_t seed) {
    if (level < 0 || level > 4) throw Error("sphere_mesh: n >= 4 needs level in [0, 4]");
    const std::size_t pairs = std::size_t{8} << (2 * level);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss;
    std::vector<Vec> v;
    for (std::size_t i = 0; i < pairs; ++i) {
        Vec p(dim);
        for (int d = 0; d < dim; ++d) p[d] = gauss(rng);
        v.push_back(normalized(p));
    }
    for (std::size_t i = 0; i < pairs; ++i) v.push_back(-v[i]);

    constexpr std::size_t k = 8;
    std::vector<std::set<std::size_t>> adj(v.size());
    std::vector<std::size_t> order(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        std::iota(order.begin(), order.end(), 0);
        std::partial_sort(order.begin(), order.begin() + k + 1, order.end(), [&](std::size_t a, std::size_t b) {
            const double da = dist2(v[a], v[i]), db = dist2(v[b], v[i]);
            return da < db || (da == db && a < b);
        });
        for (std::size_t j = 0; j <= k; ++j) add_edge(adj, i, order[j]);
    }
    // Join stray components to their nearest neighbours elsewhere.
    for (;;) {
        std::size_t count = 0;
        const auto comp = component_ids(adj, count);
        if (count <= 1) break;
        double best = std::numeric_limits<double>::infinity();
        std::size_t ba = 0, bb = 0;
        for (std::size_t a = 0; a < v.size(); ++a) {
            if (comp[a] != 0) continue;
            for (std::size_t b = 0; b < v.size(); ++b) {
                if (comp[b] != 0 && dist2(v[a], v[b]) < best) best = dist2(v[a], v[b]), ba = a, bb = b;
            }
        }
        add_edge(adj, ba, bb);
        add_edge(adj, ba < pairs ? ba + pairs : ba - pairs, bb < pairs ? bb + pairs : bb - pairs);
    }
    return finish(dim, std::move(v), std::move(adj));
}

}  // namespace

std::size_t SphereMesh::edge_count() const noexcept {
    std::size_t e = 0;
    for (const auto& a : adjacency) e += a.size();
    return e / 2;
}

SphereMesh sphere_mesh(int dim, int level, std::uint64_t seed) {
    if (dim == 2) return polygon(level);
    if (dim == 3) return icosphere(level);
    if (dim >= 4 && dim <= kMaxDim) return random_knn(dim, level, seed);
    throw Error("sphere_mesh: unsupported dimension " + std::to_string(dim));
}

std::size_t LabeledMesh::count(Label label) const noexcept {
    return static_cast<std::size_t>(std::count(labels.begin(), labels.end(), label));
}

}  // namespace normbis
