#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "normbis/bisector.hpp"
#include "normbis/shadow.hpp"
#include "normbis/topology.hpp"
#include "support.hpp"

using namespace normbis;

namespace {

double brute_directed(const std::vector<Vec>& a, const std::vector<Vec>& b) {
    double worst = 0.0;
    for (const Vec& p : a) {
        double best = std::numeric_limits<double>::infinity();
        for (const Vec& q : b) best = std::min(best, dist2(p, q));
        worst = std::max(worst, best);
    }
    return worst;
}

bool connected(const SphereMesh& m) {
    std::vector<char> seen(m.size(), 0);
    std::vector<std::size_t> stack{0};
    seen[0] = 1;
    std::size_t count = 1;
    while (!stack.empty()) {
        const std::size_t v = stack.back();
        stack.pop_back();
        for (std::size_t w : m.adjacency[v]) {
            if (!seen[w]) {
                seen[w] = 1;
                ++count;
                stack.push_back(w);
            }
        }
    }
    return count == m.size();
}

void check_mesh_structure(const SphereMesh& m) {
    CHECK(connected(m));
    for (std::size_t i = 0; i < m.size(); ++i) {
        const std::size_t j = m.antipode[i];
        CHECK(j != i);
        CHECK(m.antipode[j] == i);
        CHECK(m.vertices[j] == -m.vertices[i]);
        std::set<std::size_t> mapped;
        for (std::size_t w : m.adjacency[i]) mapped.insert(m.antipode[w]);
        CHECK(mapped == std::set<std::size_t>(m.adjacency[j].begin(), m.adjacency[j].end()));
    }
}

}  // namespace

TEST_CASE("sphere meshes") {
    const SphereMesh ico = sphere_mesh(3, 4);
    CHECK(ico.size() == 2562);
    for (const auto& adj : ico.adjacency) CHECK((adj.size() == 5 || adj.size() == 6));
    for (const Vec& v : ico.vertices) CHECK(norm2(v) == doctest::Approx(1.0).epsilon(1e-15));
    check_mesh_structure(ico);

    const SphereMesh gon = sphere_mesh(2, 8);
    CHECK(gon.size() == 256);
    for (const auto& adj : gon.adjacency) CHECK(adj.size() == 2);
    CHECK(gon.spacing == doctest::Approx(2 * std::sin(std::numbers::pi / 256)));
    check_mesh_structure(gon);

    const SphereMesh r4 = sphere_mesh(4, 1, 42);
    CHECK(r4.size() == 2 * 8 * 4);
    check_mesh_structure(r4);
    CHECK(sphere_mesh(4, 1, 42).vertices == r4.vertices);  // seeded
}

TEST_CASE("Euclidean labeling matches the great circle") {
    const ConvexBody e = ConvexBody::euclidean(3);
    const LabeledMesh m = classify_sphere(e, Vec{1, 0, 0}, sphere_mesh(3, 4));
    const double angular = 2.0 * std::asin(0.5 * m.mesh.spacing);
    for (std::size_t i = 0; i < m.mesh.size(); ++i) {
        const Vec& v = m.mesh.vertices[i];
        if (m.labels[i] == Label::bisector) CHECK(std::fabs(std::asin(v[0])) <= 2.0 * angular);
        if (m.labels[i] == Label::right) CHECK(v[0] > 0.0);
        if (m.labels[i] == Label::left) CHECK(v[0] < 0.0);
    }
    CHECK(connected_components(m, Label::left).count == 1);
    CHECK(connected_components(m, Label::right).count == 1);
    CHECK(connected_components(m, Label::bisector).count == 1);
    CHECK(m.count(Label::left) == m.count(Label::right));
    CHECK(separation_check(m));
    CHECK(closedness_check(m));
}

TEST_CASE("planar Euclidean bisector is two antipodal points") {
    const LabeledMesh m = classify_sphere(ConvexBody::euclidean(2), Vec{1, 0}, sphere_mesh(2, 7));
    CHECK(connected_components(m, Label::bisector).count == 2);
    CHECK(m.count(Label::bisector) == 2);
}

TEST_CASE("max norm in the plane has bisector arcs") {
    const ConvexBody sq = ConvexBody::lp_ball(2, std::numeric_limits<double>::infinity());
    const LabeledMesh m = classify_sphere(sq, Vec{1, 0}, sphere_mesh(2, 8));
    // closed form: f_y(t) = 0 for large t exactly when |y2| > |y1|
    std::size_t expected = 0;
    for (const Vec& v : m.mesh.vertices) expected += std::fabs(v[1]) > std::fabs(v[0]);
    CHECK(m.count(Label::bisector) >= expected);
    CHECK(m.count(Label::bisector) <= expected + 4);
    CHECK(connected_components(m, Label::bisector).count == 2);
}

TEST_CASE("cube labeling matches a per-vertex grid scan") {
    const ConvexBody cube = ConvexBody::cube(3);
    const Vec x{1, 0, 0};
    ClassifyParams params;
    params.t_max = 100.0;  // same horizon as the scan
    const LabeledMesh m = classify_sphere(cube, x, sphere_mesh(3, 3), params);
    long disagree = 0;
    for (std::size_t i = 0; i < m.mesh.size(); ++i) {
        const Label oracle = testing::grid_label(cube, x, m.mesh.vertices[i], 2000, 100.0);
        // ideal points escape any finite scan; compare them by their limit
        if (m.rays[i].ideal_limit) continue;
        disagree += oracle != m.rays[i].label;
    }
    CHECK(disagree == 0);
    CHECK(separation_check(m));
    CHECK(closedness_check(m));
}

TEST_CASE("labeling properties across bodies") {
    const std::vector<std::pair<ConvexBody, Vec>> cases = {
        {ConvexBody::cube(3), Vec{1, 0.6, 0.3}},
        {ConvexBody::lp_ball(3, 1.5), Vec{1, 0.6, 0.3}},
        {ConvexBody::halfdisk_hull(64), Vec{1, 0, 0}},
    };
    for (const auto& [body, x0] : cases) {
        INFO(body.describe());
        const LabeledMesh m = classify_sphere(body, body.boundary_point(x0), sphere_mesh(3, 3));
        CHECK(m.count(Label::unresolved) == 0);
        CHECK(m.count(Label::left) + m.count(Label::right) + m.count(Label::bisector) == m.mesh.size());
        CHECK(m.count(Label::left) == m.count(Label::right));
        for (std::size_t i = 0; i < m.mesh.size(); ++i) CHECK(m.labels[m.mesh.antipode[i]] == mirror(m.labels[i]));
        CHECK(separation_check(m));
        CHECK(closedness_check(m));
        CHECK(connected_components(m, Label::left).count == 1);
        CHECK(connected_components(m, Label::right).count == 1);
    }
}

TEST_CASE("separation and closedness detect defects") {
    LabeledMesh m = classify_sphere(ConvexBody::euclidean(3), Vec{1, 0, 0}, sphere_mesh(3, 2));
    for (std::size_t i = 0; i < m.mesh.size(); ++i) {
        if (m.labels[i] == Label::bisector) m.labels[i] = m.mesh.vertices[i][1] > 0 ? Label::left : Label::right;
    }
    CHECK_FALSE(separation_check(m));
    CHECK_FALSE(closedness_check(m));
}

TEST_CASE("local branch counts on sampled curves") {
    std::vector<Vec> circle, arc;
    for (int i = 0; i < 400; ++i) {
        const double a = 2 * std::numbers::pi * i / 400;
        circle.push_back(Vec{std::cos(a), std::sin(a), 0});
        if (i <= 100) arc.push_back(Vec{std::cos(a), std::sin(a), 0});
    }
    const double h = 2 * std::numbers::pi / 400;
    CHECK(local_branch_count(circle, circle[37], 10 * h, 1.5 * h) == 2);
    CHECK(local_branch_count(arc, arc[50], 10 * h, 1.5 * h) == 2);
    CHECK(local_branch_count(arc, arc[0], 10 * h, 1.5 * h) == 1);
    // two great circles crossing at e2
    std::vector<Vec> cross = circle;
    for (int i = 0; i < 400; ++i) {
        const double a = 2 * std::numbers::pi * i / 400;
        cross.push_back(Vec{0, std::cos(a), std::sin(a)});
    }
    CHECK(local_branch_count(cross, Vec{0, 1, 0}, 10 * h, 1.5 * h) == 4);
    CHECK_THROWS_AS(local_branch_count(arc, Vec{0, 0, 5}, 10 * h, 1.5 * h), Error);
}

TEST_CASE("mesh branch count on the Euclidean great circle") {
    const LabeledMesh m = classify_sphere(ConvexBody::euclidean(3), Vec{1, 0, 0}, sphere_mesh(3, 4));
    std::size_t p = 0;
    for (std::size_t i = 0; i < m.mesh.size(); ++i) {
        if (m.labels[i] == Label::bisector) {
            p = i;
            break;
        }
    }
    CHECK(local_branch_count(m, p, 6 * m.mesh.spacing) == 2);
}

TEST_CASE("Hausdorff distance") {
    const std::vector<Vec> a{Vec{0, 0, 0}}, b{Vec{1, 0, 0}};
    CHECK(hausdorff(a, a) == 0.0);
    CHECK(hausdorff(a, b) == 1.0);

    std::mt19937_64 rng(8);
    std::vector<Vec> big, other;
    for (int i = 0; i < 3000; ++i) big.push_back(testing::random_gaussian(rng, 3));
    for (int i = 0; i < 1500; ++i) other.push_back(testing::random_gaussian(rng, 3) * 1.3);
    CHECK(directed_hausdorff(other, big) == brute_directed(other, big));
    CHECK(directed_hausdorff(big, other) == brute_directed(big, other));

    // disk samples against a refined sampling
    auto disk = [](double step) {
        std::vector<Vec> out;
        for (double u = -1; u <= 1; u += step)
            for (double v = -1; v <= 1; v += step)
                if (u * u + v * v <= 1) out.push_back(Vec{0, u, v});
        return out;
    };
    CHECK(hausdorff(disk(0.05), disk(0.025)) <= 0.05);
}

TEST_CASE("hyperplane flatness") {
    std::mt19937_64 rng(12);
    std::vector<Vec> plane;
    for (int i = 0; i < 500; ++i) {
        Vec v = testing::random_gaussian(rng, 3);
        v[0] = 0.0;
        plane.push_back(v);
    }
    CHECK(hyperplane_flatness(plane) <= 1e-12);
    // tilted plane through the origin
    const Vec nrm = normalized(Vec{1, 2, -2});
    std::vector<Vec> tilted;
    for (const Vec& v : plane) tilted.push_back(v - nrm * dot(v, nrm));
    CHECK(hyperplane_flatness(tilted) <= 1e-12);
    // two parallel planes at +-0.1 have RMS residual 0.1
    std::vector<Vec> slab;
    for (std::size_t i = 0; i < plane.size(); ++i) slab.push_back(plane[i] + Vec{i % 2 ? 0.1 : -0.1, 0, 0});
    CHECK(hyperplane_flatness(slab) == doctest::Approx(0.1).epsilon(1e-2));
}

TEST_CASE("non-Euclidean bounded representations are curved for generic x") {
    const SphereMesh mesh = sphere_mesh(3, 3);
    for (const ConvexBody& b : {ConvexBody::lp_ball(3, 3.0), ConvexBody::lp_ball(3, 1.5), ConvexBody::cube(3)}) {
        INFO(b.describe());
        const Vec x = b.boundary_point(Vec{1, 0.6, 0.3});
        CHECK(hyperplane_flatness(bounded_representation(b, x, mesh).points) > 1e-3);
    }
}

TEST_CASE("symmetric x gives a planar bisector for l_p balls") {
    // |z1 - 1|^p = |z1 + 1|^p forces z1 = 0, whatever the other coordinates.
    // Near the root f ~ -2 z1 / |z|^(p-1), so the zero threshold 1e-9 allows
    // |z1| up to about 1e-9 |z|^(p-1).
    for (double p : {1.5, 3.0}) {
        const ConvexBody b = ConvexBody::lp_ball(3, p);
        for (const BisectorPoint& q : bisector_line_samples(b, Vec{1, 0, 0}, 0.1, 4)) {
            CHECK(std::fabs(q.z[0]) <= 1e-9 * std::pow(std::max(1.0, norm2(q.z)), p - 1.0));
        }
    }
}
