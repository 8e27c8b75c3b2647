#include <doctest.h>

#include <cmath>
#include <map>
#include <random>

#include "normbis/shadow.hpp"
#include "normbis/topology.hpp"
#include "support.hpp"

using namespace normbis;

TEST_CASE("shadow boundary membership") {
    CHECK(shadow_boundary_test(ConvexBody::euclidean(3), Vec{1, 0, 0}, Vec{0, 0.6, 0.8}));
    const ConvexBody cube = ConvexBody::cube(3);
    CHECK(shadow_boundary_test(cube, Vec{1, 0, 0}, Vec{0.3, 1, 0.2}));
    CHECK(min_along_line(cube, Vec{0.3, 1, 0.2}, Vec{1, 0, 0}).min_value == 1.0);
    CHECK_FALSE(shadow_boundary_test(cube, Vec{1, 0, 0}, Vec{1, 0.3, 0.2}));
    CHECK_THROWS_AS(shadow_boundary_test(cube, Vec{1, 0, 0}, Vec{0.3, 0.5, 0.2}), Error);
}

TEST_CASE("sharp shadow points") {
    std::mt19937_64 rng(2);
    const ConvexBody e = ConvexBody::euclidean(3);
    for (int i = 0; i < 20; ++i) {
        const Vec v = testing::random_unit(rng, 3);
        const Vec p = normalized(Vec{0, v[1], v[2]});
        CHECK(sharp_point_test(e, Vec{1, 0, 0}, p));
    }
    const ConvexBody cube = ConvexBody::cube(3);
    CHECK_FALSE(sharp_point_test(cube, Vec{1, 0, 0}, Vec{0, 1, 0.5}));
    CHECK(min_along_line(cube, Vec{0, 1, 0.5}, Vec{1, 0, 0}).flat_width() == doctest::Approx(2.0));
    CHECK_THROWS_AS(sharp_point_test(cube, Vec{1, 0, 0}, Vec{1, 0.3, 0.2}), Error);

    // Half-disk hull, x = e1: a vertex (1, cos t, sin t) of the open arc is the
    // only contact of the plane with normal (0, cos t, sin t); the points +-e3
    // sit in the middle of the edges from (-1, 0, 1) to (1, 0, 1) and back.
    const ConvexBody hd = ConvexBody::halfdisk_hull(64);
    const std::vector<Vec> verts = halfdisk_vertices(64);
    for (int k : {8, 20, 40, 56}) {
        const Vec& p = verts[static_cast<std::size_t>(k)];
        CHECK(hd.gauge(p) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(sharp_point_test(hd, Vec{1, 0, 0}, p));
    }
    CHECK_FALSE(sharp_point_test(hd, Vec{1, 0, 0}, Vec{0, 0, 1}));
    CHECK_FALSE(sharp_point_test(hd, Vec{1, 0, 0}, Vec{0, 0, -1}));
}

TEST_CASE("chord examples") {
    const auto e = chord_through(ConvexBody::euclidean(2), Vec{1, 0}, Vec{0, 0.6});
    REQUIRE(e.has_value());
    CHECK(e->t_minus == doctest::Approx(-0.8));
    CHECK(e->t_plus == doctest::Approx(0.8));
    CHECK(e->midpoint[0] == doctest::Approx(0.0));
    CHECK(e->midpoint[1] == doctest::Approx(0.6));
    CHECK(e->half_length == doctest::Approx(0.8));

    const ConvexBody cube = ConvexBody::cube(3);
    const auto c = chord_through(cube, Vec{1, 0, 0}, Vec{0, 0.5, 0.5});
    REQUIRE(c.has_value());
    CHECK(c->half_length == doctest::Approx(1.0));
    CHECK(dist2(c->midpoint, Vec{0, 0.5, 0.5}) <= 1e-12);

    const auto t = chord_through(cube, Vec{1, 0, 0}, Vec{0, 1, 0.5});
    REQUIRE(t.has_value());
    CHECK(t->tangent());
    CHECK(t->contact_lo == doctest::Approx(-1.0));
    CHECK(t->contact_hi == doctest::Approx(1.0));

    CHECK_FALSE(chord_through(cube, Vec{1, 0, 0}, Vec{0, 1.5, 0}).has_value());
}

TEST_CASE("chord field invariants") {
    const std::vector<std::pair<ConvexBody, Vec>> cases = {
        {ConvexBody::euclidean(3), Vec{1, 0, 0}},
        {ConvexBody::cube(3), Vec{1, 0.6, 0.3}},
        {ConvexBody::lp_ball(3, 1.5), Vec{1, 0, 0}},
        {ConvexBody::halfdisk_hull(64), Vec{1, 0, 0}},
    };
    for (const auto& [body, x0] : cases) {
        INFO(body.describe());
        const Vec x = body.boundary_point(x0);
        const std::vector<Chord> field = chord_field(body, x, 0.1);
        REQUIRE(field.size() > 100);
        std::map<std::vector<double>, Vec> by_offset;
        for (const Chord& c : field) {
            CHECK(std::fabs(dot(c.offset, x)) <= 1e-12);
            CHECK(c.t_minus <= c.t_plus);
            CHECK(dist2(c.midpoint, c.offset + x * (0.5 * (c.t_minus + c.t_plus))) <= 1e-12);
            if (!c.tangent()) {
                CHECK(body.gauge(c.offset + x * c.t_minus) == doctest::Approx(1.0).epsilon(1e-9));
                CHECK(body.gauge(c.offset + x * c.t_plus) == doctest::Approx(1.0).epsilon(1e-9));
                CHECK(body.gauge(c.midpoint) < 1.0 + 1e-9);
            } else {
                CHECK(shadow_boundary_test(body, x, c.midpoint));
            }
            by_offset[{c.offset[0], c.offset[1], c.offset[2]}] = c.midpoint;
        }
        // central symmetry: the chord through -h has midpoint -m
        long paired = 0;
        for (const auto& [h, m] : by_offset) {
            const auto it = by_offset.find({-h[0], -h[1], -h[2]});
            if (it == by_offset.end()) continue;
            ++paired;
            CHECK(dist2(it->second, -m) <= 1e-12);
        }
        CHECK(paired > 0);
    }
}

TEST_CASE("bounded representation examples") {
    const ConvexBody e = ConvexBody::euclidean(3);
    const SphereMesh mesh = sphere_mesh(3, 3);
    const BoundedRepresentation br = bounded_representation(e, Vec{1, 0, 0}, mesh);
    REQUIRE(!br.points.empty());
    for (const Vec& p : br.points) CHECK(std::fabs(p[0]) <= 1e-8);
    CHECK(hyperplane_flatness(br.points) <= 1e-9);

    const ConvexBody cube = ConvexBody::cube(3);
    const BoundedRepresentation cb = bounded_representation(cube, Vec{1, 0, 0}, mesh);
    for (std::size_t i = 0; i < cb.points.size(); ++i) {
        const Vec& p = cb.points[i];
        const double band = std::max(std::fabs(p[1]), std::fabs(p[2]));
        if (cb.tags[i] == Provenance::midpoint) {
            CHECK(std::fabs(p[0]) <= 1e-12);
            CHECK(band < 1.0);
            const LineRoots r = line_boundary_roots(cube, p, Vec{1, 0, 0});
            REQUIRE(r.kind == RootKind::secant);
            CHECK(r.t_minus + r.t_plus == doctest::Approx(0.0));
        } else {
            CHECK(band == doctest::Approx(1.0));
            CHECK(std::fabs(p[0]) <= 1.0 + 1e-12);
        }
    }
    CHECK(!cb.midpoints().empty());
    CHECK(!cb.shadow().empty());
}

TEST_CASE("bounded representation invariants") {
    const std::vector<std::pair<ConvexBody, Vec>> cases = {
        {ConvexBody::cube(3), Vec{1, 0.6, 0.3}},
        {ConvexBody::lp_ball(3, 3.0), Vec{0.9, 0.5, 0.2}},
        {ConvexBody::halfdisk_hull(64), Vec{1, 0, 0}},
        {ConvexBody::lp_ball(2, 1.0), Vec{1, 0.4}},
    };
    for (const auto& [body, x0] : cases) {
        INFO(body.describe());
        const Vec x = body.boundary_point(x0);
        const BoundedRepresentation br =
            bounded_representation(body, x, sphere_mesh(body.dim(), body.dim() == 2 ? 7 : 3), {0.1, -1});
        REQUIRE(br.points.size() == br.tags.size());
        for (std::size_t i = 0; i < br.points.size(); ++i) {
            const double g = body.gauge(br.points[i]);
            if (br.tags[i] == Provenance::midpoint) {
                CHECK(g < 1.0 + 1e-9);
            } else {
                CHECK(g == doctest::Approx(1.0).epsilon(1e-8));
                CHECK(birkhoff_orthogonal(body, br.points[i], x));
            }
        }
    }
}

TEST_CASE("complement basis") {
    std::mt19937_64 rng(4);
    for (int n = 2; n <= 5; ++n) {
        const Vec x = testing::random_gaussian(rng, n);
        const std::vector<Vec> b = complement_basis(x);
        REQUIRE(b.size() == static_cast<std::size_t>(n - 1));
        for (std::size_t i = 0; i < b.size(); ++i) {
            CHECK(std::fabs(dot(b[i], x)) <= 1e-12 * norm2(x));
            for (std::size_t j = 0; j < b.size(); ++j) CHECK(dot(b[i], b[j]) == doctest::Approx(i == j ? 1.0 : 0.0));
        }
    }
}
