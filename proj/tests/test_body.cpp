#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "normbis/body.hpp"
#include "normbis/body_io.hpp"
#include "support.hpp"

using namespace normbis;
using testing::random_gaussian;

namespace {

std::vector<ConvexBody> all_bodies() {
    return {ConvexBody::euclidean(2),
            ConvexBody::euclidean(3),
            ConvexBody::lp_ball(3, 1.5),
            ConvexBody::lp_ball(3, 3.0),
            ConvexBody::lp_ball(2, 1.0),
            ConvexBody::lp_ball(2, std::numeric_limits<double>::infinity()),
            ConvexBody::cube(3),
            ConvexBody::cross_polytope(3),
            ConvexBody::cross_polytope(4),
            testing::cube_as_vertices(),
            ConvexBody::halfdisk_hull(64)};
}

}  // namespace

TEST_CASE("gauge examples") {
    CHECK(ConvexBody::euclidean(2).gauge(Vec{3, 4}) == doctest::Approx(5.0).epsilon(1e-15));
    CHECK(ConvexBody::cube(3).gauge(Vec{0.2, -1.5, 0.7}) == 1.5);
    CHECK(std::fabs(testing::cube_as_vertices().gauge(Vec{0.2, -1.5, 0.7}) - 1.5) <= 1e-9);
    CHECK(ConvexBody::cross_polytope(3).gauge(Vec{1, 1, 1}) == doctest::Approx(3.0).epsilon(1e-12));
    // 4-D vertex bodies go through the LP gauge
    CHECK(ConvexBody::cross_polytope(4).gauge(Vec{0.5, -0.25, 1, 0}) == doctest::Approx(1.75).epsilon(1e-10));
}

TEST_CASE("support examples") {
    CHECK(ConvexBody::cube(3).support(Vec{1, 1, 1}) == doctest::Approx(3.0));
    CHECK(ConvexBody::euclidean(3).support(Vec{0, 2, 0}) == doctest::Approx(2.0));
    CHECK_THROWS_AS(ConvexBody::cube(3).support(Vec{0, 0, 0}), Error);

    // half-disk hull: maximize over the two arcs on a dense angle grid
    const ConvexBody hd = ConvexBody::halfdisk_hull();
    auto arc_support = [](const Vec& u) {
        double best = -1e300;
        for (int i = 0; i <= 200000; ++i) {
            const double th = -std::numbers::pi / 2 + std::numbers::pi * i / 200000;
            const double v = u[0] + u[1] * std::cos(th) + u[2] * std::sin(th);
            best = std::max({best, v, -v});
        }
        return best;
    };
    CHECK(hd.support(Vec{-1, 2, 0}) == doctest::Approx(1.0).epsilon(1e-12));
    std::mt19937_64 rng(7);
    for (int i = 0; i < 50; ++i) {
        const Vec u = random_gaussian(rng, 3);
        CHECK(hd.support(u) == doctest::Approx(arc_support(u)).epsilon(1e-8));
    }
}

TEST_CASE("boundary_point examples") {
    CHECK(ConvexBody::euclidean(3).boundary_point(Vec{0, 0, 5}) == Vec{0, 0, 1});
    CHECK(ConvexBody::cube(3).boundary_point(Vec{2, 1, 0}) == Vec{1, 0.5, 0});
    const Vec p = ConvexBody::lp_ball(2, 1.0).boundary_point(Vec{1, 1});
    CHECK(p[0] == doctest::Approx(0.5));
    CHECK(p[1] == doctest::Approx(0.5));
    CHECK_THROWS_AS(ConvexBody::cube(3).boundary_point(Vec{0, 0, 0}), Error);
}

TEST_CASE("validation diagnostics") {
    PolytopeV cube;
    for (int m = 0; m < 8; ++m) cube.vertices.push_back(Vec{m & 1 ? 1.0 : -1.0, m & 2 ? 1.0 : -1.0, m & 4 ? 1.0 : -1.0});
    CHECK(validate(3, cube).ok);

    PolytopeV missing = cube;
    missing.vertices.pop_back();
    const ValidationReport r1 = validate(3, missing);
    REQUIRE_FALSE(r1.ok);
    CHECK(r1.failures.front().find("not centrally symmetric") != std::string::npos);
    CHECK_THROWS_AS(ConvexBody::create(3, missing), Error);

    PolytopeH h;
    for (int i = 0; i < 3; ++i) {
        h.normals.push_back(Vec::unit(3, i));
        h.normals.push_back(-Vec::unit(3, i));
        h.offsets.push_back(1.0);
        h.offsets.push_back(1.0);
    }
    h.offsets[2] = 0.0;
    const ValidationReport r2 = validate(3, h);
    REQUIRE_FALSE(r2.ok);
    CHECK(r2.failures.front().find("origin not interior") != std::string::npos);

    CHECK_FALSE(validate(3, LpBall{0.5}).ok);
    CHECK_FALSE(validate(2, HalfDiskHull{64}).ok);
    CHECK_FALSE(validate(3, HalfDiskHull{4}).ok);
}

TEST_CASE("body spec loading") {
    const ConvexBody e = load_body_text(R"({"type":"lp","p":2,"n":3})");
    CHECK(e.gauge(Vec{0, 3, 4}) == doctest::Approx(5.0));

    const ConvexBody hd = load_body_text(R"({"type":"halfdisk-hull","m":256})");
    CHECK(hd.dim() == 3);
    CHECK(hd.support(Vec{1, 0, 0}) == doctest::Approx(1.0));

    const ConvexBody cross =
        load_body_text(R"({"type":"polytope-v","vertices":[[1,0,0],[-1,0,0],[0,1,0],[0,-1,0],[0,0,1],[0,0,-1]]})");
    CHECK(cross.gauge(Vec{1, 1, 1}) == doctest::Approx(3.0).epsilon(1e-12));

    CHECK_THROWS_AS(load_body_text(R"({"type":"blob"})"), Error);
    CHECK_THROWS_AS(load_body_text("not json"), Error);
}

TEST_CASE("save/load round trip reproduces the gauge") {
    std::mt19937_64 rng(11);
    std::vector<Vec> probes3, probes4;
    for (int i = 0; i < 64; ++i) {
        probes3.push_back(random_gaussian(rng, 3));
        probes4.push_back(random_gaussian(rng, 4));
    }
    for (const ConvexBody& b : all_bodies()) {
        INFO(b.describe());
        const ConvexBody c = load_body(save_body(b));
        CHECK(c.dim() == b.dim());
        if (b.dim() == 2) {
            for (const Vec& v : probes3) {
                const Vec w{v[0], v[1]};
                CHECK(std::fabs(c.gauge(w) - b.gauge(w)) <= 1e-12 * b.gauge(w));
            }
            continue;
        }
        for (const Vec& v : b.dim() == 3 ? probes3 : probes4) CHECK(std::fabs(c.gauge(v) - b.gauge(v)) <= 1e-12 * b.gauge(v));
    }
}

TEST_CASE("gauge invariants on random samples") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> scale(0.0, 50.0);
    for (const ConvexBody& b : all_bodies()) {
        INFO(b.describe());
        const double eps = b.gauge_tolerance();
        for (int i = 0; i < 200; ++i) {
            const Vec u = random_gaussian(rng, b.dim());
            const Vec v = random_gaussian(rng, b.dim());
            const double gu = b.gauge(u);
            REQUIRE(std::isfinite(gu));
            CHECK(gu > 0.0);
            CHECK(b.gauge(-u) == gu);  // exact
            const double lam = scale(rng);
            CHECK(std::fabs(b.gauge(u * lam) - lam * gu) <= eps * std::max(1.0, lam * gu));
            CHECK(b.gauge(u + v) <= gu + b.gauge(v) + eps);
            // support dominates every boundary point
            const Vec k = b.boundary_point(v);
            CHECK(dot(u, k) <= b.support(u) + 1e-9 * norm2(u));
        }
    }
}
