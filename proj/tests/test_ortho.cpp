#include <doctest.h>

#include <cmath>
#include <random>

#include "normbis/ortho.hpp"
#include "support.hpp"

using namespace normbis;

namespace {

const double kInf = std::numeric_limits<double>::infinity();

// Width of {t : g(p + t d) <= min + tol} on a uniform grid of [-r, r].
double grid_flat_width(const ConvexBody& b, const Vec& p, const Vec& d, double tol, double r = 3.0, int count = 600000) {
    const double m = testing::grid_min(b, p, d, r, count);
    double lo = kInf, hi = -kInf;
    for (int i = 0; i <= count; ++i) {
        const double t = -r + 2.0 * r * i / count;
        if (b.gauge(p + d * t) <= m + tol) {
            lo = std::min(lo, t);
            hi = std::max(hi, t);
        }
    }
    return hi - lo;
}

}  // namespace

TEST_CASE("min_along_line examples") {
    const LineScan e = min_along_line(ConvexBody::euclidean(2), Vec{0, 1}, Vec{1, 0});
    CHECK(std::fabs(e.t_min) <= 1e-9);
    CHECK(e.min_value == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(e.flat_width() <= 1e-7);

    const LineScan c = min_along_line(ConvexBody::cube(3), Vec{0, 1, 0}, Vec{1, 0, 0});
    CHECK(c.min_value == 1.0);
    CHECK(c.t_lo == doctest::Approx(-1.0).epsilon(1e-9));
    CHECK(c.t_hi == doctest::Approx(1.0).epsilon(1e-9));

    const ConvexBody l1 = ConvexBody::lp_ball(2, 1.0);
    const LineScan s = min_along_line(l1, Vec{0.5, 0.5}, Vec{1, -1});
    CHECK(s.min_value == doctest::Approx(1.0).epsilon(1e-14));
    const double oracle = grid_flat_width(l1, Vec{0.5, 0.5}, Vec{1, -1}, 1e-12);
    CHECK(s.flat_width() == doctest::Approx(oracle).epsilon(1e-4));
    CHECK(s.flat_width() == doctest::Approx(1.0).epsilon(1e-8));

    CHECK_THROWS_AS(min_along_line(ConvexBody::cube(3), Vec{0, 1, 0}, Vec{0, 0, 0}), Error);
}

TEST_CASE("min_along_line agrees with a dense grid") {
    std::mt19937_64 rng(5);
    const std::vector<ConvexBody> bodies = {ConvexBody::euclidean(3), ConvexBody::cube(3), ConvexBody::lp_ball(3, 1.5),
                                            ConvexBody::halfdisk_hull(64)};
    for (const ConvexBody& b : bodies) {
        INFO(b.describe());
        for (int i = 0; i < 10; ++i) {
            const Vec p = testing::random_gaussian(rng, 3) * 0.5;
            const Vec d = testing::random_unit(rng, 3);
            const LineScan s = min_along_line(b, p, d);
            const double m = testing::grid_min(b, p, d, 8.0, 100000);
            CHECK(s.min_value <= m + 1e-12);
            CHECK(s.min_value >= m - 1e-3);  // grid step 1.6e-4, Lipschitz constant of order one
            CHECK(s.min_value <= b.gauge(p));
            CHECK(s.t_lo <= s.t_min);
            CHECK(s.t_min <= s.t_hi);
            for (double u : {0.0, 0.25, 0.5, 0.75, 1.0}) {
                const double t = s.t_lo + u * (s.t_hi - s.t_lo);
                CHECK(b.gauge(p + d * t) - s.min_value <= 1e-9 * (1.0 + std::fabs(t - s.t_min)));
            }
        }
    }
}

TEST_CASE("line_boundary_roots examples") {
    const LineRoots c = line_boundary_roots(ConvexBody::cube(3), Vec{0, 0.5, 0.5}, Vec{1, 0, 0});
    REQUIRE(c.kind == RootKind::secant);
    CHECK(c.t_minus == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(c.t_plus == doctest::Approx(1.0).epsilon(1e-12));

    const LineRoots e = line_boundary_roots(ConvexBody::euclidean(2), Vec{0, 0.6}, Vec{1, 0});
    REQUIRE(e.kind == RootKind::secant);
    CHECK(e.t_minus == doctest::Approx(-0.8).epsilon(1e-12));
    CHECK(e.t_plus == doctest::Approx(0.8).epsilon(1e-12));

    CHECK(line_boundary_roots(ConvexBody::euclidean(2), Vec{0, 2}, Vec{1, 0}).kind == RootKind::none);

    const LineRoots t = line_boundary_roots(ConvexBody::cube(3), Vec{0, 1, 0.5}, Vec{1, 0, 0});
    REQUIRE(t.kind == RootKind::tangent);
    CHECK(t.t_minus == doctest::Approx(-1.0).epsilon(1e-9));
    CHECK(t.t_plus == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("roots lie on the unit sphere") {
    std::mt19937_64 rng(9);
    const std::vector<ConvexBody> bodies = {ConvexBody::lp_ball(3, 3.0), ConvexBody::cross_polytope(3),
                                            ConvexBody::halfdisk_hull(64)};
    for (const ConvexBody& b : bodies) {
        for (int i = 0; i < 50; ++i) {
            const Vec p = testing::random_gaussian(rng, 3) * 0.3;
            const Vec d = testing::random_unit(rng, 3);
            const LineRoots r = line_boundary_roots(b, p, d);
            if (r.kind != RootKind::secant) continue;
            CHECK(r.t_minus < r.t_plus);
            CHECK(b.gauge(p + d * r.t_minus) == doctest::Approx(1.0).epsilon(1e-9));
            CHECK(b.gauge(p + d * r.t_plus) == doctest::Approx(1.0).epsilon(1e-9));
        }
    }
}

TEST_CASE("Birkhoff orthogonality") {
    const ConvexBody e = ConvexBody::euclidean(2);
    CHECK(birkhoff_orthogonal(e, Vec{1, 0}, Vec{0, 1}));
    CHECK_FALSE(birkhoff_orthogonal(e, Vec{1, 0}, Vec{1, 1}));

    const ConvexBody cube = ConvexBody::cube(3);
    // grid oracle: min_t g(x + t y) against g(x)
    const Vec x{1, 0.3, 0}, y{0, 1, 0};
    CHECK(testing::grid_min(cube, x, y) >= cube.gauge(x) - 1e-12);
    CHECK(birkhoff_orthogonal(cube, x, y));
    CHECK_FALSE(birkhoff_orthogonal(cube, Vec{1, 0.3, 0}, Vec{1, 1, 0}));
}

TEST_CASE("isosceles orthogonality") {
    CHECK(isosceles_orthogonal(ConvexBody::euclidean(2), Vec{1, 0}, Vec{0, 2}));
    CHECK_FALSE(isosceles_orthogonal(ConvexBody::euclidean(2), Vec{1, 0}, Vec{1, 0}));
    const ConvexBody sq = ConvexBody::lp_ball(2, kInf);
    CHECK(sq.gauge(Vec{1.3, 2}) == sq.gauge(Vec{-0.7, 2}));
    CHECK(isosceles_orthogonal(sq, Vec{1, 0}, Vec{0.3, 2}));
}

TEST_CASE("one-sided directional derivatives") {
    const ConvexBody e = ConvexBody::euclidean(2);
    CHECK(std::fabs(directional_derivative(e, Vec{0, 1}, Vec{1, 0}, Side::plus)) <= 1e-6);
    CHECK(directional_derivative(e, Vec{1, 0}, Vec{1, 0}, Side::plus) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(directional_derivative(ConvexBody::cube(3), Vec{1, 0, 0}, Vec{0, 1, 0}, Side::plus) == doctest::Approx(0.0));
    // at a cube edge the two sides differ
    const Vec edge{1, 1, 0};
    CHECK(directional_derivative(ConvexBody::cube(3), edge, Vec{1, 0, 0}, Side::plus) == doctest::Approx(1.0));
    CHECK(directional_derivative(ConvexBody::cube(3), edge, Vec{1, 0, 0}, Side::minus) == doctest::Approx(0.0));
}
