#include "normbis/ortho.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace normbis {

namespace {

constexpr double kGolden = 0.6180339887498949;
constexpr int kMaxSteps = 400;

class LineFunction {
public:
    LineFunction(const ConvexBody& body, const Vec& p, const Vec& d) : body_(body), p_(p), d_(d) {}
    double operator()(double t) const { return body_.gauge(p_ + d_ * t); }

private:
    const ConvexBody& body_;
    const Vec& p_;
    const Vec& d_;
};

void convexity_guard(double ta, double ga, double tb, double gb, double tc, double gc, double tol) {
    // g(tb) must not exceed the chord through (ta, ga), (tc, gc).
    const double w = tc - ta;
    if (!(w > 0.0)) return;
    const double chord = ((tc - tb) * ga + (tb - ta) * gc) / w;
    if (gb > chord + tol * std::max(1.0, std::fabs(chord))) {
        throw Error("convexity violated along a line: body failed validation");
    }
}

}  // namespace

LineScan min_along_line(const ConvexBody& body, const Vec& p, const Vec& d, const LineParams& params) {
    require_dim(p, body.dim(), "min_along_line base");
    require_dim(d, body.dim(), "min_along_line direction");
    if (d.is_zero()) throw Error("min_along_line: zero direction");
    const LineFunction g(body, p, d);
    const double guard_tol = 100.0 * body.gauge_tolerance();

    double a = -1.0, b = 0.0, c = 1.0;
    double ga = g(a), gb = g(b), gc = g(c);
    convexity_guard(a, ga, b, gb, c, gc, guard_tol);
    for (int i = 0; ga < gb && i < kMaxSteps; ++i) {
        const double na = a - 2.0 * (b - a);
        c = b, gc = gb;
        b = a, gb = ga;
        a = na, ga = g(a);
        convexity_guard(a, ga, b, gb, c, gc, guard_tol);
    }
    for (int i = 0; gc < gb && i < kMaxSteps; ++i) {
        const double nc = c + 2.0 * (c - b);
        a = b, ga = gb;
        b = c, gb = gc;
        c = nc, gc = g(c);
        convexity_guard(a, ga, b, gb, c, gc, guard_tol);
    }
    if (ga < gb || gc < gb) throw Error("min_along_line: failed to bracket the minimum");

    double t_best = b, g_best = gb;
    double lo = a, hi = c, glo = ga, ghi = gc;
    double x1 = hi - kGolden * (hi - lo), x2 = lo + kGolden * (hi - lo);
    double g1 = g(x1), g2 = g(x2);
    for (int i = 0; i < kMaxSteps; ++i) {
        if (g1 < g_best) t_best = x1, g_best = g1;
        if (g2 < g_best) t_best = x2, g_best = g2;
        const double tol = params.t_tol * std::max(1.0, std::fabs(t_best));
        if (hi - lo <= tol) break;
        convexity_guard(lo, glo, x1, g1, x2, g2, guard_tol);
        convexity_guard(x1, g1, x2, g2, hi, ghi, guard_tol);
        if (g1 <= g2) {
            hi = x2, ghi = g2;
            x2 = x1, g2 = g1;
            x1 = hi - kGolden * (hi - lo);
            g1 = g(x1);
        } else {
            lo = x1, glo = g1;
            x1 = x2, g1 = g2;
            x2 = lo + kGolden * (hi - lo);
            g2 = g(x2);
        }
    }

    // Function values alone locate a smooth minimum only to ~sqrt(eps). The
    // symmetric difference g(t + h) - g(t - h) is nondecreasing in t and
    // unbiased at smooth minima, so bisect on its sign; keep the result only
    // if it is as good as t_best (at a kink it may be off by up to h).
    {
        const double scale = std::max(1.0, std::fabs(t_best));
        const double h = 1e-5 * scale, w = 1e-6 * scale;
        auto sdiff = [&](double t) { return g(t + h) - g(t - h); };
        double lo_t = t_best - w, hi_t = t_best + w;
        if (sdiff(lo_t) <= 0.0 && sdiff(hi_t) >= 0.0) {
            double mid = t_best;
            for (int i = 0; i < 64; ++i) {
                mid = 0.5 * (lo_t + hi_t);
                const double sm = sdiff(mid);
                if (sm == 0.0 || hi_t - lo_t <= 1e-15 * scale) break;
                (sm < 0.0 ? lo_t : hi_t) = mid;
            }
            const double gm = g(mid);
            if (gm <= g_best + 2.0 * std::numeric_limits<double>::epsilon() * std::fabs(g_best)) {
                t_best = mid;
                g_best = std::min(g_best, gm);
            }
        }
    }

    LineScan scan{p, d, t_best, t_best, t_best, g_best};
    const double slope = params.flat_slope * body.gauge(d);
    const double floor = 2.0 * std::numeric_limits<double>::epsilon() * std::fabs(g_best);
    auto on_flat = [&](double t) { return g(t) - g_best <= slope * std::fabs(t - t_best) + floor; };

    auto flat_end = [&](double sign) {
        double h = 1e-8 * std::max(1.0, std::fabs(t_best));
        double inside = t_best;
        double outside = t_best + sign * h;
        for (int i = 0; on_flat(outside) && i < kMaxSteps; ++i) {
            inside = outside;
            h *= 2.0;
            outside = t_best + sign * h;
        }
        for (int i = 0; i < kMaxSteps; ++i) {
            if (std::fabs(outside - inside) <= 1e-12 * std::max(1.0, std::fabs(inside))) break;
            const double mid = 0.5 * (inside + outside);
            if (on_flat(mid)) inside = mid;
            else outside = mid;
        }
        return inside;
    };
    scan.t_lo = flat_end(-1.0);
    scan.t_hi = flat_end(1.0);
    return scan;
}

LineRoots line_boundary_roots(const ConvexBody& body, const Vec& p, const Vec& d) {
    const LineScan scan = min_along_line(body, p, d);
    const double eps = body.gauge_tolerance();
    if (scan.min_value > 1.0 + eps) return {};
    if (std::fabs(scan.min_value - 1.0) <= eps) return {RootKind::tangent, scan.t_lo, scan.t_hi};

    const LineFunction g(body, p, d);
    auto root = [&](double start, double sign) {
        double h = 1.0;
        double inside = start;
        double outside = start + sign * h;
        for (int i = 0; g(outside) <= 1.0 && i < kMaxSteps; ++i) {
            inside = outside;
            h *= 2.0;
            outside = start + sign * h;
        }
        for (int i = 0; i < kMaxSteps; ++i) {
            const double mid = 0.5 * (inside + outside);
            if (std::fabs(outside - inside) <= 1e-12 * (1.0 + std::fabs(mid))) break;
            if (g(mid) <= 1.0) inside = mid;
            else outside = mid;
        }
        return 0.5 * (inside + outside);
    };
    return {RootKind::secant, root(scan.t_lo, -1.0), root(scan.t_hi, 1.0)};
}

bool birkhoff_orthogonal(const ConvexBody& body, const Vec& x, const Vec& y, double tol) {
    require_dim(x, body.dim(), "birkhoff_orthogonal");
    require_dim(y, body.dim(), "birkhoff_orthogonal");
    if (x.is_zero()) throw Error("birkhoff_orthogonal: x must be nonzero");
    if (y.is_zero()) return true;
    const LineScan scan = min_along_line(body, x, y);
    return scan.min_value >= (1.0 - tol) * body.gauge(x);
}

bool isosceles_orthogonal(const ConvexBody& body, const Vec& x, const Vec& y, double tol) {
    const double plus = body.gauge(x + y);
    const double minus = body.gauge(x - y);
    return std::fabs(plus - minus) <= tol * std::max(1.0, plus);
}

double directional_derivative(const ConvexBody& body, const Vec& y, const Vec& x, Side side, double step) {
    const Vec dir = side == Side::plus ? x : -x;
    const double g0 = body.gauge(y);
    auto quotient = [&](double s) { return (body.gauge(y + dir * s) - g0) / s; };
    return 2.0 * quotient(0.5 * step) - quotient(step);
}

}  // namespace normbis
