#include "normbis/bisector.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "normbis/parallel.hpp"

namespace normbis {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kMaxBisect = 200;
constexpr int kRefineBudget = 256;

int sign_of(double f, double eps) { return f > eps ? 1 : (f < -eps ? -1 : 0); }

// y is an ideal point when bisector points t y' with t -> infinity accumulate
// at y. That happens when directions y' arbitrarily close to y have an
// asymptotic difference lim f_{y'}(t) of the other sign (or zero): f_{y'} then
// changes sign at some t beyond any bound. Probes use a relative offset rho
// and the difference quotient at step h << rho. The probe set is symmetric
// under y -> -y, so the verdict is too.
bool ideal_by_neighbours(const ConvexBody& body, const Vec& x, const Vec& y, int tail_sign, double rho) {
    const double step = 1e-2 * rho;
    const int n = y.dim();
    const double scale = norm2(y);
    const Vec u = y / scale;
    std::vector<Vec> basis;
    for (int i = 0; i < n && static_cast<int>(basis.size()) < n - 1; ++i) {
        Vec b = Vec::unit(n, i);
        b -= u * dot(b, u);
        for (const Vec& c : basis) b -= c * dot(b, c);
        if (norm2(b) > 1e-3) basis.push_back(normalized(b));
    }
    std::vector<Vec> probes;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        probes.push_back(basis[i]);
        for (std::size_t j = i + 1; j < basis.size(); ++j) {
            probes.push_back((basis[i] + basis[j]) * std::sqrt(0.5));
            probes.push_back((basis[i] - basis[j]) * std::sqrt(0.5));
        }
    }
    for (const Vec& b : probes) {
        for (double side : {1.0, -1.0}) {
            const Vec yp = y + b * (side * rho * scale);
            const double limit = (body.gauge(yp + x * step) - body.gauge(yp - x * step)) / step;
            if (limit * tail_sign <= 0.0) return true;
        }
    }
    return false;
}

// gauge(t y + x) and gauge(t y - x) at one parameter.
struct Sample {
    double t, plus, minus;
    double f() const { return plus - minus; }
};

using Member = double Sample::*;

double through(const Sample& p, const Sample& q, Member h, double t) {
    return p.*h + (q.*h - p.*h) * (t - p.t) / (q.t - p.t);
}

// Both gauges are convex in t. On [s[i], s[i+1]] each lies below its chord and
// above the extensions of the neighbouring chords, which bounds sign * f from
// below without further evaluations. Needs i >= 1.
bool sign_certified(const std::vector<Sample>& s, std::size_t i, int sign, double eps) {
    const Sample& a = s[i];
    const Sample& b = s[i + 1];
    const Member low = sign > 0 ? &Sample::plus : &Sample::minus;
    const Member up = sign > 0 ? &Sample::minus : &Sample::plus;
    const bool right = i + 2 < s.size();
    auto lower = [&](double t) {
        double v = through(s[i - 1], a, low, t);
        if (right) v = std::max(v, through(b, s[i + 2], low, t));
        return v;
    };
    double ts[3] = {a.t, b.t, a.t};
    if (right) {
        const double m1 = (a.*low - s[i - 1].*low) / (a.t - s[i - 1].t);
        const double m2 = (s[i + 2].*low - b.*low) / (s[i + 2].t - b.t);
        if (m2 > m1) {
            const double cross = (b.*low - m2 * b.t - a.*low + m1 * a.t) / (m1 - m2);
            ts[2] = std::clamp(cross, a.t, b.t);
        }
    }
    for (double t : ts) {
        if (!(lower(t) - through(a, b, up, t) > eps)) return false;
    }
    return true;
}

}  // namespace

const char* label_name(Label label) noexcept {
    switch (label) {
        case Label::bisector: return "BISECTOR";
        case Label::left: return "LEFT";
        case Label::right: return "RIGHT";
        case Label::unresolved: return "UNRESOLVED";
    }
    return "?";
}

Label mirror(Label label) noexcept {
    if (label == Label::left) return Label::right;
    if (label == Label::right) return Label::left;
    return label;
}

double delta(const ConvexBody& body, const Vec& x, const Vec& y, double t) {
    const Vec ty = y * t;
    return body.gauge(ty + x) - body.gauge(ty - x);
}

std::vector<double> scan_grid(const ClassifyParams& params) {
    if (!(params.t0 > 0.0) || !(params.ratio > 1.0) || !(params.t_max > params.t0)) {
        throw Error("classify: bad scan grid parameters");
    }
    std::vector<double> grid;
    for (double t = params.t0; t < params.t_max; t *= params.ratio) grid.push_back(t);
    grid.push_back(params.t_max);
    return grid;
}

RayClassification classify_direction(const ConvexBody& body, const Vec& x, const Vec& y, const ClassifyParams& params) {
    require_dim(x, body.dim(), "classify_direction x");
    require_dim(y, body.dim(), "classify_direction y");
    RayClassification rc;
    rc.direction = y;

    auto sample = [&](double t) {
        const Vec ty = y * t;
        return Sample{t, body.gauge(ty + x), body.gauge(ty - x)};
    };
    auto resolution = [&](double t) { return params.eps_t * std::max(1.0, t); };

    // Grid points, then midpoints wherever equal signs at both ends of a step
    // do not rule out a pair of roots inside it. t = 0 only anchors the bounds.
    std::vector<Sample> samples{sample(0.0)};
    for (double t : scan_grid(params)) samples.push_back(sample(t));
    int budget = kRefineBudget;
    for (bool split = true; split && budget > 0;) {
        split = false;
        std::vector<Sample> next;
        next.reserve(samples.size() * 2);
        for (std::size_t i = 0; i < samples.size(); ++i) {
            next.push_back(samples[i]);
            if (i == 0 || i + 1 == samples.size() || budget == 0) continue;
            const int sa = sign_of(samples[i].f(), params.eps_f);
            if (sa == 0 || sign_of(samples[i + 1].f(), params.eps_f) != sa) continue;
            const double a = samples[i].t, b = samples[i + 1].t;
            if (b - a <= resolution(a) || sign_certified(samples, i, sa, params.eps_f)) continue;
            next.push_back(sample(0.5 * (a + b)));
            --budget;
            split = true;
        }
        samples.swap(next);
    }

    const std::size_t n = samples.size() - 1;
    std::vector<double> grid(n), f(n);
    std::vector<int> s(n);
    for (std::size_t k = 0; k < n; ++k) {
        grid[k] = samples[k + 1].t;
        f[k] = samples[k + 1].f();
        s[k] = sign_of(f[k], params.eps_f);
    }
    auto is_zero = [&](double t) { return std::fabs(delta(body, x, y, t)) <= params.eps_f; };

    // Boundary between a zero parameter and a nonzero one.
    auto zero_edge = [&](double zero_t, double nonzero_t) {
        for (int i = 0; i < kMaxBisect && std::fabs(nonzero_t - zero_t) > resolution(zero_t); ++i) {
            const double mid = 0.5 * (zero_t + nonzero_t);
            if (is_zero(mid)) zero_t = mid;
            else nonzero_t = mid;
        }
        return zero_t;
    };

    for (std::size_t k = 0; k < n;) {
        if (s[k] == 0) {
            std::size_t j = k;
            while (j + 1 < n && s[j + 1] == 0) ++j;
            Interval iv;
            iv.lo = k == 0 ? 0.0 : zero_edge(grid[k], grid[k - 1]);
            iv.hi = j + 1 == n ? kInf : zero_edge(grid[j], grid[j + 1]);
            rc.solutions.push_back(iv);
            k = j + 1;
            continue;
        }
        if (k + 1 < n && s[k + 1] != 0 && s[k + 1] != s[k]) {
            double lo = grid[k], hi = grid[k + 1];
            const int lo_sign = s[k];
            double root = 0.5 * (lo + hi);
            bool converged = false;
            for (int i = 0; i < kMaxBisect; ++i) {
                root = 0.5 * (lo + hi);
                const double fm = delta(body, x, y, root);
                const int sm = sign_of(fm, params.eps_f);
                if (sm == 0 || hi - lo <= resolution(root)) {
                    converged = true;
                    break;
                }
                (sm == lo_sign ? lo : hi) = root;
            }
            if (!converged) {
                rc.label = Label::unresolved;
                rc.diagnostic = "root refinement failed in [" + std::to_string(grid[k]) + ", " +
                                std::to_string(grid[k + 1]) + "]";
                return rc;
            }
            rc.solutions.push_back({root, root});
        }
        ++k;
    }

    rc.tail_value = f.back();
    rc.limit_estimate = directional_derivative(body, y, x, Side::plus) - directional_derivative(body, y, x, Side::minus);

    if (!rc.solutions.empty()) {
        rc.label = Label::bisector;
        return rc;
    }
    if (std::fabs(rc.tail_value) <= params.eps_asym) {
        if (std::fabs(rc.limit_estimate) <= params.limit_tol) {
            rc.label = Label::bisector;
            rc.ideal_limit = true;
        } else {
            rc.label = Label::unresolved;
            rc.diagnostic = "tail of f vanishes but derivative limit is " + std::to_string(rc.limit_estimate);
        }
        return rc;
    }
    const int tail_sign = s.back() < 0 ? -1 : 1;
    if (std::fabs(rc.limit_estimate) > params.limit_tol && rc.limit_estimate * tail_sign < 0.0) {
        for (double lo = params.t_max, t = lo * params.ratio; lo < params.t_extend; lo = t, t *= params.ratio) {
            const double ft = delta(body, x, y, t);
            if (sign_of(ft, params.eps_f) == tail_sign) continue;
            double hi = t;
            for (int i = 0; i < kMaxBisect && hi - lo > resolution(lo); ++i) {
                const double mid = 0.5 * (lo + hi);
                (sign_of(delta(body, x, y, mid), params.eps_f) == tail_sign ? lo : hi) = mid;
            }
            rc.solutions.push_back({hi, hi});
            rc.label = Label::bisector;
            rc.diagnostic = "root beyond t_max";
            return rc;
        }
        rc.label = Label::unresolved;
        rc.diagnostic = "f changes sign beyond t_max: f(t_max) = " + std::to_string(rc.tail_value) +
                        ", derivative limit " + std::to_string(rc.limit_estimate);
        return rc;
    }
    if (ideal_by_neighbours(body, x, y, tail_sign, params.ideal_probe)) {
        rc.label = Label::bisector;
        rc.ideal_limit = true;
        rc.diagnostic = "ideal point: nearby directions change the sign of lim f";
        return rc;
    }
    rc.label = tail_sign < 0 ? Label::left : Label::right;
    return rc;
}

std::vector<double> sample_parameters(int k) {
    std::vector<double> ts;
    for (int j = 0; j < k; ++j) {
        const double u = (j + 0.5) / k;
        ts.push_back(u / (1.0 - u));
    }
    return ts;
}

std::vector<BisectorPoint> bisector_points(const ConvexBody& body, const Vec& x, const RayClassification& ray, int k) {
    if (ray.label != Label::bisector) {
        throw Error(std::string("bisector_points: direction is ") + label_name(ray.label) + ", not BISECTOR");
    }
    const Vec& y = ray.direction;
    std::vector<double> ts;
    bool ideal = ray.ideal_limit;
    const std::vector<double> grid = sample_parameters(k);
    for (const Interval& iv : ray.solutions) {
        if (iv.degenerate()) {
            if (iv.lo > 0.0) ts.push_back(iv.lo);
            continue;
        }
        if (iv.lo > 0.0) ts.push_back(iv.lo);
        if (iv.unbounded()) {
            ideal = true;
        } else {
            ts.push_back(iv.hi);
            ts.push_back(0.5 * (iv.lo + iv.hi));
        }
        for (double t : grid) {
            if (t > iv.lo && t < iv.hi) ts.push_back(t);
        }
    }
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());

    std::vector<BisectorPoint> out;
    for (double t : ts) {
        const Vec z = y * t;
        out.push_back(BisectorPoint::ordinary(z, body.gauge(z - x), y));
    }
    if (ideal) out.push_back(BisectorPoint::ideal(y));
    return out;
}

Vec phi(const ConvexBody& body, const Vec& x, const BisectorPoint& point) {
    if (point.kind == BisectorPoint::Kind::ideal) return body.boundary_point(point.direction);
    const double t_z = body.gauge(point.z - x);
    if (!(t_z > 0.0)) throw Error("phi: degenerate bisector point");
    return point.z / t_z;
}

BisectorPoint bisector_from_chord(const Chord& chord, const Vec& x) {
    const double s = chord.half_length;
    if (!(s > 0.0)) throw Error("bisector_from_chord: tangency chord belongs to the shadow boundary");
    const Vec z = chord.midpoint / s;
    return BisectorPoint::ordinary(z, 1.0 / s, z.is_zero() ? x : z);
}

EdgeCrossing cross_edge(const ConvexBody& body, const Vec& x, const Vec& left_dir, const Vec& right_dir,
                        std::span<const double> ts, const ClassifyParams& params) {
    EdgeCrossing ec;
    std::vector<double> svals;
    auto dir_at = [&](double s) { return body.boundary_point(lerp(left_dir, right_dir, s)); };
    for (double t : ts) {
        const double fl = delta(body, x, left_dir, t);
        const double fr = delta(body, x, right_dir, t);
        if (!(fl < 0.0 && fr > 0.0)) continue;
        double lo = 0.0, hi = 1.0;
        double s = 0.5;
        for (int i = 0; i < kMaxBisect; ++i) {
            s = 0.5 * (lo + hi);
            if (hi - lo <= 1e-14) break;
            const double fm = delta(body, x, dir_at(s), t);
            if (std::fabs(fm) <= params.eps_f) break;
            (fm < 0.0 ? lo : hi) = s;
        }
        const Vec y = dir_at(s);
        const Vec z = y * t;
        ec.points.push_back(BisectorPoint::ordinary(z, body.gauge(z - x), y));
        svals.push_back(s);
    }
    if (!svals.empty()) {
        std::sort(svals.begin(), svals.end());
        const std::size_t m = svals.size();
        ec.s_median = m % 2 ? svals[m / 2] : 0.5 * (svals[m / 2 - 1] + svals[m / 2]);
    }
    return ec;
}

std::vector<BisectorPoint> line_bisector_points(const ConvexBody& body, const Vec& x, const Vec& w, int k,
                                                const ClassifyParams& params) {
    auto f = [&](double s) { return body.gauge(w + x * (s - 1.0)) - body.gauge(w + x * (s + 1.0)); };
    // s_lo: first s with f <= eps_f; s_hi: last s with f >= -eps_f
    // f tends to -+2 gauge(x) as s -> +-inf, so the zero set sits within a few
    // |w| of the origin; far beyond that f is lost in rounding.
    const double reach = 1e6 * (1.0 + norm2(w) / norm2(x));
    auto boundary = [&](auto&& inside_right) -> std::optional<double> {
        double lo = -1.0, hi = 1.0;
        while (!inside_right(hi)) {
            lo = hi, hi *= 2.0;
            if (hi > reach) return std::nullopt;
        }
        while (inside_right(lo)) {
            hi = lo, lo *= 2.0;
            if (lo < -reach) return std::nullopt;
        }
        while (hi - lo > 1e-12 * (1.0 + std::fabs(lo))) {
            const double mid = 0.5 * (lo + hi);
            (inside_right(mid) ? hi : lo) = mid;
        }
        return 0.5 * (lo + hi);
    };
    std::vector<BisectorPoint> out;
    const auto lo_end = boundary([&](double s) { return f(s) <= params.eps_f; });
    const auto hi_end = boundary([&](double s) { return f(s) < -params.eps_f; });
    if (!lo_end || !hi_end) return out;
    double s_lo = *lo_end, s_hi = *hi_end;
    // A transversal crossing also leaves a band of width ~ 2 eps_f / |f'|. It
    // narrows with the threshold; a true zero interval does not.
    const double fine = params.eps_f / 64.0;
    const auto lo_fine = boundary([&](double s) { return f(s) <= fine; });
    const auto hi_fine = boundary([&](double s) { return f(s) < -fine; });
    if (lo_fine && hi_fine && *hi_fine - *lo_fine < 0.125 * (s_hi - s_lo)) {
        if (const auto root = boundary([&](double s) { return f(s) < 0.0; })) s_lo = s_hi = *root;
    }
    const int pieces = s_hi - s_lo > params.eps_t * (1.0 + std::fabs(s_lo)) ? std::max(1, k) : 0;
    for (int j = 0; j <= pieces; ++j) {
        const double s = pieces ? s_lo + (s_hi - s_lo) * j / pieces : 0.5 * (s_lo + s_hi);
        const Vec z = w + x * s;
        if (z.is_zero()) continue;
        out.push_back(BisectorPoint::ordinary(z, body.gauge(z - x), normalized(z)));
    }
    return out;
}

std::vector<BisectorPoint> bisector_line_samples(const ConvexBody& body, const Vec& x, double spacing, int k,
                                                 const ClassifyParams& params) {
    if (!(spacing > 0.0 && spacing < 1.0)) throw Error("bisector_line_samples: spacing must lie in (0, 1)");
    const int n = x.dim();
    // orthonormal complement of x
    const Vec u = normalized(x);
    std::vector<Vec> basis;
    for (int i = 0; i < n && static_cast<int>(basis.size()) < n - 1; ++i) {
        Vec b = Vec::unit(n, i);
        b -= u * dot(b, u);
        for (const Vec& c : basis) b -= c * dot(b, c);
        if (norm2(b) > 1e-6) basis.push_back(normalized(b));
    }
    const long m = static_cast<long>(std::floor(1.0 / spacing));
    std::vector<Vec> offsets;
    std::vector<long> idx(basis.size(), -m);
    while (true) {
        Vec q(n);
        for (std::size_t j = 0; j < basis.size(); ++j) q += basis[j] * (static_cast<double>(idx[j]) * spacing);
        // stay half a step inside the sphere so |w| <= 2 / spacing
        const double r = norm2(q);
        if (r < 1.0 - 0.5 * spacing) offsets.push_back(q / (1.0 - r));
        std::size_t j = 0;
        while (j < idx.size() && ++idx[j] > m) idx[j++] = -m;
        if (j == idx.size()) break;
    }
    std::vector<std::vector<BisectorPoint>> per(offsets.size());
    parallel_for(offsets.size(), [&](std::size_t i) { per[i] = line_bisector_points(body, x, offsets[i], k, params); });
    std::vector<BisectorPoint> out;
    for (auto& v : per) out.insert(out.end(), v.begin(), v.end());
    return out;
}

std::vector<TaggedPoint> sample_bisector(const ConvexBody& body, const Vec& x, const LabeledMesh& mesh, int k) {
    std::vector<TaggedPoint> out;
    for (std::size_t i = 0; i < mesh.rays.size(); ++i) {
        if (mesh.rays[i].label != Label::bisector) continue;
        for (const BisectorPoint& p : bisector_points(body, x, mesh.rays[i], k)) out.push_back({p, i, false});
    }
    for (const EdgeCrossing& ec : mesh.crossings) {
        for (const BisectorPoint& p : ec.points) out.push_back({p, ec.left, true});
    }
    return out;
}

}  // namespace normbis
