#pragma once

#include "normbis/body.hpp"

namespace normbis {

/// Minimizer data of the convex function t -> gauge(base + t * direction).
struct LineScan {
    Vec base;
    Vec direction;
    double t_min = 0.0;      // a minimizer
    double t_lo = 0.0;       // flat minimizer interval [t_lo, t_hi]
    double t_hi = 0.0;
    double min_value = 0.0;

    double flat_width() const noexcept { return t_hi - t_lo; }
};

struct LineParams {
    double t_tol = 1e-10;       // golden-section resolution in t
    double flat_slope = 1e-9;   // excess-over-minimum slope that still counts as flat
};

/// Bracketing from {-1, 0, 1} with outward doubling, golden-section refinement,
/// then bisection for the ends of the flat interval. A point t is on the flat
/// when gauge(p + t d) - min <= flat_slope * gauge(d) * |t - t_min| (plus a few
/// ulps), so exact faces give their true width and smooth minima give ~0.
/// Throws Error if sampled values violate convexity.
LineScan min_along_line(const ConvexBody& body, const Vec& p, const Vec& d, const LineParams& params = {});

enum class RootKind { none, tangent, secant };

/// Parameters t with gauge(p + t d) = 1. For a tangency the contact interval
/// is returned as [t_minus, t_plus].
struct LineRoots {
    RootKind kind = RootKind::none;
    double t_minus = 0.0;
    double t_plus = 0.0;
};

LineRoots line_boundary_roots(const ConvexBody& body, const Vec& p, const Vec& d);

inline constexpr double kBirkhoffTol = 1e-9;

/// x is Birkhoff orthogonal to y: gauge(x + t y) >= gauge(x) for all t,
/// decided as min_t gauge(x + t y) >= (1 - tol) * gauge(x).
bool birkhoff_orthogonal(const ConvexBody& body, const Vec& x, const Vec& y, double tol = kBirkhoffTol);

/// x is isosceles orthogonal to y: gauge(x + y) = gauge(x - y).
bool isosceles_orthogonal(const ConvexBody& body, const Vec& x, const Vec& y, double tol = kBirkhoffTol);

enum class Side { plus, minus };

/// One-sided derivative of gauge at y in direction +x or -x, by a forward
/// difference at step s with one Richardson step at s/2.
double directional_derivative(const ConvexBody& body, const Vec& y, const Vec& x, Side side, double step = 1e-6);

}  // namespace normbis
