#pragma once

#include <limits>
#include <string>
#include <vector>

#include "normbis/vec.hpp"

namespace normbis {

/// BISECTOR: the ray {t y : t > 0} meets B(-x, x), possibly only in the limit.
/// LEFT: |ty + x| < |ty - x| for all t > 0. RIGHT: the mirror image.
/// UNRESOLVED: the numerics could not certify a label.
enum class Label { bisector, left, right, unresolved };

const char* label_name(Label label) noexcept;
/// Swaps LEFT and RIGHT; fixes the others.
Label mirror(Label label) noexcept;

/// Closed parameter interval; hi may be +infinity.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    bool degenerate() const noexcept { return lo == hi; }
    bool unbounded() const noexcept { return hi == std::numeric_limits<double>::infinity(); }
};

struct RayClassification {
    Vec direction;
    Label label = Label::unresolved;
    /// Sorted, disjoint t-intervals on which f(t) = gauge(ty + x) - gauge(ty - x) vanishes.
    std::vector<Interval> solutions;
    /// Label assigned only because f(t) tends to zero.
    bool ideal_limit = false;
    /// f at the end of the scan.
    double tail_value = 0.0;
    /// Derivative estimate of lim f(t).
    double limit_estimate = 0.0;
    std::string diagnostic;

    std::size_t root_count() const noexcept { return solutions.size(); }
};

struct BisectorPoint {
    enum class Kind { ordinary, ideal };

    Kind kind = Kind::ordinary;
    Vec z;           // ordinary: the point itself
    double t_z = 0;  // ordinary: gauge(z - x) = gauge(z + x)
    Vec direction;   // ideal: unit direction; ordinary: direction of z

    static BisectorPoint ordinary(const Vec& z, double t_z, const Vec& direction) {
        return {Kind::ordinary, z, t_z, direction};
    }
    static BisectorPoint ideal(const Vec& direction) { return {Kind::ideal, direction, 0.0, direction}; }
};

/// Line h + R x meeting K; h lies in the Euclidean complement of x.
struct Chord {
    Vec offset;
    double t_minus = 0.0;
    double t_plus = 0.0;
    Vec midpoint;
    double half_length = 0.0;  // 0 for a tangency
    /// Contact interval of a tangency (equal to [t_minus, t_plus] otherwise).
    double contact_lo = 0.0;
    double contact_hi = 0.0;

    bool tangent() const noexcept { return half_length == 0.0; }
};

}  // namespace normbis
