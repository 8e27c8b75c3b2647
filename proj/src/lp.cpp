#include "normbis/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace normbis::lp {

namespace {

constexpr double kPivotEps = 1e-12;
constexpr int kMaxPivots = 100000;

}  // namespace

Solution maximize_free(std::span<const Vec> rows, std::span<const double> b, const Vec& c) {
    const int n = c.dim();
    const std::size_t m = rows.size();
    if (b.size() != m) throw Error("lp: row/rhs size mismatch");
    const std::size_t vars = 2 * static_cast<std::size_t>(n);  // x = x+ - x-
    const std::size_t cols = vars + m + 1;                     // + slacks + rhs
    std::vector<double> t((m + 1) * cols, 0.0);
    auto at = [&](std::size_t r, std::size_t col) -> double& { return t[r * cols + col]; };

    std::vector<std::size_t> basis(m);
    for (std::size_t i = 0; i < m; ++i) {
        if (b[i] < 0.0) throw Error("lp: negative right-hand side is not supported");
        require_dim(rows[i], n, "lp row");
        for (int j = 0; j < n; ++j) {
            at(i, static_cast<std::size_t>(j)) = rows[i][j];
            at(i, static_cast<std::size_t>(j + n)) = -rows[i][j];
        }
        at(i, vars + i) = 1.0;
        at(i, cols - 1) = b[i];
        basis[i] = vars + i;
    }
    for (int j = 0; j < n; ++j) {
        at(m, static_cast<std::size_t>(j)) = -c[j];
        at(m, static_cast<std::size_t>(j + n)) = c[j];
    }

    for (int pivots = 0;; ++pivots) {
        if (pivots > kMaxPivots) throw Error("lp: pivot limit exceeded");
        std::size_t enter = cols;
        for (std::size_t j = 0; j + 1 < cols; ++j) {
            if (at(m, j) < -kPivotEps) {
                enter = j;
                break;
            }
        }
        if (enter == cols) break;

        std::size_t leave = m;
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < m; ++i) {
            const double a = at(i, enter);
            if (a <= kPivotEps) continue;
            const double ratio = at(i, cols - 1) / a;
            const bool better = leave == m || ratio < best - kPivotEps;
            const bool tie_break = leave < m && ratio <= best + kPivotEps && basis[i] < basis[leave];
            if (better || tie_break) {
                best = std::min(best, ratio);
                leave = i;
            }
        }
        if (leave == m) return Solution{Status::unbounded, std::numeric_limits<double>::infinity(), {}};

        const double p = at(leave, enter);
        for (std::size_t j = 0; j < cols; ++j) at(leave, j) /= p;
        for (std::size_t i = 0; i <= m; ++i) {
            if (i == leave) continue;
            const double f = at(i, enter);
            if (f == 0.0) continue;
            for (std::size_t j = 0; j < cols; ++j) at(i, j) -= f * at(leave, j);
        }
        basis[leave] = enter;
    }

    Solution sol;
    sol.value = at(m, cols - 1);
    sol.x.assign(static_cast<std::size_t>(n), 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        if (basis[i] < vars) {
            const std::size_t j = basis[i];
            const double val = at(i, cols - 1);
            if (j < static_cast<std::size_t>(n)) sol.x[j] += val;
            else sol.x[j - static_cast<std::size_t>(n)] -= val;
        }
    }
    return sol;
}

double vertex_gauge(std::span<const Vec> vertices, const Vec& v) {
    if (v.is_zero()) return 0.0;
    const std::vector<double> ones(vertices.size(), 1.0);
    const Solution s = maximize_free(vertices, ones, v);
    if (s.status != Status::optimal) throw Error("vertex gauge: origin is not interior to the hull");
    return s.value;
}

double facet_support(std::span<const Vec> normals, const Vec& u) {
    std::vector<Vec> rows;
    rows.reserve(2 * normals.size());
    for (const Vec& a : normals) {
        rows.push_back(a);
        rows.push_back(-a);
    }
    const std::vector<double> ones(rows.size(), 1.0);
    const Solution s = maximize_free(rows, ones, u);
    if (s.status != Status::optimal) throw Error("facet support: body is unbounded");
    return s.value;
}

}  // namespace normbis::lp
