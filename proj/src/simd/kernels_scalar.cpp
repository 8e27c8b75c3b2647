#include "normbis/simd.hpp"

#include <cmath>
#include <limits>

namespace normbis::simd::detail {
namespace {

double max_abs_dot_scalar(const double* soa, std::size_t stride, int dim, const double* v) {
    double best = 0.0;
    for (std::size_t i = 0; i < stride; ++i) {
        double s = soa[i] * v[0];
        for (int d = 1; d < dim; ++d) s = s + soa[static_cast<std::size_t>(d) * stride + i] * v[d];
        s = std::fabs(s);
        if (s > best) best = s;
    }
    return best;
}

double min_sq_dist_scalar(const double* soa, std::size_t stride, int dim, const double* q) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < stride; ++i) {
        const double d0 = soa[i] - q[0];
        double s = d0 * d0;
        for (int d = 1; d < dim; ++d) {
            const double dd = soa[static_cast<std::size_t>(d) * stride + i] - q[d];
            s = s + dd * dd;
        }
        if (s < best) best = s;
    }
    return best;
}

}  // namespace

const KernelTable scalar_table{&max_abs_dot_scalar, &min_sq_dist_scalar};

}  // namespace normbis::simd::detail
