#include "normbis/simd.hpp"

#include <immintrin.h>

#include <algorithm>
#include <limits>

namespace normbis::simd::detail {
namespace {

double hmax(__m256d v) {
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, v);
    return std::max(std::max(lanes[0], lanes[1]), std::max(lanes[2], lanes[3]));
}

double hmin(__m256d v) {
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, v);
    return std::min(std::min(lanes[0], lanes[1]), std::min(lanes[2], lanes[3]));
}

double max_abs_dot_avx2(const double* soa, std::size_t stride, int dim, const double* v) {
    const __m256d sign = _mm256_set1_pd(-0.0);
    __m256d best = _mm256_setzero_pd();
    for (std::size_t i = 0; i < stride; i += 4) {
        __m256d s = _mm256_mul_pd(_mm256_loadu_pd(soa + i), _mm256_set1_pd(v[0]));
        for (int d = 1; d < dim; ++d) {
            const __m256d col = _mm256_loadu_pd(soa + static_cast<std::size_t>(d) * stride + i);
            s = _mm256_add_pd(s, _mm256_mul_pd(col, _mm256_set1_pd(v[d])));
        }
        best = _mm256_max_pd(best, _mm256_andnot_pd(sign, s));
    }
    return hmax(best);
}

double min_sq_dist_avx2(const double* soa, std::size_t stride, int dim, const double* q) {
    __m256d best = _mm256_set1_pd(std::numeric_limits<double>::infinity());
    for (std::size_t i = 0; i < stride; i += 4) {
        __m256d d0 = _mm256_sub_pd(_mm256_loadu_pd(soa + i), _mm256_set1_pd(q[0]));
        __m256d s = _mm256_mul_pd(d0, d0);
        for (int d = 1; d < dim; ++d) {
            const __m256d col = _mm256_loadu_pd(soa + static_cast<std::size_t>(d) * stride + i);
            const __m256d dd = _mm256_sub_pd(col, _mm256_set1_pd(q[d]));
            s = _mm256_add_pd(s, _mm256_mul_pd(dd, dd));
        }
        best = _mm256_min_pd(best, s);
    }
    return hmin(best);
}

}  // namespace

const KernelTable avx2_table{&max_abs_dot_avx2, &min_sq_dist_avx2};

}  // namespace normbis::simd::detail
