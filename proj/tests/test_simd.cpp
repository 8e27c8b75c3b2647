#include <doctest.h>

#include <bit>
#include <cmath>
#include <random>

#include "normbis/body.hpp"
#include "normbis/simd.hpp"
#include "normbis/topology.hpp"
#include "support.hpp"

using namespace normbis;
using namespace normbis::simd;

namespace {

struct IsaGuard {
    ~IsaGuard() { force_isa(std::nullopt); }
};

SoaBlock random_block(std::mt19937_64& rng, int dim, std::size_t count, double pad) {
    std::normal_distribution<double> nd;
    SoaBlock b(dim, count, pad);
    std::vector<double> row(static_cast<std::size_t>(dim));
    for (std::size_t i = 0; i < count; ++i) {
        for (double& v : row) v = nd(rng) * std::ldexp(1.0, static_cast<int>(rng() % 21) - 10);
        b.set(i, row);
    }
    return b;
}

}  // namespace

TEST_CASE("scalar kernels follow their definitions") {
    std::mt19937_64 rng(1);
    const KernelTable& k = kernels(Isa::scalar);
    for (int dim = 1; dim <= kMaxDim; ++dim) {
        const SoaBlock b = random_block(rng, dim, 13, 0.0);
        const Vec v = testing::random_gaussian(rng, dim);
        double best = 0.0;
        for (std::size_t i = 0; i < b.size(); ++i) {
            double s = 0.0;
            for (int d = 0; d < dim; ++d) s += b.at(i, d) * v[d];
            best = std::max(best, std::fabs(s));
        }
        CHECK(k.max_abs_dot(b.data(), b.stride(), dim, v.data()) == best);
    }
}

TEST_CASE("AVX2 kernels are bit-identical to scalar") {
    if (!isa_available(Isa::avx2)) {
        MESSAGE("AVX2 not available on this CPU; equivalence not exercised");
        return;
    }
    std::mt19937_64 rng(99);
    const KernelTable& s = kernels(Isa::scalar);
    const KernelTable& a = kernels(Isa::avx2);
    for (int dim = 1; dim <= kMaxDim; ++dim) {
        for (std::size_t count : {1u, 3u, 4u, 5u, 8u, 31u, 257u}) {
            const SoaBlock rows = random_block(rng, dim, count, 0.0);
            const SoaBlock pts = random_block(rng, dim, count, 1e300);
            for (int q = 0; q < 20; ++q) {
                const Vec v = testing::random_gaussian(rng, dim);
                const double ds = s.max_abs_dot(rows.data(), rows.stride(), dim, v.data());
                const double da = a.max_abs_dot(rows.data(), rows.stride(), dim, v.data());
                CHECK(std::bit_cast<std::uint64_t>(ds) == std::bit_cast<std::uint64_t>(da));
                const double ms = s.min_sq_dist(pts.data(), pts.stride(), dim, v.data());
                const double ma = a.min_sq_dist(pts.data(), pts.stride(), dim, v.data());
                CHECK(std::bit_cast<std::uint64_t>(ms) == std::bit_cast<std::uint64_t>(ma));
            }
        }
    }
}

TEST_CASE("dispatch does not change library results") {
    if (!isa_available(Isa::avx2)) return;
    IsaGuard guard;
    std::mt19937_64 rng(5);
    std::vector<Vec> a, b, probes;
    for (int i = 0; i < 2000; ++i) a.push_back(testing::random_gaussian(rng, 3));
    for (int i = 0; i < 700; ++i) b.push_back(testing::random_gaussian(rng, 3));
    for (int i = 0; i < 200; ++i) probes.push_back(testing::random_gaussian(rng, 3));
    const ConvexBody hd = ConvexBody::halfdisk_hull();

    force_isa(Isa::scalar);
    const double hs = hausdorff(a, b);
    std::vector<double> gs;
    for (const Vec& p : probes) gs.push_back(hd.gauge(p));

    force_isa(Isa::avx2);
    CHECK(std::bit_cast<std::uint64_t>(hausdorff(a, b)) == std::bit_cast<std::uint64_t>(hs));
    for (std::size_t i = 0; i < probes.size(); ++i) CHECK(hd.gauge(probes[i]) == gs[i]);
}
