#include "normbis/simd.hpp"

#include <atomic>
#include <cstdlib>
#include <string_view>

#include "normbis/vec.hpp"

namespace normbis::simd {

const char* isa_name(Isa isa) noexcept {
    switch (isa) {
        case Isa::scalar: return "scalar";
        case Isa::avx2: return "avx2";
    }
    return "unknown";
}

bool isa_available(Isa isa) noexcept {
    switch (isa) {
        case Isa::scalar: return true;
        case Isa::avx2:
#if defined(NORMBIS_BUILD_AVX2) && (defined(__x86_64__) || defined(__i386__))
            return __builtin_cpu_supports("avx2");
#else
            return false;
#endif
    }
    return false;
}

const KernelTable& kernels(Isa isa) {
    if (!isa_available(isa)) throw Error(std::string("ISA not available: ") + isa_name(isa));
#if defined(NORMBIS_BUILD_AVX2)
    if (isa == Isa::avx2) return detail::avx2_table;
#endif
    return detail::scalar_table;
}

namespace {

Isa detect() {
    if (const char* env = std::getenv("NORMBIS_ISA")) {
        const std::string_view want(env);
        if (want == "scalar") return Isa::scalar;
        if (want == "avx2" && isa_available(Isa::avx2)) return Isa::avx2;
    }
    return isa_available(Isa::avx2) ? Isa::avx2 : Isa::scalar;
}

std::atomic<Isa>& current() {
    static std::atomic<Isa> isa{detect()};
    return isa;
}

}  // namespace

Isa active_isa() { return current().load(std::memory_order_relaxed); }

void force_isa(std::optional<Isa> isa) {
    if (isa && !isa_available(*isa)) throw Error(std::string("ISA not available: ") + isa_name(*isa));
    current().store(isa ? *isa : detect(), std::memory_order_relaxed);
}

const KernelTable& kernels() { return kernels(active_isa()); }

SoaBlock::SoaBlock(int dim, std::size_t count, double pad)
    : dim_(dim), count_(count), stride_((count + kLanes - 1) / kLanes * kLanes) {
    if (stride_ == 0) stride_ = kLanes;
    data_.assign(static_cast<std::size_t>(dim) * stride_, pad);
}

void SoaBlock::set(std::size_t row, std::span<const double> values) {
    for (int d = 0; d < dim_; ++d) data_[static_cast<std::size_t>(d) * stride_ + row] = values[static_cast<std::size_t>(d)];
}

double max_abs_dot(const SoaBlock& rows, std::span<const double> v) {
    return kernels().max_abs_dot(rows.data(), rows.stride(), rows.dim(), v.data());
}

double min_sq_dist(const SoaBlock& points, std::span<const double> q) {
    return kernels().min_sq_dist(points.data(), points.stride(), points.dim(), q.data());
}

}  // namespace normbis::simd
