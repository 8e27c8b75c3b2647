#pragma once

// Data-parallel inner loops shared by the gauge oracle and the point-cloud
// metrics. Every kernel has a portable scalar reference and, where the CPU
// allows, a vectorized variant picked once at startup. Variants perform the
// same floating-point operations in the same order, so results are
// bit-identical across ISAs.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace normbis::simd {

enum class Isa { scalar, avx2 };

const char* isa_name(Isa isa) noexcept;
bool isa_available(Isa isa) noexcept;

/// Structure-of-arrays block: coordinate d of row i lives at data[d * stride + i].
/// stride is a multiple of kLanes; padding rows hold `pad`.
class SoaBlock {
public:
    static constexpr std::size_t kLanes = 4;

    SoaBlock() = default;
    SoaBlock(int dim, std::size_t count, double pad);

    int dim() const noexcept { return dim_; }
    std::size_t size() const noexcept { return count_; }
    std::size_t stride() const noexcept { return stride_; }
    const double* data() const noexcept { return data_.data(); }

    void set(std::size_t row, std::span<const double> values);
    double at(std::size_t row, int coord) const noexcept { return data_[static_cast<std::size_t>(coord) * stride_ + row]; }

private:
    int dim_ = 0;
    std::size_t count_ = 0;
    std::size_t stride_ = 0;
    std::vector<double> data_;
};

struct KernelTable {
    // max_i |<row_i, v>|; padding rows must be zero.
    double (*max_abs_dot)(const double* soa, std::size_t stride, int dim, const double* v);
    // min_i |row_i - q|^2; padding rows must be far away.
    double (*min_sq_dist)(const double* soa, std::size_t stride, int dim, const double* q);
};

const KernelTable& kernels(Isa isa);

/// Table for the active ISA: the best available one unless overridden by
/// force_isa() or the NORMBIS_ISA environment variable ("scalar" | "avx2").
const KernelTable& kernels();
Isa active_isa();
void force_isa(std::optional<Isa> isa);

double max_abs_dot(const SoaBlock& rows, std::span<const double> v);
double min_sq_dist(const SoaBlock& points, std::span<const double> q);

namespace detail {
extern const KernelTable scalar_table;
#if defined(NORMBIS_BUILD_AVX2)
extern const KernelTable avx2_table;
#endif
}  // namespace detail

}  // namespace normbis::simd
