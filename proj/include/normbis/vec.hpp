#pragma once

#include <array>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace normbis {

inline constexpr int kMaxDim = 8;

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Small dense vector of runtime dimension 1..kMaxDim, stored inline.
class Vec {
public:
    Vec() = default;
    explicit Vec(int dim, double fill = 0.0);
    Vec(std::initializer_list<double> values);
    explicit Vec(std::span<const double> values);

    static Vec unit(int dim, int axis);

    int dim() const noexcept { return dim_; }
    double operator[](int i) const noexcept { return data_[static_cast<std::size_t>(i)]; }
    double& operator[](int i) noexcept { return data_[static_cast<std::size_t>(i)]; }

    const double* data() const noexcept { return data_.data(); }
    double* data() noexcept { return data_.data(); }
    std::span<const double> span() const noexcept { return {data_.data(), static_cast<std::size_t>(dim_)}; }

    Vec operator-() const noexcept;
    Vec& operator+=(const Vec& o) noexcept;
    Vec& operator-=(const Vec& o) noexcept;
    Vec& operator*=(double s) noexcept;
    Vec& operator/=(double s) noexcept;

    friend Vec operator+(Vec a, const Vec& b) noexcept { return a += b; }
    friend Vec operator-(Vec a, const Vec& b) noexcept { return a -= b; }
    friend Vec operator*(Vec a, double s) noexcept { return a *= s; }
    friend Vec operator*(double s, Vec a) noexcept { return a *= s; }
    friend Vec operator/(Vec a, double s) noexcept { return a /= s; }

    friend bool operator==(const Vec& a, const Vec& b) noexcept;

    bool is_zero() const noexcept;

private:
    std::array<double, kMaxDim> data_{};
    int dim_ = 0;
};

double dot(const Vec& a, const Vec& b) noexcept;
double norm2(const Vec& a) noexcept;
double dist2(const Vec& a, const Vec& b) noexcept;
Vec normalized(const Vec& a);
/// a + s * (b - a)
Vec lerp(const Vec& a, const Vec& b, double s) noexcept;

void require_dim(const Vec& v, int dim, const char* what);

std::string to_string(const Vec& v);

}  // namespace normbis
