#include "normbis/vec.hpp"

#include <charconv>
#include <cmath>

namespace normbis {

Vec::Vec(int dim, double fill) : dim_(dim) {
    if (dim < 1 || dim > kMaxDim) {
        throw Error("vector dimension out of range: " + std::to_string(dim));
    }
    for (int i = 0; i < dim; ++i) data_[static_cast<std::size_t>(i)] = fill;
}

Vec::Vec(std::initializer_list<double> values) : Vec(std::span<const double>(values.begin(), values.size())) {}

Vec::Vec(std::span<const double> values) : Vec(static_cast<int>(values.size())) {
    for (std::size_t i = 0; i < values.size(); ++i) data_[i] = values[i];
}

Vec Vec::unit(int dim, int axis) {
    Vec e(dim);
    e[axis] = 1.0;
    return e;
}

Vec Vec::operator-() const noexcept {
    Vec r = *this;
    for (int i = 0; i < dim_; ++i) r[i] = -r[i];
    return r;
}

Vec& Vec::operator+=(const Vec& o) noexcept {
    for (int i = 0; i < dim_; ++i) (*this)[i] += o[i];
    return *this;
}

Vec& Vec::operator-=(const Vec& o) noexcept {
    for (int i = 0; i < dim_; ++i) (*this)[i] -= o[i];
    return *this;
}

Vec& Vec::operator*=(double s) noexcept {
    for (int i = 0; i < dim_; ++i) (*this)[i] *= s;
    return *this;
}

Vec& Vec::operator/=(double s) noexcept {
    for (int i = 0; i < dim_; ++i) (*this)[i] /= s;
    return *this;
}

bool operator==(const Vec& a, const Vec& b) noexcept {
    if (a.dim_ != b.dim_) return false;
    for (int i = 0; i < a.dim_; ++i) {
        if (a[i] != b[i]) return false;
    }
    return true;
}

bool Vec::is_zero() const noexcept {
    for (int i = 0; i < dim_; ++i) {
        if ((*this)[i] != 0.0) return false;
    }
    return true;
}

double dot(const Vec& a, const Vec& b) noexcept {
    double s = 0.0;
    for (int i = 0; i < a.dim(); ++i) s += a[i] * b[i];
    return s;
}

double norm2(const Vec& a) noexcept { return std::sqrt(dot(a, a)); }

double dist2(const Vec& a, const Vec& b) noexcept {
    double s = 0.0;
    for (int i = 0; i < a.dim(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return std::sqrt(s);
}

Vec normalized(const Vec& a) {
    const double n = norm2(a);
    if (n == 0.0) throw Error("cannot normalize the zero vector");
    return a / n;
}

Vec lerp(const Vec& a, const Vec& b, double s) noexcept {
    Vec r(a.dim());
    for (int i = 0; i < a.dim(); ++i) r[i] = (1.0 - s) * a[i] + s * b[i];
    return r;
}

void require_dim(const Vec& v, int dim, const char* what) {
    if (v.dim() != dim) {
        throw Error(std::string(what) + ": dimension mismatch (got " + std::to_string(v.dim()) + ", expected " +
                    std::to_string(dim) + ")");
    }
}

std::string to_string(const Vec& v) {
    std::string out = "(";
    char buf[32];
    for (int i = 0; i < v.dim(); ++i) {
        if (i) out += ", ";
        auto res = std::to_chars(buf, buf + sizeof(buf), v[i]);
        out.append(buf, res.ptr);
    }
    return out + ")";
}

}  // namespace normbis
