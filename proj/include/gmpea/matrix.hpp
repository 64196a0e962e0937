#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace gmpea {

/// Dense row-major matrix of 64-bit floats. The workhorse container for
/// decision variables, objectives and constraint values.
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c, double fill = 0.0)
        : rows(r), cols(c), data(r * c, fill) {}

    double& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
    double at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }

    std::span<double> row(std::size_t r) { return {data.data() + r * cols, cols}; }
    std::span<const double> row(std::size_t r) const {
        return {data.data() + r * cols, cols};
    }

    bool same_shape(const Matrix& o) const { return rows == o.rows && cols == o.cols; }
};

/// Element mask; every entry is exactly 0 or 1.
struct Mask {
    std::vector<std::uint8_t> bits;

    Mask() = default;
    explicit Mask(std::size_t n, std::uint8_t fill = 0) : bits(n, fill) {}

    std::size_t size() const { return bits.size(); }
    std::uint8_t operator[](std::size_t i) const { return bits[i]; }
    std::uint8_t& operator[](std::size_t i) { return bits[i]; }
};

/// Signed index vector; entries are either valid indices in [0, N) or the
/// sentinel -1 marking a replacement slot.
struct IndexVector {
    static constexpr std::int64_t sentinel = -1;
    std::vector<std::int64_t> values;

    IndexVector() = default;
    explicit IndexVector(std::size_t n, std::int64_t fill = 0) : values(n, fill) {}

    std::size_t size() const { return values.size(); }
    std::int64_t operator[](std::size_t i) const { return values[i]; }
    std::int64_t& operator[](std::size_t i) { return values[i]; }
};

}  // namespace gmpea
