#include "gmpea/batch.hpp"

#include <cmath>
#include <string>

#include "gmpea/kernels.hpp"

namespace gmpea {

Mask heaviside(const Matrix& a) {
    for (double v : a.data)
        if (!std::isfinite(v)) throw std::invalid_argument("non-finite mask source");
    Mask m(a.data.size());
    kernels::heaviside(a.data.data(), m.bits.data(), a.data.size());
    return m;
}

Matrix masked_select(const Mask& cond, const Matrix& a, const Matrix& b) {
    if (!a.same_shape(b))
        throw std::invalid_argument("masked_select: shape mismatch between branches");
    if (cond.size() != a.rows)
        throw std::invalid_argument("masked_select: mask length != row count");
    // expand the row mask to element granularity and run the select kernel
    Mask em(a.data.size());
    for (std::size_t r = 0; r < a.rows; ++r) {
        std::uint8_t c = cond[r];
        for (std::size_t j = 0; j < a.cols; ++j) em[r * a.cols + j] = c;
    }
    Matrix out(a.rows, a.cols);
    kernels::select(em.bits.data(), a.data.data(), b.data.data(), out.data.data(),
                    out.data.size());
    return out;
}

Matrix masked_select_elems(const Mask& cond, const Matrix& a, const Matrix& b) {
    if (!a.same_shape(b))
        throw std::invalid_argument("masked_select: shape mismatch between branches");
    if (cond.size() != a.data.size())
        throw std::invalid_argument("masked_select: mask length != element count");
    Matrix out(a.rows, a.cols);
    kernels::select(cond.bits.data(), a.data.data(), b.data.data(), out.data.data(),
                    out.data.size());
    return out;
}

Matrix row_map(const RowFn& f, const Matrix& batch, std::size_t out_cols) {
    Matrix out(batch.rows, out_cols);
    for (std::size_t r = 0; r < batch.rows; ++r) {
        try {
            f(batch.row(r), out.row(r));
        } catch (const std::exception& e) {
            throw std::runtime_error("row_map failed at row " + std::to_string(r) +
                                     ": " + e.what());
        }
    }
    return out;
}

}  // namespace gmpea
