#pragma once

#include <functional>
#include <span>

#include "gmpea/matrix.hpp"

// Batched branch-free primitives: Heaviside masks, mask-select and row-wise
// batched application. All downstream selection logic is built from these.

namespace gmpea {

/// Elementwise step mask: out[i] = 1 iff a[i] >= 0. Throws on non-finite input.
Mask heaviside(const Matrix& a);

/// Row-granular select: row i of the result is row i of `a` when cond[i] = 1,
/// otherwise row i of `b`. Identity: Y = H(C) (*) A + (1 - H(C)) (*) B.
Matrix masked_select(const Mask& cond, const Matrix& a, const Matrix& b);

/// Elementwise variant over equally shaped matrices, cond has rows*cols bits.
Matrix masked_select_elems(const Mask& cond, const Matrix& a, const Matrix& b);

/// Applies f to every row independently; result row i is f(row i). Semantics
/// are those of the sequential loop. A throwing f aborts the whole map with
/// the row index attached.
using RowFn = std::function<void(std::span<const double> in, std::span<double> out)>;
Matrix row_map(const RowFn& f, const Matrix& batch, std::size_t out_cols);

}  // namespace gmpea
