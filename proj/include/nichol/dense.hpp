#pragma once

#include <vector>

#include "nichol/csr.hpp"
#include "nichol/lower_factor.hpp"

namespace nichol {

/// Small square dense matrix, row-major. Oracle scale (n <= a few hundred).
struct DenseMatrix {
    index_t n = 0;
    std::vector<double> data;

    DenseMatrix() = default;
    explicit DenseMatrix(index_t n_) : n(n_), data(static_cast<size_t>(n_) * n_, 0.0) {}

    double& at(index_t i, index_t j) { return data[static_cast<size_t>(i) * n + j]; }
    double at(index_t i, index_t j) const { return data[static_cast<size_t>(i) * n + j]; }
};

/// Full Cholesky factor (lower). Throws NotSpdError if any pivot is <= 0.
DenseMatrix chol_dense(const DenseMatrix& a);

DenseMatrix to_dense(const CsrMatrix& a);

/// Lower triangle of a dense matrix as a LowerFactor with the full lower
/// pattern. Used to apply a dense Cholesky factor as a preconditioner.
LowerFactor factor_from_dense_lower(const DenseMatrix& l);

}  // namespace nichol
