#pragma once

#include <span>
#include <vector>

#include "nichol/csr.hpp"

namespace nichol {

/// Lower-triangular factor with a fixed sparsity pattern. The pattern is a
/// lower pattern (diagonal last in each row); values align index-for-index
/// with pattern.col_idx. ichol0 guarantees positive diagonals; trained
/// factors may carry any nonzero diagonal.
struct LowerFactor {
    SparsityPattern pattern;
    std::vector<double> values;

    index_t n() const { return pattern.n; }
    index_t nnz() const { return pattern.nnz(); }

    /// Index of the diagonal entry of `row` (last stored entry of the row).
    index_t diag_pos(index_t row) const { return pattern.row_ptr[row + 1] - 1; }
    double diag(index_t row) const { return values[diag_pos(row)]; }
};

/// Solves L x = b by forward substitution.
/// Throws SingularFactorError on a zero or non-finite diagonal.
std::vector<double> lower_solve(const LowerFactor& l, std::span<const double> b);

/// Solves L^T x = b by backward substitution over the same stored pattern.
std::vector<double> upper_solve_transposed(const LowerFactor& l, std::span<const double> b);

/// Full CSR view of the factor (lower triangle entries only), for export.
CsrMatrix csr_from_factor(const LowerFactor& l);

}  // namespace nichol
