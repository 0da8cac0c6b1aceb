#pragma once

#include <cstdint>
#include <vector>

namespace nichol {

using index_t = std::int64_t;

/// Square sparse matrix in compressed-sparse-row form.
///
/// Invariants: row_ptr is non-decreasing with row_ptr[0] == 0 and
/// row_ptr[n] == nnz; within each row col_idx is strictly increasing and all
/// indices lie in [0, n). Storage is always full (both triangles);
/// `symmetric` records that the matrix came from symmetric Matrix Market
/// storage (or was built symmetric), which the writer uses to emit the lower
/// triangle only.
struct CsrMatrix {
    index_t n = 0;
    std::vector<index_t> row_ptr;
    std::vector<index_t> col_idx;
    std::vector<double> values;
    bool symmetric = false;

    index_t nnz() const { return static_cast<index_t>(col_idx.size()); }

    /// Position of the stored entry (row, col) in col_idx/values, or -1.
    index_t find(index_t row, index_t col) const;

    /// Value at (row, col); zero if the position is not stored.
    double at(index_t row, index_t col) const;
};

/// Nonzero positions without values. For lower patterns every entry satisfies
/// col <= row and each row ends with its diagonal.
struct SparsityPattern {
    index_t n = 0;
    std::vector<index_t> row_ptr;
    std::vector<index_t> col_idx;

    index_t nnz() const { return static_cast<index_t>(col_idx.size()); }

    bool operator==(const SparsityPattern&) const = default;
};

/// Bijection on [0, n): perm maps old index -> new index, inv is its inverse.
struct Permutation {
    std::vector<index_t> perm;
    std::vector<index_t> inv;

    index_t size() const { return static_cast<index_t>(perm.size()); }

    static Permutation identity(index_t n);
};

/// Diagonal of D^{-1/2} for a Jacobi-scaled matrix; all entries finite and > 0.
struct ScalingInfo {
    std::vector<double> d_inv_sqrt;
};

/// Throws StructureError if the CSR invariants above do not hold.
void validate_structure(const CsrMatrix& a);

}  // namespace nichol
