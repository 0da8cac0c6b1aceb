#include "nichol/csr.hpp"

#include <algorithm>
#include <string>

#include "nichol/errors.hpp"

namespace nichol {

index_t CsrMatrix::find(index_t row, index_t col) const {
    auto begin = col_idx.begin() + row_ptr[row];
    auto end = col_idx.begin() + row_ptr[row + 1];
    auto it = std::lower_bound(begin, end, col);
    if (it != end && *it == col) return it - col_idx.begin();
    return -1;
}

double CsrMatrix::at(index_t row, index_t col) const {
    index_t pos = find(row, col);
    return pos < 0 ? 0.0 : values[pos];
}

Permutation Permutation::identity(index_t n) {
    Permutation p;
    p.perm.resize(n);
    p.inv.resize(n);
    for (index_t i = 0; i < n; ++i) p.perm[i] = p.inv[i] = i;
    return p;
}

void validate_structure(const CsrMatrix& a) {
    if (a.n < 0) throw StructureError("negative dimension");
    if (static_cast<index_t>(a.row_ptr.size()) != a.n + 1)
        throw StructureError("row_ptr must have length n+1");
    if (a.row_ptr.front() != 0) throw StructureError("row_ptr[0] must be 0");
    if (a.row_ptr.back() != a.nnz()) throw StructureError("row_ptr[n] must equal nnz");
    if (a.values.size() != a.col_idx.size())
        throw StructureError("values and col_idx lengths differ");
    for (index_t i = 0; i < a.n; ++i) {
        if (a.row_ptr[i] > a.row_ptr[i + 1])
            throw StructureError("row_ptr not non-decreasing at row " + std::to_string(i));
        for (index_t k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k) {
            if (a.col_idx[k] < 0 || a.col_idx[k] >= a.n)
                throw StructureError("column index out of range in row " + std::to_string(i));
            if (k > a.row_ptr[i] && a.col_idx[k - 1] >= a.col_idx[k])
                throw StructureError("columns not strictly increasing in row " +
                                     std::to_string(i));
        }
    }
}

}  // namespace nichol
