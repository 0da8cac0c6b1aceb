#pragma once

#include <span>
#include <utility>
#include <vector>

#include "nichol/csr.hpp"

namespace nichol {

/// y = A x.
std::vector<double> spmv(const CsrMatrix& a, std::span<const double> x);

/// Positions (i, j) of `a` with j <= i. Every row must contain its diagonal;
/// throws StructureError naming the first row that does not.
SparsityPattern extract_lower_pattern(const CsrMatrix& a);

/// P A P^T with rows re-sorted by column.
CsrMatrix symmetric_permute(const CsrMatrix& a, const Permutation& p);

/// (P x)[perm[i]] = x[i].
std::vector<double> permute_vector(const Permutation& p, std::span<const double> x);

/// (P^{-1} x)[i] = x[perm[i]].
std::vector<double> inverse_permute_vector(const Permutation& p, std::span<const double> x);

/// D^{-1/2} A D^{-1/2} with D = diag(A). Scaled diagonals are assigned 1.0
/// exactly. Throws NotPositiveDiagonalError if any diagonal is <= 0 or absent.
std::pair<CsrMatrix, ScalingInfo> jacobi_scale(const CsrMatrix& a);

/// A + shift * diag(diag(A)): each diagonal entry multiplied by (1 + shift).
CsrMatrix diagonal_shift(const CsrMatrix& a, double shift);

/// True iff |a_ii| >= sum_{j != i} |a_ij| for every row.
bool check_sdd(const CsrMatrix& a);

}  // namespace nichol
