#pragma once

#include "nichol/csr.hpp"
#include "nichol/lower_factor.hpp"

namespace nichol {

/// Zero-fill incomplete Cholesky on the lower pattern of `a`, computed
/// up-looking row by row:
///
///   l_ij = (a_ij - sum_{k<j, (i,k) and (j,k) stored} l_ik l_jk) / l_jj
///   l_ii = sqrt(a_ii - sum_{k<i, (i,k) stored} l_ik^2)
///
/// Updates are restricted to stored positions; all fill is discarded.
/// Throws BreakdownError (row, pivot) the first time a pivot is <= 0.
LowerFactor ichol0(const CsrMatrix& a);

}  // namespace nichol
