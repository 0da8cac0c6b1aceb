#pragma once

#include "nichol/csr.hpp"

namespace nichol {

/// Reverse Cuthill-McKee ordering of a structurally symmetric matrix.
///
/// Deterministic construction: components are processed in ascending index of
/// their minimum-degree root vertices; each component is BFS-ordered starting
/// from that root with neighbors visited in increasing-degree order; all ties
/// break toward the smaller original index. The Cuthill-McKee sequence is
/// then reversed.
Permutation rcm_order(const CsrMatrix& a);

/// max_i max_{j stored in row i} |i - j|; 0 for diagonal or empty matrices.
index_t bandwidth(const CsrMatrix& a);

}  // namespace nichol
