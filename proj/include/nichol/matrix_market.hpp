#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "nichol/csr.hpp"
#include "nichol/lower_factor.hpp"

namespace nichol {

/// Parses Matrix Market coordinate format (real, general or symmetric).
/// Symmetric inputs are expanded to full storage with the `symmetric` flag
/// recorded; duplicate coordinate entries are summed; rows are sorted by
/// column. Throws ParseError (with line number) on malformed input,
/// non-square dimensions, out-of-range indices, or complex/pattern fields.
CsrMatrix parse_matrix_market(std::istream& in);
CsrMatrix parse_matrix_market(const std::string& text);
CsrMatrix read_matrix_market_file(const std::filesystem::path& path);

/// Writes coordinate format with 1-based indices. Matrices flagged symmetric
/// are emitted as lower-triangle storage under a symmetric header; values are
/// printed with enough digits to round-trip bit-exactly.
void write_matrix_market(const CsrMatrix& a, std::ostream& out);
void write_matrix_market_file(const CsrMatrix& a, const std::filesystem::path& path);

/// Lower factors are emitted as general coordinate storage (they are
/// triangular, not symmetric).
void write_matrix_market(const LowerFactor& l, std::ostream& out);
void write_matrix_market_file(const LowerFactor& l, const std::filesystem::path& path);

}  // namespace nichol
