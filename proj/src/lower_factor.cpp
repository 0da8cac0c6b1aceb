#include "nichol/lower_factor.hpp"

#include <cmath>

#include "nichol/errors.hpp"

namespace nichol {

namespace {

double checked_diag(const LowerFactor& l, index_t row) {
    double d = l.diag(row);
    if (d == 0.0 || !std::isfinite(d)) throw SingularFactorError(row);
    return d;
}

}  // namespace

std::vector<double> lower_solve(const LowerFactor& l, std::span<const double> b) {
    const index_t n = l.n();
    if (static_cast<index_t>(b.size()) != n)
        throw DimensionError("lower_solve: vector length does not match factor dimension");
    std::vector<double> x(b.begin(), b.end());
    for (index_t i = 0; i < n; ++i) {
        double s = x[static_cast<size_t>(i)];
        const index_t diag = l.diag_pos(i);
        for (index_t k = l.pattern.row_ptr[i]; k < diag; ++k)
            s -= l.values[static_cast<size_t>(k)] *
                 x[static_cast<size_t>(l.pattern.col_idx[static_cast<size_t>(k)])];
        x[static_cast<size_t>(i)] = s / checked_diag(l, i);
    }
    return x;
}

std::vector<double> upper_solve_transposed(const LowerFactor& l, std::span<const double> b) {
    const index_t n = l.n();
    if (static_cast<index_t>(b.size()) != n)
        throw DimensionError("upper_solve_transposed: vector length does not match factor");
    std::vector<double> x(b.begin(), b.end());
    // Column i of L^T is row i of L; sweep unknowns from the last one back.
    for (index_t i = n - 1; i >= 0; --i) {
        x[static_cast<size_t>(i)] /= checked_diag(l, i);
        const double xi = x[static_cast<size_t>(i)];
        const index_t diag = l.diag_pos(i);
        for (index_t k = l.pattern.row_ptr[i]; k < diag; ++k)
            x[static_cast<size_t>(l.pattern.col_idx[static_cast<size_t>(k)])] -=
                l.values[static_cast<size_t>(k)] * xi;
    }
    return x;
}

CsrMatrix csr_from_factor(const LowerFactor& l) {
    CsrMatrix a;
    a.n = l.n();
    a.row_ptr = l.pattern.row_ptr;
    a.col_idx = l.pattern.col_idx;
    a.values = l.values;
    return a;
}

}  // namespace nichol
