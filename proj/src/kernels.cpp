#include "nichol/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nichol/errors.hpp"

namespace nichol {

std::vector<double> spmv(const CsrMatrix& a, std::span<const double> x) {
    if (static_cast<index_t>(x.size()) != a.n)
        throw DimensionError("spmv: vector length " + std::to_string(x.size()) +
                             " does not match matrix dimension " + std::to_string(a.n));
    std::vector<double> y(static_cast<size_t>(a.n));
    for (index_t i = 0; i < a.n; ++i) {
        double sum = 0.0;
        for (index_t k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k)
            sum += a.values[k] * x[static_cast<size_t>(a.col_idx[k])];
        y[static_cast<size_t>(i)] = sum;
    }
    return y;
}

SparsityPattern extract_lower_pattern(const CsrMatrix& a) {
    SparsityPattern p;
    p.n = a.n;
    p.row_ptr.assign(static_cast<size_t>(a.n) + 1, 0);
    for (index_t i = 0; i < a.n; ++i) {
        bool has_diag = false;
        for (index_t k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k) {
            if (a.col_idx[k] > i) break;
            if (a.col_idx[k] == i) has_diag = true;
            p.col_idx.push_back(a.col_idx[k]);
        }
        if (!has_diag)
            throw StructureError("missing diagonal entry at row " + std::to_string(i));
        p.row_ptr[static_cast<size_t>(i) + 1] = static_cast<index_t>(p.col_idx.size());
    }
    return p;
}

CsrMatrix symmetric_permute(const CsrMatrix& a, const Permutation& p) {
    if (p.size() != a.n)
        throw DimensionError("symmetric_permute: permutation size does not match matrix");
    CsrMatrix b;
    b.n = a.n;
    b.symmetric = a.symmetric;
    b.row_ptr.assign(static_cast<size_t>(a.n) + 1, 0);

    // counts of the new rows
    for (index_t i = 0; i < a.n; ++i)
        b.row_ptr[static_cast<size_t>(p.perm[i]) + 1] += a.row_ptr[i + 1] - a.row_ptr[i];
    for (index_t i = 0; i < a.n; ++i)
        b.row_ptr[static_cast<size_t>(i) + 1] += b.row_ptr[static_cast<size_t>(i)];

    b.col_idx.resize(static_cast<size_t>(a.nnz()));
    b.values.resize(static_cast<size_t>(a.nnz()));
    std::vector<index_t> fill(b.row_ptr.begin(), b.row_ptr.end() - 1);
    for (index_t i = 0; i < a.n; ++i) {
        index_t ni = p.perm[i];
        for (index_t k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k) {
            index_t pos = fill[static_cast<size_t>(ni)]++;
            b.col_idx[static_cast<size_t>(pos)] = p.perm[a.col_idx[k]];
            b.values[static_cast<size_t>(pos)] = a.values[k];
        }
    }
    // re-sort each new row by column
    std::vector<std::pair<index_t, double>> row;
    for (index_t i = 0; i < b.n; ++i) {
        row.clear();
        for (index_t k = b.row_ptr[i]; k < b.row_ptr[i + 1]; ++k)
            row.emplace_back(b.col_idx[static_cast<size_t>(k)], b.values[static_cast<size_t>(k)]);
        std::sort(row.begin(), row.end(),
                  [](const auto& l, const auto& r) { return l.first < r.first; });
        for (index_t k = b.row_ptr[i]; k < b.row_ptr[i + 1]; ++k) {
            b.col_idx[static_cast<size_t>(k)] = row[static_cast<size_t>(k - b.row_ptr[i])].first;
            b.values[static_cast<size_t>(k)] = row[static_cast<size_t>(k - b.row_ptr[i])].second;
        }
    }
    return b;
}

std::vector<double> permute_vector(const Permutation& p, std::span<const double> x) {
    if (p.size() != static_cast<index_t>(x.size()))
        throw DimensionError("permute_vector: size mismatch");
    std::vector<double> y(x.size());
    for (size_t i = 0; i < x.size(); ++i) y[static_cast<size_t>(p.perm[i])] = x[i];
    return y;
}

std::vector<double> inverse_permute_vector(const Permutation& p, std::span<const double> x) {
    if (p.size() != static_cast<index_t>(x.size()))
        throw DimensionError("inverse_permute_vector: size mismatch");
    std::vector<double> y(x.size());
    for (size_t i = 0; i < x.size(); ++i) y[i] = x[static_cast<size_t>(p.perm[i])];
    return y;
}

std::pair<CsrMatrix, ScalingInfo> jacobi_scale(const CsrMatrix& a) {
    ScalingInfo info;
    info.d_inv_sqrt.resize(static_cast<size_t>(a.n));
    for (index_t i = 0; i < a.n; ++i) {
        double d = a.at(i, i);
        if (!(d > 0.0) || !std::isfinite(d)) throw NotPositiveDiagonalError(i, d);
        info.d_inv_sqrt[static_cast<size_t>(i)] = 1.0 / std::sqrt(d);
    }
    CsrMatrix b = a;
    for (index_t i = 0; i < a.n; ++i) {
        for (index_t k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k) {
            index_t j = a.col_idx[k];
            b.values[static_cast<size_t>(k)] =
                (i == j) ? 1.0
                         : a.values[k] * info.d_inv_sqrt[static_cast<size_t>(i)] *
                               info.d_inv_sqrt[static_cast<size_t>(j)];
        }
    }
    return {std::move(b), std::move(info)};
}

CsrMatrix diagonal_shift(const CsrMatrix& a, double shift) {
    if (!std::isfinite(shift)) throw ConfigError("diagonal_shift: shift must be finite");
    CsrMatrix b = a;
    for (index_t i = 0; i < a.n; ++i) {
        index_t pos = a.find(i, i);
        if (pos < 0) throw StructureError("missing diagonal entry at row " + std::to_string(i));
        b.values[static_cast<size_t>(pos)] = a.values[static_cast<size_t>(pos)] * (1.0 + shift);
    }
    return b;
}

bool check_sdd(const CsrMatrix& a) {
    for (index_t i = 0; i < a.n; ++i) {
        double diag = 0.0;
        double off = 0.0;
        for (index_t k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k) {
            if (a.col_idx[k] == i)
                diag = std::abs(a.values[k]);
            else
                off += std::abs(a.values[k]);
        }
        if (diag < off) return false;
    }
    return true;
}

}  // namespace nichol
