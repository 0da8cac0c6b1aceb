// Independent reference implementations the tests check the library against.
// Everything here works on dense arrays or plain loops and deliberately does
// not call the code paths under test.

#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "nichol/csr.hpp"
#include "nichol/dense.hpp"

namespace oracle {

using nichol::CsrMatrix;
using nichol::DenseMatrix;
using nichol::index_t;
using nichol::SparsityPattern;

inline std::vector<double> dense_spmv(const DenseMatrix& a, const std::vector<double>& x) {
    std::vector<double> y(static_cast<size_t>(a.n), 0.0);
    for (index_t i = 0; i < a.n; ++i)
        for (index_t j = 0; j < a.n; ++j) y[static_cast<size_t>(i)] += a.at(i, j) * x[static_cast<size_t>(j)];
    return y;
}

inline std::vector<double> dense_forward_substitution(const DenseMatrix& l,
                                                      const std::vector<double>& b) {
    std::vector<double> x(b);
    for (index_t i = 0; i < l.n; ++i) {
        for (index_t j = 0; j < i; ++j) x[static_cast<size_t>(i)] -= l.at(i, j) * x[static_cast<size_t>(j)];
        x[static_cast<size_t>(i)] /= l.at(i, i);
    }
    return x;
}

inline std::vector<double> dense_backward_substitution_transposed(const DenseMatrix& l,
                                                                  const std::vector<double>& b) {
    // solves L^T x = b
    std::vector<double> x(b);
    for (index_t i = l.n - 1; i >= 0; --i) {
        for (index_t j = i + 1; j < l.n; ++j) x[static_cast<size_t>(i)] -= l.at(j, i) * x[static_cast<size_t>(j)];
        x[static_cast<size_t>(i)] /= l.at(i, i);
    }
    return x;
}

/// The zero-fill incomplete Cholesky recurrence replayed on dense arrays with
/// fill discarded: updates only positions inside the pattern.
struct Ic0Replay {
    bool broke = false;
    index_t row = -1;
    double pivot = 0.0;
    DenseMatrix factor;
};

inline Ic0Replay ic0_dense_replay(const DenseMatrix& a, const SparsityPattern& p) {
    const index_t n = a.n;
    std::vector<char> in_pattern(static_cast<size_t>(n) * n, 0);
    for (index_t i = 0; i < n; ++i)
        for (index_t k = p.row_ptr[i]; k < p.row_ptr[i + 1]; ++k)
            in_pattern[static_cast<size_t>(i) * n + p.col_idx[static_cast<size_t>(k)]] = 1;
    auto stored = [&](index_t i, index_t j) { return in_pattern[static_cast<size_t>(i) * n + j] != 0; };

    Ic0Replay out;
    out.factor = DenseMatrix(n);
    DenseMatrix& l = out.factor;
    for (index_t i = 0; i < n; ++i) {
        for (index_t j = 0; j < i; ++j) {
            if (!stored(i, j)) continue;
            double s = a.at(i, j);
            for (index_t k = 0; k < j; ++k)
                if (stored(i, k) && stored(j, k)) s -= l.at(i, k) * l.at(j, k);
            l.at(i, j) = s / l.at(j, j);
        }
        double pivot = a.at(i, i);
        for (index_t k = 0; k < i; ++k)
            if (stored(i, k)) pivot -= l.at(i, k) * l.at(i, k);
        if (pivot <= 0.0 || !std::isfinite(pivot)) {
            out.broke = true;
            out.row = i;
            out.pivot = pivot;
            return out;
        }
        l.at(i, i) = std::sqrt(pivot);
    }
    return out;
}

inline Eigen::MatrixXd to_eigen(const CsrMatrix& a) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(a.n, a.n);
    for (index_t i = 0; i < a.n; ++i)
        for (index_t k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k)
            m(i, a.col_idx[k]) += a.values[k];
    return m;
}

inline std::vector<double> eigenvalues_of(const CsrMatrix& a) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(to_eigen(a), Eigen::EigenvaluesOnly);
    std::vector<double> out(es.eigenvalues().data(), es.eigenvalues().data() + a.n);
    return out;
}

inline std::vector<double> dense_solve(const CsrMatrix& a, const std::vector<double>& b) {
    Eigen::Map<const Eigen::VectorXd> bv(b.data(), static_cast<Eigen::Index>(b.size()));
    Eigen::VectorXd x = to_eigen(a).fullPivLu().solve(bv);
    return std::vector<double>(x.data(), x.data() + x.size());
}

/// Symmetric, strictly diagonally dominant (hence SPD) matrix with a random
/// sparse structure. `dominance` scales the diagonal margin; values below 1
/// progressively break dominance and eventually positive definiteness.
inline CsrMatrix random_symmetric_csr(index_t n, index_t extra_per_row, std::uint64_t seed,
                                      double dominance = 1.05) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<index_t> pick(0, n - 1);
    std::uniform_real_distribution<double> val(-0.5, 0.5);

    std::vector<std::vector<std::pair<index_t, double>>> rows(static_cast<size_t>(n));
    for (index_t i = 0; i < n; ++i) {
        for (index_t e = 0; e < extra_per_row; ++e) {
            index_t j = pick(rng);
            if (j == i) continue;
            double v = val(rng);
            rows[static_cast<size_t>(i)].emplace_back(j, v);
            rows[static_cast<size_t>(j)].emplace_back(i, v);
        }
    }
    CsrMatrix a;
    a.n = n;
    a.symmetric = true;
    a.row_ptr.assign(static_cast<size_t>(n) + 1, 0);
    for (index_t i = 0; i < n; ++i) {
        auto& row = rows[static_cast<size_t>(i)];
        std::sort(row.begin(), row.end());
        // merge duplicates, then set the diagonal from the off-diagonal mass
        std::vector<std::pair<index_t, double>> merged;
        for (auto& [j, v] : row) {
            if (!merged.empty() && merged.back().first == j)
                merged.back().second += v;
            else
                merged.emplace_back(j, v);
        }
        double off = 0.0;
        for (auto& [j, v] : merged) off += std::abs(v);
        merged.emplace_back(i, dominance * off + 0.1);
        std::sort(merged.begin(), merged.end());
        for (auto& [j, v] : merged) {
            a.col_idx.push_back(j);
            a.values.push_back(v);
        }
        a.row_ptr[static_cast<size_t>(i) + 1] = static_cast<index_t>(a.col_idx.size());
    }
    return a;
}

inline std::vector<double> random_vector(index_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> val(-1.0, 1.0);
    std::vector<double> x(static_cast<size_t>(n));
    for (double& xi : x) xi = val(rng);
    return x;
}

/// Random well-conditioned lower factor on a given lower pattern: diagonal in
/// [1, 2], off-diagonals in [-0.5, 0.5].
inline nichol::LowerFactor random_lower_factor(const SparsityPattern& p, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> off(-0.5, 0.5);
    std::uniform_real_distribution<double> diag(1.0, 2.0);
    nichol::LowerFactor l;
    l.pattern = p;
    l.values.resize(static_cast<size_t>(p.nnz()));
    for (index_t i = 0; i < p.n; ++i)
        for (index_t k = p.row_ptr[i]; k < p.row_ptr[i + 1]; ++k)
            l.values[static_cast<size_t>(k)] =
                (p.col_idx[static_cast<size_t>(k)] == i) ? diag(rng) : off(rng);
    return l;
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0.0;
    for (size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

}  // namespace oracle
