#include "nichol/dense.hpp"

#include <cmath>

#include "nichol/errors.hpp"

namespace nichol {

DenseMatrix chol_dense(const DenseMatrix& a) {
    const index_t n = a.n;
    DenseMatrix l(n);
    for (index_t i = 0; i < n; ++i) {
        for (index_t j = 0; j <= i; ++j) {
            double s = a.at(i, j);
            for (index_t k = 0; k < j; ++k) s -= l.at(i, k) * l.at(j, k);
            if (i == j) {
                if (s <= 0.0 || !std::isfinite(s)) throw NotSpdError(i, s);
                l.at(i, i) = std::sqrt(s);
            } else {
                l.at(i, j) = s / l.at(j, j);
            }
        }
    }
    return l;
}

DenseMatrix to_dense(const CsrMatrix& a) {
    DenseMatrix d(a.n);
    for (index_t i = 0; i < a.n; ++i)
        for (index_t k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k)
            d.at(i, a.col_idx[k]) += a.values[k];
    return d;
}

LowerFactor factor_from_dense_lower(const DenseMatrix& l) {
    LowerFactor f;
    f.pattern.n = l.n;
    f.pattern.row_ptr.assign(static_cast<size_t>(l.n) + 1, 0);
    for (index_t i = 0; i < l.n; ++i) {
        for (index_t j = 0; j <= i; ++j) {
            f.pattern.col_idx.push_back(j);
            f.values.push_back(l.at(i, j));
        }
        f.pattern.row_ptr[static_cast<size_t>(i) + 1] = static_cast<index_t>(f.pattern.col_idx.size());
    }
    return f;
}

}  // namespace nichol
