#include "nichol/ichol.hpp"

#include <cmath>

#include "nichol/errors.hpp"
#include "nichol/kernels.hpp"

namespace nichol {

LowerFactor ichol0(const CsrMatrix& a) {
    LowerFactor l;
    l.pattern = extract_lower_pattern(a);
    const auto& rp = l.pattern.row_ptr;
    const auto& ci = l.pattern.col_idx;

    // Lower-triangle values of A aligned with the pattern.
    std::vector<double> alow;
    alow.reserve(ci.size());
    for (index_t i = 0; i < a.n; ++i)
        for (index_t k = a.row_ptr[i]; k < a.row_ptr[i + 1] && a.col_idx[k] <= i; ++k)
            alow.push_back(a.values[k]);

    std::vector<double>& lv = l.values;
    lv.assign(ci.size(), 0.0);

    for (index_t i = 0; i < a.n; ++i) {
        const index_t row_begin = rp[i];
        const index_t diag = rp[i + 1] - 1;
        for (index_t kk = row_begin; kk < diag; ++kk) {
            const index_t j = ci[static_cast<size_t>(kk)];
            // sparse dot of L rows i and j over shared columns < j
            double dot = 0.0;
            index_t p = row_begin;
            index_t q = rp[j];
            const index_t qend = rp[j + 1] - 1;
            while (p < kk && q < qend) {
                const index_t cp = ci[static_cast<size_t>(p)];
                const index_t cq = ci[static_cast<size_t>(q)];
                if (cp == cq) {
                    dot += lv[static_cast<size_t>(p)] * lv[static_cast<size_t>(q)];
                    ++p;
                    ++q;
                } else if (cp < cq) {
                    ++p;
                } else {
                    ++q;
                }
            }
            lv[static_cast<size_t>(kk)] =
                (alow[static_cast<size_t>(kk)] - dot) / lv[static_cast<size_t>(rp[j + 1] - 1)];
        }
        double pivot = alow[static_cast<size_t>(diag)];
        for (index_t k = row_begin; k < diag; ++k)
            pivot -= lv[static_cast<size_t>(k)] * lv[static_cast<size_t>(k)];
        if (pivot <= 0.0 || !std::isfinite(pivot)) throw BreakdownError(i, pivot);
        lv[static_cast<size_t>(diag)] = std::sqrt(pivot);
    }
    return l;
}

}  // namespace nichol
