#include "nichol/ordering.hpp"

#include <algorithm>
#include <vector>

namespace nichol {

namespace {

index_t off_diagonal_degree(const CsrMatrix& a, index_t v) {
    index_t deg = 0;
    for (index_t k = a.row_ptr[v]; k < a.row_ptr[v + 1]; ++k)
        if (a.col_idx[k] != v) ++deg;
    return deg;
}

}  // namespace

Permutation rcm_order(const CsrMatrix& a) {
    const index_t n = a.n;
    std::vector<index_t> degree(static_cast<size_t>(n));
    for (index_t v = 0; v < n; ++v) degree[static_cast<size_t>(v)] = off_diagonal_degree(a, v);

    // Component roots: the minimum-degree vertex of each component, ties to
    // the smaller index. Components are then ordered by root index.
    std::vector<index_t> component(static_cast<size_t>(n), -1);
    std::vector<index_t> roots;
    {
        std::vector<index_t> queue;
        for (index_t s = 0; s < n; ++s) {
            if (component[static_cast<size_t>(s)] >= 0) continue;
            index_t id = static_cast<index_t>(roots.size());
            index_t best = s;
            queue.assign(1, s);
            component[static_cast<size_t>(s)] = id;
            for (size_t qi = 0; qi < queue.size(); ++qi) {
                index_t v = queue[qi];
                if (degree[static_cast<size_t>(v)] < degree[static_cast<size_t>(best)] ||
                    (degree[static_cast<size_t>(v)] == degree[static_cast<size_t>(best)] &&
                     v < best))
                    best = v;
                for (index_t k = a.row_ptr[v]; k < a.row_ptr[v + 1]; ++k) {
                    index_t w = a.col_idx[k];
                    if (w != v && component[static_cast<size_t>(w)] < 0) {
                        component[static_cast<size_t>(w)] = id;
                        queue.push_back(w);
                    }
                }
            }
            roots.push_back(best);
        }
    }
    std::sort(roots.begin(), roots.end());

    // Cuthill-McKee over each component, then reverse the whole sequence.
    std::vector<index_t> order;
    order.reserve(static_cast<size_t>(n));
    std::vector<bool> placed(static_cast<size_t>(n), false);
    std::vector<index_t> neighbors;
    for (index_t root : roots) {
        placed[static_cast<size_t>(root)] = true;
        size_t head = order.size();
        order.push_back(root);
        while (head < order.size()) {
            index_t v = order[head++];
            neighbors.clear();
            for (index_t k = a.row_ptr[v]; k < a.row_ptr[v + 1]; ++k) {
                index_t w = a.col_idx[k];
                if (w != v && !placed[static_cast<size_t>(w)]) {
                    placed[static_cast<size_t>(w)] = true;
                    neighbors.push_back(w);
                }
            }
            std::sort(neighbors.begin(), neighbors.end(), [&](index_t l, index_t r) {
                if (degree[static_cast<size_t>(l)] != degree[static_cast<size_t>(r)])
                    return degree[static_cast<size_t>(l)] < degree[static_cast<size_t>(r)];
                return l < r;
            });
            order.insert(order.end(), neighbors.begin(), neighbors.end());
        }
    }
    std::reverse(order.begin(), order.end());

    Permutation p;
    p.inv = std::move(order);  // inv[new] = old
    p.perm.resize(static_cast<size_t>(n));
    for (index_t k = 0; k < n; ++k) p.perm[static_cast<size_t>(p.inv[static_cast<size_t>(k)])] = k;
    return p;
}

index_t bandwidth(const CsrMatrix& a) {
    index_t bw = 0;
    for (index_t i = 0; i < a.n; ++i)
        for (index_t k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k)
            bw = std::max(bw, std::abs(i - a.col_idx[k]));
    return bw;
}

}  // namespace nichol
