#include "pubcausal/pc.hpp"

#include <algorithm>
#include <map>

namespace pubcausal {

namespace {

// enumerate k-subsets of `pool` in lexicographic order
bool next_combination(std::vector<size_t>& idx, size_t pool_size) {
    const size_t k = idx.size();
    if (k == 0) return false;
    size_t i = k;
    while (i-- > 0) {
        if (idx[i] + (k - i) < pool_size + 0) {
            ++idx[i];
            for (size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
            return true;
        }
    }
    return false;
}

template <typename Fn>
bool for_each_subset(const std::vector<size_t>& pool, size_t k, Fn&& fn) {
    if (k > pool.size()) return false;
    std::vector<size_t> idx(k);
    for (size_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
        std::vector<size_t> subset(k);
        for (size_t i = 0; i < k; ++i) subset[i] = pool[idx[i]];
        if (fn(subset)) return true;
        if (!next_combination(idx, pool.size())) return false;
    }
}

using PairKey = std::pair<size_t, size_t>;

PairKey make_key(size_t i, size_t j) { return {std::min(i, j), std::max(i, j)}; }

}  // namespace

Cpdag pc(const std::vector<std::string>& variables, const CorrelationCache& data,
         const PcConfig& config) {
    const size_t p = variables.size();
    Cpdag g(variables);
    if (p < 2) return g;

    for (size_t i = 0; i < p; ++i)
        for (size_t j = i + 1; j < p; ++j) g.add_undirected(i, j);

    std::map<PairKey, std::vector<size_t>> sepsets;

    for (int level = 0; level <= config.max_cond_size; ++level) {
        // adjacency snapshot taken once per level (stable variant)
        std::vector<std::vector<size_t>> snapshot(p);
        bool any_big_enough = false;
        for (size_t v = 0; v < p; ++v) {
            snapshot[v] = g.adjacencies(v);
            if (snapshot[v].size() > static_cast<size_t>(level)) any_big_enough = true;
        }
        if (!any_big_enough) break;

        for (size_t i = 0; i < p; ++i) {
            for (size_t j = i + 1; j < p; ++j) {
                if (!g.adjacent(i, j)) continue;
                bool removed = false;
                for (const size_t side : {i, j}) {
                    if (removed) break;
                    std::vector<size_t> pool;
                    for (size_t v : snapshot[side])
                        if (v != i && v != j) pool.push_back(v);
                    removed = for_each_subset(pool, static_cast<size_t>(level),
                                              [&](const std::vector<size_t>& S) {
                        const CiTestResult res = fisher_z_test(data, i, j, S, config.alpha);
                        if (res.independent) {
                            g.remove_all(i, j);
                            sepsets[make_key(i, j)] = S;
                            return true;
                        }
                        return false;
                    });
                    if (level == 0) break;  // the empty set is side-independent
                }
            }
        }
    }

    // v-structures: i - k - j with i, j nonadjacent and k outside sepset(i, j).
    // Candidate orientations are collected first; edges claimed in both
    // directions by conflicting triples stay undirected.
    std::vector<std::vector<uint8_t>> want(p, std::vector<uint8_t>(p, 0));
    for (size_t k = 0; k < p; ++k) {
        for (size_t i = 0; i < p; ++i) {
            if (i == k || !g.adjacent(i, k)) continue;
            for (size_t j = i + 1; j < p; ++j) {
                if (j == k || !g.adjacent(j, k) || g.adjacent(i, j)) continue;
                const auto it = sepsets.find(make_key(i, j));
                const std::vector<size_t> sep = it == sepsets.end() ? std::vector<size_t>{}
                                                                    : it->second;
                if (std::find(sep.begin(), sep.end(), k) == sep.end()) {
                    want[i][k] = 1;
                    want[j][k] = 1;
                }
            }
        }
    }
    for (size_t i = 0; i < p; ++i) {
        for (size_t j = 0; j < p; ++j) {
            if (want[i][j] && !want[j][i] && g.has_undirected(i, j)) g.add_directed(i, j);
        }
    }
    meek_closure(g);
    return g;
}

}  // namespace pubcausal
