#include "pubcausal/mmpc.hpp"

#include <algorithm>

namespace pubcausal {

namespace {

// all subsets of `pool` with size <= max_size, smallest first
std::vector<std::vector<size_t>> subsets_up_to(const std::vector<size_t>& pool, size_t max_size) {
    std::vector<std::vector<size_t>> out = {{}};
    for (size_t k = 1; k <= std::min(max_size, pool.size()); ++k) {
        std::vector<size_t> idx(k);
        for (size_t i = 0; i < k; ++i) idx[i] = i;
        while (true) {
            std::vector<size_t> subset(k);
            for (size_t i = 0; i < k; ++i) subset[i] = pool[idx[i]];
            out.push_back(std::move(subset));
            size_t i = k;
            bool advanced = false;
            while (i-- > 0) {
                if (idx[i] + (k - i) < pool.size()) {
                    ++idx[i];
                    for (size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
                    advanced = true;
                    break;
                }
            }
            if (!advanced) break;
        }
    }
    return out;
}

// worst-case (maximum) p-value of candidate v vs target over conditioning
// subsets of cpc
double max_p_value(const CorrelationCache& data, size_t target, size_t v,
                   const std::vector<size_t>& cpc, const MmpcConfig& config) {
    double worst = 0.0;
    for (const auto& S : subsets_up_to(cpc, static_cast<size_t>(config.max_cond_size))) {
        const CiTestResult res = fisher_z_test(data, target, v, S, config.alpha);
        worst = std::max(worst, res.p_value);
        if (worst >= 1.0) break;
    }
    return worst;
}

std::vector<size_t> parents_children(const CorrelationCache& data, size_t target, size_t p,
                                     const MmpcConfig& config) {
    std::vector<size_t> cpc;
    std::vector<uint8_t> in_cpc(p, 0);

    // forward: add the candidate with the strongest minimum association
    while (true) {
        double best_p = 1.0;
        size_t best_v = p;
        for (size_t v = 0; v < p; ++v) {
            if (v == target || in_cpc[v]) continue;
            const double worst = max_p_value(data, target, v, cpc, config);
            if (worst < best_p) {
                best_p = worst;
                best_v = v;
            }
        }
        if (best_v == p || best_p > config.alpha) break;
        cpc.push_back(best_v);
        in_cpc[best_v] = 1;
    }

    // backward: drop members separated by some subset of the rest
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t k = 0; k < cpc.size(); ++k) {
            std::vector<size_t> rest;
            for (size_t m = 0; m < cpc.size(); ++m)
                if (m != k) rest.push_back(cpc[m]);
            if (max_p_value(data, target, cpc[k], rest, config) > config.alpha) {
                cpc.erase(cpc.begin() + static_cast<long>(k));
                changed = true;
                break;
            }
        }
    }
    return cpc;
}

}  // namespace

Cpdag mmpc(const std::vector<std::string>& variables, const CorrelationCache& data,
           const MmpcConfig& config) {
    const size_t p = variables.size();
    Cpdag g(variables);
    if (p < 2) return g;

    std::vector<std::vector<uint8_t>> selected(p, std::vector<uint8_t>(p, 0));
    for (size_t t = 0; t < p; ++t) {
        for (size_t v : parents_children(data, t, p, config)) selected[t][v] = 1;
    }
    for (size_t i = 0; i < p; ++i) {
        for (size_t j = i + 1; j < p; ++j) {
            if (selected[i][j] && selected[j][i]) g.add_undirected(i, j);
        }
    }
    return g;
}

}  // namespace pubcausal
