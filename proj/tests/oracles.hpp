// Test-only reference implementations, kept independent of the library
// code paths they check.
#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <vector>

#include "pubcausal/adjustment.hpp"
#include "pubcausal/collab.hpp"

namespace oracles {

// Dense-matrix PageRank: build the full transition matrix (rows without
// collaborators spread uniformly), form G = d*M + (1-d)/N and power-iterate.
inline std::map<std::string, double> pagerank_dense(const pubcausal::YearGraph& graph,
                                                    double damping = 0.85, int iters = 20000) {
    const size_t n = graph.node_count();
    std::map<std::string, double> out;
    if (n == 0) return out;
    std::vector<std::vector<double>> M(n, std::vector<double>(n, 0.0));
    for (size_t u = 0; u < n; ++u) {
        double w = 0.0;
        for (const auto& [v, m] : graph.adjacency[u]) w += m;
        if (w == 0.0) {
            for (size_t v = 0; v < n; ++v) M[u][v] = 1.0 / static_cast<double>(n);
        } else {
            for (const auto& [v, m] : graph.adjacency[u]) M[u][v] = m / w;
        }
    }
    std::vector<double> pr(n, 1.0 / static_cast<double>(n)), next(n, 0.0);
    for (int it = 0; it < iters; ++it) {
        double delta = 0.0;
        for (size_t v = 0; v < n; ++v) {
            double s = 0.0;
            for (size_t u = 0; u < n; ++u) s += pr[u] * M[u][v];
            next[v] = (1.0 - damping) / static_cast<double>(n) + damping * s;
        }
        for (size_t v = 0; v < n; ++v) delta += std::fabs(next[v] - pr[v]);
        pr = next;
        if (delta < 1e-15) break;
    }
    for (size_t u = 0; u < n; ++u) out[graph.nodes[u]] = pr[u];
    return out;
}

// Exhaustive evaluation of the adjustment sum from the empirical joint
// distribution over all columns.
inline double do_effect_brute_force(const pubcausal::DiscreteTable& data,
                                    const std::vector<size_t>& parent_columns, size_t x_col,
                                    double x_val, size_t y_col, double y_val) {
    const size_t n = data.row_count();
    // joint over (parents..., x, y) as value tuples
    std::map<std::vector<double>, size_t> joint;
    for (size_t r = 0; r < n; ++r) {
        std::vector<double> key;
        for (size_t pc : parent_columns) key.push_back(data.columns[pc][r]);
        key.push_back(data.columns[x_col][r]);
        key.push_back(data.columns[y_col][r]);
        joint[key] += 1;
    }
    // enumerate parent configurations from the joint support
    std::map<std::vector<double>, std::map<std::pair<double, double>, size_t>> by_z;
    for (const auto& [key, c] : joint) {
        std::vector<double> z(key.begin(), key.end() - 2);
        by_z[z][{key[key.size() - 2], key[key.size() - 1]}] += c;
    }
    double prob = 0.0;
    for (const auto& [z, cell] : by_z) {
        size_t nz = 0, nzx = 0, nzxy = 0, nzy = 0;
        for (const auto& [xy, c] : cell) {
            nz += c;
            if (xy.first == x_val) {
                nzx += c;
                if (xy.second == y_val) nzxy += c;
            }
            if (xy.second == y_val) nzy += c;
        }
        const double pz = static_cast<double>(nz) / static_cast<double>(n);
        if (nzx > 0) prob += pz * static_cast<double>(nzxy) / static_cast<double>(nzx);
        else prob += pz * static_cast<double>(nzy) / static_cast<double>(nz);
    }
    return prob;
}

// ---- linear-Gaussian structural equation fixtures ----

struct Sem {
    std::vector<std::string> variables;
    // column-major samples, one column per variable
    std::vector<std::vector<double>> columns;
    std::vector<std::pair<size_t, size_t>> true_edges;
};

inline Sem chain_sem(size_t n, uint64_t seed, double b1 = 0.8, double b2 = 0.8) {
    Sem sem;
    sem.variables = {"X", "Y", "Z"};
    sem.true_edges = {{0, 1}, {1, 2}};
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<double> x(n), y(n), z(n);
    for (size_t i = 0; i < n; ++i) {
        x[i] = gauss(rng);
        y[i] = b1 * x[i] + gauss(rng);
        z[i] = b2 * y[i] + gauss(rng);
    }
    sem.columns = {x, y, z};
    return sem;
}

inline Sem collider_sem(size_t n, uint64_t seed, double b1 = 0.8, double b2 = 0.8) {
    Sem sem;
    sem.variables = {"X", "Y", "Z"};
    sem.true_edges = {{0, 2}, {1, 2}};
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<double> x(n), y(n), z(n);
    for (size_t i = 0; i < n; ++i) {
        x[i] = gauss(rng);
        y[i] = gauss(rng);
        z[i] = b1 * x[i] + b2 * y[i] + gauss(rng);
    }
    sem.columns = {x, y, z};
    return sem;
}

inline Sem star_sem(size_t n, uint64_t seed) {
    Sem sem;
    sem.variables = {"X", "Y1", "Y2", "Y3"};
    sem.true_edges = {{0, 1}, {0, 2}, {0, 3}};
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<double> x(n);
    std::vector<std::vector<double>> y(3, std::vector<double>(n));
    for (size_t i = 0; i < n; ++i) {
        x[i] = gauss(rng);
        for (int k = 0; k < 3; ++k) y[k][i] = 0.8 * x[i] + gauss(rng);
    }
    sem.columns = {x, y[0], y[1], y[2]};
    return sem;
}

inline Sem independent_sem(size_t n, size_t p, uint64_t seed) {
    Sem sem;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (size_t j = 0; j < p; ++j) {
        sem.variables.push_back("V" + std::to_string(j));
        std::vector<double> col(n);
        for (size_t i = 0; i < n; ++i) col[i] = gauss(rng);
        sem.columns.push_back(std::move(col));
    }
    return sem;
}

// Random DAG over p nodes (edges respect a random topological order) with
// coefficients of magnitude in [0.5, 1.5] and unit noise.
inline Sem random_dag_sem(size_t n, size_t p, double edge_prob, uint64_t seed) {
    Sem sem;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::uniform_real_distribution<double> coef(0.5, 1.5);

    std::vector<size_t> order(p);
    for (size_t i = 0; i < p; ++i) order[i] = i;
    std::shuffle(order.begin(), order.end(), rng);

    std::vector<std::vector<double>> beta(p, std::vector<double>(p, 0.0));
    for (size_t a = 0; a < p; ++a) {
        for (size_t b = a + 1; b < p; ++b) {
            if (unif(rng) < edge_prob) {
                const double sign = unif(rng) < 0.5 ? -1.0 : 1.0;
                beta[order[a]][order[b]] = sign * coef(rng);
                sem.true_edges.push_back({order[a], order[b]});
            }
        }
    }
    sem.columns.assign(p, std::vector<double>(n, 0.0));
    for (size_t i = 0; i < n; ++i) {
        for (size_t a = 0; a < p; ++a) {
            const size_t v = order[a];
            double val = gauss(rng);
            for (size_t b = 0; b < a; ++b) {
                const size_t u = order[b];
                if (beta[u][v] != 0.0) val += beta[u][v] * sem.columns[u][i];
            }
            sem.columns[v][i] = val;
        }
    }
    for (size_t j = 0; j < p; ++j) sem.variables.push_back("V" + std::to_string(j));
    return sem;
}

}  // namespace oracles
