#include "pubcausal/ges.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include "pubcausal/common.hpp"

namespace pubcausal {

BicScore::BicScore(Matrix covariance, size_t n_samples) : cov_(std::move(covariance)), n_(n_samples) {}

double BicScore::local(size_t v, const std::vector<size_t>& parents) const {
    const double n = static_cast<double>(n_);
    double rss_over_n = cov_(v, v);
    if (!parents.empty()) {
        const size_t k = parents.size();
        Matrix sub(k, k);
        std::vector<double> cv(k);
        for (size_t a = 0; a < k; ++a) {
            cv[a] = cov_(parents[a], v);
            for (size_t b = 0; b < k; ++b) sub(a, b) = cov_(parents[a], parents[b]);
        }
        std::vector<double> beta;
        if (cholesky_solve(sub, cv, beta)) {
            double explained = 0.0;
            for (size_t a = 0; a < k; ++a) explained += beta[a] * cv[a];
            rss_over_n -= explained;
        } else {
            // collinear parents: use the pseudo-inverse projection
            const Matrix pinv = pinv_sym(sub);
            double explained = 0.0;
            for (size_t a = 0; a < k; ++a)
                for (size_t b = 0; b < k; ++b) explained += cv[a] * pinv(a, b) * cv[b];
            rss_over_n -= explained;
        }
    }
    rss_over_n = std::max(rss_over_n, 1e-12);
    return -(n / 2.0) * std::log(rss_over_n) -
           0.5 * static_cast<double>(parents.size() + 1) * std::log(n);
}

namespace {

// variables reachable from `from` along semi-directed paths (directed
// forward or undirected) avoiding `blocked`
bool semi_directed_path_exists(const Cpdag& g, size_t from, size_t to,
                               const std::vector<uint8_t>& blocked) {
    const size_t n = g.size();
    std::vector<uint8_t> seen(n, 0);
    std::queue<size_t> queue;
    if (!blocked[from]) {
        queue.push(from);
        seen[from] = 1;
    }
    while (!queue.empty()) {
        const size_t v = queue.front();
        queue.pop();
        if (v == to) return true;
        for (size_t u = 0; u < n; ++u) {
            if (seen[u] || blocked[u]) continue;
            if (g.has_directed(v, u) || g.has_undirected(v, u)) {
                seen[u] = 1;
                queue.push(u);
            }
        }
    }
    return false;
}

bool is_clique(const Cpdag& g, const std::vector<size_t>& nodes) {
    for (size_t a = 0; a < nodes.size(); ++a)
        for (size_t b = a + 1; b < nodes.size(); ++b)
            if (!g.adjacent(nodes[a], nodes[b])) return false;
    return true;
}

std::vector<size_t> sorted_union(std::vector<size_t> a, const std::vector<size_t>& b) {
    a.insert(a.end(), b.begin(), b.end());
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
    return a;
}

struct Candidate {
    double delta = 0.0;
    size_t x = 0;
    size_t y = 0;
    std::vector<size_t> set;  // T for inserts, H for deletes
    bool valid = false;
};

// rebuild the CPDAG after an operator application
bool normalize(Cpdag& g) {
    const auto dag = pdag_to_dag(g);
    if (!dag) return false;
    g = dag_to_cpdag(*dag);
    return true;
}

// enumerate subsets of `pool` (ordered), pruning supersets once `fn`
// returns false for a subset (clique violations stay violated)
void enumerate_subsets(const std::vector<size_t>& pool, size_t max_size,
                       std::vector<size_t>& current, size_t start,
                       const std::function<bool(const std::vector<size_t>&)>& fn) {
    if (!fn(current)) return;
    if (current.size() >= max_size) return;
    for (size_t i = start; i < pool.size(); ++i) {
        current.push_back(pool[i]);
        enumerate_subsets(pool, max_size, current, i + 1, fn);
        current.pop_back();
    }
}

}  // namespace

double cpdag_total_score(const Cpdag& g, const BicScore& score) {
    const auto dag = pdag_to_dag(g);
    if (!dag) throw DataError("graph admits no consistent extension");
    double total = 0.0;
    for (size_t v = 0; v < dag->size(); ++v) total += score.local(v, dag->parents(v));
    return total;
}

Cpdag ges(const std::vector<std::string>& variables, const BicScore& score,
          const GesConfig& config, GesTrace* trace) {
    const size_t p = variables.size();
    Cpdag g(variables);
    if (p < 2) return g;

    const double eps = config.min_improvement;

    // ---- forward phase: best Insert(x, y, T) until no improvement ----
    while (true) {
        Candidate best;
        for (size_t x = 0; x < p; ++x) {
            for (size_t y = 0; y < p; ++y) {
                if (x == y || g.adjacent(x, y)) continue;
                std::vector<size_t> na;  // undirected neighbors of y adjacent to x
                std::vector<size_t> t_pool;
                for (size_t v : g.neighbors_undirected(y)) {
                    if (g.adjacent(v, x)) na.push_back(v);
                    else t_pool.push_back(v);
                }
                const std::vector<size_t> pa_y = g.parents(y);

                std::vector<size_t> current;
                enumerate_subsets(t_pool, config.max_insert_set, current, 0,
                                  [&](const std::vector<size_t>& T) {
                    std::vector<size_t> joint = sorted_union(na, T);
                    if (!is_clique(g, joint)) return false;  // supersets stay non-cliques
                    std::vector<uint8_t> blocked(p, 0);
                    for (size_t v : joint) blocked[v] = 1;
                    if (semi_directed_path_exists(g, y, x, blocked)) return true;

                    const std::vector<size_t> base = sorted_union(joint, pa_y);
                    std::vector<size_t> with_x = base;
                    with_x.push_back(x);
                    std::sort(with_x.begin(), with_x.end());
                    const double delta = score.local(y, with_x) - score.local(y, base);
                    if (delta > best.delta + eps ||
                        (!best.valid && delta > eps)) {
                        best = {delta, x, y, T, true};
                    }
                    return true;
                });
            }
        }
        if (!best.valid) break;

        Cpdag next = g;
        next.add_directed(best.x, best.y);
        for (size_t t : best.set) next.add_directed(t, best.y);
        if (!normalize(next)) break;  // operator validity should prevent this
        g = std::move(next);
        if (trace) trace->forward_scores.push_back(cpdag_total_score(g, score));
    }

    // ---- backward phase: best Delete(x, y, H) until no improvement ----
    while (true) {
        Candidate best;
        for (size_t x = 0; x < p; ++x) {
            for (size_t y = 0; y < p; ++y) {
                if (x == y) continue;
                if (!g.has_directed(x, y) && !g.has_undirected(x, y)) continue;
                std::vector<size_t> na;
                for (size_t v : g.neighbors_undirected(y))
                    if (g.adjacent(v, x)) na.push_back(v);
                std::vector<size_t> pa_y = g.parents(y);

                std::vector<size_t> current;
                enumerate_subsets(na, config.max_insert_set, current, 0,
                                  [&](const std::vector<size_t>& H) {
                    std::vector<size_t> keep;  // NA \ H
                    for (size_t v : na)
                        if (std::find(H.begin(), H.end(), v) == H.end()) keep.push_back(v);
                    if (!is_clique(g, keep)) return true;  // larger H may fix the clique

                    std::vector<size_t> base = sorted_union(keep, pa_y);
                    base.erase(std::remove(base.begin(), base.end(), x), base.end());
                    std::vector<size_t> with_x = base;
                    with_x.push_back(x);
                    std::sort(with_x.begin(), with_x.end());
                    const double delta = score.local(y, base) - score.local(y, with_x);
                    if (delta > best.delta + eps ||
                        (!best.valid && delta > eps)) {
                        best = {delta, x, y, H, true};
                    }
                    return true;
                });
            }
        }
        if (!best.valid) break;

        Cpdag next = g;
        next.remove_all(best.x, best.y);
        for (size_t h : best.set) {
            next.add_directed(best.y, h);
            if (next.has_undirected(best.x, h)) next.add_directed(best.x, h);
        }
        if (!normalize(next)) break;
        g = std::move(next);
        if (trace) trace->backward_scores.push_back(cpdag_total_score(g, score));
    }
    return g;
}

}  // namespace pubcausal
