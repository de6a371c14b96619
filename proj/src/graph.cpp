#include "pubcausal/graph.hpp"

#include <algorithm>
#include <functional>

#include <json.hpp>

#include "pubcausal/common.hpp"

namespace pubcausal {

Cpdag::Cpdag(std::vector<std::string> vars) : variables(std::move(vars)) {
    directed.assign(variables.size(), std::vector<uint8_t>(variables.size(), 0));
    undirected.assign(variables.size(), std::vector<uint8_t>(variables.size(), 0));
}

void Cpdag::add_directed(size_t i, size_t j) {
    if (i == j) return;
    undirected[i][j] = undirected[j][i] = 0;
    directed[j][i] = 0;
    directed[i][j] = 1;
}

void Cpdag::add_undirected(size_t i, size_t j) {
    if (i == j) return;
    directed[i][j] = directed[j][i] = 0;
    undirected[i][j] = undirected[j][i] = 1;
}

void Cpdag::remove_all(size_t i, size_t j) {
    directed[i][j] = directed[j][i] = 0;
    undirected[i][j] = undirected[j][i] = 0;
}

std::vector<size_t> Cpdag::parents(size_t v) const {
    std::vector<size_t> out;
    for (size_t u = 0; u < size(); ++u)
        if (directed[u][v]) out.push_back(u);
    return out;
}

std::vector<size_t> Cpdag::children(size_t v) const {
    std::vector<size_t> out;
    for (size_t u = 0; u < size(); ++u)
        if (directed[v][u]) out.push_back(u);
    return out;
}

std::vector<size_t> Cpdag::neighbors_undirected(size_t v) const {
    std::vector<size_t> out;
    for (size_t u = 0; u < size(); ++u)
        if (undirected[v][u]) out.push_back(u);
    return out;
}

std::vector<size_t> Cpdag::adjacencies(size_t v) const {
    std::vector<size_t> out;
    for (size_t u = 0; u < size(); ++u)
        if (u != v && adjacent(v, u)) out.push_back(u);
    return out;
}

size_t Cpdag::directed_edge_count() const {
    size_t c = 0;
    for (const auto& row : directed)
        for (uint8_t v : row) c += v;
    return c;
}

size_t Cpdag::undirected_edge_count() const {
    size_t c = 0;
    for (size_t i = 0; i < size(); ++i)
        for (size_t j = i + 1; j < size(); ++j) c += undirected[i][j];
    return c;
}

bool Cpdag::directed_part_acyclic() const {
    const size_t n = size();
    std::vector<int> state(n, 0);  // 0 unvisited, 1 on stack, 2 done
    std::function<bool(size_t)> visit = [&](size_t v) -> bool {
        state[v] = 1;
        for (size_t u = 0; u < n; ++u) {
            if (!directed[v][u]) continue;
            if (state[u] == 1) return false;
            if (state[u] == 0 && !visit(u)) return false;
        }
        state[v] = 2;
        return true;
    };
    for (size_t v = 0; v < n; ++v)
        if (state[v] == 0 && !visit(v)) return false;
    return true;
}

void meek_closure(Cpdag& g) {
    const size_t n = g.size();
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t a = 0; a < n; ++a) {
            for (size_t b = 0; b < n; ++b) {
                if (!g.has_undirected(a, b)) continue;

                // R1: c -> a, a - b, c not adjacent to b  =>  a -> b
                bool oriented = false;
                for (size_t c = 0; c < n && !oriented; ++c) {
                    if (c == a || c == b) continue;
                    if (g.has_directed(c, a) && !g.adjacent(c, b)) {
                        g.add_directed(a, b);
                        oriented = changed = true;
                    }
                }
                if (oriented) continue;

                // R2: a -> c -> b with a - b  =>  a -> b
                for (size_t c = 0; c < n && !oriented; ++c) {
                    if (c == a || c == b) continue;
                    if (g.has_directed(a, c) && g.has_directed(c, b)) {
                        g.add_directed(a, b);
                        oriented = changed = true;
                    }
                }
                if (oriented) continue;

                // R3: a - c, a - d, c -> b, d -> b, c not adjacent to d  =>  a -> b
                for (size_t c = 0; c < n && !oriented; ++c) {
                    if (c == a || c == b || !g.has_undirected(a, c) || !g.has_directed(c, b))
                        continue;
                    for (size_t d = c + 1; d < n && !oriented; ++d) {
                        if (d == a || d == b || !g.has_undirected(a, d) || !g.has_directed(d, b))
                            continue;
                        if (!g.adjacent(c, d)) {
                            g.add_directed(a, b);
                            oriented = changed = true;
                        }
                    }
                }
            }
        }
    }
}

std::optional<Cpdag> pdag_to_dag(const Cpdag& g) {
    const size_t n = g.size();
    Cpdag dag(g.variables);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            if (g.directed[i][j]) dag.add_directed(i, j);

    Cpdag work = g;
    std::vector<uint8_t> removed(n, 0);
    size_t remaining = n;
    while (remaining > 0) {
        bool found = false;
        for (size_t x = 0; x < n && !found; ++x) {
            if (removed[x]) continue;
            // sink among remaining nodes
            bool is_sink = true;
            for (size_t y = 0; y < n && is_sink; ++y)
                if (!removed[y] && work.has_directed(x, y)) is_sink = false;
            if (!is_sink) continue;
            // every undirected neighbor must be adjacent to all other
            // adjacencies of x
            bool ok = true;
            for (size_t y = 0; y < n && ok; ++y) {
                if (removed[y] || !work.has_undirected(x, y)) continue;
                for (size_t z = 0; z < n && ok; ++z) {
                    if (removed[z] || z == y || z == x) continue;
                    if (work.adjacent(x, z) && !work.adjacent(y, z)) ok = false;
                }
            }
            if (!ok) continue;

            for (size_t y = 0; y < n; ++y) {
                if (removed[y]) continue;
                if (work.has_undirected(x, y)) dag.add_directed(y, x);
            }
            for (size_t y = 0; y < n; ++y) {
                if (!removed[y]) work.remove_all(x, y);
            }
            removed[x] = 1;
            --remaining;
            found = true;
        }
        if (!found) return std::nullopt;
    }
    return dag;
}

Cpdag dag_to_cpdag(const Cpdag& dag) {
    const size_t n = dag.size();
    Cpdag out(dag.variables);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            if (dag.adjacent(i, j)) out.add_undirected(i, j);

    // keep v-structure orientations
    for (size_t k = 0; k < n; ++k) {
        const auto pa = dag.parents(k);
        for (size_t a = 0; a < pa.size(); ++a) {
            for (size_t b = a + 1; b < pa.size(); ++b) {
                if (!dag.adjacent(pa[a], pa[b])) {
                    out.add_directed(pa[a], k);
                    out.add_directed(pa[b], k);
                }
            }
        }
    }
    meek_closure(out);
    return out;
}

EnsembleGraph ensemble_merge(const std::vector<Cpdag>& graphs) {
    if (graphs.empty()) throw DataError("ensemble_merge: no graphs");
    const auto& vars = graphs[0].variables;
    for (const auto& g : graphs) {
        if (g.variables != vars)
            throw DataError("ensemble_merge: variable sets differ between graphs");
    }
    EnsembleGraph out;
    out.variables = vars;
    const size_t n = vars.size();
    const double total = static_cast<double>(graphs.size());
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = i + 1; j < n; ++j) {
            int adjacent_count = 0;
            int votes_forward = 0;
            int votes_backward = 0;
            for (const auto& g : graphs) {
                if (!g.adjacent(i, j)) continue;
                ++adjacent_count;
                if (g.has_directed(i, j)) ++votes_forward;
                else if (g.has_directed(j, i)) ++votes_backward;
            }
            if (adjacent_count == 0) continue;
            EnsembleEdge e;
            e.a = vars[i];
            e.b = vars[j];
            e.weight = static_cast<double>(adjacent_count) / total;
            if (votes_forward > votes_backward) e.orientation = EdgeOrientation::forward;
            else if (votes_backward > votes_forward) e.orientation = EdgeOrientation::backward;
            else e.orientation = EdgeOrientation::undirected;
            out.edges.push_back(std::move(e));
        }
    }
    return out;
}

namespace {

const char* orientation_name(EdgeOrientation o) {
    switch (o) {
        case EdgeOrientation::forward: return "a->b";
        case EdgeOrientation::backward: return "b->a";
        default: return "undirected";
    }
}

}  // namespace

std::string ensemble_graph_to_json(const EnsembleGraph& g) {
    nlohmann::ordered_json j;
    j["year"] = g.year;
    j["variables"] = g.variables;
    nlohmann::ordered_json edges = nlohmann::ordered_json::array();
    for (const auto& e : g.edges) {
        nlohmann::ordered_json je;
        je["a"] = e.a;
        je["b"] = e.b;
        je["weight"] = e.weight;
        je["orientation"] = orientation_name(e.orientation);
        edges.push_back(je);
    }
    j["edges"] = edges;
    return j.dump(2) + "\n";
}

EnsembleGraph ensemble_graph_from_json(const std::string& json_text) {
    const auto j = nlohmann::json::parse(json_text);
    EnsembleGraph g;
    g.year = j.at("year").get<int>();
    g.variables = j.at("variables").get<std::vector<std::string>>();
    for (const auto& je : j.at("edges")) {
        EnsembleEdge e;
        e.a = je.at("a").get<std::string>();
        e.b = je.at("b").get<std::string>();
        e.weight = je.at("weight").get<double>();
        const std::string o = je.at("orientation").get<std::string>();
        e.orientation = o == "a->b" ? EdgeOrientation::forward
                        : o == "b->a" ? EdgeOrientation::backward
                                      : EdgeOrientation::undirected;
        g.edges.push_back(std::move(e));
    }
    return g;
}

}  // namespace pubcausal
