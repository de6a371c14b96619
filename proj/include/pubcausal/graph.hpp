#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace pubcausal {

// Partially directed graph over named variables. Invariants: no self
// edges, an (i, j) pair is directed or undirected but never both, and the
// directed part stays acyclic.
struct Cpdag {
    std::vector<std::string> variables;
    std::vector<std::vector<uint8_t>> directed;    // directed[i][j]: i -> j
    std::vector<std::vector<uint8_t>> undirected;  // symmetric

    Cpdag() = default;
    explicit Cpdag(std::vector<std::string> vars);

    size_t size() const { return variables.size(); }
    bool has_directed(size_t i, size_t j) const { return directed[i][j] != 0; }
    bool has_undirected(size_t i, size_t j) const { return undirected[i][j] != 0; }
    bool adjacent(size_t i, size_t j) const {
        return directed[i][j] || directed[j][i] || undirected[i][j];
    }

    void add_directed(size_t i, size_t j);
    void add_undirected(size_t i, size_t j);
    void remove_all(size_t i, size_t j);

    std::vector<size_t> parents(size_t v) const;
    std::vector<size_t> children(size_t v) const;
    std::vector<size_t> neighbors_undirected(size_t v) const;
    std::vector<size_t> adjacencies(size_t v) const;

    size_t directed_edge_count() const;
    size_t undirected_edge_count() const;
    bool directed_part_acyclic() const;
};

// Meek orientation rules R1-R3 applied to a fixpoint.
void meek_closure(Cpdag& g);

// Consistent DAG extension of a PDAG (undirected edges get oriented without
// creating cycles or new v-structures). nullopt when none exists.
std::optional<Cpdag> pdag_to_dag(const Cpdag& g);

// Pattern of a DAG: skeleton + v-structure orientations + Meek closure.
Cpdag dag_to_cpdag(const Cpdag& dag);

enum class EdgeOrientation { forward, backward, undirected };

struct EnsembleEdge {
    std::string a;  // a < b lexicographic? no: a, b follow variable order
    std::string b;
    double weight = 0.0;  // agreeing algorithms / 4
    EdgeOrientation orientation = EdgeOrientation::undirected;
};

struct EnsembleGraph {
    int year = 0;
    std::vector<std::string> variables;
    std::vector<EnsembleEdge> edges;
};

// Agreement merge of individual discovery outputs: adjacency weight is the
// fraction of graphs containing the edge; orientation is the strict
// majority among graphs that orient it, else undirected.
EnsembleGraph ensemble_merge(const std::vector<Cpdag>& graphs);

std::string ensemble_graph_to_json(const EnsembleGraph& g);
EnsembleGraph ensemble_graph_from_json(const std::string& json_text);

}  // namespace pubcausal
