#pragma once

#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "pubcausal/corpus.hpp"

namespace pubcausal {

// Undirected co-authorship graph for one calendar year. Edge multiplicity
// counts papers shared that year; no self-loops.
struct YearGraph {
    int year = 0;
    std::vector<std::string> nodes;  // sorted author ids
    std::unordered_map<std::string, size_t> index;
    std::vector<std::map<size_t, int>> adjacency;  // neighbor -> multiplicity

    size_t node_count() const { return nodes.size(); }
};

YearGraph build_yearly_graph(const std::vector<CorpusRow>& rows, int year);

inline constexpr double kDefaultDamping = 0.85;
inline constexpr double kDefaultPagerankTol = 1e-10;

// Power iteration on the multiplicity-weighted transition matrix with a
// uniform teleport over all nodes. Nodes without collaborators distribute
// their mass uniformly, so scores always sum to 1.
std::map<std::string, double> pagerank(const YearGraph& graph, double damping = kDefaultDamping,
                                       double tol = kDefaultPagerankTol);

// Unique-neighbor degree divided by N-1 (0 for a singleton graph).
std::map<std::string, double> degree_centrality(const YearGraph& graph);

struct DiversityFeatures {
    int n_coauthors = 0;
    double avg_papers_per_coauthor = 0.0;
    double coauthor_likelihood = 0.0;
};

// Cumulative through `year`: distinct co-authors ever, mean shared-paper
// count per co-author, and that mean over the author's total paper count.
DiversityFeatures coauthor_diversity_features(const std::vector<CorpusRow>& rows,
                                              const std::string& author_id, int year);

struct CareerFeatures {
    int years_since_first = 0;
    int n_papers_total = 0;      // [first, year]
    int n_papers_last_year = 0;  // [year-1, year-1]
    int n_papers_last_5y = 0;    // [year-5, year-1]
};

// Throws DataError when the author has no publication at or before `year`.
CareerFeatures author_career_features(const std::vector<CorpusRow>& rows,
                                      const std::string& author_id, int year);

struct AuthorYearStats {
    std::string author_id;
    int year = 0;
    double centrality = 0.0;
    double pagerank = 0.0;
    DiversityFeatures diversity;
    CareerFeatures career;
};

// Stats for every author active in each requested year.
std::vector<AuthorYearStats> build_author_year_stats(const std::vector<CorpusRow>& rows,
                                                     const std::vector<int>& years);

inline constexpr const char* kNetworkCsvHeader =
    "author_id,year,centrality,pagerank,n_coauthors,avg_papers_per_coauthor,"
    "coauthor_likelihood,years_since_first,n_papers_total,n_papers_last_year,n_papers_last_5y";

void write_network_csv(const std::string& path, const std::vector<AuthorYearStats>& stats);
std::vector<AuthorYearStats> read_network_csv(const std::string& path);

}  // namespace pubcausal
