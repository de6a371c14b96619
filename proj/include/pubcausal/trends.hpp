#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "pubcausal/corpus.hpp"
#include "pubcausal/effects.hpp"
#include "pubcausal/graph.hpp"
#include "pubcausal/lexicon.hpp"

namespace pubcausal {

// Year-by-relationship presence matrix for one edge family.
struct PersistenceGrid {
    std::string outcome_family;  // "retire", "maintain" or "adopt"
    std::vector<int> years;
    std::vector<std::string> entities;          // rows, entities with >= 1 present cell
    std::vector<std::vector<uint8_t>> present;  // entities x years
    std::vector<int> totals;                    // per-row years-present count
};

struct GridFilter {
    std::string outcome_family = "retire";
    double min_weight = 0.5;          // ensemble presence threshold
    bool require_orientation = false; // demand publish -> outcome direction
};

// One ensemble graph per year over panel column names
// (publish_<e>, adopt_<e>/maintain_<e>/retire_<e>, covariates).
PersistenceGrid persistence_grid(const std::map<int, std::vector<EnsembleGraph>>& yearly_graphs,
                                 const GridFilter& filter);

struct RecurrentEdge {
    std::string cause;
    std::string effect;
    bool oriented = true;  // false when every appearance was undirected
    std::vector<int> years;
};

// Edges present (weight >= min_weight) in at least `min_years` years.
std::vector<RecurrentEdge> recurrent_edges(
    const std::map<int, std::vector<EnsembleGraph>>& yearly_graphs, int min_years,
    double min_weight = 0.5);

struct OverlapSummary {
    std::set<std::string> retire_only;
    std::set<std::string> maintain_only;
    std::set<std::string> both;
};

OverlapSummary overlap_summary(const PersistenceGrid& retire_grid,
                               const PersistenceGrid& maintain_grid);

// % of authors publishing on any entity of the group in `year` who also do
// in year+1. nullopt when nobody published on the group in `year`.
std::optional<double> persistence_pct(const std::vector<CorpusRow>& rows,
                                      const std::vector<EntityMentionSet>& mentions,
                                      const std::set<std::string>& entity_group, int year);

// Per-year method estimates for one (treatment, outcome) pair plus the mean
// row. Undefined cells render as 0 and feed the mean at 0.
struct EffectTimeSeries {
    std::string treatment;
    std::string outcome;
    std::vector<int> years;
    std::vector<std::string> methods;
    std::vector<std::vector<std::optional<double>>> estimates;  // methods x years
    std::vector<double> rendered;                               // row-major with mean row appended

    double rendered_at(size_t method_row, size_t year_col) const;
};

EffectTimeSeries effect_time_series(const std::vector<AteEstimate>& estimates,
                                    const std::string& treatment, const std::string& outcome,
                                    const std::vector<int>& years,
                                    const std::vector<std::string>& methods);

}  // namespace pubcausal
