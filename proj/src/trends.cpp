#include "pubcausal/trends.hpp"

#include <algorithm>

#include "pubcausal/common.hpp"

namespace pubcausal {

namespace {

// is this ensemble edge the (publish_<e> , <family>_<e>) relationship, and
// if so for which entity slug?
std::optional<std::string> family_entity(const EnsembleEdge& e, const std::string& family,
                                         bool require_orientation) {
    const std::string publish = "publish_";
    const std::string outcome = family + "_";
    std::string pub_side, out_side;
    bool publish_is_a = false;
    if (e.a.rfind(publish, 0) == 0 && e.b.rfind(outcome, 0) == 0) {
        pub_side = e.a.substr(publish.size());
        out_side = e.b.substr(outcome.size());
        publish_is_a = true;
    } else if (e.b.rfind(publish, 0) == 0 && e.a.rfind(outcome, 0) == 0) {
        pub_side = e.b.substr(publish.size());
        out_side = e.a.substr(outcome.size());
    } else {
        return std::nullopt;
    }
    if (pub_side != out_side) return std::nullopt;
    if (require_orientation) {
        const EdgeOrientation need =
            publish_is_a ? EdgeOrientation::forward : EdgeOrientation::backward;
        if (e.orientation != need && e.orientation != EdgeOrientation::undirected)
            return std::nullopt;
    }
    return pub_side;
}

}  // namespace

PersistenceGrid persistence_grid(const std::map<int, std::vector<EnsembleGraph>>& yearly_graphs,
                                 const GridFilter& filter) {
    PersistenceGrid grid;
    grid.outcome_family = filter.outcome_family;
    for (const auto& [year, graphs] : yearly_graphs) grid.years.push_back(year);

    std::map<std::string, std::set<int>> present_years;
    for (const auto& [year, graphs] : yearly_graphs) {
        for (const auto& g : graphs) {
            for (const auto& e : g.edges) {
                if (e.weight < filter.min_weight) continue;
                const auto entity =
                    family_entity(e, filter.outcome_family, filter.require_orientation);
                if (entity) present_years[*entity].insert(year);
            }
        }
    }
    for (const auto& [entity, years] : present_years) {
        grid.entities.push_back(entity);
        std::vector<uint8_t> row;
        int total = 0;
        for (int y : grid.years) {
            const bool on = years.count(y) > 0;
            row.push_back(on ? 1 : 0);
            total += on;
        }
        grid.present.push_back(std::move(row));
        grid.totals.push_back(total);
    }
    return grid;
}

std::vector<RecurrentEdge> recurrent_edges(
    const std::map<int, std::vector<EnsembleGraph>>& yearly_graphs, int min_years,
    double min_weight) {
    struct Tally {
        std::set<int> years;
        int forward_votes = 0;   // a -> b
        int backward_votes = 0;  // b -> a
    };
    std::map<std::pair<std::string, std::string>, Tally> tallies;
    for (const auto& [year, graphs] : yearly_graphs) {
        for (const auto& g : graphs) {
            for (const auto& e : g.edges) {
                if (e.weight < min_weight) continue;
                const auto key = e.a < e.b ? std::make_pair(e.a, e.b) : std::make_pair(e.b, e.a);
                const bool flipped = !(e.a < e.b);
                Tally& t = tallies[key];
                t.years.insert(year);
                if (e.orientation == EdgeOrientation::forward)
                    flipped ? ++t.backward_votes : ++t.forward_votes;
                else if (e.orientation == EdgeOrientation::backward)
                    flipped ? ++t.forward_votes : ++t.backward_votes;
            }
        }
    }
    std::vector<RecurrentEdge> out;
    for (const auto& [key, t] : tallies) {
        if (static_cast<int>(t.years.size()) < min_years) continue;
        RecurrentEdge r;
        if (t.backward_votes > t.forward_votes) {
            r.cause = key.second;
            r.effect = key.first;
        } else {
            r.cause = key.first;
            r.effect = key.second;
            r.oriented = t.forward_votes > t.backward_votes;
        }
        r.years.assign(t.years.begin(), t.years.end());
        out.push_back(std::move(r));
    }
    return out;
}

OverlapSummary overlap_summary(const PersistenceGrid& retire_grid,
                               const PersistenceGrid& maintain_grid) {
    OverlapSummary s;
    const std::set<std::string> retire(retire_grid.entities.begin(), retire_grid.entities.end());
    const std::set<std::string> maintain(maintain_grid.entities.begin(),
                                         maintain_grid.entities.end());
    for (const auto& e : retire) {
        if (maintain.count(e)) s.both.insert(e);
        else s.retire_only.insert(e);
    }
    for (const auto& e : maintain)
        if (!retire.count(e)) s.maintain_only.insert(e);
    return s;
}

std::optional<double> persistence_pct(const std::vector<CorpusRow>& rows,
                                      const std::vector<EntityMentionSet>& mentions,
                                      const std::set<std::string>& entity_group, int year) {
    std::map<std::string, std::set<std::string>> paper_entities;
    for (const auto& m : mentions) paper_entities[m.paper_id] = m.entities;

    std::set<std::string> now, next;
    for (const auto& row : rows) {
        if (row.year != year && row.year != year + 1) continue;
        const auto it = paper_entities.find(row.paper_id);
        if (it == paper_entities.end()) continue;
        bool on_group = false;
        for (const auto& e : it->second)
            if (entity_group.count(e)) on_group = true;
        if (!on_group) continue;
        (row.year == year ? now : next).insert(row.author_id);
    }
    if (now.empty()) return std::nullopt;
    size_t continued = 0;
    for (const auto& a : now) continued += next.count(a);
    return 100.0 * static_cast<double>(continued) / static_cast<double>(now.size());
}

double EffectTimeSeries::rendered_at(size_t method_row, size_t year_col) const {
    return rendered[method_row * years.size() + year_col];
}

EffectTimeSeries effect_time_series(const std::vector<AteEstimate>& estimates,
                                    const std::string& treatment, const std::string& outcome,
                                    const std::vector<int>& years,
                                    const std::vector<std::string>& methods) {
    EffectTimeSeries series;
    series.treatment = treatment;
    series.outcome = outcome;
    series.years = years;
    series.methods = methods;
    series.estimates.assign(methods.size(), std::vector<std::optional<double>>(years.size()));
    for (const auto& e : estimates) {
        if (e.treatment != treatment || e.outcome != outcome || !e.defined) continue;
        const auto m = std::find(methods.begin(), methods.end(), e.method);
        const auto y = std::find(years.begin(), years.end(), e.year);
        if (m == methods.end() || y == years.end()) continue;
        series.estimates[m - methods.begin()][y - years.begin()] = e.estimate;
    }
    // rendered table: undefined cells become 0; mean row averages the
    // rendered method values
    series.rendered.assign((methods.size() + 1) * years.size(), 0.0);
    for (size_t y = 0; y < years.size(); ++y) {
        std::vector<std::optional<double>> column;
        for (size_t m = 0; m < methods.size(); ++m) {
            const double v = series.estimates[m][y].value_or(0.0);
            series.rendered[m * years.size() + y] = v;
            column.push_back(v);
        }
        const auto mean_v = mean_across_methods(column);
        series.rendered[methods.size() * years.size() + y] = mean_v.value_or(0.0);
    }
    return series;
}

}  // namespace pubcausal
