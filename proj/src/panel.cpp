#include "pubcausal/panel.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "pubcausal/common.hpp"
#include "pubcausal/csv.hpp"
#include "pubcausal/stats.hpp"

namespace pubcausal {

const char* granularity_name(Granularity g) {
    return g == Granularity::publication_record ? "publication_record" : "yearly_portfolio";
}

std::optional<Granularity> granularity_from_name(const std::string& s) {
    if (s == "publication_record" || s == "record") return Granularity::publication_record;
    if (s == "yearly_portfolio" || s == "portfolio") return Granularity::yearly_portfolio;
    return std::nullopt;
}

const std::vector<std::string>& covariate_names() {
    static const std::vector<std::string> names = {
        "n_papers_total", "n_papers_last_year", "n_papers_last_5y", "n_coauthors",
        "avg_papers_per_coauthor", "coauthor_likelihood", "centrality", "pagerank",
        "years_since_first", "is_conference", "n_authors", "page_length", "word_count",
        "fog_index"};
    return names;
}

namespace {

const std::array<const char*, kNumCountries> kCountryColumns = {
    "from_us", "from_china", "from_germany", "from_japan", "from_france", "from_other"};

std::vector<std::string> build_treatment_names() {
    std::vector<std::string> names;
    names.reserve(50 + kNumCountries);
    for (const char* e : kCanonicalEntities) names.push_back("publish_" + slugify(e));
    for (const char* c : kCountryColumns) names.push_back(c);
    return names;
}

std::vector<std::string> build_outcome_names() {
    std::vector<std::string> names;
    names.reserve(3 * 50 + 3);
    for (const char* prefix : {"adopt_", "maintain_", "retire_"})
        for (const char* e : kCanonicalEntities) names.push_back(prefix + slugify(e));
    names.push_back("pub_increase_rate");
    names.push_back("paused");
    names.push_back("persistent");
    return names;
}

size_t entity_slot(const std::string& entity) {
    for (size_t i = 0; i < kCanonicalEntities.size(); ++i)
        if (entity == kCanonicalEntities[i]) return i;
    throw DataError("unknown entity: " + entity);
}

}  // namespace

const std::vector<std::string>& treatment_names() {
    static const std::vector<std::string> names = build_treatment_names();
    return names;
}

const std::vector<std::string>& outcome_names() {
    static const std::vector<std::string> names = build_outcome_names();
    return names;
}

std::optional<size_t> country_slot(const std::string& code) {
    if (code.empty()) return std::nullopt;
    const std::string c = lower_ascii(code);
    if (c == "us" || c == "usa" || c == "united states") return 0;
    if (c == "cn" || c == "china") return 1;
    if (c == "de" || c == "germany") return 2;
    if (c == "jp" || c == "japan") return 3;
    if (c == "fr" || c == "france") return 4;
    return 5;  // Other
}

std::map<std::string, AuthorHistory> build_histories(
    const std::vector<CorpusRow>& rows, const std::vector<EntityMentionSet>& mentions) {
    std::unordered_map<std::string, const EntityMentionSet*> by_paper;
    for (const auto& m : mentions) by_paper[m.paper_id] = &m;

    int horizon = 0;
    for (const auto& row : rows) horizon = std::max(horizon, row.year);

    std::map<std::string, AuthorHistory> histories;
    std::map<std::string, std::set<std::pair<int, std::string>>> seen_papers;
    for (const auto& row : rows) {
        AuthorHistory& h = histories[row.author_id];
        h.horizon = horizon;
        if (seen_papers[row.author_id].insert({row.year, row.paper_id}).second)
            h.papers_by_year[row.year] += 1;
        const auto it = by_paper.find(row.paper_id);
        if (it != by_paper.end())
            h.entities_by_year[row.year].insert(it->second->entities.begin(),
                                                it->second->entities.end());
        else
            h.entities_by_year[row.year];  // year present even without mentions
    }
    return histories;
}

namespace {

bool published_on_in(const AuthorHistory& h, const std::string& entity, int from, int to) {
    for (auto it = h.entities_by_year.lower_bound(from);
         it != h.entities_by_year.end() && it->first <= to; ++it) {
        if (it->second.count(entity)) return true;
    }
    return false;
}

int papers_in(const AuthorHistory& h, int year) {
    const auto it = h.papers_by_year.find(year);
    return it == h.papers_by_year.end() ? 0 : it->second;
}

}  // namespace

std::optional<int> encode_outcome(const AuthorHistory& history, const std::string& entity,
                                  int year, EntityOutcomeKind kind, const PanelConfig& config) {
    const int first = history.papers_by_year.empty() ? year : history.papers_by_year.begin()->first;
    const bool prior = published_on_in(history, entity, first, year);
    switch (kind) {
        case EntityOutcomeKind::adopt: {
            if (year + 1 > history.horizon) return std::nullopt;
            const bool next = published_on_in(history, entity, year + 1, year + 1);
            return (!prior && next) ? 1 : 0;
        }
        case EntityOutcomeKind::maintain: {
            if (year + 1 > history.horizon) return std::nullopt;
            const bool next = published_on_in(history, entity, year + 1, year + 1);
            return (prior && next) ? 1 : 0;
        }
        case EntityOutcomeKind::retire: {
            const int window = config.retire_window_years;
            if (year + window > history.horizon) return std::nullopt;
            const bool later = published_on_in(history, entity, year + 1, year + window);
            return (prior && !later) ? 1 : 0;
        }
    }
    return std::nullopt;
}

GeneralOutcomes encode_general_outcomes(const AuthorHistory& history, int year) {
    GeneralOutcomes out;
    const int n_now = papers_in(history, year);
    if (year + 1 <= history.horizon) {
        const int n_next = papers_in(history, year + 1);
        if (n_now > 0)
            out.pub_increase_rate = static_cast<double>(n_next) / static_cast<double>(n_now);
        out.persistent = n_next > 0 ? 1 : 0;
    }
    if (year + 2 <= history.horizon) {
        out.paused = (papers_in(history, year + 1) == 0 && papers_in(history, year + 2) == 0) ? 1 : 0;
    }
    return out;
}

namespace {

struct UnitKey {
    std::string author_id;
    std::string paper_id;  // empty for portfolio units

    std::string unit_id() const {
        return paper_id.empty() ? author_id : author_id + "::" + paper_id;
    }
};

// Units for one (year, granularity): portfolio keeps one unit per author,
// record one per (author, paper). Order is deterministic (sorted keys).
std::vector<UnitKey> panel_units(const std::vector<CorpusRow>& rows, int year,
                                 Granularity granularity) {
    std::set<std::pair<std::string, std::string>> keys;
    for (const auto& row : rows) {
        if (row.year != year) continue;
        if (granularity == Granularity::yearly_portfolio) keys.insert({row.author_id, ""});
        else keys.insert({row.author_id, row.paper_id});
    }
    std::vector<UnitKey> units;
    units.reserve(keys.size());
    for (const auto& [a, p] : keys) units.push_back({a, p});
    return units;
}

}  // namespace

std::vector<TreatmentAssignment> encode_treatments(const std::vector<CorpusRow>& rows,
                                                   const std::vector<EntityMentionSet>& mentions,
                                                   int year, Granularity granularity) {
    std::unordered_map<std::string, const EntityMentionSet*> by_paper;
    for (const auto& m : mentions) by_paper[m.paper_id] = &m;

    // author -> country (first non-empty among the author's rows that year)
    std::map<std::string, std::string> author_country;
    for (const auto& row : rows) {
        if (row.year != year || !row.country) continue;
        auto& slot = author_country[row.author_id];
        if (slot.empty()) slot = *row.country;
    }
    // author -> papers that year
    std::map<std::string, std::vector<std::string>> author_papers;
    for (const auto& row : rows)
        if (row.year == year) author_papers[row.author_id].push_back(row.paper_id);

    const std::vector<UnitKey> units = panel_units(rows, year, granularity);
    std::vector<TreatmentAssignment> out;
    out.reserve(units.size());
    for (const auto& unit : units) {
        TreatmentAssignment t;
        t.unit_id = unit.unit_id();
        t.year = year;
        t.publish_on.assign(50, 0);
        t.scientist_from.assign(kNumCountries, 0);

        std::vector<std::string> papers;
        if (granularity == Granularity::yearly_portfolio) papers = author_papers[unit.author_id];
        else papers = {unit.paper_id};
        for (const auto& paper : papers) {
            const auto it = by_paper.find(paper);
            if (it == by_paper.end()) continue;
            for (const auto& e : it->second->entities) t.publish_on[entity_slot(e)] = 1;
        }
        const auto cit = author_country.find(unit.author_id);
        if (cit != author_country.end()) {
            if (const auto slot = country_slot(cit->second)) t.scientist_from[*slot] = 1;
        }
        out.push_back(std::move(t));
    }
    return out;
}

size_t AnalysisPanel::treatment_index(const std::string& name) const {
    const auto& names = pubcausal::treatment_names();
    const auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) throw DataError("unknown treatment column: " + name);
    return static_cast<size_t>(it - names.begin());
}

size_t AnalysisPanel::outcome_index(const std::string& name) const {
    const auto& names = pubcausal::outcome_names();
    const auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) throw DataError("unknown outcome column: " + name);
    return static_cast<size_t>(it - names.begin());
}

AnalysisPanel build_panel(const std::vector<CorpusRow>& rows,
                          const std::vector<EntityMentionSet>& mentions,
                          const std::vector<AuthorYearStats>& network_stats, int year,
                          Granularity granularity, const PanelConfig& config) {
    if (year < kPanelMinYear || year > kPanelMaxYear)
        throw ConfigError("panel year " + std::to_string(year) + " outside [2014, 2019]");

    AnalysisPanel panel;
    panel.year = year;
    panel.granularity = granularity;

    const std::vector<UnitKey> units = panel_units(rows, year, granularity);
    panel.unit_ids.reserve(units.size());
    for (const auto& u : units) panel.unit_ids.push_back(u.unit_id());
    const size_t n = units.size();

    std::map<std::string, const AuthorYearStats*> stats_by_author;
    for (const auto& s : network_stats)
        if (s.year == year) stats_by_author[s.author_id] = &s;

    std::map<std::string, std::vector<const CorpusRow*>> author_rows;
    std::map<std::pair<std::string, std::string>, const CorpusRow*> row_by_unit;
    for (const auto& row : rows) {
        if (row.year != year) continue;
        author_rows[row.author_id].push_back(&row);
        row_by_unit[{row.author_id, row.paper_id}] = &row;
    }

    panel.covariates = Matrix(n, kNumCovariates);
    for (size_t i = 0; i < n; ++i) {
        const auto& unit = units[i];
        const auto sit = stats_by_author.find(unit.author_id);
        if (sit == stats_by_author.end())
            throw DataError("missing network stats for author '" + unit.author_id + "' in " +
                            std::to_string(year));
        const AuthorYearStats& s = *sit->second;
        panel.covariates(i, 0) = s.career.n_papers_total;
        panel.covariates(i, 1) = s.career.n_papers_last_year;
        panel.covariates(i, 2) = s.career.n_papers_last_5y;
        panel.covariates(i, 3) = s.diversity.n_coauthors;
        panel.covariates(i, 4) = s.diversity.avg_papers_per_coauthor;
        panel.covariates(i, 5) = s.diversity.coauthor_likelihood;
        panel.covariates(i, 6) = s.centrality;
        panel.covariates(i, 7) = s.pagerank;
        panel.covariates(i, 8) = s.career.years_since_first;

        if (granularity == Granularity::publication_record) {
            const CorpusRow* row = row_by_unit.at({unit.author_id, unit.paper_id});
            panel.covariates(i, 9) = row->features.is_conference;
            panel.covariates(i, 10) = row->features.n_authors;
            panel.covariates(i, 11) = row->features.page_length;
            panel.covariates(i, 12) = row->features.word_count;
            panel.covariates(i, 13) = row->features.fog_index;
        } else {
            const auto& rlist = author_rows.at(unit.author_id);
            const double k = static_cast<double>(rlist.size());
            double conf = 0, n_auth = 0, pages = 0, words = 0, fog = 0;
            for (const CorpusRow* r : rlist) {
                conf += r->features.is_conference;
                n_auth += r->features.n_authors;
                pages += r->features.page_length;
                words += r->features.word_count;
                fog += r->features.fog_index;
            }
            panel.covariates(i, 9) = conf / k;
            panel.covariates(i, 10) = config.portfolio_counts_sum ? n_auth : n_auth / k;
            panel.covariates(i, 11) = config.portfolio_counts_sum ? pages : pages / k;
            panel.covariates(i, 12) = config.portfolio_counts_sum ? words : words / k;
            panel.covariates(i, 13) = fog / k;
        }
    }

    // standardized copies (population moments, per panel)
    panel.covariates_std = Matrix(n, kNumCovariates);
    for (size_t j = 0; j < kNumCovariates; ++j) {
        std::vector<double> col(n);
        for (size_t i = 0; i < n; ++i) col[i] = panel.covariates(i, j);
        const std::vector<double> z = standardize(col);
        for (size_t i = 0; i < n; ++i) panel.covariates_std(i, j) = z[i];
    }

    const auto assignments = encode_treatments(rows, mentions, year, granularity);
    panel.treatments = Matrix(n, treatment_names().size());
    for (size_t i = 0; i < n; ++i) {
        const TreatmentAssignment& t = assignments[i];
        for (size_t b = 0; b < 50; ++b) panel.treatments(i, b) = t.publish_on[b];
        for (size_t b = 0; b < kNumCountries; ++b) panel.treatments(i, 50 + b) = t.scientist_from[b];
    }

    const auto histories = build_histories(rows, mentions);
    const size_t n_out = outcome_names().size();
    panel.outcomes = Matrix(n, n_out);
    panel.outcome_defined = Matrix(n, n_out);
    for (size_t i = 0; i < n; ++i) {
        const AuthorHistory& h = histories.at(units[i].author_id);
        for (size_t e = 0; e < 50; ++e) {
            const std::string entity = kCanonicalEntities[e];
            const auto kinds = {EntityOutcomeKind::adopt, EntityOutcomeKind::maintain,
                                EntityOutcomeKind::retire};
            size_t block = 0;
            for (const auto kind : kinds) {
                const auto v = encode_outcome(h, entity, year, kind, config);
                const size_t col = block * 50 + e;
                if (v) {
                    panel.outcomes(i, col) = *v;
                    panel.outcome_defined(i, col) = 1.0;
                }
                ++block;
            }
        }
        const GeneralOutcomes g = encode_general_outcomes(h, year);
        const size_t base = 150;
        if (g.pub_increase_rate) {
            panel.outcomes(i, base) = *g.pub_increase_rate;
            panel.outcome_defined(i, base) = 1.0;
        }
        if (g.paused) {
            panel.outcomes(i, base + 1) = *g.paused;
            panel.outcome_defined(i, base + 1) = 1.0;
        }
        if (g.persistent) {
            panel.outcomes(i, base + 2) = *g.persistent;
            panel.outcome_defined(i, base + 2) = 1.0;
        }
    }
    return panel;
}

PanelView extract_columns(const AnalysisPanel& panel, const std::vector<std::string>& names,
                          bool standardized_covariates) {
    const auto& cov_names = covariate_names();
    const auto& trt_names = treatment_names();
    const auto& out_names = outcome_names();

    struct Source {
        int kind;  // 0 covariate, 1 treatment, 2 outcome
        size_t col;
    };
    std::vector<Source> sources;
    for (const auto& name : names) {
        auto find = [&](const std::vector<std::string>& list) -> std::optional<size_t> {
            const auto it = std::find(list.begin(), list.end(), name);
            if (it == list.end()) return std::nullopt;
            return static_cast<size_t>(it - list.begin());
        };
        if (auto c = find(cov_names)) sources.push_back({0, *c});
        else if (auto t = find(trt_names)) sources.push_back({1, *t});
        else if (auto o = find(out_names)) sources.push_back({2, *o});
        else throw DataError("unknown panel column: " + name);
    }

    PanelView view;
    view.names = names;
    view.columns.assign(names.size(), {});
    for (size_t i = 0; i < panel.size(); ++i) {
        bool complete = true;
        for (const auto& src : sources) {
            if (src.kind == 2 && panel.outcome_defined(i, src.col) == 0.0) {
                complete = false;
                break;
            }
        }
        if (!complete) continue;
        view.unit_indices.push_back(i);
        for (size_t k = 0; k < sources.size(); ++k) {
            const auto& src = sources[k];
            double v = 0.0;
            if (src.kind == 0)
                v = standardized_covariates ? panel.covariates_std(i, src.col)
                                            : panel.covariates(i, src.col);
            else if (src.kind == 1) v = panel.treatments(i, src.col);
            else v = panel.outcomes(i, src.col);
            view.columns[k].push_back(v);
        }
    }
    return view;
}

void write_panel_csv(const std::string& path, const AnalysisPanel& panel) {
    std::vector<std::string> header = {"unit_id"};
    for (const auto& c : covariate_names()) header.push_back(c);
    for (const auto& t : treatment_names()) header.push_back(t);
    for (const auto& o : outcome_names()) header.push_back(o);

    std::vector<std::vector<std::string>> rows;
    rows.reserve(panel.size());
    for (size_t i = 0; i < panel.size(); ++i) {
        std::vector<std::string> row;
        row.reserve(header.size());
        row.push_back(panel.unit_ids[i]);
        for (size_t j = 0; j < kNumCovariates; ++j) row.push_back(format_double(panel.covariates(i, j)));
        for (size_t j = 0; j < treatment_names().size(); ++j)
            row.push_back(panel.treatments(i, j) != 0.0 ? "1" : "0");
        for (size_t j = 0; j < outcome_names().size(); ++j) {
            if (panel.outcome_defined(i, j) == 0.0) row.push_back("");
            else row.push_back(format_double(panel.outcomes(i, j)));
        }
        rows.push_back(std::move(row));
    }
    write_csv_file(path, header, rows);
}

AnalysisPanel read_panel_csv(const std::string& path) {
    const CsvTable csv = read_csv_file(path);
    const size_t n_cov = kNumCovariates;
    const size_t n_trt = treatment_names().size();
    const size_t n_out = outcome_names().size();
    if (csv.header.size() != 1 + n_cov + n_trt + n_out)
        throw DataError("unexpected panel CSV width in " + path);

    AnalysisPanel panel;
    const size_t n = csv.rows.size();
    panel.unit_ids.reserve(n);
    panel.covariates = Matrix(n, n_cov);
    panel.treatments = Matrix(n, n_trt);
    panel.outcomes = Matrix(n, n_out);
    panel.outcome_defined = Matrix(n, n_out);
    for (size_t i = 0; i < n; ++i) {
        const auto& row = csv.rows[i];
        panel.unit_ids.push_back(row[0]);
        size_t c = 1;
        for (size_t j = 0; j < n_cov; ++j) panel.covariates(i, j) = std::stod(row[c++]);
        for (size_t j = 0; j < n_trt; ++j) panel.treatments(i, j) = std::stod(row[c++]);
        for (size_t j = 0; j < n_out; ++j, ++c) {
            if (row[c].empty()) continue;
            panel.outcomes(i, j) = std::stod(row[c]);
            panel.outcome_defined(i, j) = 1.0;
        }
    }
    panel.covariates_std = Matrix(n, n_cov);
    for (size_t j = 0; j < n_cov; ++j) {
        std::vector<double> col(n);
        for (size_t i = 0; i < n; ++i) col[i] = panel.covariates(i, j);
        const std::vector<double> z = standardize(col);
        for (size_t i = 0; i < n; ++i) panel.covariates_std(i, j) = z[i];
    }
    return panel;
}

}  // namespace pubcausal
