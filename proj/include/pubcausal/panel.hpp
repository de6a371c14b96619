#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "pubcausal/collab.hpp"
#include "pubcausal/corpus.hpp"
#include "pubcausal/lexicon.hpp"
#include "pubcausal/linalg.hpp"

namespace pubcausal {

enum class Granularity { publication_record, yearly_portfolio };

const char* granularity_name(Granularity g);
std::optional<Granularity> granularity_from_name(const std::string& s);

inline constexpr int kPanelMinYear = 2014;
inline constexpr int kPanelMaxYear = 2019;

inline constexpr size_t kNumCovariates = 14;
inline constexpr size_t kNumCountries = 6;

// Fixed covariate order shared by panels, estimators and reports.
const std::vector<std::string>& covariate_names();
// publish_<entity> x50 followed by from_<country> x6.
const std::vector<std::string>& treatment_names();
// adopt_<entity> x50, maintain_<entity> x50, retire_<entity> x50,
// pub_increase_rate, paused, persistent.
const std::vector<std::string>& outcome_names();

// {US, China, Germany, Japan, France, Other}; nullopt when unknown/empty.
std::optional<size_t> country_slot(const std::string& code);

struct PanelConfig {
    int retire_window_years = 2;  // 1 = next year only
    bool portfolio_counts_sum = true;  // count-like paper features: sum vs mean
};

// Author publication history used by the outcome encoders.
struct AuthorHistory {
    std::map<int, std::set<std::string>> entities_by_year;
    std::map<int, int> papers_by_year;  // distinct papers
    int horizon = 0;                    // last year covered by the data
};

std::map<std::string, AuthorHistory> build_histories(const std::vector<CorpusRow>& rows,
                                                     const std::vector<EntityMentionSet>& mentions);

enum class EntityOutcomeKind { adopt, maintain, retire };

// nullopt when the needed horizon extends past the data.
std::optional<int> encode_outcome(const AuthorHistory& history, const std::string& entity,
                                  int year, EntityOutcomeKind kind, const PanelConfig& config = {});

struct GeneralOutcomes {
    std::optional<double> pub_increase_rate;
    std::optional<int> paused;
    std::optional<int> persistent;
};

GeneralOutcomes encode_general_outcomes(const AuthorHistory& history, int year);

struct TreatmentAssignment {
    std::string unit_id;
    int year = 0;
    std::vector<uint8_t> publish_on;      // 50 bits, canonical entity order
    std::vector<uint8_t> scientist_from;  // 6-way one-hot, all zero when unknown
};

std::vector<TreatmentAssignment> encode_treatments(const std::vector<CorpusRow>& rows,
                                                   const std::vector<EntityMentionSet>& mentions,
                                                   int year, Granularity granularity);

struct AnalysisPanel {
    int year = 0;
    Granularity granularity = Granularity::yearly_portfolio;
    std::vector<std::string> unit_ids;
    Matrix covariates;      // n x 14, raw values
    Matrix covariates_std;  // per-panel z-scores; constant columns all zero
    Matrix treatments;      // n x 56, {0,1}
    Matrix outcomes;        // n x 153
    Matrix outcome_defined; // n x 153, {0,1}

    size_t size() const { return unit_ids.size(); }
    size_t treatment_index(const std::string& name) const;
    size_t outcome_index(const std::string& name) const;
};

AnalysisPanel build_panel(const std::vector<CorpusRow>& rows,
                          const std::vector<EntityMentionSet>& mentions,
                          const std::vector<AuthorYearStats>& network_stats, int year,
                          Granularity granularity, const PanelConfig& config = {});

// Complete-case numeric view over named panel columns (covariates use their
// standardized copies). Units missing any requested outcome are dropped.
struct PanelView {
    std::vector<std::string> names;
    std::vector<std::vector<double>> columns;
    std::vector<size_t> unit_indices;  // rows kept, as panel indices
};

PanelView extract_columns(const AnalysisPanel& panel, const std::vector<std::string>& names,
                          bool standardized_covariates = true);

void write_panel_csv(const std::string& path, const AnalysisPanel& panel);
AnalysisPanel read_panel_csv(const std::string& path);

}  // namespace pubcausal
