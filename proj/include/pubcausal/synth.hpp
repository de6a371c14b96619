#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace pubcausal {

struct SynthEntity {
    std::string entity;          // canonical entity id
    double initial_prob = 0.2;   // in the starting focus set
    double adopt_prob = 0.05;    // enters the focus set per year
    double retention_prob = 0.85;  // stays in the focus set per year
};

// Forced drop-or-continue dynamics: authors with a prior publication on the
// outcome entity stop publishing on it for two years with probability
// base_prob (+ tau when they published on the treatment entity this year).
struct PlantedEffect {
    std::string treatment_entity;
    std::string outcome_entity;
    double tau = 0.0;
    double base_prob = 0.1;
};

// Events fire every `effect_cadence` years so the forced two-year windows
// of successive events never overlap; at event years the panel-level
// treated/control contrast equals tau up to eligibility.
inline constexpr int kDefaultEffectCadence = 2;

struct CountryShare {
    std::string code;
    double prob = 0.0;
};

struct SyntheticCorpusSpec {
    size_t n_authors = 200;
    int first_year = 2012;
    int last_year = 2020;
    uint64_t seed = 1;

    double activity_prob = 0.85;     // author publishes at all in a year
    double mean_extra_papers = 0.7;  // Poisson mean beyond the first paper
    double mention_prob = 0.9;       // focus entity appears in a given paper
    double coauthor_prob = 0.5;      // chance of each extra co-author (up to 3)
    int effect_cadence = kDefaultEffectCadence;

    std::vector<SynthEntity> entities;
    std::vector<PlantedEffect> planted_effects;
    std::vector<CountryShare> countries;
};

SyntheticCorpusSpec load_synth_spec(const std::string& path);

struct SynthOutput {
    std::string bibliography_path;
    std::string full_text_dir;
    std::string countries_path;
    size_t n_papers = 0;
};

// Emits bibliography + full texts + country sidecar under out_dir. Fails
// before writing anything when a planted effect is probability-infeasible.
SynthOutput generate_synthetic_corpus(const SyntheticCorpusSpec& spec, const std::string& out_dir);

}  // namespace pubcausal
