#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace pubcausal {

struct DiscoveryParams {
    double alpha = 0.01;
    int max_cond_size = 3;
    size_t ccdr_grid_points = 10;
    double mcp_gamma = 2.0;
    double weight_threshold = 0.5;
    bool per_entity_subsets = true;
    bool include_country_treatments = false;
    size_t min_rows = 30;
};

struct EstimationPair {
    std::string treatment;
    std::string outcome;
};

struct EstimationParams {
    std::vector<std::string> methods = {"naive", "psm", "causal_forest", "vaine"};
    std::vector<EstimationPair> pairs;
    size_t forest_trees = 500;
    double forest_subsample = 0.5;
    size_t forest_min_leaf = 5;
    size_t vaine_k = 10;
    double vaine_alpha = 0.05;
    size_t vaine_restarts = 50;
    bool vaine_weighted_mean = false;
    double psm_caliper = 0.2;
    bool write_diagnostics = false;  // per-cell diagnostics JSON next to the CSV
};

struct TrendParams {
    std::set<std::string> persistence_group = {"arabic",  "chinese", "french",
                                               "german",  "russian", "non-English language"};
    int min_recurrent_years = 2;
    std::vector<std::string> series_methods = {"causal_forest", "vaine"};
};

struct PipelineConfig {
    int schema_version = 1;
    std::vector<std::string> bibliographies;  // one or more entry files
    std::string full_text_dir;
    std::string countries;  // optional
    std::string lexicon;    // optional; built-in default when empty
    int first_year = 2014;
    int last_year = 2019;
    std::string granularity = "yearly_portfolio";
    int retire_window_years = 2;
    bool portfolio_counts_sum = true;
    DiscoveryParams discovery;
    EstimationParams estimation;
    TrendParams trends;
    uint64_t seed = 0;
    std::string out_dir = "out";
};

PipelineConfig load_pipeline_config(const std::string& path);
std::string config_hash(const PipelineConfig& config);

// Individual stages; each reads only declared files written by earlier
// stages (or the configured inputs) and rewrites its own outputs.
void stage_ingest(const PipelineConfig& config);
void stage_entities(const PipelineConfig& config);
void stage_network(const PipelineConfig& config);
void stage_panel(const PipelineConfig& config);
void stage_discover(const PipelineConfig& config);
void stage_estimate(const PipelineConfig& config);
void stage_trends(const PipelineConfig& config);
void stage_report(const PipelineConfig& config);

inline const std::vector<std::string>& pipeline_stage_names() {
    static const std::vector<std::string> names = {"ingest", "entities", "network", "panel",
                                                   "discover", "estimate", "trends", "report"};
    return names;
}

// Runs every stage in order and writes manifest.json (config hash, version,
// seed, per-stage status, wall clock). On failure the manifest names the
// failed stage and the error is rethrown.
void run_pipeline(const PipelineConfig& config);

}  // namespace pubcausal
