#include "pubcausal/pipeline.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "pubcausal/collab.hpp"
#include "pubcausal/common.hpp"
#include "pubcausal/corpus.hpp"
#include "pubcausal/csv.hpp"
#include "pubcausal/effects.hpp"
#include "pubcausal/ccdr.hpp"
#include "pubcausal/citest.hpp"
#include "pubcausal/ges.hpp"
#include "pubcausal/lexicon.hpp"
#include "pubcausal/mmpc.hpp"
#include "pubcausal/panel.hpp"
#include "pubcausal/parallel.hpp"
#include "pubcausal/pc.hpp"
#include "pubcausal/report.hpp"
#include "pubcausal/rng.hpp"
#include "pubcausal/stats.hpp"
#include "pubcausal/trends.hpp"

namespace fs = std::filesystem;

namespace pubcausal {

namespace {

constexpr const char* kVersion = "0.1.0";

std::string out_path(const PipelineConfig& c, const std::string& name) {
    return c.out_dir + "/" + name;
}

Granularity config_granularity(const PipelineConfig& c) {
    const auto g = granularity_from_name(c.granularity);
    if (!g) throw ConfigError("unknown granularity: " + c.granularity);
    return *g;
}

std::vector<int> config_years(const PipelineConfig& c) {
    std::vector<int> years;
    for (int y = c.first_year; y <= c.last_year; ++y) years.push_back(y);
    return years;
}

EntityLexicon config_lexicon(const PipelineConfig& c) {
    return c.lexicon.empty() ? default_lexicon() : load_lexicon(c.lexicon);
}

nlohmann::ordered_json config_to_json(const PipelineConfig& c) {
    nlohmann::ordered_json j;
    j["schema_version"] = c.schema_version;
    j["inputs"] = {{"bibliography", c.bibliographies},
                   {"full_text_dir", c.full_text_dir},
                   {"countries", c.countries},
                   {"lexicon", c.lexicon}};
    j["years"] = {{"first", c.first_year}, {"last", c.last_year}};
    j["granularity"] = c.granularity;
    j["retire_window_years"] = c.retire_window_years;
    j["portfolio_counts_sum"] = c.portfolio_counts_sum;
    j["discovery"] = {{"alpha", c.discovery.alpha},
                      {"max_cond_size", c.discovery.max_cond_size},
                      {"ccdr_grid_points", c.discovery.ccdr_grid_points},
                      {"mcp_gamma", c.discovery.mcp_gamma},
                      {"weight_threshold", c.discovery.weight_threshold},
                      {"per_entity_subsets", c.discovery.per_entity_subsets},
                      {"include_country_treatments", c.discovery.include_country_treatments},
                      {"min_rows", c.discovery.min_rows}};
    nlohmann::ordered_json pairs = nlohmann::ordered_json::array();
    for (const auto& p : c.estimation.pairs)
        pairs.push_back({{"treatment", p.treatment}, {"outcome", p.outcome}});
    j["estimation"] = {{"methods", c.estimation.methods},
                       {"pairs", pairs},
                       {"forest",
                        {{"n_trees", c.estimation.forest_trees},
                         {"subsample_fraction", c.estimation.forest_subsample},
                         {"min_leaf", c.estimation.forest_min_leaf}}},
                       {"vaine",
                        {{"k", c.estimation.vaine_k},
                         {"alpha", c.estimation.vaine_alpha},
                         {"restarts", c.estimation.vaine_restarts},
                         {"weighted_mean", c.estimation.vaine_weighted_mean}}},
                       {"psm", {{"caliper_sd_multiple", c.estimation.psm_caliper}}},
                       {"write_diagnostics", c.estimation.write_diagnostics}};
    j["trends"] = {{"persistence_group",
                    std::vector<std::string>(c.trends.persistence_group.begin(),
                                             c.trends.persistence_group.end())},
                   {"min_recurrent_years", c.trends.min_recurrent_years},
                   {"series_methods", c.trends.series_methods}};
    j["seed"] = c.seed;
    // out_dir stays out: the hash identifies the analytical configuration,
    // and byte-identical runs into different directories must agree
    return j;
}

}  // namespace

PipelineConfig load_pipeline_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw ConfigError(std::string("bad config JSON: ") + e.what());
    }
    PipelineConfig c;
    c.schema_version = j.value("schema_version", 1);
    if (c.schema_version != 1)
        throw ConfigError("unsupported schema_version " + std::to_string(c.schema_version));
    const auto inputs = j.value("inputs", nlohmann::json::object());
    if (inputs.contains("bibliography")) {
        const auto& bib = inputs["bibliography"];
        if (bib.is_string()) c.bibliographies = {bib.get<std::string>()};
        else c.bibliographies = bib.get<std::vector<std::string>>();
    }
    c.full_text_dir = inputs.value("full_text_dir", "");
    c.countries = inputs.value("countries", "");
    c.lexicon = inputs.value("lexicon", "");
    const auto years = j.value("years", nlohmann::json::object());
    c.first_year = years.value("first", c.first_year);
    c.last_year = years.value("last", c.last_year);
    c.granularity = j.value("granularity", c.granularity);
    c.retire_window_years = j.value("retire_window_years", c.retire_window_years);
    c.portfolio_counts_sum = j.value("portfolio_counts_sum", c.portfolio_counts_sum);

    const auto d = j.value("discovery", nlohmann::json::object());
    c.discovery.alpha = d.value("alpha", c.discovery.alpha);
    c.discovery.max_cond_size = d.value("max_cond_size", c.discovery.max_cond_size);
    c.discovery.ccdr_grid_points = d.value("ccdr_grid_points", c.discovery.ccdr_grid_points);
    c.discovery.mcp_gamma = d.value("mcp_gamma", c.discovery.mcp_gamma);
    c.discovery.weight_threshold = d.value("weight_threshold", c.discovery.weight_threshold);
    c.discovery.per_entity_subsets = d.value("per_entity_subsets", c.discovery.per_entity_subsets);
    c.discovery.include_country_treatments =
        d.value("include_country_treatments", c.discovery.include_country_treatments);
    c.discovery.min_rows = d.value("min_rows", c.discovery.min_rows);

    const auto e = j.value("estimation", nlohmann::json::object());
    if (e.contains("methods")) c.estimation.methods = e["methods"].get<std::vector<std::string>>();
    for (const auto& jp : e.value("pairs", nlohmann::json::array()))
        c.estimation.pairs.push_back(
            {jp.at("treatment").get<std::string>(), jp.at("outcome").get<std::string>()});
    const auto f = e.value("forest", nlohmann::json::object());
    c.estimation.forest_trees = f.value("n_trees", c.estimation.forest_trees);
    c.estimation.forest_subsample = f.value("subsample_fraction", c.estimation.forest_subsample);
    c.estimation.forest_min_leaf = f.value("min_leaf", c.estimation.forest_min_leaf);
    const auto v = e.value("vaine", nlohmann::json::object());
    c.estimation.vaine_k = v.value("k", c.estimation.vaine_k);
    c.estimation.vaine_alpha = v.value("alpha", c.estimation.vaine_alpha);
    c.estimation.vaine_restarts = v.value("restarts", c.estimation.vaine_restarts);
    c.estimation.vaine_weighted_mean = v.value("weighted_mean", c.estimation.vaine_weighted_mean);
    const auto ps = e.value("psm", nlohmann::json::object());
    c.estimation.psm_caliper = ps.value("caliper_sd_multiple", c.estimation.psm_caliper);
    c.estimation.write_diagnostics = e.value("write_diagnostics", c.estimation.write_diagnostics);

    const auto t = j.value("trends", nlohmann::json::object());
    if (t.contains("persistence_group")) {
        c.trends.persistence_group.clear();
        for (const auto& g : t["persistence_group"])
            c.trends.persistence_group.insert(g.get<std::string>());
    }
    c.trends.min_recurrent_years = t.value("min_recurrent_years", c.trends.min_recurrent_years);
    if (t.contains("series_methods"))
        c.trends.series_methods = t["series_methods"].get<std::vector<std::string>>();

    c.seed = j.value("seed", c.seed);
    c.out_dir = j.value("out_dir", c.out_dir);

    if (c.first_year < kPanelMinYear || c.last_year > kPanelMaxYear || c.first_year > c.last_year)
        throw ConfigError("years must lie within [2014, 2019]");
    if (c.retire_window_years != 1 && c.retire_window_years != 2)
        throw ConfigError("retire_window_years must be 1 or 2");
    if (c.bibliographies.empty()) throw ConfigError("inputs.bibliography is required");
    return c;
}

std::string config_hash(const PipelineConfig& config) {
    const std::string dump = config_to_json(config).dump();
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(fnv1a64(dump)));
    return buf;
}

// ---------------------------------------------------------------------------
// stages
// ---------------------------------------------------------------------------

void stage_ingest(const PipelineConfig& config) {
    fs::create_directories(config.out_dir);
    std::ostringstream ss;
    for (const auto& path : config.bibliographies) {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw DataError("cannot open bibliography: " + path);
        ss << in.rdbuf() << '\n';
    }
    const BibParseResult parsed = parse_bibliography(ss.str());

    std::vector<PaperRecord> papers = parsed.records;
    if (!config.full_text_dir.empty()) {
        for (auto& paper : papers) {
            const std::string path = config.full_text_dir + "/" + paper.paper_id + ".txt";
            std::ifstream txt(path, std::ios::binary);
            if (!txt) continue;
            std::ostringstream body;
            body << txt.rdbuf();
            paper.full_text = body.str();
        }
    }

    ExpandResult expanded = expand_author_rows(papers);
    if (!config.countries.empty())
        apply_countries(expanded.rows, read_country_csv(config.countries));
    const auto joined = join_corpus_rows(papers, expanded.rows);
    write_rows_csv(out_path(config, "rows.csv"), joined);

    nlohmann::ordered_json summary;
    summary["papers"] = papers.size();
    summary["rows"] = joined.size();
    summary["skipped_no_author"] = parsed.skipped_no_author;
    summary["skipped_bad_year"] = parsed.skipped_bad_year;
    summary["parse_issues"] = parsed.issues.size();
    summary["duplicate_author_warnings"] = expanded.warnings.size();
    std::ofstream out(out_path(config, "ingest_summary.json"), std::ios::binary);
    out << summary.dump(2) << "\n";
}

void stage_entities(const PipelineConfig& config) {
    const EntityLexicon lexicon = config_lexicon(config);
    const auto rows = read_rows_csv(out_path(config, "rows.csv"));

    std::map<std::string, int> paper_year;
    for (const auto& r : rows) paper_year[r.paper_id] = r.year;

    std::vector<std::pair<std::string, int>> with_text;
    std::vector<EntityMentionSet> mentions;
    for (const auto& [paper_id, year] : paper_year) {
        const std::string path = config.full_text_dir + "/" + paper_id + ".txt";
        std::ifstream txt(path, std::ios::binary);
        if (!txt) continue;
        std::ostringstream body;
        body << txt.rdbuf();
        with_text.push_back({paper_id, year});
        EntityMentionSet m = match_entities(paper_id, body.str(), lexicon);
        if (!m.entities.empty()) mentions.push_back(std::move(m));
    }
    write_mentions_csv(out_path(config, "mentions.csv"), mentions);

    const auto coverage = coverage_by_year(mentions, with_text);
    std::vector<std::vector<std::string>> cov_rows;
    for (const auto& yc : coverage)
        cov_rows.push_back({std::to_string(yc.year), format_double(yc.pct_with_entity),
                            std::to_string(yc.papers_with_entity),
                            std::to_string(yc.papers_with_full_text)});
    write_csv_file(out_path(config, "coverage.csv"),
                   {"year", "pct_with_entity", "papers_with_entity", "papers_with_full_text"},
                   cov_rows);
}

void stage_network(const PipelineConfig& config) {
    const auto rows = read_rows_csv(out_path(config, "rows.csv"));
    const auto stats = build_author_year_stats(rows, config_years(config));
    write_network_csv(out_path(config, "network.csv"), stats);
}

void stage_panel(const PipelineConfig& config) {
    const auto rows = read_rows_csv(out_path(config, "rows.csv"));
    const auto mentions = read_mentions_csv(out_path(config, "mentions.csv"));
    const auto stats = read_network_csv(out_path(config, "network.csv"));
    PanelConfig pc;
    pc.retire_window_years = config.retire_window_years;
    pc.portfolio_counts_sum = config.portfolio_counts_sum;
    const Granularity gran = config_granularity(config);
    for (int year : config_years(config)) {
        const AnalysisPanel panel = build_panel(rows, mentions, stats, year, gran, pc);
        write_panel_csv(out_path(config, "panel_" + std::to_string(year) + "_" +
                                             granularity_name(gran) + ".csv"),
                        panel);
    }
}

namespace {

AnalysisPanel load_panel(const PipelineConfig& config, int year) {
    AnalysisPanel panel = read_panel_csv(out_path(
        config, "panel_" + std::to_string(year) + "_" +
                    granularity_name(config_granularity(config)) + ".csv"));
    panel.year = year;
    panel.granularity = config_granularity(config);
    return panel;
}

bool column_varies(const std::vector<double>& col) {
    for (double v : col)
        if (v != col[0]) return true;
    return false;
}

// run the four algorithms over one column subset and merge
std::optional<EnsembleGraph> discover_subset(const PanelView& view,
                                             const DiscoveryParams& params) {
    // keep variable columns only
    std::vector<std::string> names;
    std::vector<std::vector<double>> cols;
    for (size_t i = 0; i < view.names.size(); ++i) {
        if (!column_varies(view.columns[i])) continue;
        names.push_back(view.names[i]);
        cols.push_back(view.columns[i]);
    }
    if (names.size() < 2 || cols[0].size() < 10) return std::nullopt;
    const size_t n = cols[0].size();

    std::vector<std::vector<double>> standardized_cols;
    standardized_cols.reserve(cols.size());
    for (const auto& c : cols) standardized_cols.push_back(standardize(c));

    const auto cache = CorrelationCache::from_columns(cols);
    PcConfig pc_cfg;
    pc_cfg.alpha = params.alpha;
    pc_cfg.max_cond_size = params.max_cond_size;
    const Cpdag pc_graph = pc(names, cache, pc_cfg);

    const BicScore score(covariance_matrix(cols), n);
    const Cpdag ges_graph = ges(names, score);

    MmpcConfig mmpc_cfg;
    mmpc_cfg.alpha = params.alpha;
    mmpc_cfg.max_cond_size = params.max_cond_size;
    const Cpdag mmpc_graph = mmpc(names, cache, mmpc_cfg);

    CcdrConfig ccdr_cfg;
    ccdr_cfg.mcp_gamma = params.mcp_gamma;
    const auto ccdr_path = ccdr_bic_path(names, standardized_cols, params.ccdr_grid_points,
                                         ccdr_cfg);

    return ensemble_merge({pc_graph, ges_graph, mmpc_graph, ccdr_path.best.graph});
}

}  // namespace

void stage_discover(const PipelineConfig& config) {
    fs::create_directories(out_path(config, "graphs"));
    const Granularity gran = config_granularity(config);
    (void)gran;
    for (int year : config_years(config)) {
        const AnalysisPanel panel = load_panel(config, year);

        struct Job {
            std::string label;
            std::vector<std::string> columns;
        };
        std::vector<Job> jobs;
        if (config.discovery.per_entity_subsets) {
            for (const char* entity : kCanonicalEntities) {
                const std::string slug = slugify(entity);
                std::vector<std::string> cols = covariate_names();
                cols.push_back("publish_" + slug);
                cols.push_back("adopt_" + slug);
                cols.push_back("maintain_" + slug);
                cols.push_back("retire_" + slug);
                cols.push_back("pub_increase_rate");
                cols.push_back("paused");
                cols.push_back("persistent");
                if (config.discovery.include_country_treatments)
                    for (size_t k = 50; k < treatment_names().size(); ++k)
                        cols.push_back(treatment_names()[k]);
                jobs.push_back({slug, std::move(cols)});
            }
        } else {
            std::vector<std::string> cols = covariate_names();
            for (const auto& t : treatment_names()) cols.push_back(t);
            for (const auto& o : outcome_names()) cols.push_back(o);
            jobs.push_back({"full", std::move(cols)});
        }

        std::vector<std::optional<EnsembleGraph>> results(jobs.size());
        parallel_for(jobs.size(), [&](size_t i) {
            PanelView view = extract_columns(panel, jobs[i].columns);
            if (view.unit_indices.size() < config.discovery.min_rows) return;
            // skip subsets whose treatment column is constant
            if (config.discovery.per_entity_subsets) {
                const auto& publish = view.columns[kNumCovariates];
                if (!column_varies(publish)) return;
            }
            results[i] = discover_subset(view, config.discovery);
        });

        nlohmann::ordered_json index;
        index["year"] = year;
        nlohmann::ordered_json files = nlohmann::ordered_json::array();
        for (size_t i = 0; i < jobs.size(); ++i) {
            if (!results[i]) continue;
            results[i]->year = year;
            const std::string name =
                "ensemble_" + std::to_string(year) + "_" + jobs[i].label + ".json";
            std::ofstream out(out_path(config, "graphs/" + name), std::ios::binary);
            if (!out) throw DataError("cannot write graph file " + name);
            out << ensemble_graph_to_json(*results[i]);
            files.push_back({{"subset", jobs[i].label}, {"file", name}});
        }
        index["graphs"] = files;
        std::ofstream out(out_path(config, "graphs/index_" + std::to_string(year) + ".json"),
                          std::ios::binary);
        out << index.dump(2) << "\n";
    }
}

namespace {

std::map<int, std::vector<EnsembleGraph>> load_yearly_graphs(const PipelineConfig& config) {
    std::map<int, std::vector<EnsembleGraph>> yearly;
    for (int year : config_years(config)) {
        const std::string index_path =
            out_path(config, "graphs/index_" + std::to_string(year) + ".json");
        std::ifstream in(index_path);
        if (!in) throw DataError("missing discovery index: " + index_path);
        nlohmann::json index;
        in >> index;
        auto& list = yearly[year];
        for (const auto& entry : index.at("graphs")) {
            const std::string file = entry.at("file").get<std::string>();
            std::ifstream g(out_path(config, "graphs/" + file), std::ios::binary);
            if (!g) throw DataError("missing graph file: " + file);
            std::ostringstream ss;
            ss << g.rdbuf();
            list.push_back(ensemble_graph_from_json(ss.str()));
        }
    }
    return yearly;
}

ReportBundle assemble_bundle(const PipelineConfig& config) {
    ReportBundle bundle;
    bundle.year_min = config.first_year;
    bundle.year_max = config.last_year;

    const auto yearly = load_yearly_graphs(config);
    for (const char* family : {"retire", "maintain"}) {
        GridFilter filter;
        filter.outcome_family = family;
        filter.min_weight = config.discovery.weight_threshold;
        bundle.grids.push_back(persistence_grid(yearly, filter));
    }
    bundle.overlap = overlap_summary(bundle.grids[0], bundle.grids[1]);
    bundle.recurrent = recurrent_edges(yearly, config.trends.min_recurrent_years,
                                       config.discovery.weight_threshold);

    const auto estimates = read_estimates_csv(out_path(config, "estimates.csv"));
    for (const auto& pair : config.estimation.pairs) {
        bundle.series.push_back(effect_time_series(estimates, pair.treatment, pair.outcome,
                                                   config_years(config),
                                                   config.trends.series_methods));
    }

    const auto rows = read_rows_csv(out_path(config, "rows.csv"));
    const auto mentions = read_mentions_csv(out_path(config, "mentions.csv"));
    for (int year : config_years(config)) {
        bundle.persistence_pcts.push_back(
            {year, persistence_pct(rows, mentions, config.trends.persistence_group, year)});
    }
    return bundle;
}

}  // namespace

void stage_estimate(const PipelineConfig& config) {
    std::vector<AteEstimate> all;
    for (int year : config_years(config)) {
        const AnalysisPanel panel = load_panel(config, year);
        for (const auto& pair : config.estimation.pairs) {
            const EffectInput input = effect_input_from_panel(panel, pair.treatment, pair.outcome);
            for (const auto& method : config.estimation.methods) {
                const std::string label = "estimate_" + method + "_" + pair.treatment + "_" +
                                          pair.outcome + "_" + std::to_string(year);
                AteEstimate est;
                if (method == "naive") {
                    est = naive_ate(input);
                } else if (method == "psm") {
                    PsmConfig pc{config.estimation.psm_caliper};
                    est = psm_ate(input, pc);
                } else if (method == "causal_forest") {
                    ForestConfig fc;
                    fc.n_trees = config.estimation.forest_trees;
                    fc.subsample_fraction = config.estimation.forest_subsample;
                    fc.min_leaf = config.estimation.forest_min_leaf;
                    est = causal_forest_ate(input, fc, derive_seed(config.seed, label));
                } else if (method == "vaine") {
                    VaineConfig vc;
                    vc.k = config.estimation.vaine_k;
                    vc.alpha = config.estimation.vaine_alpha;
                    vc.restarts = config.estimation.vaine_restarts;
                    vc.weighted_mean = config.estimation.vaine_weighted_mean;
                    est = vaine_ate(input, vc, derive_seed(config.seed, label));
                } else {
                    throw ConfigError("unknown estimation method: " + method);
                }
                est.treatment = pair.treatment;
                est.outcome = pair.outcome;
                est.year = year;
                all.push_back(std::move(est));
            }
        }
    }
    write_estimates_csv(out_path(config, "estimates.csv"), all);
    if (config.estimation.write_diagnostics) {
        nlohmann::ordered_json diag = nlohmann::ordered_json::array();
        for (const auto& est : all) {
            nlohmann::ordered_json cell;
            cell["method"] = est.method;
            cell["treatment"] = est.treatment;
            cell["outcome"] = est.outcome;
            cell["year"] = est.year;
            cell["defined"] = est.defined;
            nlohmann::ordered_json values = nlohmann::ordered_json::object();
            for (const auto& [key, value] : est.diagnostics) values[key] = value;
            cell["diagnostics"] = values;
            if (!est.groups.empty()) {
                nlohmann::ordered_json groups = nlohmann::ordered_json::array();
                for (const auto& g : est.groups) {
                    groups.push_back({{"size", g.size},
                                      {"n_treated", g.n_treated},
                                      {"effect", g.effect},
                                      {"p_value", g.p_value},
                                      {"retained", g.retained}});
                }
                cell["groups"] = groups;
            }
            diag.push_back(cell);
        }
        std::ofstream out(out_path(config, "estimates_diagnostics.json"), std::ios::binary);
        out << diag.dump(2) << "\n";
    }
}

void stage_trends(const PipelineConfig& config) {
    fs::create_directories(out_path(config, "reports"));
    const ReportBundle bundle = assemble_bundle(config);
    const std::string span =
        std::to_string(bundle.year_min) + "-" + std::to_string(bundle.year_max);
    for (const auto& grid : bundle.grids)
        write_grid_csv(out_path(config, "reports/persistence_" + grid.outcome_family + "_" +
                                            span + ".csv"),
                       grid);
    if (bundle.overlap)
        write_overlap_csv(out_path(config, "reports/overlap_" + span + ".csv"), *bundle.overlap);
    for (const auto& series : bundle.series) {
        write_series_csv(out_path(config, "reports/effects_" + slugify(series.treatment) + "__" +
                                              slugify(series.outcome) + "_" + span + ".csv"),
                         series);
    }
    write_persistence_pct_csv(out_path(config, "reports/persistence_pct_" + span + ".csv"),
                              bundle.persistence_pcts);
    write_recurrent_csv(out_path(config, "reports/recurrent_edges_" + span + ".csv"),
                        bundle.recurrent);
}

void stage_report(const PipelineConfig& config) {
    fs::create_directories(out_path(config, "reports"));
    const ReportBundle bundle = assemble_bundle(config);
    const std::string span =
        std::to_string(bundle.year_min) + "-" + std::to_string(bundle.year_max);
    for (const auto& grid : bundle.grids)
        render_grid_svg(out_path(config, "reports/persistence_" + grid.outcome_family + "_" +
                                             span + ".svg"),
                        grid);
    for (const auto& series : bundle.series) {
        render_series_svg(out_path(config, "reports/effects_" + slugify(series.treatment) + "__" +
                                               slugify(series.outcome) + "_" + span + ".svg"),
                          series);
    }
    render_persistence_pct_svg(out_path(config, "reports/persistence_pct_" + span + ".svg"),
                               bundle.persistence_pcts);
}

void run_pipeline(const PipelineConfig& config) {
    const auto started = std::chrono::steady_clock::now();
    fs::create_directories(config.out_dir);

    nlohmann::ordered_json manifest;
    manifest["schema_version"] = 1;
    manifest["version"] = kVersion;
    manifest["config_hash"] = config_hash(config);
    manifest["seed"] = config.seed;
    manifest["threads"] = thread_count();
    nlohmann::ordered_json stages = nlohmann::ordered_json::object();
    for (const auto& name : pipeline_stage_names()) stages[name] = "pending";

    const auto write_manifest = [&](const std::string& failed) {
        manifest["stages"] = stages;
        if (failed.empty()) manifest["failed_stage"] = nullptr;
        else manifest["failed_stage"] = failed;
        manifest["wall_clock_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(
                                        std::chrono::steady_clock::now() - started)
                                        .count();
        std::ofstream out(out_path(config, "manifest.json"), std::ios::binary);
        out << manifest.dump(2) << "\n";
    };

    using StageFn = void (*)(const PipelineConfig&);
    const std::vector<std::pair<std::string, StageFn>> plan = {
        {"ingest", stage_ingest},     {"entities", stage_entities},
        {"network", stage_network},   {"panel", stage_panel},
        {"discover", stage_discover}, {"estimate", stage_estimate},
        {"trends", stage_trends},     {"report", stage_report}};
    for (const auto& [name, fn] : plan) {
        try {
            fn(config);
            stages[name] = "ok";
        } catch (...) {
            stages[name] = "failed";
            write_manifest(name);
            throw;
        }
    }
    write_manifest("");
}

}  // namespace pubcausal
