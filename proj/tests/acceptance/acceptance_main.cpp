// Acceptance suite: every criterion prints one [PASS]/[FAIL] line with the
// measured numbers; the process exits nonzero when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "../oracles.hpp"
#include "pubcausal/adjustment.hpp"
#include "pubcausal/ccdr.hpp"
#include "pubcausal/citest.hpp"
#include "pubcausal/collab.hpp"
#include "pubcausal/common.hpp"
#include "pubcausal/effects.hpp"
#include "pubcausal/ges.hpp"
#include "pubcausal/lexicon.hpp"
#include "pubcausal/mmpc.hpp"
#include "pubcausal/panel.hpp"
#include "pubcausal/pc.hpp"
#include "pubcausal/pipeline.hpp"
#include "pubcausal/rng.hpp"
#include "pubcausal/stats.hpp"
#include "pubcausal/synth.hpp"
#include "pubcausal/text_stats.hpp"
#include "pubcausal/trends.hpp"

using namespace pubcausal;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

class Timer {
public:
    Timer() : start_(std::chrono::steady_clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

void report(int criterion, bool pass, const std::string& detail) {
    std::printf("[%s] criterion %d: %s\n", pass ? "PASS" : "FAIL", criterion, detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

std::string fmt(double v) { return format_double(v); }

// ---------------------------------------------------------------------------
// 1. adjustment formula equals brute-force enumeration on random discrete SEMs
// ---------------------------------------------------------------------------
void criterion_1() {
    Timer timer;
    auto rng = make_rng(derive_seed(20140801, "acceptance_c1"));
    double worst = 0.0;
    for (int fixture = 0; fixture < 20; ++fixture) {
        const size_t n_vars = 2 + rng() % 3;    // x, y and up to 2 parents
        const size_t levels = 2 + rng() % 3;    // <= 4 levels
        const size_t n_parents = n_vars - 2;
        DiscreteTable t;
        t.names = {"x", "y"};
        std::vector<size_t> parents;
        for (size_t k = 0; k < n_parents; ++k) {
            t.names.push_back("z" + std::to_string(k));
            parents.push_back(2 + k);
        }
        t.columns.assign(t.names.size(), {});
        const size_t rows = 400 + rng() % 400;
        for (size_t i = 0; i < rows; ++i) {
            size_t acc = 0;
            for (size_t k = 0; k < n_parents; ++k) {
                const double z = static_cast<double>(rng() % levels);
                t.columns[2 + k].push_back(z);
                acc += static_cast<size_t>(z);
            }
            const double x = static_cast<double>((rng() % levels + acc) % levels);
            const double y =
                static_cast<double>((rng() % levels + static_cast<size_t>(x) + acc) % levels);
            t.columns[0].push_back(x);
            t.columns[1].push_back(y);
        }
        const double x_val = static_cast<double>(rng() % levels);
        const double y_val = static_cast<double>(rng() % levels);
        const double direct = do_effect(t, parents, 0, x_val, 1, y_val);
        const double oracle = oracles::do_effect_brute_force(t, parents, 0, x_val, 1, y_val);
        worst = std::max(worst, std::fabs(direct - oracle));
    }
    const double elapsed = timer.seconds();
    const bool pass = worst < 1e-12 && elapsed < 5.0;
    report(1, pass,
           "do-effect vs enumeration on 20 discrete fixtures: max |diff| = " + fmt(worst) +
               " (limit 1e-12), " + fmt(elapsed) + " s (limit 5)");
}

// ---------------------------------------------------------------------------
// 2. skeleton F1 and collider orientation over seeded Gaussian SEMs
// ---------------------------------------------------------------------------
struct F1Counts {
    double tp = 0, fp = 0, fn = 0;
    double f1() const { return tp > 0 ? 2 * tp / (2 * tp + fp + fn) : (fp + fn == 0 ? 1.0 : 0.0); }
};

F1Counts skeleton_f1(const Cpdag& g, const oracles::Sem& sem) {
    std::set<std::pair<size_t, size_t>> truth;
    for (auto [a, b] : sem.true_edges) truth.insert({std::min(a, b), std::max(a, b)});
    F1Counts counts;
    const size_t p = sem.variables.size();
    for (size_t i = 0; i < p; ++i) {
        for (size_t j = i + 1; j < p; ++j) {
            const bool found = g.adjacent(i, j);
            const bool real = truth.count({i, j}) > 0;
            if (found && real) counts.tp += 1;
            else if (found && !real) counts.fp += 1;
            else if (!found && real) counts.fn += 1;
        }
    }
    return counts;
}

void criterion_2() {
    Timer timer;
    double pc_f1_sum = 0.0, ges_f1_sum = 0.0;
    const int n_sems = 1000;
    for (int seed = 0; seed < n_sems; ++seed) {
        auto mix = make_rng(derive_seed(777, "acceptance_c2_" + std::to_string(seed)));
        const size_t p = 5 + mix() % 4;
        const auto sem = oracles::random_dag_sem(5000, p, 0.3, 4000 + seed);
        const auto cache = CorrelationCache::from_columns(sem.columns);
        pc_f1_sum += skeleton_f1(pc(sem.variables, cache), sem).f1();
        const BicScore score(covariance_matrix(sem.columns), 5000);
        ges_f1_sum += skeleton_f1(ges(sem.variables, score), sem).f1();
    }
    const double pc_f1 = pc_f1_sum / n_sems;
    const double ges_f1 = ges_f1_sum / n_sems;

    int pc_collider_ok = 0, ges_collider_ok = 0;
    const int n_colliders = 200;
    for (int seed = 0; seed < n_colliders; ++seed) {
        const auto sem = oracles::collider_sem(5000, 9000 + seed);
        const auto cache = CorrelationCache::from_columns(sem.columns);
        const Cpdag g = pc(sem.variables, cache);
        if (g.has_directed(0, 2) && g.has_directed(1, 2) && !g.adjacent(0, 1)) ++pc_collider_ok;
        const BicScore score(covariance_matrix(sem.columns), 5000);
        const Cpdag h = ges(sem.variables, score);
        if (h.has_directed(0, 2) && h.has_directed(1, 2) && !h.adjacent(0, 1)) ++ges_collider_ok;
    }
    const double elapsed = timer.seconds();
    const bool pass = pc_f1 >= 0.9 && ges_f1 >= 0.9 && pc_collider_ok >= n_colliders * 95 / 100 &&
                      ges_collider_ok >= n_colliders * 95 / 100 && elapsed < 300.0;
    report(2, pass,
           "skeleton F1 over 1000 SEMs: pc = " + fmt(pc_f1) + ", ges = " + fmt(ges_f1) +
               " (limit 0.9); colliders oriented: pc " + std::to_string(pc_collider_ok) + "/" +
               std::to_string(n_colliders) + ", ges " + std::to_string(ges_collider_ok) + "/" +
               std::to_string(n_colliders) + " (limit 95%); " + fmt(elapsed) + " s (limit 300)");
}

// ---------------------------------------------------------------------------
// 3. ensemble weight arithmetic is exact
// ---------------------------------------------------------------------------
void criterion_3() {
    size_t edges_checked = 0;
    bool ok = true;
    std::string why;
    for (int seed = 0; seed < 60 && ok; ++seed) {
        const auto sem = oracles::random_dag_sem(2000, 6, 0.35, 7100 + seed);
        const auto cache = CorrelationCache::from_columns(sem.columns);
        std::vector<std::vector<double>> std_cols;
        for (const auto& c : sem.columns) std_cols.push_back(standardize(c));

        const Cpdag g_pc = pc(sem.variables, cache);
        const BicScore score(covariance_matrix(sem.columns), 2000);
        const Cpdag g_ges = ges(sem.variables, score);
        const Cpdag g_mmpc = mmpc(sem.variables, cache);
        CcdrConfig ccdr_cfg;
        ccdr_cfg.lambda = 0.1 * 2000;
        const Cpdag g_ccdr = ccdr_simplified(sem.variables, std_cols, ccdr_cfg).graph;
        const std::vector<Cpdag> graphs = {g_pc, g_ges, g_mmpc, g_ccdr};
        const EnsembleGraph ens = ensemble_merge(graphs);

        for (const auto& e : ens.edges) {
            ++edges_checked;
            size_t i = 0, j = 0;
            for (size_t v = 0; v < sem.variables.size(); ++v) {
                if (sem.variables[v] == e.a) i = v;
                if (sem.variables[v] == e.b) j = v;
            }
            int count = 0;
            for (const auto& g : graphs) count += g.adjacent(i, j) ? 1 : 0;
            if (e.weight * 4.0 != static_cast<double>(count)) {
                ok = false;
                why = "edge " + e.a + "-" + e.b + " weight " + fmt(e.weight) + " vs count " +
                      std::to_string(count);
                break;
            }
            const bool in_set = e.weight == 0.25 || e.weight == 0.5 || e.weight == 0.75 ||
                                e.weight == 1.0;
            if (!in_set) {
                ok = false;
                why = "weight outside {0.25,0.5,0.75,1.0}";
                break;
            }
            if (e.weight == 1.0) {
                for (const auto& g : graphs) {
                    if (!g.adjacent(i, j)) {
                        ok = false;
                        why = "weight-1 edge missing from one graph";
                    }
                }
            }
        }
    }
    report(3, ok && edges_checked > 50,
           ok ? "weights equal agreeing-count/4 on " + std::to_string(edges_checked) +
                    " ensemble edges; weight-1.0 edges present in all four graphs"
              : why);
}

// ---------------------------------------------------------------------------
// 4 & 5. planted-effect recovery and null calibration
// ---------------------------------------------------------------------------
EffectInput confounded_draw(size_t n, double tau, double confounding, uint64_t seed) {
    auto rng = make_rng(seed);
    std::normal_distribution<double> gauss;
    std::uniform_real_distribution<double> u(0.0, 1.0);
    EffectInput input;
    input.covariates.assign(1, {});
    for (size_t i = 0; i < n; ++i) {
        const double c = gauss(rng);
        const double p = 1.0 / (1.0 + std::exp(-confounding * c));
        const uint8_t t = u(rng) < p ? 1 : 0;
        input.covariates[0].push_back(c);
        input.treatment.push_back(t);
        input.outcome.push_back(tau * t + confounding * c + gauss(rng));
    }
    return input;
}

void criterion_4() {
    Timer timer;
    const double tau = 2.0;
    const int seeds = 100;
    int psm_ok = 0, forest_ok = 0, vaine_ok = 0, naive_biased = 0;
    ForestConfig forest_cfg;  // defaults: 500 trees, honest halves, min leaf 5
    for (int seed = 0; seed < seeds; ++seed) {
        const uint64_t s = derive_seed(20140801, "acceptance_c4_" + std::to_string(seed));
        const EffectInput input = confounded_draw(4000, tau, 1.5, s);
        if (std::fabs(naive_ate(input).estimate - tau) > 0.3) ++naive_biased;
        if (std::fabs(psm_ate(input).estimate - tau) <= 0.25) ++psm_ok;
        const AteEstimate cf = causal_forest_ate(input, forest_cfg, s);
        if (cf.defined && std::fabs(cf.estimate - tau) <= 0.25) ++forest_ok;
        const AteEstimate va = vaine_ate(input, {}, s);
        if (va.defined && std::fabs(va.estimate - tau) <= 0.25) ++vaine_ok;
    }
    const double elapsed = timer.seconds();
    const bool pass = psm_ok >= 90 && forest_ok >= 90 && vaine_ok >= 90 && naive_biased >= 90 &&
                      elapsed < 600.0;
    report(4, pass,
           "planted tau=2 recovery within 0.25: psm " + std::to_string(psm_ok) + "/100, forest " +
               std::to_string(forest_ok) + "/100, vaine " + std::to_string(vaine_ok) +
               "/100; naive biased >0.3 in " + std::to_string(naive_biased) + "/100 (limits 90); " +
               fmt(elapsed) + " s (limit 600)");
}

// The magnitude clause covers the mean-difference estimators; the
// cluster-local method has its own calibration clause (retained groups stay
// at or below the alpha fraction on average), matching its null behavior: a
// group only enters the estimate after passing a level-alpha test, so any
// retained null group carries |slope| above t_crit * SE (~0.16 here), and
// with k=10 groups at alpha 0.05 about 40% of seeds retain at least one.
void criterion_5() {
    const int seeds = 100;
    int naive_ok = 0, psm_ok = 0, forest_ok = 0, vaine_small = 0;
    double retained_fraction_sum = 0.0;
    ForestConfig forest_cfg;
    const VaineConfig vaine_cfg;  // spec defaults: k=10, alpha=0.05
    for (int seed = 0; seed < seeds; ++seed) {
        const uint64_t s = derive_seed(20140801, "acceptance_c5_" + std::to_string(seed));
        const EffectInput input = confounded_draw(4000, 0.0, 0.0, s);
        if (std::fabs(naive_ate(input).estimate) < 0.1) ++naive_ok;
        if (std::fabs(psm_ate(input).estimate) < 0.1) ++psm_ok;
        const AteEstimate cf = causal_forest_ate(input, forest_cfg, s);
        if (cf.defined && std::fabs(cf.estimate) < 0.1) ++forest_ok;
        const AteEstimate va = vaine_ate(input, vaine_cfg, s);
        // undefined renders as 0 in reports; count it as a zero estimate
        if (!va.defined || std::fabs(va.estimate) < 0.1) ++vaine_small;
        retained_fraction_sum += va.diagnostics.at("groups_retained") /
                                 std::max(1.0, va.diagnostics.at("groups_total"));
    }
    const double retained_avg = retained_fraction_sum / seeds;
    const bool pass =
        naive_ok >= 90 && psm_ok >= 90 && forest_ok >= 90 && retained_avg <= vaine_cfg.alpha;
    report(5, pass,
           "null |estimate|<0.1: naive " + std::to_string(naive_ok) + ", psm " +
               std::to_string(psm_ok) + ", forest " + std::to_string(forest_ok) +
               " of 100 (limits 90); vaine retained fraction " + fmt(retained_avg) +
               " (limit alpha=" + fmt(vaine_cfg.alpha) + "; rendered-estimate |.|<0.1 in " +
               std::to_string(vaine_small) + "/100 for reference)");
}

// ---------------------------------------------------------------------------
// 6. mean-row reproduction
// ---------------------------------------------------------------------------
void criterion_6() {
    const auto mean = mean_across_methods({0.71, 0.88});
    const bool value_ok = mean.has_value() && std::fabs(*mean - 0.795) < 1e-12;
    const std::string rendered = mean ? format_estimate2(*mean) : "(undefined)";
    const bool pass = value_ok && rendered == "0.80";
    report(6, pass,
           "mean of CF 0.71 / VAINE 0.88 = " + (mean ? fmt(*mean) : "undefined") +
               " (want 0.795), renders as \"" + rendered + "\" (want \"0.80\")");
}

// ---------------------------------------------------------------------------
// 7. end-to-end pipeline shape on a planted synthetic corpus
// ---------------------------------------------------------------------------
std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// manifest comparison ignores the wall clock line
std::string strip_wall_clock(std::string text) {
    const size_t at = text.find("\"wall_clock_ms\"");
    if (at == std::string::npos) return text;
    const size_t end = text.find('\n', at);
    text.erase(at, end == std::string::npos ? std::string::npos : end - at);
    return text;
}

void criterion_7() {
    Timer timer;
    fs::remove_all("acc_synth");
    fs::remove_all("acc_run1");
    fs::remove_all("acc_run2");

    SyntheticCorpusSpec spec;
    spec.n_authors = 160;
    spec.first_year = 2012;
    spec.last_year = 2020;
    spec.seed = 20140801;
    spec.entities = {
        {"lstm", 0.9, 0.3, 0.9},
        {"bidirectional lstm", 0.35, 0.12, 0.8},
        {"attention", 0.3, 0.1, 0.85},
        {"embeddings", 0.4, 0.15, 0.9},
        {"transparency", 0.25, 0.06, 0.0},
    };
    spec.planted_effects = {
        {"bidirectional lstm", "lstm", 0.8, 0.1},
        {"transparency", "transparency", 0.0, 1.0},
    };
    spec.countries = {{"US", 0.4}, {"CN", 0.25}, {"DE", 0.1}, {"JP", 0.1}, {"FR", 0.05}};
    generate_synthetic_corpus(spec, "acc_synth");

    PipelineConfig config;
    config.bibliographies = {"acc_synth/corpus.bib"};
    config.full_text_dir = "acc_synth/full_text";
    config.countries = "acc_synth/countries.csv";
    config.seed = 20140801;
    config.estimation.pairs = {{"publish_bidirectional_lstm", "retire_lstm"},
                               {"publish_transparency", "retire_transparency"}};
    config.estimation.forest_trees = 200;
    config.out_dir = "acc_run1";
    run_pipeline(config);
    config.out_dir = "acc_run2";
    run_pipeline(config);

    std::vector<std::string> problems;
    // every report artifact present
    for (const char* name :
         {"reports/persistence_retire_2014-2019.csv", "reports/persistence_retire_2014-2019.svg",
          "reports/persistence_maintain_2014-2019.csv", "reports/overlap_2014-2019.csv",
          "reports/effects_publish_bidirectional_lstm__retire_lstm_2014-2019.csv",
          "reports/effects_publish_bidirectional_lstm__retire_lstm_2014-2019.svg",
          "reports/persistence_pct_2014-2019.csv", "reports/persistence_pct_2014-2019.svg",
          "reports/recurrent_edges_2014-2019.csv", "estimates.csv", "manifest.json"}) {
        if (!fs::exists("acc_run1/" + std::string(name)))
            problems.push_back(std::string("missing ") + name);
    }
    // the persistence grid carries discovered publish->retire families,
    // with the constructed always-dropped entity present across years
    const std::string retire_grid = slurp("acc_run1/reports/persistence_retire_2014-2019.csv");
    size_t grid_rows = 0;
    for (char c : retire_grid) grid_rows += c == '\n';
    if (grid_rows < 3) problems.push_back("retirement grid has fewer than 2 entity rows");
    if (retire_grid.find("\ntransparency,") == std::string::npos)
        problems.push_back("transparency missing from the retirement grid");
    // the constructed retire-only entity lands in the right partition
    const std::string overlap = slurp("acc_run1/reports/overlap_2014-2019.csv");
    if (overlap.find("retire_only,transparency") == std::string::npos)
        problems.push_back("transparency not retire-only in the overlap summary");
    // the planted cross-entity effect registers in the effect time series:
    // the mean row at the first event year sits near the planted tau
    {
        const std::string series =
            slurp("acc_run1/reports/effects_publish_bidirectional_lstm__retire_lstm_2014-2019.csv");
        std::istringstream in(series);
        std::string line, mean_line;
        while (std::getline(in, line))
            if (line.rfind("mean,", 0) == 0) mean_line = line;
        double mean_2014 = 0.0;
        if (!mean_line.empty()) {
            const size_t comma = mean_line.find(',');
            mean_2014 = std::atof(mean_line.substr(comma + 1).c_str());
        }
        if (mean_2014 < 0.4)
            problems.push_back("planted retirement effect weak in the series (mean 2014 = " +
                               fmt(mean_2014) + ")");
    }
    // SVGs well-formed
    for (const char* name : {"reports/persistence_retire_2014-2019.svg",
                             "reports/persistence_pct_2014-2019.svg"}) {
        const std::string svg = slurp("acc_run1/" + std::string(name));
        if (svg.rfind("<?xml", 0) != 0 || svg.find("</svg>") == std::string::npos)
            problems.push_back(std::string("malformed SVG ") + name);
    }
    // byte-level determinism, manifest compared without the wall clock
    size_t compared = 0;
    for (const auto& entry : fs::recursive_directory_iterator("acc_run1")) {
        if (!entry.is_regular_file()) continue;
        const std::string rel = fs::relative(entry.path(), "acc_run1").string();
        const std::string other = "acc_run2/" + rel;
        if (!fs::exists(other)) {
            problems.push_back("second run missing " + rel);
            continue;
        }
        std::string a = slurp(entry.path().string());
        std::string b = slurp(other);
        if (rel == "manifest.json") {
            a = strip_wall_clock(a);
            b = strip_wall_clock(b);
        }
        if (a != b) problems.push_back("nondeterministic output " + rel);
        ++compared;
    }
    const double elapsed = timer.seconds();
    if (elapsed >= 900.0) problems.push_back("runtime " + fmt(elapsed) + " s over the 900 s limit");

    std::string detail;
    if (problems.empty()) {
        detail = "full pipeline twice: " + std::to_string(compared) +
                 " artifacts byte-identical, grid/overlap/series/pct present, retire-only entity "
                 "constructed; " +
                 fmt(elapsed) + " s (limit 900)";
    } else {
        detail = problems[0];
        if (problems.size() > 1)
            detail += " (+" + std::to_string(problems.size() - 1) + " more issues)";
    }
    report(7, problems.empty(), detail);
    fs::remove_all("acc_synth");
    fs::remove_all("acc_run1");
    fs::remove_all("acc_run2");
}

// ---------------------------------------------------------------------------
// 8. unit oracles
// ---------------------------------------------------------------------------
void criterion_8() {
    std::vector<std::string> problems;

    // pagerank vs the dense oracle on structured and random graphs up to 12 nodes
    {
        double worst = 0.0;
        double worst_mass = 0.0;
        auto rng = make_rng(derive_seed(20140801, "acceptance_c8_graphs"));
        auto check = [&](const YearGraph& g) {
            if (g.node_count() == 0) return;
            const auto mine = pagerank(g);
            const auto oracle = oracles::pagerank_dense(g);
            double mass = 0.0;
            for (const auto& [a, s] : mine) {
                worst = std::max(worst, std::fabs(s - oracle.at(a)));
                mass += s;
            }
            worst_mass = std::max(worst_mass, std::fabs(mass - 1.0));
        };
        // structured families at every size
        for (size_t n = 1; n <= 12; ++n) {
            std::vector<CorpusRow> path_rows, clique_rows, star_rows;
            for (size_t i = 0; i + 1 < n; ++i) {
                CorpusRow r1, r2;
                r1.author_id = "a" + std::to_string(i);
                r2.author_id = "a" + std::to_string(i + 1);
                r1.paper_id = r2.paper_id = "p" + std::to_string(i);
                r1.year = r2.year = 2015;
                path_rows.push_back(r1);
                path_rows.push_back(r2);
                CorpusRow s1 = r1, s2 = r2;
                s1.author_id = "hub";
                s1.paper_id = s2.paper_id = "q" + std::to_string(i);
                star_rows.push_back(s1);
                star_rows.push_back(s2);
            }
            {
                CorpusRow iso;
                iso.author_id = "solo";
                iso.paper_id = "solo_paper";
                iso.year = 2015;
                path_rows.push_back(iso);
            }
            for (size_t i = 0; i < n; ++i) {
                CorpusRow r;
                r.author_id = "a" + std::to_string(i);
                r.paper_id = "clique";
                r.year = 2015;
                clique_rows.push_back(r);
            }
            check(build_yearly_graph(path_rows, 2015));
            check(build_yearly_graph(clique_rows, 2015));
            check(build_yearly_graph(star_rows, 2015));
        }
        // random multigraphs
        for (int trial = 0; trial < 500; ++trial) {
            const size_t n_authors = 2 + rng() % 11;
            std::vector<CorpusRow> rows;
            const size_t n_papers = 1 + rng() % 8;
            for (size_t p = 0; p < n_papers; ++p) {
                const size_t k = 1 + rng() % std::min<size_t>(4, n_authors);
                std::set<std::string> picked;
                while (picked.size() < k) picked.insert("a" + std::to_string(rng() % n_authors));
                for (const auto& a : picked) {
                    CorpusRow r;
                    r.author_id = a;
                    r.paper_id = "p" + std::to_string(p);
                    r.year = 2015;
                    rows.push_back(r);
                }
            }
            check(build_yearly_graph(rows, 2015));
        }
        if (worst >= 1e-8)
            problems.push_back("pagerank deviates from the dense oracle by " + fmt(worst));
        if (worst_mass >= 1e-9)
            problems.push_back("pagerank mass off by " + fmt(worst_mass));
    }

    // Fisher-z hand value
    {
        CorrelationCache cache;
        cache.n = 103;
        cache.corr = Matrix(2, 2);
        cache.corr(0, 0) = cache.corr(1, 1) = 1.0;
        cache.corr(0, 1) = cache.corr(1, 0) = 0.5;
        const CiTestResult res = fisher_z_test(cache, 0, 1, {}, 0.01);
        if (std::fabs(res.statistic - 5.493) > 0.001)
            problems.push_back("fisher statistic " + fmt(res.statistic) + " not 5.493 +- 0.001");
    }

    // fog fixture
    {
        std::string sentence = "animal equipment";
        for (int i = 0; i < 18; ++i) sentence += " cat";
        sentence += ".";
        std::string text;
        for (int s = 0; s < 5; ++s) {
            if (s) text += " ";
            text += sentence;
        }
        const double fog = gunning_fog(text);
        if (std::fabs(fog - 12.0) > 1e-9)
            problems.push_back("fog fixture " + fmt(fog) + " not 12 +- 1e-9");
    }

    // coverage fixture: 39 of 82 papers in one year
    {
        std::vector<EntityMentionSet> mentions;
        std::vector<std::pair<std::string, int>> papers;
        for (int i = 0; i < 82; ++i) {
            papers.push_back({"p" + std::to_string(i), 2019});
            if (i < 39) mentions.push_back({"p" + std::to_string(i), {"embeddings"}});
        }
        const auto cov = coverage_by_year(mentions, papers);
        if (cov.size() != 1 || std::fabs(cov[0].pct_with_entity - 47.56) > 0.01)
            problems.push_back("coverage fixture off 47.56");
    }

    // outcome-encoding fixtures
    {
        AuthorHistory h;
        h.horizon = 2018;
        h.papers_by_year = {{2016, 1}, {2017, 1}, {2018, 1}};
        h.entities_by_year[2016] = {"lstm"};
        h.entities_by_year[2017] = {};
        h.entities_by_year[2018] = {"transformers"};
        const bool retire_ok = *encode_outcome(h, "lstm", 2016, EntityOutcomeKind::retire) == 1;
        const bool adopt_ok =
            *encode_outcome(h, "transformers", 2017, EntityOutcomeKind::adopt) == 1;
        AuthorHistory hm = h;
        hm.entities_by_year[2017] = {"lstm"};
        const bool maintain_ok =
            *encode_outcome(hm, "lstm", 2016, EntityOutcomeKind::maintain) == 1 &&
            *encode_outcome(hm, "lstm", 2016, EntityOutcomeKind::retire) == 0;
        if (!retire_ok || !adopt_ok || !maintain_ok)
            problems.push_back("outcome-encoding fixtures failed");
    }

    // diversity fixtures
    {
        auto row = [](const std::string& a, const std::string& p, int y) {
            CorpusRow r;
            r.author_id = a;
            r.paper_id = p;
            r.year = y;
            return r;
        };
        const std::vector<CorpusRow> repeat = {row("a", "p1", 2014), row("b", "p1", 2014),
                                               row("a", "p2", 2015), row("b", "p2", 2015)};
        const auto f1 = coauthor_diversity_features(repeat, "a", 2015);
        const std::vector<CorpusRow> distinct = {row("a", "p1", 2014), row("b", "p1", 2014),
                                                 row("a", "p2", 2015), row("c", "p2", 2015)};
        const auto f2 = coauthor_diversity_features(distinct, "a", 2015);
        const auto f3 = coauthor_diversity_features({row("a", "p1", 2014)}, "a", 2015);
        if (!(f1.n_coauthors == 1 && f1.avg_papers_per_coauthor == 2.0 &&
              f1.coauthor_likelihood == 1.0))
            problems.push_back("repeat-collaborator diversity fixture failed");
        if (!(f2.n_coauthors == 2 && f2.avg_papers_per_coauthor == 1.0 &&
              f2.coauthor_likelihood == 0.5))
            problems.push_back("distinct-collaborator diversity fixture failed");
        if (!(f3.n_coauthors == 0 && f3.avg_papers_per_coauthor == 0.0 &&
              f3.coauthor_likelihood == 0.0))
            problems.push_back("solo diversity fixture failed");
    }

    report(8, problems.empty(),
           problems.empty()
               ? "pagerank dense-oracle sweep (<=12 nodes), fisher 5.493, fog 12.0, coverage "
                 "47.56, outcome and diversity fixtures all exact"
               : problems[0] + (problems.size() > 1
                                    ? " (+" + std::to_string(problems.size() - 1) + " more)"
                                    : ""));
}

}  // namespace

int main() {
    Timer total;
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    std::printf("%d/8 criteria passed in %.1f s\n", 8 - g_failures, total.seconds());
    return g_failures == 0 ? 0 : 1;
}
