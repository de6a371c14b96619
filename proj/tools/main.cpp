#include <exception>
#include <functional>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "pubcausal/common.hpp"
#include "pubcausal/pipeline.hpp"
#include "pubcausal/synth.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitData = 3;
constexpr int kExitStage = 4;

int guarded(const std::function<void()>& body) {
    try {
        body();
        return kExitOk;
    } catch (const pubcausal::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const pubcausal::DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return kExitData;
    } catch (const std::exception& e) {
        std::cerr << "stage failure: " << e.what() << "\n";
        return kExitStage;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Causal analysis pipeline for bibliographic corpora"};
    app.require_subcommand(1);

    std::string config_path;
    std::string spec_path;
    std::string synth_out = "synth_corpus";

    // optional flag overrides mirroring the config file
    std::string override_out_dir;
    std::string override_granularity;
    int64_t override_seed = -1;

    using Stage = void (*)(const pubcausal::PipelineConfig&);
    const std::vector<std::pair<std::string, Stage>> stages = {
        {"ingest", pubcausal::stage_ingest},     {"entities", pubcausal::stage_entities},
        {"network", pubcausal::stage_network},   {"panel", pubcausal::stage_panel},
        {"discover", pubcausal::stage_discover}, {"estimate", pubcausal::stage_estimate},
        {"trends", pubcausal::stage_trends},     {"report", pubcausal::stage_report}};

    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("-c,--config", config_path, "Pipeline config JSON")->required();
        sub->add_option("--out-dir", override_out_dir, "Override out_dir");
        sub->add_option("--seed", override_seed, "Override the master seed");
        sub->add_option("--granularity", override_granularity,
                        "Override granularity (publication_record | yearly_portfolio)");
    };

    std::string chosen_stage;
    for (const auto& [name, fn] : stages) {
        auto* sub = app.add_subcommand(name, "Run the " + name + " stage");
        add_common(sub);
        sub->callback([&chosen_stage, name = name]() { chosen_stage = name; });
    }

    auto* run_all = app.add_subcommand("run-all", "Run every stage and write the manifest");
    add_common(run_all);

    auto* synth = app.add_subcommand("synth", "Generate a synthetic corpus");
    synth->add_option("-s,--spec", spec_path, "Synthetic corpus spec JSON")->required();
    synth->add_option("-o,--out", synth_out, "Output directory");

    CLI11_PARSE(app, argc, argv);

    if (synth->parsed()) {
        return guarded([&]() {
            const auto spec = pubcausal::load_synth_spec(spec_path);
            const auto out = pubcausal::generate_synthetic_corpus(spec, synth_out);
            std::cout << "bibliography: " << out.bibliography_path << "\n"
                      << "full_text:    " << out.full_text_dir << "\n"
                      << "countries:    " << out.countries_path << "\n"
                      << "papers:       " << out.n_papers << "\n";
        });
    }

    // config errors must map to exit 2 even before any stage starts
    pubcausal::PipelineConfig config;
    {
        const int rc = guarded([&]() {
            config = pubcausal::load_pipeline_config(config_path);
            if (!override_out_dir.empty()) config.out_dir = override_out_dir;
            if (override_seed >= 0) config.seed = static_cast<uint64_t>(override_seed);
            if (!override_granularity.empty()) config.granularity = override_granularity;
        });
        if (rc != kExitOk) return rc;
    }

    if (run_all->parsed()) {
        return guarded([&]() {
            pubcausal::run_pipeline(config);
            std::cout << "pipeline complete; outputs in " << config.out_dir << "\n";
        });
    }
    for (const auto& [name, fn] : stages) {
        if (name == chosen_stage) {
            return guarded([&, fn = fn]() { fn(config); });
        }
    }
    std::cerr << "no subcommand selected\n";
    return kExitConfig;
}
