#include "pubcausal/synth.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>

#include <json.hpp>

#include "pubcausal/common.hpp"
#include "pubcausal/corpus.hpp"
#include "pubcausal/csv.hpp"
#include "pubcausal/lexicon.hpp"
#include "pubcausal/rng.hpp"

namespace pubcausal {

SyntheticCorpusSpec load_synth_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open synthetic corpus spec: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw ConfigError(std::string("bad synthetic corpus spec JSON: ") + e.what());
    }
    SyntheticCorpusSpec spec;
    spec.n_authors = j.value("n_authors", spec.n_authors);
    spec.first_year = j.value("first_year", spec.first_year);
    spec.last_year = j.value("last_year", spec.last_year);
    spec.seed = j.value("seed", spec.seed);
    spec.activity_prob = j.value("activity_prob", spec.activity_prob);
    spec.mean_extra_papers = j.value("mean_extra_papers", spec.mean_extra_papers);
    spec.mention_prob = j.value("mention_prob", spec.mention_prob);
    spec.coauthor_prob = j.value("coauthor_prob", spec.coauthor_prob);
    spec.effect_cadence = j.value("effect_cadence", spec.effect_cadence);
    for (const auto& je : j.value("entities", nlohmann::json::array())) {
        SynthEntity e;
        e.entity = je.at("entity").get<std::string>();
        e.initial_prob = je.value("initial_prob", e.initial_prob);
        e.adopt_prob = je.value("adopt_prob", e.adopt_prob);
        e.retention_prob = je.value("retention_prob", e.retention_prob);
        spec.entities.push_back(std::move(e));
    }
    for (const auto& je : j.value("planted_effects", nlohmann::json::array())) {
        PlantedEffect p;
        p.treatment_entity = je.at("treatment_entity").get<std::string>();
        p.outcome_entity = je.at("outcome_entity").get<std::string>();
        p.tau = je.value("tau", 0.0);
        p.base_prob = je.value("base_prob", 0.1);
        spec.planted_effects.push_back(std::move(p));
    }
    for (const auto& je : j.value("countries", nlohmann::json::array())) {
        spec.countries.push_back({je.at("code").get<std::string>(), je.at("prob").get<double>()});
    }
    return spec;
}

namespace {

struct PaperDraft {
    std::string id;
    int year = 0;
    std::vector<size_t> authors;  // owner first
    std::set<std::string> entities;
    VenueKind venue = VenueKind::conference;
    int pages = 8;
};

const std::vector<std::string> kFillerWords = {
    "results", "method", "data",  "study", "shows", "simple", "broad", "signal",
    "model",   "tests",  "gains", "cost",  "large", "small",  "clear", "steady"};

std::string make_full_text(const PaperDraft& paper, std::mt19937_64& rng) {
    std::string text = "This paper presents a study of publication behavior. ";
    for (const auto& e : paper.entities) {
        text += "The approach builds on " + e + " throughout. ";
    }
    const size_t extra = 30 + rng() % 80;
    for (size_t i = 0; i < extra; ++i) {
        text += kFillerWords[rng() % kFillerWords.size()];
        text += (i % 11 == 10) ? ". " : " ";
    }
    text += "We close with a discussion.";
    return text;
}

void validate(const SyntheticCorpusSpec& spec) {
    if (spec.last_year < spec.first_year) throw ConfigError("year span is inverted");
    if (spec.last_year > kMaxYear || spec.first_year < kMinYear)
        throw ConfigError("year span outside the supported range");
    for (const auto& e : spec.entities) {
        if (!is_canonical_entity(e.entity))
            throw ConfigError("unknown entity in synthetic spec: " + e.entity);
        for (double p : {e.initial_prob, e.adopt_prob, e.retention_prob})
            if (p < 0.0 || p > 1.0) throw ConfigError("entity probability outside [0,1]");
    }
    for (const auto& p : spec.planted_effects) {
        const double hi = p.base_prob + std::max(p.tau, 0.0);
        const double lo = p.base_prob + std::min(p.tau, 0.0);
        if (lo < 0.0 || hi > 1.0)
            throw ConfigError("planted effect tau=" + format_double(p.tau) + " with base=" +
                              format_double(p.base_prob) + " leaves the probability range");
    }
    double total = 0.0;
    for (const auto& c : spec.countries) total += c.prob;
    if (total > 1.0 + 1e-9) throw ConfigError("country shares exceed 1");
    if (spec.effect_cadence < 1) throw ConfigError("effect_cadence must be positive");
}

}  // namespace

SynthOutput generate_synthetic_corpus(const SyntheticCorpusSpec& spec,
                                      const std::string& out_dir) {
    validate(spec);
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    fs::create_directories(out_dir + "/full_text");

    auto rng = make_rng(derive_seed(spec.seed, "synth_corpus"));
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::poisson_distribution<int> extra_papers(spec.mean_extra_papers);

    const size_t n = spec.n_authors;
    const size_t n_entities = spec.entities.size();

    // per-author state
    std::vector<std::vector<uint8_t>> focus(n, std::vector<uint8_t>(n_entities, 0));
    // published_on[a][e] = 1 once the author has a publication mentioning e
    std::vector<std::vector<uint8_t>> published_on(n, std::vector<uint8_t>(n_entities, 0));
    // forced windows, keyed by year: no publication on e / must publish on e
    std::vector<std::map<int, std::set<size_t>>> force_no(n), force_yes(n);
    // committed planted event horizon per (author, effect)
    std::vector<std::vector<int>> committed_until(n,
                                                  std::vector<int>(spec.planted_effects.size(),
                                                                   -100000));

    std::map<std::string, size_t> entity_index;
    for (size_t e = 0; e < n_entities; ++e) entity_index[spec.entities[e].entity] = e;
    for (const auto& p : spec.planted_effects) {
        if (!entity_index.count(p.treatment_entity) || !entity_index.count(p.outcome_entity))
            throw ConfigError("planted effect references an entity missing from the spec");
    }

    // countries fixed per author
    std::vector<std::string> author_country(n);
    for (size_t a = 0; a < n; ++a) {
        double pick = u(rng);
        for (const auto& c : spec.countries) {
            if (pick < c.prob) {
                author_country[a] = c.code;
                break;
            }
            pick -= c.prob;
        }
    }

    for (size_t a = 0; a < n; ++a)
        for (size_t e = 0; e < n_entities; ++e)
            focus[a][e] = u(rng) < spec.entities[e].initial_prob ? 1 : 0;

    std::vector<PaperDraft> papers;
    size_t paper_counter = 0;

    for (int year = spec.first_year; year <= spec.last_year; ++year) {
        // focus dynamics, honoring forced windows
        for (size_t a = 0; a < n; ++a) {
            const auto no_it = force_no[a].find(year);
            const auto yes_it = force_yes[a].find(year);
            for (size_t e = 0; e < n_entities; ++e) {
                const bool forced_no = no_it != force_no[a].end() && no_it->second.count(e);
                const bool forced_yes = yes_it != force_yes[a].end() && yes_it->second.count(e);
                if (forced_no) {
                    focus[a][e] = 0;
                } else if (forced_yes) {
                    focus[a][e] = 1;
                } else if (focus[a][e]) {
                    focus[a][e] = u(rng) < spec.entities[e].retention_prob ? 1 : 0;
                } else {
                    focus[a][e] = u(rng) < spec.entities[e].adopt_prob ? 1 : 0;
                }
            }
        }

        // papers for the year
        std::vector<std::vector<size_t>> year_papers(n);
        for (size_t a = 0; a < n; ++a) {
            const auto yes_it = force_yes[a].find(year);
            const bool must_publish = yes_it != force_yes[a].end() && !yes_it->second.empty();
            const bool active = must_publish || u(rng) < spec.activity_prob;
            if (!active) continue;
            const int k = 1 + extra_papers(rng);
            for (int pi = 0; pi < k; ++pi) {
                PaperDraft paper;
                paper.id = "p" + std::to_string(++paper_counter);
                paper.year = year;
                paper.authors.push_back(a);
                paper.venue = u(rng) < 0.8 ? VenueKind::conference : VenueKind::journal;
                paper.pages = 4 + static_cast<int>(rng() % 12);
                for (size_t e = 0; e < n_entities; ++e) {
                    if (focus[a][e] && u(rng) < spec.mention_prob)
                        paper.entities.insert(spec.entities[e].entity);
                }
                // forced mentions ride on the author's first paper of the year
                if (pi == 0 && yes_it != force_yes[a].end()) {
                    for (size_t e : yes_it->second) paper.entities.insert(spec.entities[e].entity);
                }
                // strip mentions forbidden for the owner this year
                const auto no_it = force_no[a].find(year);
                if (no_it != force_no[a].end()) {
                    for (size_t e : no_it->second) paper.entities.erase(spec.entities[e].entity);
                }
                // co-authors who are not forbidden from this paper's entities
                for (int c = 0; c < 3 && u(rng) < spec.coauthor_prob; ++c) {
                    for (int attempt = 0; attempt < 8; ++attempt) {
                        const size_t other = rng() % n;
                        if (other == a) continue;
                        if (std::find(paper.authors.begin(), paper.authors.end(), other) !=
                            paper.authors.end())
                            continue;
                        const auto other_no = force_no[other].find(year);
                        bool conflict = false;
                        if (other_no != force_no[other].end()) {
                            for (size_t e : other_no->second)
                                if (paper.entities.count(spec.entities[e].entity)) conflict = true;
                        }
                        if (conflict) continue;
                        paper.authors.push_back(other);
                        break;
                    }
                }
                year_papers[a].push_back(papers.size());
                papers.push_back(std::move(paper));
            }
        }

        // record actual publications per author for the year
        std::vector<std::vector<uint8_t>> published_now(n, std::vector<uint8_t>(n_entities, 0));
        for (const auto& paper : papers) {
            if (paper.year != year) continue;
            for (size_t author : paper.authors) {
                for (const auto& e : paper.entities) {
                    const size_t idx = entity_index.at(e);
                    published_now[author][idx] = 1;
                    published_on[author][idx] = 1;
                }
            }
        }

        // planted events schedule the next two years; the cadence keeps
        // successive forced windows disjoint. Absorbing effects (base 1)
        // only ever force publication gaps, so they fire every year.
        const bool event_year = (year - spec.first_year) % spec.effect_cadence == 0;
        for (size_t pe = 0; pe < spec.planted_effects.size(); ++pe) {
            const PlantedEffect& effect = spec.planted_effects[pe];
            const bool absorbing = effect.base_prob >= 1.0;
            if (!event_year && !absorbing) continue;
            const size_t te = entity_index.at(effect.treatment_entity);
            const size_t oe = entity_index.at(effect.outcome_entity);
            for (size_t a = 0; a < n; ++a) {
                if (!published_on[a][oe]) continue;  // not eligible yet
                if (!absorbing && committed_until[a][pe] >= year) continue;
                const bool treated = published_now[a][te] != 0;
                const double p = effect.base_prob + (treated ? effect.tau : 0.0);
                if (u(rng) < p) {
                    force_no[a][year + 1].insert(oe);
                    force_no[a][year + 2].insert(oe);
                    // a draw next year would contradict the year+2 pin
                    committed_until[a][pe] = year + 1;
                } else {
                    force_yes[a][year + 1].insert(oe);
                    committed_until[a][pe] = year;
                }
            }
        }
    }

    // ---- emit files ----
    SynthOutput out;
    out.bibliography_path = out_dir + "/corpus.bib";
    out.full_text_dir = out_dir + "/full_text";
    out.countries_path = out_dir + "/countries.csv";
    out.n_papers = papers.size();

    std::ofstream bib(out.bibliography_path, std::ios::binary);
    if (!bib) throw DataError("cannot write " + out.bibliography_path);
    auto text_rng = make_rng(derive_seed(spec.seed, "synth_text"));
    for (const auto& paper : papers) {
        PaperRecord rec;
        rec.paper_id = paper.id;
        rec.title = "Synthetic Study " + paper.id.substr(1);
        rec.year = paper.year;
        rec.venue_kind = paper.venue;
        rec.page_count = paper.pages;
        for (size_t a : paper.authors) rec.authors.push_back("Author " + std::to_string(a));
        bib << serialize_bibliography(rec) << "\n";

        std::ofstream txt(out.full_text_dir + "/" + paper.id + ".txt", std::ios::binary);
        if (!txt) throw DataError("cannot write full text for " + paper.id);
        txt << make_full_text(paper, text_rng);
    }
    bib.close();

    // country sidecar: (normalized author id, year, country) for active years
    std::set<std::pair<std::string, int>> seen;
    std::vector<std::vector<std::string>> country_rows;
    for (const auto& paper : papers) {
        for (size_t a : paper.authors) {
            if (author_country[a].empty()) continue;
            const std::string id = normalize_author("Author " + std::to_string(a));
            if (seen.insert({id, paper.year}).second)
                country_rows.push_back({id, std::to_string(paper.year), author_country[a]});
        }
    }
    std::sort(country_rows.begin(), country_rows.end());
    write_csv_file(out.countries_path, {"author_id", "year", "country"}, country_rows);
    return out;
}

}  // namespace pubcausal
