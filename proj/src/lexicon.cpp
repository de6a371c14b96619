#include "pubcausal/lexicon.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include "pubcausal/common.hpp"
#include "pubcausal/csv.hpp"

namespace pubcausal {

const std::array<const char*, 50> kCanonicalEntities = {
    "artificial intelligence",
    "adversarial",
    "annotation",
    "arabic",
    "attention",
    "baselines",
    "bidirectional lstm",
    "causal",
    "chinese",
    "classification",
    "coreference",
    "crowdsourcing",
    "deep learning",
    "dialog",
    "embeddings",
    "ethics",
    "explanation",
    "fairness",
    "french",
    "generative",
    "german",
    "grammars",
    "graph models",
    "heuristics",
    "interpretability",
    "language models",
    "lstm",
    "machine learning",
    "monolingual",
    "multilingual",
    "multiple languages",
    "NER",
    "node2vec",
    "non-English language",
    "pos/dependency/parsing",
    "QA",
    "reinforcement learning",
    "robustness",
    "russian",
    "sentiment",
    "statistical/probabilistic models",
    "summarization",
    "topic model",
    "transfer learning",
    "transformers",
    "translation",
    "transparency",
    "unsupervised methods",
    "word2vec",
    "benchmark",
};

bool is_canonical_entity(const std::string& id) {
    return std::find_if(kCanonicalEntities.begin(), kCanonicalEntities.end(),
                        [&](const char* c) { return id == c; }) != kCanonicalEntities.end();
}

EntityLexicon default_lexicon() {
    EntityLexicon lex;
    for (const char* id : kCanonicalEntities) {
        std::set<std::string>& pats = lex.entries[id];
        pats.insert(lower_ascii(id));
    }
    auto add = [&lex](const char* id, std::initializer_list<const char*> variants) {
        auto& pats = lex.entries.at(id);
        for (const char* v : variants) pats.insert(v);
    };
    add("artificial intelligence", {"ai"});
    add("adversarial", {"adversarial training", "adversarial examples"});
    add("annotation", {"annotations", "annotated corpus", "annotators"});
    add("attention", {"attention mechanism", "self-attention"});
    add("baselines", {"baseline"});
    add("bidirectional lstm", {"bilstm", "bi-lstm", "bi-directional lstm", "bidirectional lstms"});
    add("causal", {"causality", "causal inference"});
    add("classification", {"classifier", "classifiers", "text classification"});
    add("coreference", {"coreference resolution", "anaphora resolution"});
    add("crowdsourcing", {"crowd-sourcing", "crowd workers", "mechanical turk"});
    add("deep learning", {"deep neural network", "deep neural networks"});
    add("dialog", {"dialogue", "dialog systems", "dialogue systems"});
    add("embeddings", {"embedding", "word embeddings", "word embedding"});
    add("explanation", {"explanations", "explainability"});
    add("generative", {"generative model", "generative models"});
    add("grammars", {"grammar", "grammatical"});
    add("graph models", {"graph model", "graph neural network", "graph neural networks"});
    add("heuristics", {"heuristic"});
    add("interpretability", {"interpretable", "model interpretability"});
    add("language models", {"language model", "language modeling", "language modelling"});
    add("lstm", {"lstms", "long short-term memory"});
    add("monolingual", {"mono-lingual"});
    add("multilingual", {"multi-lingual", "cross-lingual", "crosslingual"});
    add("multiple languages", {"many languages"});
    add("NER", {"ner", "named entity recognition", "named-entity recognition"});
    add("non-English language", {"non-english language", "non-english languages", "non-english"});
    add("pos/dependency/parsing", {"part-of-speech tagging", "pos tagging", "dependency parsing",
                                   "parsing", "parser", "constituency parsing"});
    add("QA", {"qa", "question answering", "question-answering"});
    add("reinforcement learning", {"rl agent", "policy gradient"});
    add("robustness", {"robust models"});
    add("sentiment", {"sentiment analysis", "sentiment classification"});
    add("statistical/probabilistic models", {"statistical model", "statistical models",
                                             "probabilistic model", "probabilistic models"});
    add("summarization", {"summarisation", "abstractive summarization",
                          "extractive summarization"});
    add("topic model", {"topic models", "topic modeling", "lda"});
    add("transfer learning", {"domain adaptation"});
    add("transformers", {"transformer", "transformer-based"});
    add("translation", {"machine translation", "neural machine translation", "nmt"});
    add("transparency", {"transparent models"});
    add("unsupervised methods", {"unsupervised", "unsupervised learning", "self-supervised"});
    add("benchmark", {"benchmarks", "benchmarking"});
    return lex;
}

EntityLexicon load_lexicon(const std::string& path) {
    const CsvTable csv = read_csv_file(path);
    EntityLexicon lex;
    size_t line = 1;
    for (const auto& row : csv.rows) {
        ++line;
        if (row.size() < 2 || row[0].empty() || row[1].empty())
            throw DataError("lexicon row " + std::to_string(line) + ": need entity_id,pattern");
        if (!is_canonical_entity(row[0]))
            throw DataError("lexicon row " + std::to_string(line) + ": unknown entity_id '" +
                            row[0] + "'");
        lex.entries[row[0]].insert(lower_ascii(row[1]));
    }
    for (const char* id : kCanonicalEntities) {
        if (lex.entries.find(id) == lex.entries.end())
            throw DataError("lexicon missing canonical id '" + std::string(id) + "'");
    }
    return lex;
}

void write_lexicon_csv(const std::string& path, const EntityLexicon& lexicon) {
    std::vector<std::vector<std::string>> rows;
    for (const char* id : kCanonicalEntities) {
        const auto it = lexicon.entries.find(id);
        if (it == lexicon.entries.end()) continue;
        for (const auto& pattern : it->second) rows.push_back({id, pattern});
    }
    write_csv_file(path, {"entity_id", "pattern"}, rows);
}

namespace {

bool is_word_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) != 0;
}

struct Span {
    size_t begin = 0;
    size_t end = 0;
    const std::string* entity = nullptr;
};

}  // namespace

EntityMentionSet match_entities(const std::string& paper_id, const std::string& text,
                                const EntityLexicon& lexicon) {
    EntityMentionSet out;
    out.paper_id = paper_id;
    if (text.empty()) return out;
    const std::string lowered = lower_ascii(text);

    std::vector<Span> candidates;
    for (const auto& [entity, patterns] : lexicon.entries) {
        for (const auto& pattern : patterns) {
            size_t pos = 0;
            while ((pos = lowered.find(pattern, pos)) != std::string::npos) {
                const size_t end = pos + pattern.size();
                const bool left_ok = pos == 0 || !is_word_char(lowered[pos - 1]);
                const bool right_ok = end == lowered.size() || !is_word_char(lowered[end]);
                if (left_ok && right_ok) candidates.push_back({pos, end, &entity});
                ++pos;
            }
        }
    }
    // left-to-right sweep, longest pattern first at equal start
    std::sort(candidates.begin(), candidates.end(), [](const Span& a, const Span& b) {
        if (a.begin != b.begin) return a.begin < b.begin;
        if (a.end != b.end) return a.end > b.end;
        return *a.entity < *b.entity;
    });
    size_t accepted_until = 0;
    for (const Span& span : candidates) {
        if (span.begin < accepted_until) continue;  // overlaps an accepted span
        accepted_until = span.end;
        out.entities.insert(*span.entity);
    }
    return out;
}

std::vector<YearCoverage> coverage_by_year(
    const std::vector<EntityMentionSet>& mention_sets,
    const std::vector<std::pair<std::string, int>>& full_text_paper_years) {
    std::map<std::string, const EntityMentionSet*> by_paper;
    for (const auto& m : mention_sets) by_paper[m.paper_id] = &m;

    std::map<int, YearCoverage> per_year;
    for (const auto& [paper_id, year] : full_text_paper_years) {
        YearCoverage& yc = per_year[year];
        yc.year = year;
        ++yc.papers_with_full_text;
        const auto it = by_paper.find(paper_id);
        if (it != by_paper.end() && !it->second->entities.empty()) ++yc.papers_with_entity;
    }
    std::vector<YearCoverage> out;
    for (auto& [year, yc] : per_year) {
        yc.pct_with_entity = 100.0 * static_cast<double>(yc.papers_with_entity) /
                             static_cast<double>(yc.papers_with_full_text);
        out.push_back(yc);
    }
    return out;
}

void write_mentions_csv(const std::string& path, const std::vector<EntityMentionSet>& sets) {
    std::vector<std::pair<std::string, std::string>> pairs;
    for (const auto& m : sets)
        for (const auto& e : m.entities) pairs.emplace_back(m.paper_id, e);
    std::sort(pairs.begin(), pairs.end());
    std::vector<std::vector<std::string>> rows;
    rows.reserve(pairs.size());
    for (auto& [p, e] : pairs) rows.push_back({p, e});
    write_csv_file(path, {"paper_id", "entity_id"}, rows);
}

std::vector<EntityMentionSet> read_mentions_csv(const std::string& path) {
    const CsvTable csv = read_csv_file(path);
    std::map<std::string, EntityMentionSet> by_paper;
    for (const auto& row : csv.rows) {
        if (row.size() < 2) throw DataError("mentions CSV record needs 2 fields");
        auto& m = by_paper[row[0]];
        m.paper_id = row[0];
        m.entities.insert(row[1]);
    }
    std::vector<EntityMentionSet> out;
    out.reserve(by_paper.size());
    for (auto& [id, m] : by_paper) out.push_back(std::move(m));
    return out;
}

}  // namespace pubcausal
