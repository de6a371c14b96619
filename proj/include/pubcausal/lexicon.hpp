#pragma once

#include <array>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace pubcausal {

// The 50 consolidated research entities, in canonical order.
extern const std::array<const char*, 50> kCanonicalEntities;

bool is_canonical_entity(const std::string& id);

struct EntityLexicon {
    // entity_id -> lower-cased surface patterns (possibly multi-word)
    std::map<std::string, std::set<std::string>> entries;
};

// Built-in lexicon: every canonical name plus obvious written variants.
EntityLexicon default_lexicon();

// Loads and validates a lexicon CSV "entity_id,pattern". Fails on unknown
// entity ids and on canonical ids missing from the file.
EntityLexicon load_lexicon(const std::string& path);

void write_lexicon_csv(const std::string& path, const EntityLexicon& lexicon);

struct EntityMentionSet {
    std::string paper_id;
    std::set<std::string> entities;
};

// Word-boundary pattern matching over lower-cased text. At each position the
// longest pattern wins; shorter patterns overlapping the accepted span are
// suppressed.
EntityMentionSet match_entities(const std::string& paper_id, const std::string& text,
                                const EntityLexicon& lexicon);

struct YearCoverage {
    int year = 0;
    double pct_with_entity = 0.0;
    size_t papers_with_full_text = 0;
    size_t papers_with_entity = 0;
};

// % of full-text papers per year with at least one entity. Years with zero
// full-text papers are omitted.
std::vector<YearCoverage> coverage_by_year(
    const std::vector<EntityMentionSet>& mention_sets,
    const std::vector<std::pair<std::string, int>>& full_text_paper_years);

void write_mentions_csv(const std::string& path, const std::vector<EntityMentionSet>& sets);
std::vector<EntityMentionSet> read_mentions_csv(const std::string& path);

}  // namespace pubcausal
