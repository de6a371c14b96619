#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pubcausal/bibtex.hpp"

namespace pubcausal {

// Case-folds, strips diacritics (UTF-8 Latin-1 supplement and Latin
// Extended-A) and collapses whitespace. Two spellings of the same name that
// differ only in case, accents or spacing map to the same id.
std::string normalize_author(const std::string& name);

struct AuthorPaperRow {
    std::string author_id;
    std::string paper_id;
    int year = 0;
    std::optional<std::string> country;
};

struct ExpandResult {
    std::vector<AuthorPaperRow> rows;
    std::vector<std::string> warnings;  // duplicate author within one paper
};

// One row per (author, paper), in paper order then author order.
ExpandResult expand_author_rows(const std::vector<PaperRecord>& papers);

struct PaperFeatures {
    int n_authors = 0;
    int page_length = 0;
    int word_count = 0;
    double fog_index = 0.0;
    int is_conference = 0;
};

PaperFeatures compute_paper_features(const PaperRecord& record);

// (author_id, year) -> country, loaded from the sidecar CSV
// "author_id,year,country".
using CountryTable = std::map<std::pair<std::string, int>, std::string>;

CountryTable read_country_csv(const std::string& path);

void apply_countries(std::vector<AuthorPaperRow>& rows, const CountryTable& countries);

// Joined per-row view written to / read from the rows CSV.
struct CorpusRow {
    std::string author_id;
    std::string paper_id;
    int year = 0;
    VenueKind venue_kind = VenueKind::conference;
    PaperFeatures features;
    std::optional<std::string> country;
};

std::vector<CorpusRow> join_corpus_rows(const std::vector<PaperRecord>& papers,
                                        const std::vector<AuthorPaperRow>& rows);

inline constexpr const char* kRowsCsvHeader =
    "author_id,paper_id,year,venue_kind,n_authors,page_length,word_count,fog_index,country";

void write_rows_csv(const std::string& path, const std::vector<CorpusRow>& rows);
std::vector<CorpusRow> read_rows_csv(const std::string& path);

}  // namespace pubcausal
