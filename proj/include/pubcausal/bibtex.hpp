#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace pubcausal {

enum class VenueKind { conference, journal };

const char* venue_kind_name(VenueKind k);
std::optional<VenueKind> venue_kind_from_name(const std::string& s);

struct PaperRecord {
    std::string paper_id;
    std::string title;
    int year = 0;
    VenueKind venue_kind = VenueKind::conference;
    std::vector<std::string> authors;
    int page_count = 0;
    std::optional<std::string> full_text;

    bool operator==(const PaperRecord& other) const = default;
};

struct ParseIssue {
    size_t byte_offset = 0;
    std::string message;
};

struct BibParseResult {
    std::vector<PaperRecord> records;
    std::vector<ParseIssue> issues;
    size_t skipped_no_author = 0;
    size_t skipped_bad_year = 0;  // missing, unparseable, or outside 1965..2020
};

inline constexpr int kMinYear = 1965;
inline constexpr int kMaxYear = 2020;

// Parses a concatenation of brace-delimited bibliography entries. Entries
// with unbalanced braces produce a ParseIssue carrying the byte offset of
// the entry start; parsing resumes at the next entry. Entries without
// authors or without a usable year are counted and dropped.
BibParseResult parse_bibliography(const std::string& raw);

// Inverse of parse_bibliography for a single record; parsing the output
// yields a field-for-field identical record.
std::string serialize_bibliography(const PaperRecord& record);

}  // namespace pubcausal
