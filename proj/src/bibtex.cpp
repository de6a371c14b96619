#include "pubcausal/bibtex.hpp"

#include <cctype>
#include <sstream>

#include "pubcausal/common.hpp"

namespace pubcausal {

const char* venue_kind_name(VenueKind k) {
    return k == VenueKind::conference ? "conference" : "journal";
}

std::optional<VenueKind> venue_kind_from_name(const std::string& s) {
    if (s == "conference") return VenueKind::conference;
    if (s == "journal") return VenueKind::journal;
    return std::nullopt;
}

namespace {

struct Scanner {
    const std::string& raw;
    size_t pos = 0;

    bool eof() const { return pos >= raw.size(); }
    char peek() const { return raw[pos]; }
    char get() { return raw[pos++]; }
    void skip_ws() {
        while (!eof() && std::isspace(static_cast<unsigned char>(raw[pos]))) ++pos;
    }
};

std::string strip_braces(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        if (c != '{' && c != '}') out.push_back(c);
    }
    return collapse_whitespace(out);
}

// Splits an author field on the standalone word "and" at top brace depth.
std::vector<std::string> split_authors(const std::string& field) {
    std::vector<std::string> names;
    std::string cur;
    int depth = 0;
    size_t i = 0;
    const size_t n = field.size();
    while (i < n) {
        const char c = field[i];
        if (c == '{') {
            ++depth;
            cur.push_back(c);
            ++i;
        } else if (c == '}') {
            if (depth > 0) --depth;
            cur.push_back(c);
            ++i;
        } else if (depth == 0 && std::isspace(static_cast<unsigned char>(c))) {
            // candidate separator: whitespace "and" whitespace
            size_t j = i;
            while (j < n && std::isspace(static_cast<unsigned char>(field[j]))) ++j;
            if (j + 3 <= n && field.compare(j, 3, "and") == 0 &&
                (j + 3 == n || std::isspace(static_cast<unsigned char>(field[j + 3])))) {
                names.push_back(cur);
                cur.clear();
                i = j + 3;
            } else {
                cur.push_back(' ');
                ++i;
            }
        } else {
            cur.push_back(c);
            ++i;
        }
    }
    names.push_back(cur);

    std::vector<std::string> out;
    for (auto& raw_name : names) {
        std::string cleaned = strip_braces(raw_name);
        if (!cleaned.empty()) out.push_back(std::move(cleaned));
    }
    return out;
}

int parse_page_count(const std::string& pages) {
    const size_t dash = pages.find("--");
    if (dash == std::string::npos) return 0;
    try {
        const int a = std::stoi(collapse_whitespace(pages.substr(0, dash)));
        const int b = std::stoi(collapse_whitespace(pages.substr(dash + 2)));
        if (b >= a) return b - a + 1;
    } catch (const std::exception&) {
    }
    return 0;
}

struct RawEntry {
    std::string type;
    std::string key;
    std::vector<std::pair<std::string, std::string>> fields;
    size_t byte_offset = 0;
};

const std::string* find_field(const RawEntry& e, const std::string& name) {
    for (const auto& [k, v] : e.fields)
        if (k == name) return &v;
    return nullptr;
}

// Reads one entry starting at '@'. Returns false (with an issue message)
// on unbalanced braces; `sc.pos` is then left where the caller can resync.
bool read_entry(Scanner& sc, RawEntry& entry, std::string& error) {
    entry = RawEntry{};
    entry.byte_offset = sc.pos;
    sc.get();  // '@'
    while (!sc.eof() && (std::isalpha(static_cast<unsigned char>(sc.peek())) || sc.peek() == '_'))
        entry.type.push_back(static_cast<char>(std::tolower(sc.get())));
    sc.skip_ws();
    if (sc.eof() || sc.peek() != '{') {
        error = "expected '{' after entry type";
        return false;
    }
    sc.get();  // '{'
    // citation key
    while (!sc.eof() && sc.peek() != ',' && sc.peek() != '}')
        entry.key.push_back(sc.get());
    entry.key = collapse_whitespace(entry.key);
    if (sc.eof()) {
        error = "unbalanced braces: entry never closed";
        return false;
    }
    if (sc.peek() == '}') {
        sc.get();
        return true;  // key-only entry
    }
    sc.get();  // ','

    while (true) {
        sc.skip_ws();
        if (sc.eof()) {
            error = "unbalanced braces: entry never closed";
            return false;
        }
        if (sc.peek() == '}') {
            sc.get();
            return true;
        }
        if (sc.peek() == ',') {
            sc.get();
            continue;
        }
        std::string name;
        while (!sc.eof() && sc.peek() != '=' && sc.peek() != '}' && sc.peek() != ',')
            name.push_back(sc.get());
        name = lower_ascii(collapse_whitespace(name));
        sc.skip_ws();
        if (sc.eof() || sc.peek() != '=') {
            error = "malformed field (missing '=')";
            return false;
        }
        sc.get();  // '='
        sc.skip_ws();
        if (sc.eof()) {
            error = "unbalanced braces: entry never closed";
            return false;
        }
        std::string value;
        if (sc.peek() == '{') {
            sc.get();
            int depth = 1;
            while (!sc.eof() && depth > 0) {
                const char c = sc.get();
                if (c == '{') ++depth;
                else if (c == '}') --depth;
                if (depth > 0) value.push_back(c);
            }
            if (depth > 0) {
                error = "unbalanced braces in field value";
                return false;
            }
        } else if (sc.peek() == '"') {
            sc.get();
            int depth = 0;
            while (!sc.eof()) {
                const char c = sc.get();
                if (c == '{') ++depth;
                else if (c == '}') --depth;
                else if (c == '"' && depth == 0) break;
                value.push_back(c);
            }
        } else {
            while (!sc.eof() && sc.peek() != ',' && sc.peek() != '}' &&
                   !std::isspace(static_cast<unsigned char>(sc.peek())))
                value.push_back(sc.get());
        }
        entry.fields.emplace_back(name, value);
    }
}

}  // namespace

BibParseResult parse_bibliography(const std::string& raw) {
    BibParseResult result;
    Scanner sc{raw};
    while (true) {
        while (!sc.eof() && sc.peek() != '@') sc.get();
        if (sc.eof()) break;

        RawEntry entry;
        std::string error;
        if (!read_entry(sc, entry, error)) {
            result.issues.push_back({entry.byte_offset, error});
            // resync at the next entry marker after the failed '@'
            sc.pos = entry.byte_offset + 1;
            while (!sc.eof() && sc.peek() != '@') sc.get();
            continue;
        }
        if (entry.type == "comment" || entry.type == "preamble" || entry.type == "string")
            continue;

        const std::string* author_field = find_field(entry, "author");
        std::vector<std::string> authors;
        if (author_field) authors = split_authors(*author_field);
        if (authors.empty()) {
            ++result.skipped_no_author;
            continue;
        }

        const std::string* year_field = find_field(entry, "year");
        int year = 0;
        bool year_ok = false;
        if (year_field) {
            try {
                year = std::stoi(collapse_whitespace(strip_braces(*year_field)));
                year_ok = year >= kMinYear && year <= kMaxYear;
            } catch (const std::exception&) {
            }
        }
        if (!year_ok) {
            ++result.skipped_bad_year;
            continue;
        }

        PaperRecord rec;
        rec.paper_id = entry.key;
        rec.year = year;
        rec.authors = std::move(authors);
        if (const std::string* t = find_field(entry, "title")) rec.title = strip_braces(*t);
        if (const std::string* p = find_field(entry, "pages")) rec.page_count = parse_page_count(*p);
        rec.venue_kind = entry.type.find("article") != std::string::npos ? VenueKind::journal
                                                                         : VenueKind::conference;
        result.records.push_back(std::move(rec));
    }
    return result;
}

std::string serialize_bibliography(const PaperRecord& record) {
    std::ostringstream out;
    out << '@' << (record.venue_kind == VenueKind::journal ? "article" : "inproceedings") << '{'
        << record.paper_id << ",\n";
    out << "  title = {" << record.title << "},\n";
    out << "  author = {";
    for (size_t i = 0; i < record.authors.size(); ++i) {
        if (i) out << " and ";
        out << '{' << record.authors[i] << '}';
    }
    out << "},\n";
    out << "  year = {" << record.year << "},\n";
    if (record.page_count > 0) out << "  pages = {1--" << record.page_count << "},\n";
    out << "}\n";
    return out.str();
}

}  // namespace pubcausal
