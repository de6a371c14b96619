#include "pubcausal/corpus.hpp"

#include <cctype>
#include <unordered_map>
#include <unordered_set>

#include "pubcausal/common.hpp"
#include "pubcausal/csv.hpp"
#include "pubcausal/text_stats.hpp"

namespace pubcausal {

namespace {

// ASCII fallback for accented Latin letters (two-byte UTF-8 sequences).
const std::unordered_map<uint16_t, const char*>& translit_table() {
    static const std::unordered_map<uint16_t, const char*> table = [] {
        std::unordered_map<uint16_t, const char*> t;
        auto put = [&t](const char* from, const char* to) {
            const auto* u = reinterpret_cast<const unsigned char*>(from);
            t[static_cast<uint16_t>((u[0] << 8) | u[1])] = to;
        };
        put("à", "a"); put("á", "a"); put("â", "a"); put("ã", "a"); put("ä", "a"); put("å", "a");
        put("À", "a"); put("Á", "a"); put("Â", "a"); put("Ã", "a"); put("Ä", "a"); put("Å", "a");
        put("è", "e"); put("é", "e"); put("ê", "e"); put("ë", "e");
        put("È", "e"); put("É", "e"); put("Ê", "e"); put("Ë", "e");
        put("ì", "i"); put("í", "i"); put("î", "i"); put("ï", "i");
        put("Ì", "i"); put("Í", "i"); put("Î", "i"); put("Ï", "i");
        put("ò", "o"); put("ó", "o"); put("ô", "o"); put("õ", "o"); put("ö", "o"); put("ø", "o");
        put("Ò", "o"); put("Ó", "o"); put("Ô", "o"); put("Õ", "o"); put("Ö", "o"); put("Ø", "o");
        put("ù", "u"); put("ú", "u"); put("û", "u"); put("ü", "u");
        put("Ù", "u"); put("Ú", "u"); put("Û", "u"); put("Ü", "u");
        put("ý", "y"); put("ÿ", "y"); put("Ý", "y");
        put("ñ", "n"); put("Ñ", "n"); put("ç", "c"); put("Ç", "c");
        put("ß", "ss"); put("æ", "ae"); put("Æ", "ae"); put("œ", "oe"); put("Œ", "oe");
        put("ā", "a"); put("ē", "e"); put("ī", "i"); put("ō", "o"); put("ū", "u");
        put("ă", "a"); put("ę", "e"); put("į", "i"); put("ő", "o"); put("ű", "u");
        put("ć", "c"); put("č", "c"); put("ĉ", "c"); put("ċ", "c");
        put("Ć", "c"); put("Č", "c");
        put("ď", "d"); put("đ", "d"); put("Đ", "d");
        put("ğ", "g"); put("ģ", "g"); put("ĝ", "g");
        put("ł", "l"); put("Ł", "l"); put("ľ", "l"); put("ĺ", "l");
        put("ń", "n"); put("ň", "n"); put("ņ", "n"); put("Ń", "n");
        put("ř", "r"); put("ŕ", "r"); put("Ř", "r");
        put("ś", "s"); put("š", "s"); put("ş", "s"); put("Ś", "s"); put("Š", "s"); put("Ş", "s");
        put("ť", "t"); put("ţ", "t"); put("Ť", "t");
        put("ů", "u"); put("ŭ", "u");
        put("ź", "z"); put("ž", "z"); put("ż", "z"); put("Ź", "z"); put("Ž", "z"); put("Ż", "z");
        return t;
    }();
    return table;
}

}  // namespace

std::string normalize_author(const std::string& name) {
    std::string out;
    out.reserve(name.size());
    size_t i = 0;
    while (i < name.size()) {
        const unsigned char c = static_cast<unsigned char>(name[i]);
        if (c < 0x80) {
            out.push_back(static_cast<char>(std::tolower(c)));
            ++i;
        } else if ((c & 0xE0) == 0xC0 && i + 1 < name.size()) {
            const uint16_t key = static_cast<uint16_t>(
                (c << 8) | static_cast<unsigned char>(name[i + 1]));
            const auto& table = translit_table();
            const auto it = table.find(key);
            if (it != table.end()) out += it->second;
            else out.append(name, i, 2);  // unknown two-byte sequence kept as-is
            i += 2;
        } else {
            out.push_back(name[i]);
            ++i;
        }
    }
    return collapse_whitespace(out);
}

ExpandResult expand_author_rows(const std::vector<PaperRecord>& papers) {
    ExpandResult result;
    for (const auto& paper : papers) {
        std::unordered_set<std::string> seen;
        for (const auto& name : paper.authors) {
            std::string id = normalize_author(name);
            if (id.empty()) continue;
            if (!seen.insert(id).second) {
                result.warnings.push_back("duplicate author '" + id + "' in paper '" +
                                          paper.paper_id + "'");
                continue;
            }
            result.rows.push_back({id, paper.paper_id, paper.year, std::nullopt});
        }
    }
    return result;
}

PaperFeatures compute_paper_features(const PaperRecord& record) {
    PaperFeatures f;
    f.n_authors = static_cast<int>(record.authors.size());
    f.page_length = record.page_count;
    f.is_conference = record.venue_kind == VenueKind::conference ? 1 : 0;
    if (record.full_text && !record.full_text->empty()) {
        f.word_count = static_cast<int>(count_tokens(*record.full_text));
        f.fog_index = gunning_fog(*record.full_text);
    }
    return f;
}

CountryTable read_country_csv(const std::string& path) {
    CountryTable table;
    const CsvTable csv = read_csv_file(path);
    for (const auto& row : csv.rows) {
        if (row.size() < 3) throw DataError("country sidecar row needs 3 fields");
        table[{row[0], std::stoi(row[1])}] = row[2];
    }
    return table;
}

void apply_countries(std::vector<AuthorPaperRow>& rows, const CountryTable& countries) {
    for (auto& row : rows) {
        const auto it = countries.find({row.author_id, row.year});
        if (it != countries.end()) row.country = it->second;
    }
}

std::vector<CorpusRow> join_corpus_rows(const std::vector<PaperRecord>& papers,
                                        const std::vector<AuthorPaperRow>& rows) {
    std::unordered_map<std::string, const PaperRecord*> by_id;
    std::unordered_map<std::string, PaperFeatures> features;
    for (const auto& p : papers) {
        by_id[p.paper_id] = &p;
        features[p.paper_id] = compute_paper_features(p);
    }
    std::vector<CorpusRow> out;
    out.reserve(rows.size());
    for (const auto& row : rows) {
        const auto it = by_id.find(row.paper_id);
        if (it == by_id.end()) throw DataError("row references unknown paper: " + row.paper_id);
        CorpusRow cr;
        cr.author_id = row.author_id;
        cr.paper_id = row.paper_id;
        cr.year = row.year;
        cr.venue_kind = it->second->venue_kind;
        cr.features = features[row.paper_id];
        cr.country = row.country;
        out.push_back(std::move(cr));
    }
    return out;
}

void write_rows_csv(const std::string& path, const std::vector<CorpusRow>& rows) {
    std::vector<std::vector<std::string>> cells;
    cells.reserve(rows.size());
    for (const auto& r : rows) {
        cells.push_back({r.author_id, r.paper_id, std::to_string(r.year),
                         venue_kind_name(r.venue_kind), std::to_string(r.features.n_authors),
                         std::to_string(r.features.page_length),
                         std::to_string(r.features.word_count), format_double(r.features.fog_index),
                         r.country.value_or("")});
    }
    write_csv_file(path, split(kRowsCsvHeader, ','), cells);
}

std::vector<CorpusRow> read_rows_csv(const std::string& path) {
    const CsvTable csv = read_csv_file(path);
    if (csv_join(csv.header) != kRowsCsvHeader)
        throw DataError("unexpected rows CSV header in " + path);
    std::vector<CorpusRow> out;
    out.reserve(csv.rows.size());
    for (const auto& row : csv.rows) {
        if (row.size() != 9) throw DataError("rows CSV record needs 9 fields");
        CorpusRow cr;
        cr.author_id = row[0];
        cr.paper_id = row[1];
        cr.year = std::stoi(row[2]);
        const auto venue = venue_kind_from_name(row[3]);
        if (!venue) throw DataError("unknown venue kind: " + row[3]);
        cr.venue_kind = *venue;
        cr.features.n_authors = std::stoi(row[4]);
        cr.features.page_length = std::stoi(row[5]);
        cr.features.word_count = std::stoi(row[6]);
        cr.features.fog_index = std::stod(row[7]);
        cr.features.is_conference = cr.venue_kind == VenueKind::conference ? 1 : 0;
        cr.country = row[8].empty() ? std::nullopt : std::make_optional(row[8]);
        out.push_back(std::move(cr));
    }
    return out;
}

}  // namespace pubcausal
