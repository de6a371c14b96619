#include "pubcausal/csv.hpp"

#include <fstream>
#include <istream>

#include "pubcausal/common.hpp"

namespace pubcausal {

std::string csv_escape(const std::string& field) {
    bool needs_quote = false;
    for (char c : field) {
        if (c == ',' || c == '"' || c == '\n' || c == '\r') {
            needs_quote = true;
            break;
        }
    }
    if (!needs_quote) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += "\"\"";
        else out.push_back(c);
    }
    out.push_back('"');
    return out;
}

std::string csv_join(const std::vector<std::string>& fields) {
    std::string line;
    for (size_t i = 0; i < fields.size(); ++i) {
        if (i) line.push_back(',');
        line += csv_escape(fields[i]);
    }
    return line;
}

bool csv_read_record(std::istream& in, std::vector<std::string>& out) {
    out.clear();
    std::string field;
    bool in_quotes = false;
    bool saw_any = false;
    int ch;
    while ((ch = in.get()) != EOF) {
        saw_any = true;
        const char c = static_cast<char>(ch);
        if (in_quotes) {
            if (c == '"') {
                if (in.peek() == '"') {
                    in.get();
                    field.push_back('"');
                } else {
                    in_quotes = false;
                }
            } else {
                field.push_back(c);
            }
        } else if (c == '"') {
            in_quotes = true;
        } else if (c == ',') {
            out.push_back(field);
            field.clear();
        } else if (c == '\n') {
            out.push_back(field);
            return true;
        } else if (c == '\r') {
            // tolerate CRLF input
        } else {
            field.push_back(c);
        }
    }
    if (!saw_any) return false;
    out.push_back(field);
    return true;
}

CsvTable read_csv_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open CSV file: " + path);
    CsvTable table;
    std::vector<std::string> rec;
    if (csv_read_record(in, rec)) table.header = rec;
    while (csv_read_record(in, rec)) {
        if (rec.size() == 1 && rec[0].empty()) continue;  // trailing blank line
        table.rows.push_back(rec);
    }
    return table;
}

void write_csv_file(const std::string& path, const std::vector<std::string>& header,
                    const std::vector<std::vector<std::string>>& rows) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write CSV file: " + path);
    out << csv_join(header) << '\n';
    for (const auto& row : rows) out << csv_join(row) << '\n';
    if (!out) throw DataError("write failed: " + path);
}

}  // namespace pubcausal
