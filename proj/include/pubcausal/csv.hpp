#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pubcausal {

// RFC 4180 field quoting; fields containing comma, quote, CR or LF are
// wrapped in double quotes with embedded quotes doubled.
std::string csv_escape(const std::string& field);

std::string csv_join(const std::vector<std::string>& fields);

// Parses one logical CSV record from `in` (may span physical lines when a
// quoted field contains newlines). Returns false at end of stream.
bool csv_read_record(std::istream& in, std::vector<std::string>& out);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

CsvTable read_csv_file(const std::string& path);

void write_csv_file(const std::string& path, const std::vector<std::string>& header,
                    const std::vector<std::vector<std::string>>& rows);

}  // namespace pubcausal
