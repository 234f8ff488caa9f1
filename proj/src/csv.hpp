#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace infops::detail {

struct CsvRecord {
    std::size_t line = 0;  // 1-based line the record starts on
    std::vector<std::string> fields;
};

// RFC 4180 reader: quoted fields may hold commas, doubled quotes and line
// breaks; CRLF and LF both end a record. Blank lines are skipped. Throws
// Error(Parse) on an unterminated quote or stray quote inside a bare field.
std::vector<CsvRecord> read_csv(std::string_view text);

// Quotes only when needed. Records end with LF.
std::string csv_escape(std::string_view field);
std::string csv_line(const std::vector<std::string>& fields);

}  // namespace infops::detail
