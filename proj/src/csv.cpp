#include "csv.hpp"

#include "infops/error.hpp"

namespace infops::detail {

std::vector<CsvRecord> read_csv(std::string_view text) {
    std::vector<CsvRecord> records;
    if (text.size() >= 3 && text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);

    CsvRecord current;
    std::string field;
    bool in_quotes = false;
    bool field_was_quoted = false;
    bool record_has_content = false;
    std::size_t line = 1;
    current.line = 1;

    auto end_field = [&] {
        current.fields.push_back(std::move(field));
        field.clear();
        field_was_quoted = false;
    };
    auto end_record = [&] {
        end_field();
        if (record_has_content) records.push_back(std::move(current));
        current = CsvRecord{};
        record_has_content = false;
    };

    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                if (c == '\n') ++line;
                field += c;
            }
            continue;
        }
        switch (c) {
            case '"':
                if (!field.empty() || field_was_quoted)
                    throw Error(ErrorCode::Parse, "csv line " + std::to_string(line) + ": unexpected quote");
                in_quotes = true;
                field_was_quoted = true;
                record_has_content = true;
                break;
            case ',':
                end_field();
                record_has_content = true;
                break;
            case '\r':
                if (i + 1 < text.size() && text[i + 1] == '\n') break;
                [[fallthrough]];
            case '\n':
                end_record();
                ++line;
                current.line = line;
                break;
            default:
                if (field_was_quoted)
                    throw Error(ErrorCode::Parse,
                                "csv line " + std::to_string(line) + ": text after closing quote");
                field += c;
                record_has_content = true;
        }
    }
    if (in_quotes) throw Error(ErrorCode::Parse, "csv: unterminated quoted field");
    if (record_has_content || !field.empty()) end_record();
    return records;
}

std::string csv_escape(std::string_view field) {
    if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string csv_line(const std::vector<std::string>& fields) {
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out += ',';
        out += csv_escape(fields[i]);
    }
    out += '\n';
    return out;
}

}  // namespace infops::detail
