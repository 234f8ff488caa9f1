#include "infops/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <unordered_set>

#include "csv.hpp"
#include "infops/error.hpp"
#include "io.hpp"

namespace infops {

namespace {

constexpr std::string_view kColumns[] = {"incident_id", "title", "year", "targets", "techniques"};

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_list(std::string_view s) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= s.size()) {
        auto bar = s.find('|', start);
        if (bar == std::string_view::npos) bar = s.size();
        auto item = trim(s.substr(start, bar - start));
        if (!item.empty()) out.push_back(std::move(item));
        start = bar + 1;
    }
    return out;
}

std::string join_list(const auto& items, std::string_view what, const std::string& incident_id) {
    std::string out;
    for (const auto& item : items) {
        if (std::string_view(item).find('|') != std::string_view::npos)
            throw Error(ErrorCode::Schema, "incident '" + incident_id + "': " + std::string(what) + " '" + item +
                                               "' contains '|' and cannot be written as CSV");
        if (!out.empty()) out += '|';
        out += item;
    }
    return out;
}

int parse_year(std::string_view text, const std::string& ctx) {
    const std::string s = trim(text);
    int year = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), year);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
        throw Error(ErrorCode::Parse, ctx + ": year '" + s + "' is not an integer");
    return year;
}

struct RawIncident {
    std::size_t row = 0;
    Incident incident;
    std::vector<std::string> technique_refs;
};

IngestResult finish(std::vector<RawIncident> raw, const Taxonomy& t, IngestMode mode, std::string source) {
    if (raw.empty()) throw Error(ErrorCode::EmptyCorpus, "corpus has no incidents");
    IngestResult result;
    result.corpus.source = std::move(source);
    std::unordered_set<std::string> ids;
    for (auto& r : raw) {
        const std::string ctx = "row " + std::to_string(r.row) + " (incident '" + r.incident.incident_id + "')";
        if (r.incident.incident_id.empty())
            throw Error(ErrorCode::Schema, "row " + std::to_string(r.row) + ": empty incident_id");
        if (!ids.insert(r.incident.incident_id).second)
            throw Error(ErrorCode::DuplicateIncidentId, ctx + ": duplicate incident_id");
        for (const auto& ref : r.technique_refs) {
            if (t.find_technique(ref)) {
                r.incident.techniques.insert(ref);
            } else if (mode == IngestMode::Strict) {
                throw Error(ErrorCode::UnknownTechnique, ctx + ": unknown technique id '" + ref + "'");
            } else {
                result.report.dropped.push_back({r.row, r.incident.incident_id, ref});
            }
        }
        result.corpus.incidents.push_back(std::move(r.incident));
    }
    result.report.incident_count = result.corpus.incidents.size();
    return result;
}

std::vector<RawIncident> read_csv_incidents(std::string_view document) {
    const auto records = detail::read_csv(document);
    if (records.empty()) throw Error(ErrorCode::Parse, "csv: missing header");
    const auto& header = records.front().fields;
    std::map<std::string_view, std::size_t> col;
    for (auto name : kColumns) {
        auto it = std::find_if(header.begin(), header.end(), [&](const auto& h) { return trim(h) == name; });
        if (it == header.end()) throw Error(ErrorCode::Schema, "csv: header lacks column '" + std::string(name) + "'");
        col[name] = static_cast<std::size_t>(it - header.begin());
    }
    std::vector<RawIncident> out;
    for (std::size_t i = 1; i < records.size(); ++i) {
        const auto& f = records[i].fields;
        const std::string ctx = "row " + std::to_string(i) + " (line " + std::to_string(records[i].line) + ")";
        if (f.size() != header.size())
            throw Error(ErrorCode::Parse, ctx + ": expected " + std::to_string(header.size()) + " fields, found " +
                                              std::to_string(f.size()));
        RawIncident r;
        r.row = i;
        r.incident.incident_id = trim(f[col["incident_id"]]);
        r.incident.title = f[col["title"]];
        r.incident.year = parse_year(f[col["year"]], ctx);
        r.incident.targets = split_list(f[col["targets"]]);
        r.technique_refs = split_list(f[col["techniques"]]);
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<std::string> string_array(const nlohmann::json& obj, const char* key, const std::string& ctx,
                                      bool required) {
    std::vector<std::string> out;
    auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) {
        if (required) throw Error(ErrorCode::Schema, ctx + ": missing required field '" + key + "'");
        return out;
    }
    if (!it->is_array()) throw Error(ErrorCode::Schema, ctx + ": field '" + key + "' must be an array");
    for (const auto& v : *it) {
        if (!v.is_string()) throw Error(ErrorCode::Schema, ctx + ": '" + key + "' entries must be strings");
        auto s = trim(v.get<std::string>());
        if (!s.empty()) out.push_back(std::move(s));
    }
    return out;
}

std::vector<RawIncident> read_json_incidents(std::string_view document) {
    const auto doc = detail::parse_json(document, "corpus");
    if (!doc.is_array()) throw Error(ErrorCode::Schema, "corpus: top level must be an array of incidents");
    std::vector<RawIncident> out;
    for (std::size_t i = 0; i < doc.size(); ++i) {
        const auto& obj = doc[i];
        const std::string ctx = "row " + std::to_string(i + 1);
        RawIncident r;
        r.row = i + 1;
        r.incident.incident_id = trim(detail::require_string(obj, "incident_id", ctx));
        r.incident.title = detail::optional_string(obj, "title", ctx);
        const auto& year = detail::require(obj, "year", ctx);
        if (!year.is_number_integer()) throw Error(ErrorCode::Schema, ctx + ": year must be an integer");
        r.incident.year = year.get<int>();
        r.incident.targets = string_array(obj, "targets", ctx, false);
        r.technique_refs = string_array(obj, "techniques", ctx, true);
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace

CorpusFormat detect_corpus_format(std::string_view path, std::string_view document) {
    auto ends_with = [&](std::string_view suffix) {
        return path.size() >= suffix.size() && path.substr(path.size() - suffix.size()) == suffix;
    };
    if (ends_with(".csv")) return CorpusFormat::Csv;
    if (ends_with(".json")) return CorpusFormat::Json;
    const auto pos = document.find_first_not_of(" \t\r\n");
    return (pos != std::string_view::npos && document[pos] == '[') ? CorpusFormat::Json : CorpusFormat::Csv;
}

IngestResult ingest_corpus(std::string_view document, CorpusFormat format, const Taxonomy& t, IngestMode mode,
                           std::string source) {
    auto raw = format == CorpusFormat::Csv ? read_csv_incidents(document) : read_json_incidents(document);
    return finish(std::move(raw), t, mode, std::move(source));
}

IngestResult ingest_corpus_file(const std::string& path, const Taxonomy& t, IngestMode mode) {
    const std::string doc = detail::read_file(path);
    return ingest_corpus(doc, detect_corpus_format(path, doc), t, mode, path);
}

std::string serialize_corpus(const Corpus& c, CorpusFormat format) {
    if (format == CorpusFormat::Json) {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const auto& i : c.incidents) {
            nlohmann::ordered_json o;
            o["incident_id"] = i.incident_id;
            o["title"] = i.title;
            o["year"] = i.year;
            o["targets"] = i.targets;
            o["techniques"] = i.techniques;
            arr.push_back(std::move(o));
        }
        return detail::dump(arr);
    }
    std::string out = detail::csv_line({"incident_id", "title", "year", "targets", "techniques"});
    for (const auto& i : c.incidents) {
        out += detail::csv_line({i.incident_id, i.title, std::to_string(i.year),
                                 join_list(i.targets, "target", i.incident_id),
                                 join_list(i.techniques, "technique", i.incident_id)});
    }
    return out;
}

CorpusSummary corpus_summary(const Corpus& c) {
    if (c.incidents.empty()) throw Error(ErrorCode::EmptyCorpus, "corpus has no incidents");
    CorpusSummary s;
    s.incident_count = c.incidents.size();
    s.first_year = s.last_year = c.incidents.front().year;
    std::map<std::string, std::size_t> freq;
    for (const auto& i : c.incidents) {
        s.first_year = std::min(s.first_year, i.year);
        s.last_year = std::max(s.last_year, i.year);
        for (const auto& tech : i.techniques) ++freq[tech];
    }
    s.technique_frequency.assign(freq.begin(), freq.end());
    std::stable_sort(s.technique_frequency.begin(), s.technique_frequency.end(),
                     [](const auto& a, const auto& b) { return a.second > b.second; });
    return s;
}

}  // namespace infops
