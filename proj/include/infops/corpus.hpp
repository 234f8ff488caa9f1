#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "infops/taxonomy.hpp"

namespace infops {

struct Incident {
    std::string incident_id;
    std::string title;
    int year = 0;
    std::vector<std::string> targets;
    std::set<std::string> techniques;  // technique ids

    friend bool operator==(const Incident&, const Incident&) = default;
};

struct Corpus {
    std::vector<Incident> incidents;
    std::string source;

    // Provenance is not part of corpus identity.
    friend bool operator==(const Corpus& a, const Corpus& b) { return a.incidents == b.incidents; }
};

enum class IngestMode { Strict, Lenient };
enum class CorpusFormat { Csv, Json };

struct DroppedTechnique {
    std::size_t row = 0;  // 1-based data row (header excluded) or array position
    std::string incident_id;
    std::string technique_id;
};

struct IngestReport {
    std::size_t incident_count = 0;
    std::vector<DroppedTechnique> dropped;
};

struct IngestResult {
    Corpus corpus;
    IngestReport report;
};

/// CSV header: incident_id,title,year,targets,techniques with `|`-separated
/// list fields. JSON: array of objects with the same keys (lists as arrays).
IngestResult ingest_corpus(std::string_view document, CorpusFormat format, const Taxonomy& t,
                           IngestMode mode, std::string source = {});
IngestResult ingest_corpus_file(const std::string& path, const Taxonomy& t, IngestMode mode);

// Guesses from the extension, then from the first non-blank byte.
CorpusFormat detect_corpus_format(std::string_view path, std::string_view document);

std::string serialize_corpus(const Corpus& c, CorpusFormat format);

struct CorpusSummary {
    std::size_t incident_count = 0;
    int first_year = 0;
    int last_year = 0;
    // Sorted by count descending, then id ascending.
    std::vector<std::pair<std::string, std::size_t>> technique_frequency;
};

CorpusSummary corpus_summary(const Corpus& c);

}  // namespace infops
