#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "infops/analytics.hpp"
#include "infops/corpus.hpp"
#include "infops/strategy.hpp"

namespace infops::report {

inline constexpr std::string_view kToolName = "infops";

struct ReportContext {
    std::string taxonomy_version;
    std::string catalog_taxonomy_version;
    std::string corpus_source;
    IngestMode ingest_mode = IngestMode::Strict;
    bool strict_prep = false;
    std::int64_t min_support = 1;
};

/// Machine-readable stats document (JSON, 2-space indent, trailing newline).
std::string stats_json(const ClassifiedCorpus& cc, const StrategyCatalog& c, const ReportContext& ctx);
/// Human-readable rendering of the same numbers.
std::string stats_pretty(const ClassifiedCorpus& cc, const StrategyCatalog& c, const ReportContext& ctx);

std::string classification_json(const ClassifiedCorpus& cc, const StrategyCatalog& c);
std::string classification_pretty(const ClassifiedCorpus& cc, const StrategyCatalog& c);

enum class GraphKind { Cooccurrence, Conditional };
enum class GraphFormat { Dot, GraphMl, Json };

GraphKind parse_graph_kind(std::string_view s);      // Error(UnknownFormat)
GraphFormat parse_graph_format(std::string_view s);  // Error(UnknownFormat)

std::string graph_document(const ClassifiedCorpus& cc, const StrategyCatalog& c, GraphKind kind,
                           GraphFormat format, std::int64_t min_support = 1);

}  // namespace infops::report
