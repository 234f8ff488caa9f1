#include "infops/infops.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>

#include "infops/analytics.hpp"
#include "infops/corpus.hpp"
#include "infops/error.hpp"
#include "infops/generator.hpp"
#include "infops/report.hpp"
#include "infops/strategy.hpp"
#include "infops/taxonomy.hpp"
#include "io.hpp"

#ifndef INFOPS_VERSION
#define INFOPS_VERSION "0.0.0"
#endif

struct infops_taxonomy {
    infops::Taxonomy value;
};

struct infops_catalog {
    infops::StrategyCatalog value;
};

struct infops_corpus {
    infops::Corpus value;
};

namespace {

thread_local std::string g_last_error;

infops_status to_status(infops::ErrorCode code) {
    using infops::ErrorCode;
    switch (code) {
        case ErrorCode::Parse: return INFOPS_E_PARSE;
        case ErrorCode::Schema: return INFOPS_E_SCHEMA;
        case ErrorCode::NotFound: return INFOPS_E_NOT_FOUND;
        case ErrorCode::AmbiguousName: return INFOPS_E_AMBIGUOUS_NAME;
        case ErrorCode::UnknownTechnique: return INFOPS_E_UNKNOWN_TECHNIQUE;
        case ErrorCode::PhaseViolation: return INFOPS_E_PHASE_VIOLATION;
        case ErrorCode::DisjointnessViolation: return INFOPS_E_DISJOINTNESS;
        case ErrorCode::DuplicateIncidentId: return INFOPS_E_DUPLICATE_INCIDENT;
        case ErrorCode::EmptyCorpus: return INFOPS_E_EMPTY_CORPUS;
        case ErrorCode::InfeasibleSpec: return INFOPS_E_INFEASIBLE_SPEC;
        case ErrorCode::ZeroIncidents: return INFOPS_E_ZERO_INCIDENTS;
        case ErrorCode::NegativeSupport: return INFOPS_E_NEGATIVE_SUPPORT;
        case ErrorCode::InvalidRange: return INFOPS_E_INVALID_RANGE;
        case ErrorCode::UnknownFormat: return INFOPS_E_UNKNOWN_FORMAT;
        case ErrorCode::Io: return INFOPS_E_IO;
    }
    return INFOPS_E_INTERNAL;
}

template <typename F>
infops_status guarded(F&& body) {
    try {
        body();
        return INFOPS_OK;
    } catch (const infops::Error& e) {
        g_last_error = std::string(infops::error_code_name(e.code())) + ": " + e.what();
        return to_status(e.code());
    } catch (const std::bad_alloc&) {
        g_last_error = "out of memory";
        return INFOPS_E_INTERNAL;
    } catch (const std::exception& e) {
        g_last_error = std::string("internal error: ") + e.what();
        return INFOPS_E_INTERNAL;
    } catch (...) {
        g_last_error = "internal error";
        return INFOPS_E_INTERNAL;
    }
}

infops_status invalid(const char* what) {
    g_last_error = std::string("invalid argument: ") + what;
    return INFOPS_E_INVALID_ARGUMENT;
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.data(), s.size() + 1);
    return out;
}

std::string violations_json(const infops::ValidationReport& report) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& v : report) arr.push_back({{"kind", v.kind}, {"subject", v.subject}, {"message", v.message}});
    return infops::detail::dump(arr);
}

std::string ingest_report_json(const infops::IngestReport& r) {
    nlohmann::ordered_json doc;
    doc["incidents"] = r.incident_count;
    doc["dropped"] = nlohmann::ordered_json::array();
    for (const auto& d : r.dropped)
        doc["dropped"].push_back({{"row", d.row}, {"incident_id", d.incident_id}, {"technique_id", d.technique_id}});
    return infops::detail::dump(doc);
}

infops::IngestMode to_mode(infops_ingest_mode m) {
    return m == INFOPS_INGEST_LENIENT ? infops::IngestMode::Lenient : infops::IngestMode::Strict;
}

infops_analysis_options resolve(const infops_analysis_options* o) { return o ? *o : infops_default_options(); }

}  // namespace

extern "C" {

const char* infops_version(void) { return INFOPS_VERSION; }

const char* infops_status_name(infops_status status) {
    switch (status) {
        case INFOPS_OK: return "OK";
        case INFOPS_E_PARSE: return "ParseError";
        case INFOPS_E_SCHEMA: return "SchemaError";
        case INFOPS_E_NOT_FOUND: return "NotFound";
        case INFOPS_E_AMBIGUOUS_NAME: return "AmbiguousName";
        case INFOPS_E_UNKNOWN_TECHNIQUE: return "UnknownTechnique";
        case INFOPS_E_PHASE_VIOLATION: return "PhaseViolation";
        case INFOPS_E_DISJOINTNESS: return "DisjointnessViolation";
        case INFOPS_E_DUPLICATE_INCIDENT: return "DuplicateIncidentId";
        case INFOPS_E_EMPTY_CORPUS: return "EmptyCorpus";
        case INFOPS_E_INFEASIBLE_SPEC: return "InfeasibleSpec";
        case INFOPS_E_ZERO_INCIDENTS: return "ZeroIncidents";
        case INFOPS_E_NEGATIVE_SUPPORT: return "NegativeSupport";
        case INFOPS_E_INVALID_RANGE: return "InvalidRange";
        case INFOPS_E_UNKNOWN_FORMAT: return "UnknownFormat";
        case INFOPS_E_IO: return "IoError";
        case INFOPS_E_INVALID_ARGUMENT: return "InvalidArgument";
        case INFOPS_E_INTERNAL: return "InternalError";
    }
    return "Unknown";
}

const char* infops_last_error(void) { return g_last_error.c_str(); }

void infops_string_free(char* s) { std::free(s); }

infops_analysis_options infops_default_options(void) {
    infops_analysis_options o{};
    o.strict_prep = 0;
    o.min_support = 1;
    o.ingest = INFOPS_INGEST_STRICT;
    o.pretty = 0;
    return o;
}

infops_status infops_taxonomy_load_file(const char* path, infops_taxonomy** out) {
    if (!path || !out) return invalid("path/out");
    return guarded([&] { *out = new infops_taxonomy{infops::load_taxonomy_file(path)}; });
}

infops_status infops_taxonomy_load_string(const char* doc, size_t len, infops_taxonomy** out) {
    if (!doc || !out) return invalid("doc/out");
    return guarded([&] { *out = new infops_taxonomy{infops::load_taxonomy(std::string_view(doc, len))}; });
}

void infops_taxonomy_free(infops_taxonomy* t) { delete t; }

const char* infops_taxonomy_version(const infops_taxonomy* t) { return t ? t->value.version().c_str() : ""; }

infops_status infops_taxonomy_serialize(const infops_taxonomy* t, char** out) {
    if (!t || !out) return invalid("taxonomy/out");
    return guarded([&] { *out = dup_string(infops::serialize_taxonomy(t->value)); });
}

infops_status infops_taxonomy_validate(const infops_taxonomy* t, char** report_json, size_t* count) {
    if (!t) return invalid("taxonomy");
    return guarded([&] {
        const auto report = infops::validate_taxonomy(t->value);
        if (count) *count = report.size();
        if (report_json) *report_json = dup_string(violations_json(report));
    });
}

infops_status infops_taxonomy_lookup(const infops_taxonomy* t, const char* key, char** technique_json) {
    if (!t || !key || !technique_json) return invalid("taxonomy/key/out");
    return guarded([&] {
        const auto& tech = infops::lookup_technique(t->value, key);
        nlohmann::ordered_json j;
        j["id"] = tech.id;
        j["name"] = tech.name;
        j["tactic_id"] = tech.tactic_id;
        j["phase"] = t->value.phase_name_of(tech);
        *technique_json = dup_string(infops::detail::dump(j));
    });
}

infops_status infops_catalog_load_file(const char* path, const infops_taxonomy* t, infops_catalog** out) {
    if (!path || !t || !out) return invalid("path/taxonomy/out");
    return guarded([&] { *out = new infops_catalog{infops::load_strategy_catalog_file(path, t->value)}; });
}

infops_status infops_catalog_load_string(const char* doc, size_t len, const infops_taxonomy* t, infops_catalog** out) {
    if (!doc || !t || !out) return invalid("doc/taxonomy/out");
    return guarded([&] {
        *out = new infops_catalog{infops::load_strategy_catalog(std::string_view(doc, len), t->value)};
    });
}

void infops_catalog_free(infops_catalog* c) { delete c; }

size_t infops_catalog_size(const infops_catalog* c) { return c ? c->value.strategies().size() : 0; }

infops_status infops_catalog_check_disjointness(const infops_catalog* c, char** report_json, size_t* count) {
    if (!c) return invalid("catalog");
    return guarded([&] {
        const auto report = infops::check_disjointness(c->value);
        if (count) *count = report.size();
        if (report_json) *report_json = dup_string(violations_json(report));
    });
}

infops_status infops_corpus_ingest_file(const char* path, const infops_taxonomy* t, infops_ingest_mode mode,
                                        infops_corpus** out, char** report_json) {
    if (!path || !t || !out) return invalid("path/taxonomy/out");
    return guarded([&] {
        auto result = infops::ingest_corpus_file(path, t->value, to_mode(mode));
        std::string report = report_json ? ingest_report_json(result.report) : std::string{};
        auto handle = std::make_unique<infops_corpus>(infops_corpus{std::move(result.corpus)});
        if (report_json) *report_json = dup_string(report);
        *out = handle.release();
    });
}

infops_status infops_corpus_ingest_string(const char* doc, size_t len, infops_corpus_format format,
                                          const infops_taxonomy* t, infops_ingest_mode mode, infops_corpus** out,
                                          char** report_json) {
    if (!doc || !t || !out) return invalid("doc/taxonomy/out");
    return guarded([&] {
        const std::string_view text(doc, len);
        infops::CorpusFormat f = format == INFOPS_FORMAT_CSV    ? infops::CorpusFormat::Csv
                                 : format == INFOPS_FORMAT_JSON ? infops::CorpusFormat::Json
                                                                : infops::detect_corpus_format("", text);
        auto result = infops::ingest_corpus(text, f, t->value, to_mode(mode), "<memory>");
        std::string report = report_json ? ingest_report_json(result.report) : std::string{};
        auto handle = std::make_unique<infops_corpus>(infops_corpus{std::move(result.corpus)});
        if (report_json) *report_json = dup_string(report);
        *out = handle.release();
    });
}

void infops_corpus_free(infops_corpus* c) { delete c; }

size_t infops_corpus_size(const infops_corpus* c) { return c ? c->value.incidents.size() : 0; }

infops_status infops_corpus_summary(const infops_corpus* c, char** summary_json) {
    if (!c || !summary_json) return invalid("corpus/out");
    return guarded([&] {
        const auto s = infops::corpus_summary(c->value);
        nlohmann::ordered_json j;
        j["incidents"] = s.incident_count;
        j["years"] = {s.first_year, s.last_year};
        j["techniques"] = nlohmann::ordered_json::array();
        for (const auto& [id, n] : s.technique_frequency) j["techniques"].push_back({{"id", id}, {"count", n}});
        *summary_json = dup_string(infops::detail::dump(j));
    });
}

infops_status infops_corpus_serialize(const infops_corpus* c, infops_corpus_format format, char** out) {
    if (!c || !out) return invalid("corpus/out");
    return guarded([&] {
        const auto f = format == INFOPS_FORMAT_JSON ? infops::CorpusFormat::Json : infops::CorpusFormat::Csv;
        *out = dup_string(infops::serialize_corpus(c->value, f));
    });
}

infops_status infops_generate(const char* spec_doc, size_t len, const infops_catalog* c,
                              const uint64_t* seed_override, infops_corpus** out) {
    if (!spec_doc || !c || !out) return invalid("spec/catalog/out");
    return guarded([&] {
        auto spec = infops::parse_generator_spec(std::string_view(spec_doc, len));
        if (seed_override) spec.seed = *seed_override;
        *out = new infops_corpus{infops::generate_corpus(spec, c->value)};
    });
}

infops_status infops_generate_file(const char* spec_path, const infops_catalog* c, const uint64_t* seed_override,
                                   infops_corpus** out) {
    if (!spec_path || !c || !out) return invalid("spec_path/catalog/out");
    return guarded([&] {
        auto spec = infops::load_generator_spec_file(spec_path);
        if (seed_override) spec.seed = *seed_override;
        *out = new infops_corpus{infops::generate_corpus(spec, c->value)};
    });
}

infops_status infops_classify(const infops_corpus* corpus, const infops_catalog* c,
                              const infops_analysis_options* options, char** out) {
    if (!corpus || !c || !out) return invalid("corpus/catalog/out");
    const auto o = resolve(options);
    return guarded([&] {
        const auto cc = infops::classify_corpus(corpus->value, c->value, {o.strict_prep != 0});
        *out = dup_string(o.pretty ? infops::report::classification_pretty(cc, c->value)
                                   : infops::report::classification_json(cc, c->value));
    });
}

infops_status infops_stats(const infops_corpus* corpus, const infops_taxonomy* t, const infops_catalog* c,
                           const infops_analysis_options* options, char** out) {
    if (!corpus || !t || !c || !out) return invalid("corpus/taxonomy/catalog/out");
    const auto o = resolve(options);
    return guarded([&] {
        const auto cc = infops::classify_corpus(corpus->value, c->value, {o.strict_prep != 0});
        infops::report::ReportContext ctx;
        ctx.taxonomy_version = t->value.version();
        ctx.catalog_taxonomy_version = c->value.taxonomy_version();
        ctx.corpus_source = corpus->value.source;
        ctx.ingest_mode = to_mode(o.ingest);
        ctx.strict_prep = o.strict_prep != 0;
        ctx.min_support = o.min_support;
        *out = dup_string(o.pretty ? infops::report::stats_pretty(cc, c->value, ctx)
                                   : infops::report::stats_json(cc, c->value, ctx));
    });
}

infops_status infops_graph(const infops_corpus* corpus, const infops_catalog* c, const char* kind, const char* format,
                           const infops_analysis_options* options, char** out) {
    if (!corpus || !c || !kind || !format || !out) return invalid("corpus/catalog/kind/format/out");
    const auto o = resolve(options);
    return guarded([&] {
        const auto k = infops::report::parse_graph_kind(kind);
        const auto f = infops::report::parse_graph_format(format);
        const auto cc = infops::classify_corpus(corpus->value, c->value, {o.strict_prep != 0});
        *out = dup_string(infops::report::graph_document(cc, c->value, k, f, o.min_support));
    });
}

infops_status infops_combination_count(int n_strategies, int min_size, uint64_t* out) {
    if (!out) return invalid("out");
    return guarded([&] { *out = infops::analytics::possible_combination_count(n_strategies, min_size); });
}

}  // extern "C"
