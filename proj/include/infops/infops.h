/*
 * infops C API.
 *
 * Objects are opaque handles owned by the caller and released with the
 * matching *_free function. Every function that can fail returns an
 * infops_status; on failure a description is available from
 * infops_last_error() (thread-local, valid until the next failing call on the
 * same thread). Strings returned through char** are UTF-8, NUL-terminated and
 * must be released with infops_string_free().
 */
#ifndef INFOPS_H
#define INFOPS_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(INFOPS_BUILDING_DLL)
#    define INFOPS_API __declspec(dllexport)
#  else
#    define INFOPS_API __declspec(dllimport)
#  endif
#else
#  define INFOPS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum infops_status {
    INFOPS_OK = 0,
    INFOPS_E_PARSE = 1,
    INFOPS_E_SCHEMA = 2,
    INFOPS_E_NOT_FOUND = 3,
    INFOPS_E_AMBIGUOUS_NAME = 4,
    INFOPS_E_UNKNOWN_TECHNIQUE = 5,
    INFOPS_E_PHASE_VIOLATION = 6,
    INFOPS_E_DISJOINTNESS = 7,
    INFOPS_E_DUPLICATE_INCIDENT = 8,
    INFOPS_E_EMPTY_CORPUS = 9,
    INFOPS_E_INFEASIBLE_SPEC = 10,
    INFOPS_E_ZERO_INCIDENTS = 11,
    INFOPS_E_NEGATIVE_SUPPORT = 12,
    INFOPS_E_INVALID_RANGE = 13,
    INFOPS_E_UNKNOWN_FORMAT = 14,
    INFOPS_E_IO = 15,
    INFOPS_E_INVALID_ARGUMENT = 16,
    INFOPS_E_INTERNAL = 17
} infops_status;

typedef enum infops_ingest_mode {
    INFOPS_INGEST_STRICT = 0,
    INFOPS_INGEST_LENIENT = 1
} infops_ingest_mode;

typedef enum infops_corpus_format {
    INFOPS_FORMAT_AUTO = 0,
    INFOPS_FORMAT_CSV = 1,
    INFOPS_FORMAT_JSON = 2
} infops_corpus_format;

typedef struct infops_taxonomy infops_taxonomy;
typedef struct infops_catalog infops_catalog;
typedef struct infops_corpus infops_corpus;

typedef struct infops_analysis_options {
    int strict_prep;            /* non-zero: strategies also need a preparation technique */
    int64_t min_support;        /* conditional graph threshold, >= 0 */
    infops_ingest_mode ingest;  /* echoed into reports */
    int pretty;                 /* non-zero: human-readable text instead of JSON */
} infops_analysis_options;

INFOPS_API const char* infops_version(void);
INFOPS_API const char* infops_status_name(infops_status status);
INFOPS_API const char* infops_last_error(void);
INFOPS_API void infops_string_free(char* s);
INFOPS_API infops_analysis_options infops_default_options(void);

/* Taxonomy */
INFOPS_API infops_status infops_taxonomy_load_file(const char* path, infops_taxonomy** out);
INFOPS_API infops_status infops_taxonomy_load_string(const char* doc, size_t len, infops_taxonomy** out);
INFOPS_API void infops_taxonomy_free(infops_taxonomy* t);
INFOPS_API const char* infops_taxonomy_version(const infops_taxonomy* t);
INFOPS_API infops_status infops_taxonomy_serialize(const infops_taxonomy* t, char** out);
/* Writes a JSON array of violations; *count receives its length. */
INFOPS_API infops_status infops_taxonomy_validate(const infops_taxonomy* t, char** report_json, size_t* count);
/* Writes the technique as a JSON object {id, name, tactic_id, phase}. */
INFOPS_API infops_status infops_taxonomy_lookup(const infops_taxonomy* t, const char* key, char** technique_json);

/* Strategy catalog (validated against the taxonomy on load) */
INFOPS_API infops_status infops_catalog_load_file(const char* path, const infops_taxonomy* t, infops_catalog** out);
INFOPS_API infops_status infops_catalog_load_string(const char* doc, size_t len, const infops_taxonomy* t,
                                                    infops_catalog** out);
INFOPS_API void infops_catalog_free(infops_catalog* c);
INFOPS_API size_t infops_catalog_size(const infops_catalog* c);
INFOPS_API infops_status infops_catalog_check_disjointness(const infops_catalog* c, char** report_json, size_t* count);

/* Corpus. report_json may be NULL; otherwise receives the ingestion report. */
INFOPS_API infops_status infops_corpus_ingest_file(const char* path, const infops_taxonomy* t, infops_ingest_mode mode,
                                                   infops_corpus** out, char** report_json);
INFOPS_API infops_status infops_corpus_ingest_string(const char* doc, size_t len, infops_corpus_format format,
                                                     const infops_taxonomy* t, infops_ingest_mode mode,
                                                     infops_corpus** out, char** report_json);
INFOPS_API void infops_corpus_free(infops_corpus* c);
INFOPS_API size_t infops_corpus_size(const infops_corpus* c);
INFOPS_API infops_status infops_corpus_summary(const infops_corpus* c, char** summary_json);
INFOPS_API infops_status infops_corpus_serialize(const infops_corpus* c, infops_corpus_format format, char** out);

/* Synthetic corpus from a generator spec document. seed_override may be NULL. */
INFOPS_API infops_status infops_generate(const char* spec_doc, size_t len, const infops_catalog* c,
                                         const uint64_t* seed_override, infops_corpus** out);
INFOPS_API infops_status infops_generate_file(const char* spec_path, const infops_catalog* c,
                                              const uint64_t* seed_override, infops_corpus** out);

/* Analyses. options may be NULL for defaults. */
INFOPS_API infops_status infops_classify(const infops_corpus* corpus, const infops_catalog* c,
                                         const infops_analysis_options* options, char** out);
INFOPS_API infops_status infops_stats(const infops_corpus* corpus, const infops_taxonomy* t, const infops_catalog* c,
                                      const infops_analysis_options* options, char** out);
/* kind: "cooccurrence" | "conditional"; format: "dot" | "graphml" | "json". */
INFOPS_API infops_status infops_graph(const infops_corpus* corpus, const infops_catalog* c, const char* kind,
                                      const char* format, const infops_analysis_options* options, char** out);
INFOPS_API infops_status infops_combination_count(int n_strategies, int min_size, uint64_t* out);

#ifdef __cplusplus
}
#endif

#endif /* INFOPS_H */
