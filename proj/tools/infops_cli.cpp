// infops command-line tool. Talks to the library only through infops/infops.h.
//
// Exit codes: 0 success, 1 domain or validation error, 2 I/O error.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "infops/infops.h"

#ifndef INFOPS_DEFAULT_DATA_DIR
#define INFOPS_DEFAULT_DATA_DIR "data"
#endif

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDomain = 1;
constexpr int kExitIo = 2;

struct RunConfig {
    std::string taxonomy_path;
    std::string catalog_path;
    std::string corpus_path;
    bool lenient = false;
    bool strict = false;
    bool strict_prep = false;
    bool pretty = false;
    std::string out_path;
    std::int64_t min_support = 1;

    // graph
    std::string kind = "cooccurrence";
    std::string format = "json";

    // generate
    std::string spec_path;
    std::optional<std::uint64_t> seed;
    std::string corpus_format;
};

struct Failure {
    int exit_code;
};

struct StringDeleter {
    void operator()(char* s) const { infops_string_free(s); }
};
using OwnedString = std::unique_ptr<char, StringDeleter>;

struct TaxonomyDeleter {
    void operator()(infops_taxonomy* t) const { infops_taxonomy_free(t); }
};
struct CatalogDeleter {
    void operator()(infops_catalog* c) const { infops_catalog_free(c); }
};
struct CorpusDeleter {
    void operator()(infops_corpus* c) const { infops_corpus_free(c); }
};
using Taxonomy = std::unique_ptr<infops_taxonomy, TaxonomyDeleter>;
using Catalog = std::unique_ptr<infops_catalog, CatalogDeleter>;
using Corpus = std::unique_ptr<infops_corpus, CorpusDeleter>;

int exit_code_for(infops_status s) { return s == INFOPS_E_IO ? kExitIo : kExitDomain; }

void check(infops_status s, const std::string& what) {
    if (s == INFOPS_OK) return;
    std::cerr << "error: " << what << ": " << infops_last_error() << "\n";
    throw Failure{exit_code_for(s)};
}

std::string env_or(const char* name, const std::string& fallback) {
    const char* v = std::getenv(name);
    return (v && *v) ? std::string(v) : fallback;
}

infops_analysis_options options_for(const RunConfig& cfg) {
    auto o = infops_default_options();
    o.strict_prep = cfg.strict_prep ? 1 : 0;
    o.min_support = cfg.min_support;
    o.ingest = cfg.lenient ? INFOPS_INGEST_LENIENT : INFOPS_INGEST_STRICT;
    o.pretty = cfg.pretty ? 1 : 0;
    return o;
}

Taxonomy load_taxonomy(const RunConfig& cfg) {
    infops_taxonomy* t = nullptr;
    check(infops_taxonomy_load_file(cfg.taxonomy_path.c_str(), &t), "taxonomy " + cfg.taxonomy_path);
    return Taxonomy(t);
}

Catalog load_catalog(const RunConfig& cfg, const infops_taxonomy* t) {
    infops_catalog* c = nullptr;
    check(infops_catalog_load_file(cfg.catalog_path.c_str(), t, &c), "catalog " + cfg.catalog_path);
    return Catalog(c);
}

Corpus load_corpus(const RunConfig& cfg, const infops_taxonomy* t, bool print_report) {
    if (cfg.corpus_path.empty()) {
        std::cerr << "error: --corpus is required\n";
        throw Failure{kExitDomain};
    }
    infops_corpus* c = nullptr;
    char* report = nullptr;
    const auto mode = cfg.lenient ? INFOPS_INGEST_LENIENT : INFOPS_INGEST_STRICT;
    check(infops_corpus_ingest_file(cfg.corpus_path.c_str(), t, mode, &c, &report), "corpus " + cfg.corpus_path);
    OwnedString owned(report);
    if (print_report) std::cerr << "ingestion report: " << owned.get();
    return Corpus(c);
}

void emit(const RunConfig& cfg, const std::string& text) {
    if (cfg.out_path.empty()) {
        std::cout << text;
        std::cout.flush();
        return;
    }
    std::ofstream out(cfg.out_path, std::ios::binary);
    out << text;
    if (!out) {
        std::cerr << "error: cannot write '" << cfg.out_path << "'\n";
        throw Failure{kExitIo};
    }
}

int cmd_validate(const RunConfig& cfg) {
    auto t = load_taxonomy(cfg);
    char* raw = nullptr;
    size_t violations = 0;
    check(infops_taxonomy_validate(t.get(), &raw, &violations), "validate taxonomy");
    OwnedString report(raw);
    std::cout << "taxonomy " << infops_taxonomy_version(t.get()) << ": "
              << (violations == 0 ? "ok" : std::to_string(violations) + " violation(s)") << "\n";
    if (violations) std::cout << report.get();

    auto c = load_catalog(cfg, t.get());
    check(infops_catalog_check_disjointness(c.get(), &raw, &violations), "check catalog");
    report.reset(raw);
    std::cout << "catalog: " << infops_catalog_size(c.get()) << " strategies, "
              << (violations == 0 ? "disjoint" : std::to_string(violations) + " shared technique(s)") << "\n";
    if (violations) std::cout << report.get();

    if (!cfg.corpus_path.empty()) {
        auto corpus = load_corpus(cfg, t.get(), false);
        std::cout << "corpus: " << infops_corpus_size(corpus.get()) << " incidents ok\n";
    }
    return violations == 0 ? kExitOk : kExitDomain;
}

int cmd_classify(const RunConfig& cfg) {
    auto t = load_taxonomy(cfg);
    auto c = load_catalog(cfg, t.get());
    auto corpus = load_corpus(cfg, t.get(), cfg.lenient);
    const auto opts = options_for(cfg);
    char* out = nullptr;
    check(infops_classify(corpus.get(), c.get(), &opts, &out), "classify");
    OwnedString doc(out);
    emit(cfg, doc.get());
    return kExitOk;
}

int cmd_stats(const RunConfig& cfg) {
    auto t = load_taxonomy(cfg);
    auto c = load_catalog(cfg, t.get());
    auto corpus = load_corpus(cfg, t.get(), cfg.lenient);
    const auto opts = options_for(cfg);
    char* out = nullptr;
    check(infops_stats(corpus.get(), t.get(), c.get(), &opts, &out), "stats");
    OwnedString doc(out);
    emit(cfg, doc.get());
    return kExitOk;
}

int cmd_graph(const RunConfig& cfg) {
    auto t = load_taxonomy(cfg);
    auto c = load_catalog(cfg, t.get());
    auto corpus = load_corpus(cfg, t.get(), cfg.lenient);
    const auto opts = options_for(cfg);
    char* out = nullptr;
    check(infops_graph(corpus.get(), c.get(), cfg.kind.c_str(), cfg.format.c_str(), &opts, &out), "graph");
    OwnedString doc(out);
    emit(cfg, doc.get());
    return kExitOk;
}

int cmd_summary(const RunConfig& cfg) {
    auto t = load_taxonomy(cfg);
    auto corpus = load_corpus(cfg, t.get(), cfg.lenient);
    char* out = nullptr;
    check(infops_corpus_summary(corpus.get(), &out), "summary");
    OwnedString doc(out);
    emit(cfg, doc.get());
    return kExitOk;
}

int cmd_generate(const RunConfig& cfg) {
    auto t = load_taxonomy(cfg);
    auto c = load_catalog(cfg, t.get());
    infops_corpus* raw = nullptr;
    const std::uint64_t seed = cfg.seed.value_or(0);
    check(infops_generate_file(cfg.spec_path.c_str(), c.get(), cfg.seed ? &seed : nullptr, &raw), "generate");
    Corpus corpus(raw);

    infops_corpus_format format = INFOPS_FORMAT_CSV;
    if (cfg.corpus_format == "json" ||
        (cfg.corpus_format.empty() && cfg.out_path.size() >= 5 &&
         cfg.out_path.compare(cfg.out_path.size() - 5, 5, ".json") == 0))
        format = INFOPS_FORMAT_JSON;
    char* out = nullptr;
    check(infops_corpus_serialize(corpus.get(), format, &out), "serialize corpus");
    OwnedString doc(out);
    emit(cfg, doc.get());
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    RunConfig cfg;
    const std::string data_dir = INFOPS_DEFAULT_DATA_DIR;
    cfg.taxonomy_path = env_or("INFOPS_TAXONOMY", data_dir + "/taxonomy.json");
    cfg.catalog_path = env_or("INFOPS_CATALOG", data_dir + "/catalog.json");

    CLI::App app{"Influence-strategy classification and corpus analytics over DISARM-tagged incidents"};
    app.set_version_flag("--version", std::string(infops_version()));
    app.require_subcommand(1);
    app.fallthrough();

    app.add_option("--taxonomy", cfg.taxonomy_path, "Taxonomy file (env INFOPS_TAXONOMY)");
    app.add_option("--catalog", cfg.catalog_path, "Strategy catalog file (env INFOPS_CATALOG)");
    app.add_option("--corpus", cfg.corpus_path, "Incident corpus (.csv or .json)");
    auto* strict = app.add_flag("--strict", cfg.strict, "Fail on unknown technique ids (default)");
    app.add_flag("--lenient", cfg.lenient, "Drop unknown technique ids with a warning")->excludes(strict);
    app.add_flag("--strict-prep", cfg.strict_prep, "Also require a preparation technique per strategy");
    app.add_option("--out", cfg.out_path, "Write output to this file instead of stdout");
    app.add_flag("--pretty", cfg.pretty, "Human-readable output");
    app.add_option("--min-support", cfg.min_support, "Conditional graph support threshold")->check(CLI::NonNegativeNumber);

    auto* validate = app.add_subcommand("validate", "Validate taxonomy, catalog and (optionally) corpus");
    auto* classify = app.add_subcommand("classify", "Per-incident strategy sets");
    auto* stats = app.add_subcommand("stats", "Corpus statistics report");
    auto* summary = app.add_subcommand("summary", "Incident count, year range and technique frequencies");
    auto* graph = app.add_subcommand("graph", "Strategy graph export");
    graph->add_option("--kind", cfg.kind, "cooccurrence | conditional");
    graph->add_option("--format", cfg.format, "dot | graphml | json");
    auto* generate = app.add_subcommand("generate", "Synthetic corpus from a generator spec");
    generate->add_option("--spec", cfg.spec_path, "Generator spec file")->required();
    generate->add_option("--seed", cfg.seed, "Override the seed in the generator spec");
    generate->add_option("--format", cfg.corpus_format, "csv | json (default from --out extension, else csv)")
        ->check(CLI::IsMember({"csv", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitDomain;
    }

    try {
        if (*validate) return cmd_validate(cfg);
        if (*classify) return cmd_classify(cfg);
        if (*stats) return cmd_stats(cfg);
        if (*summary) return cmd_summary(cfg);
        if (*graph) return cmd_graph(cfg);
        if (*generate) return cmd_generate(cfg);
    } catch (const Failure& f) {
        return f.exit_code;
    }
    return kExitDomain;
}
