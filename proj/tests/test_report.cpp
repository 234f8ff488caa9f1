#include "doctest.h"

#include <functional>

#include "infops/error.hpp"
#include "infops/report.hpp"
#include "json.hpp"
#include "support.hpp"

using namespace infops;
using namespace infops::report;
using nlohmann::json;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an infops::Error");
    return ErrorCode::Io;
}

ClassifiedCorpus load(const std::string& rel) {
    const auto corpus =
        ingest_corpus_file(support::data_path(rel), support::bundled_taxonomy(), IngestMode::Strict).corpus;
    return classify_corpus(corpus, support::bundled_catalog());
}

ReportContext context() {
    ReportContext ctx;
    ctx.taxonomy_version = support::bundled_taxonomy().version();
    ctx.catalog_taxonomy_version = support::bundled_catalog().taxonomy_version();
    ctx.corpus_source = "hand4.csv";
    return ctx;
}

const json* find_by(const json& arr, const std::string& key, const std::string& value) {
    for (const auto& e : arr)
        if (e.at(key) == value) return &e;
    return nullptr;
}

}  // namespace

TEST_CASE("stats document is self-describing") {
    const auto cc = load("fixtures/hand4.csv");
    const auto text = stats_json(cc, support::bundled_catalog(), context());
    CHECK(text.back() == '\n');
    const auto doc = json::parse(text);
    CHECK(doc["tool"]["name"] == "infops");
    CHECK(doc["taxonomy_version"] == support::bundled_taxonomy().version());
    CHECK(doc["config"]["ingest_mode"] == "strict");
    CHECK(doc["config"]["min_support"] == 1);
    CHECK(doc["coverage"]["fraction"]["numerator"] == 4);
    CHECK(doc["prevalence"]["denominator"] == 4);
    const auto* nr = find_by(doc["prevalence"]["strategies"], "id", "NR");
    REQUIRE(nr);
    CHECK((*nr)["count"] == 3);
    CHECK((*nr)["fraction"]["percent"] == "75.0");
    CHECK((*nr)["fraction"]["decimal"] == 0.75);
    CHECK(doc["size_distribution"]["multi_strategy"] == 2);
    CHECK(doc["size_distribution"]["sizes"][0]["of_multi"].is_null());
    CHECK(doc["size_distribution"]["sizes"][2]["of_multi"]["denominator"] == 2);
    CHECK(doc["patterns"]["distinct"] == 4);
    CHECK(doc["patterns"]["possible_combinations"]["min_size_2"] == 120);
    CHECK(doc["cooccurrence"]["nodes"].size() == 7);
    CHECK(stats_json(cc, support::bundled_catalog(), context()) == text);
}

TEST_CASE("pretty stats carry the same numbers") {
    const auto cc = load("fixtures/hand4.csv");
    const auto text = stats_pretty(cc, support::bundled_catalog(), context());
    CHECK(text.find("Prevalence (denominator 4)") != std::string::npos);
    CHECK(text.find("75.0%") != std::string::npos);
}

TEST_CASE("classification document lists every incident with evidence") {
    const auto cc = load("fixtures/hand4.csv");
    const auto doc = json::parse(classification_json(cc, support::bundled_catalog()));
    const auto text = doc.dump();
    CHECK(text.find("H4") != std::string::npos);
    CHECK(text.find("T0049") != std::string::npos);
    CHECK(classification_pretty(cc, support::bundled_catalog()).find("H2") != std::string::npos);
}

TEST_CASE("single-incident co-occurrence DOT has one node and no edges") {
    const auto cc = load("fixtures/single_nr.csv");
    const auto dot = graph_document(cc, support::bundled_catalog(), GraphKind::Cooccurrence, GraphFormat::Dot);
    CHECK(dot.rfind("graph cooccurrence {", 0) == 0);
    CHECK(dot.find("\"NR\"") != std::string::npos);
    CHECK(dot.find("--") == std::string::npos);
    CHECK(dot.find("Narrative Release (1)") != std::string::npos);
}

TEST_CASE("conditional JSON of the hand corpus") {
    const auto cc = load("fixtures/hand4.csv");
    const auto doc =
        json::parse(graph_document(cc, support::bundled_catalog(), GraphKind::Conditional, GraphFormat::Json));
    CHECK(doc["directed"] == true);
    CHECK(doc["nodes"].size() == 3);
    bool found = false;
    for (const auto& e : doc["edges"]) {
        if (e["source"] == "NR" && e["target"] == "IP") {
            found = true;
            CHECK(e["numerator"] == 2);
            CHECK(e["denominator"] == 3);
            CHECK(e["fraction"] == "2/3");
            CHECK(e["decimal"].get<double>() == doctest::Approx(2.0 / 3.0).epsilon(1e-6));
        }
        CHECK(e["source"] != e["target"]);
    }
    CHECK(found);
}

TEST_CASE("graph emission order is enumeration order") {
    const auto cc = load("fixtures/hand4.csv");
    const auto doc =
        json::parse(graph_document(cc, support::bundled_catalog(), GraphKind::Cooccurrence, GraphFormat::Json));
    std::vector<std::string> nodes;
    for (const auto& n : doc["nodes"]) nodes.push_back(n["id"]);
    CHECK(nodes == std::vector<std::string>{"NR", "NM", "IP"});
    REQUIRE(doc["edges"].size() == 3);
    CHECK(doc["edges"][0]["source"] == "NR");
    CHECK(doc["edges"][0]["target"] == "NM");
    CHECK(doc["edges"][2]["source"] == "NM");
}

TEST_CASE("GraphML output declares weight keys") {
    const auto cc = load("fixtures/hand4.csv");
    const auto xml = graph_document(cc, support::bundled_catalog(), GraphKind::Conditional, GraphFormat::GraphMl);
    CHECK(xml.find("<graphml") != std::string::npos);
    CHECK(xml.find("edgedefault=\"directed\"") != std::string::npos);
    CHECK(xml.find("attr.name=\"weight\"") != std::string::npos);
}

TEST_CASE("unknown kinds and formats") {
    CHECK(parse_graph_kind("conditional") == GraphKind::Conditional);
    CHECK(parse_graph_format("graphml") == GraphFormat::GraphMl);
    CHECK(code_of([] { (void)parse_graph_kind("heatmap"); }) == ErrorCode::UnknownFormat);
    CHECK(code_of([] { (void)parse_graph_format("png"); }) == ErrorCode::UnknownFormat);
}
