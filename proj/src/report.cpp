#include "infops/report.hpp"

#include <iomanip>
#include <sstream>

#include "infops/error.hpp"
#include "io.hpp"

#ifndef INFOPS_VERSION
#define INFOPS_VERSION "0.0.0"
#endif

namespace infops::report {

namespace {

using ojson = nlohmann::ordered_json;

ojson fraction_json(const Fraction& f) {
    ojson j;
    j["numerator"] = f.num;
    j["denominator"] = f.den;
    j["decimal"] = f.den == 0 ? 0.0 : std::stod(format_decimal(f, 6));
    j["percent"] = f.den == 0 ? std::string("n/a") : format_percent(f);
    return j;
}

std::string code(StrategyId id) { return std::string(strategy_code(id)); }

ojson codes_json(StrategySet s) { return s.codes(); }

std::string mode_name(IngestMode m) { return m == IngestMode::Strict ? "strict" : "lenient"; }

std::string xml_escape(std::string_view s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&apos;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string dot_escape(std::string_view s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

}  // namespace

std::string stats_json(const ClassifiedCorpus& cc, const StrategyCatalog& c, const ReportContext& ctx) {
    const auto coverage = analytics::mapping_coverage(cc);
    const auto prev = analytics::prevalence(cc);
    const auto sizes = analytics::size_distribution(cc);
    const auto patterns = analytics::pattern_frequencies(cc);
    const auto cooc = analytics::cooccurrence(cc);
    const auto cond = analytics::conditional_probabilities(cc, ctx.min_support);

    ojson doc;
    doc["tool"] = {{"name", kToolName}, {"version", INFOPS_VERSION}};
    doc["taxonomy_version"] = ctx.taxonomy_version;
    ojson catalog;
    catalog["taxonomy_version"] = ctx.catalog_taxonomy_version;
    catalog["strategies"] = ojson::array();
    for (const auto& s : c.strategies()) catalog["strategies"].push_back(code(s.id));
    doc["catalog"] = catalog;
    doc["config"] = {{"corpus", ctx.corpus_source},
                     {"ingest_mode", mode_name(ctx.ingest_mode)},
                     {"strict_prep", ctx.strict_prep},
                     {"min_support", ctx.min_support}};

    ojson cov;
    cov["total"] = coverage.total;
    cov["mapped"] = coverage.mapped;
    cov["unmapped"] = coverage.total - coverage.mapped;
    cov["fraction"] = fraction_json(coverage.fraction());
    cov["unmapped_ids"] = cc.unmapped_ids();
    doc["coverage"] = cov;

    ojson pv;
    pv["denominator"] = prev.denominator;
    pv["strategies"] = ojson::array();
    for (const auto& e : prev.entries) {
        ojson row;
        row["id"] = code(e.strategy);
        row["name"] = c.display_name(e.strategy);
        row["count"] = e.count;
        row["fraction"] = fraction_json(e.fraction);
        pv["strategies"].push_back(row);
    }
    doc["prevalence"] = pv;

    ojson sd;
    sd["mapped"] = sizes.mapped;
    sd["multi_strategy"] = sizes.multi;
    sd["multi_fraction"] = fraction_json(sizes.multi_fraction_of_all());
    sd["sizes"] = ojson::array();
    for (std::size_t k = 1; k <= kStrategyCount; ++k) {
        ojson row;
        row["size"] = k;
        row["count"] = sizes.counts[k];
        row["of_mapped"] = fraction_json(sizes.of_mapped(k));
        row["of_multi"] = (k >= 2 && sizes.multi > 0) ? fraction_json(sizes.of_multi(k)) : ojson(nullptr);
        sd["sizes"].push_back(row);
    }
    doc["size_distribution"] = sd;

    ojson pt;
    pt["distinct"] = patterns.distinct_pattern_count();
    pt["possible_combinations"] = {
        {"strategies", kStrategyCount},
        {"min_size_2", analytics::possible_combination_count(static_cast<int>(kStrategyCount), 2)},
        {"min_size_1", analytics::possible_combination_count(static_cast<int>(kStrategyCount), 1)}};
    pt["rows"] = ojson::array();
    for (const auto& r : patterns.rows) {
        ojson row;
        row["strategies"] = codes_json(r.pattern);
        row["exact"] = r.exact_count;
        row["containment"] = r.containment_count;
        pt["rows"].push_back(row);
    }
    doc["patterns"] = pt;

    ojson cg;
    cg["nodes"] = ojson::array();
    for (auto id : kAllStrategies) cg["nodes"].push_back({{"id", code(id)}, {"count", cooc.node_weight[index_of(id)]}});
    cg["edges"] = ojson::array();
    for (const auto& e : cooc.edges) cg["edges"].push_back({{"a", code(e.a)}, {"b", code(e.b)}, {"weight", e.weight}});
    doc["cooccurrence"] = cg;

    ojson cp;
    cp["min_support"] = cond.min_support;
    cp["edges"] = ojson::array();
    for (const auto& e : cond.edges) {
        ojson row;
        row["from"] = code(e.from);
        row["to"] = code(e.to);
        row["probability"] = fraction_json(e.probability);
        cp["edges"].push_back(row);
    }
    doc["conditional"] = cp;
    return detail::dump(doc);
}

std::string stats_pretty(const ClassifiedCorpus& cc, const StrategyCatalog& c, const ReportContext& ctx) {
    const auto coverage = analytics::mapping_coverage(cc);
    const auto prev = analytics::prevalence(cc);
    const auto sizes = analytics::size_distribution(cc);
    const auto patterns = analytics::pattern_frequencies(cc);
    const auto cooc = analytics::cooccurrence(cc);

    std::ostringstream out;
    out << kToolName << " " << INFOPS_VERSION << "  taxonomy " << ctx.taxonomy_version << "  corpus "
        << ctx.corpus_source << "\n\n";
    out << "Mapping coverage: " << coverage.mapped << "/" << coverage.total << " ("
        << format_percent(coverage.fraction()) << "%)\n\n";

    out << "Prevalence (denominator " << prev.denominator << ")\n";
    for (const auto& e : prev.entries) {
        out << "  " << std::left << std::setw(4) << code(e.strategy) << std::setw(28) << c.display_name(e.strategy)
            << std::right << std::setw(4) << e.count << std::setw(8) << format_percent(e.fraction) << "%\n";
    }

    out << "\nStrategies per incident (multi-strategy " << sizes.multi << "/" << sizes.mapped << " = "
        << format_percent(sizes.multi_fraction_of_all()) << "%)\n";
    for (std::size_t k = 1; k <= kStrategyCount; ++k) {
        out << "  " << k << ": " << std::setw(4) << sizes.counts[k] << std::setw(8)
            << format_percent(sizes.of_mapped(k)) << "% of mapped";
        if (k >= 2 && sizes.multi > 0) out << std::setw(8) << format_percent(sizes.of_multi(k)) << "% of multi";
        out << "\n";
    }

    out << "\nPatterns: " << patterns.distinct_pattern_count() << " distinct of "
        << analytics::possible_combination_count(static_cast<int>(kStrategyCount), 2)
        << " possible multi-strategy combinations\n";
    out << "  exact  containing  strategies\n";
    for (const auto& r : patterns.rows)
        out << "  " << std::setw(5) << r.exact_count << std::setw(12) << r.containment_count << "  "
            << r.pattern.label(", ") << "\n";

    out << "\nCo-occurrence\n";
    for (const auto& e : cooc.edges) out << "  " << code(e.a) << " -- " << code(e.b) << "  " << e.weight << "\n";
    return out.str();
}

std::string classification_json(const ClassifiedCorpus& cc, const StrategyCatalog& c) {
    ojson doc;
    doc["total"] = cc.total();
    doc["mapped"] = cc.mapped_count();
    doc["unmapped"] = cc.unmapped_ids();
    doc["strategies"] = ojson::array();
    for (const auto& s : c.strategies()) doc["strategies"].push_back({{"id", code(s.id)}, {"name", s.name}});
    doc["incidents"] = ojson::array();
    for (const auto& p : cc.profiles) {
        ojson row;
        row["incident_id"] = p.incident_id;
        row["strategies"] = codes_json(p.strategies);
        ojson ev = ojson::object();
        for (const auto& [id, techs] : p.evidence) ev[code(id)] = techs;
        row["evidence"] = ev;
        doc["incidents"].push_back(row);
    }
    return detail::dump(doc);
}

std::string classification_pretty(const ClassifiedCorpus& cc, const StrategyCatalog&) {
    std::ostringstream out;
    out << "incidents " << cc.total() << ", mapped " << cc.mapped_count() << ", unmapped " << cc.unmapped_count()
        << "\n";
    for (const auto& p : cc.profiles)
        out << "  " << std::left << std::setw(16) << p.incident_id << " "
            << (p.strategies.empty() ? std::string("(unmapped)") : p.strategies.label(", ")) << "\n";
    return out.str();
}

GraphKind parse_graph_kind(std::string_view s) {
    if (s == "cooccurrence") return GraphKind::Cooccurrence;
    if (s == "conditional") return GraphKind::Conditional;
    throw Error(ErrorCode::UnknownFormat, "unknown graph kind '" + std::string(s) + "' (cooccurrence|conditional)");
}

GraphFormat parse_graph_format(std::string_view s) {
    if (s == "dot") return GraphFormat::Dot;
    if (s == "graphml") return GraphFormat::GraphMl;
    if (s == "json") return GraphFormat::Json;
    throw Error(ErrorCode::UnknownFormat, "unknown graph format '" + std::string(s) + "' (dot|graphml|json)");
}

namespace {

struct GraphEdge {
    StrategyId source;
    StrategyId target;
    std::int64_t count = 0;  // co-occurrence weight
    Fraction probability;    // conditional only
};

struct GraphData {
    bool directed = false;
    std::string name;
    std::vector<std::pair<StrategyId, std::int64_t>> nodes;
    std::vector<GraphEdge> edges;
};

GraphData build_graph(const ClassifiedCorpus& cc, GraphKind kind, std::int64_t min_support) {
    GraphData g;
    const auto cooc = analytics::cooccurrence(cc);
    for (auto id : kAllStrategies)
        if (cooc.node_weight[index_of(id)] > 0) g.nodes.emplace_back(id, cooc.node_weight[index_of(id)]);
    if (kind == GraphKind::Cooccurrence) {
        g.name = "cooccurrence";
        for (const auto& e : cooc.edges) g.edges.push_back({e.a, e.b, e.weight, {}});
    } else {
        g.name = "conditional";
        g.directed = true;
        const auto cond = analytics::conditional_probabilities(cc, min_support);
        for (const auto& e : cond.edges) {
            if (cooc.node_weight[index_of(e.to)] == 0) continue;  // target absent from the graph
            g.edges.push_back({e.from, e.to, e.probability.num, e.probability});
        }
    }
    return g;
}

std::string to_dot(const GraphData& g, const StrategyCatalog& c) {
    std::ostringstream out;
    out << (g.directed ? "digraph " : "graph ") << g.name << " {\n";
    for (const auto& [id, count] : g.nodes)
        out << "  \"" << code(id) << "\" [label=\"" << dot_escape(c.display_name(id)) << " (" << count
            << ")\", count=" << count << "];\n";
    for (const auto& e : g.edges) {
        out << "  \"" << code(e.source) << "\" " << (g.directed ? "->" : "--") << " \"" << code(e.target) << "\" [";
        if (g.directed)
            out << "weight=" << format_decimal(e.probability, 6) << ", label=\"" << e.probability.num << "/"
                << e.probability.den << "\", numerator=" << e.probability.num
                << ", denominator=" << e.probability.den;
        else
            out << "weight=" << e.count << ", label=\"" << e.count << "\"";
        out << "];\n";
    }
    out << "}\n";
    return out.str();
}

std::string to_graphml(const GraphData& g, const StrategyCatalog& c) {
    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n"
        << "  <key id=\"label\" for=\"node\" attr.name=\"label\" attr.type=\"string\"/>\n"
        << "  <key id=\"count\" for=\"node\" attr.name=\"count\" attr.type=\"int\"/>\n";
    if (g.directed)
        out << "  <key id=\"weight\" for=\"edge\" attr.name=\"weight\" attr.type=\"double\"/>\n"
            << "  <key id=\"numerator\" for=\"edge\" attr.name=\"numerator\" attr.type=\"int\"/>\n"
            << "  <key id=\"denominator\" for=\"edge\" attr.name=\"denominator\" attr.type=\"int\"/>\n";
    else
        out << "  <key id=\"weight\" for=\"edge\" attr.name=\"weight\" attr.type=\"int\"/>\n";
    out << "  <graph id=\"" << g.name << "\" edgedefault=\"" << (g.directed ? "directed" : "undirected") << "\">\n";
    for (const auto& [id, count] : g.nodes)
        out << "    <node id=\"" << code(id) << "\"><data key=\"label\">" << xml_escape(c.display_name(id))
            << "</data><data key=\"count\">" << count << "</data></node>\n";
    for (const auto& e : g.edges) {
        out << "    <edge source=\"" << code(e.source) << "\" target=\"" << code(e.target) << "\">";
        if (g.directed)
            out << "<data key=\"weight\">" << format_decimal(e.probability, 6) << "</data><data key=\"numerator\">"
                << e.probability.num << "</data><data key=\"denominator\">" << e.probability.den << "</data>";
        else
            out << "<data key=\"weight\">" << e.count << "</data>";
        out << "</edge>\n";
    }
    out << "  </graph>\n</graphml>\n";
    return out.str();
}

std::string to_json(const GraphData& g, const StrategyCatalog& c, std::int64_t min_support) {
    ojson doc;
    doc["kind"] = g.name;
    doc["directed"] = g.directed;
    if (g.directed) doc["min_support"] = min_support;
    doc["nodes"] = ojson::array();
    for (const auto& [id, count] : g.nodes)
        doc["nodes"].push_back({{"id", code(id)}, {"name", c.display_name(id)}, {"count", count}});
    doc["edges"] = ojson::array();
    for (const auto& e : g.edges) {
        ojson row;
        row["source"] = code(e.source);
        row["target"] = code(e.target);
        if (g.directed) {
            row["numerator"] = e.probability.num;
            row["denominator"] = e.probability.den;
            row["fraction"] = std::to_string(e.probability.num) + "/" + std::to_string(e.probability.den);
            row["decimal"] = std::stod(format_decimal(e.probability, 6));
        } else {
            row["weight"] = e.count;
        }
        doc["edges"].push_back(row);
    }
    return detail::dump(doc);
}

}  // namespace

std::string graph_document(const ClassifiedCorpus& cc, const StrategyCatalog& c, GraphKind kind, GraphFormat format,
                           std::int64_t min_support) {
    const auto g = build_graph(cc, kind, min_support);
    switch (format) {
        case GraphFormat::Dot: return to_dot(g, c);
        case GraphFormat::GraphMl: return to_graphml(g, c);
        case GraphFormat::Json: return to_json(g, c, min_support);
    }
    throw Error(ErrorCode::UnknownFormat, "unknown graph format");
}

}  // namespace infops::report
