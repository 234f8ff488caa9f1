#include "infops/strategy.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "infops/corpus.hpp"
#include "infops/error.hpp"
#include "io.hpp"

namespace infops {

namespace {

constexpr std::string_view kCodes[kStrategyCount] = {"NR", "NS", "NA", "CNR", "NM", "TD", "IP"};
constexpr std::string_view kNames[kStrategyCount] = {
    "Narrative Release",          "Narrative Support", "Narrative Amplification",
    "Counter-Narrative Reaction", "Narrative Manipulation", "Target Degradation",
    "Information Pollution"};

}  // namespace

std::string_view strategy_code(StrategyId id) { return kCodes[index_of(id)]; }
std::string_view strategy_default_name(StrategyId id) { return kNames[index_of(id)]; }

std::optional<StrategyId> parse_strategy_code(std::string_view code) {
    for (auto id : kAllStrategies)
        if (kCodes[index_of(id)] == code) return id;
    return std::nullopt;
}

std::vector<StrategyId> StrategySet::members() const {
    std::vector<StrategyId> out;
    for (auto id : kAllStrategies)
        if (contains(id)) out.push_back(id);
    return out;
}

std::vector<std::string> StrategySet::codes() const {
    std::vector<std::string> out;
    for (auto id : members()) out.emplace_back(strategy_code(id));
    return out;
}

std::string StrategySet::label(std::string_view sep) const {
    std::string out;
    for (const auto& c : codes()) {
        if (!out.empty()) out += sep;
        out += c;
    }
    return out;
}

bool canonical_less(StrategySet a, StrategySet b) {
    if (a.size() != b.size()) return a.size() < b.size();
    const auto ma = a.members();
    const auto mb = b.members();
    return std::lexicographical_compare(ma.begin(), ma.end(), mb.begin(), mb.end());
}

StrategySet parse_strategy_set(const std::vector<std::string>& codes) {
    StrategySet s;
    for (const auto& code : codes) {
        auto id = parse_strategy_code(code);
        if (!id) throw Error(ErrorCode::Schema, "unknown strategy id '" + code + "'");
        if (s.contains(*id)) throw Error(ErrorCode::Schema, "strategy id '" + code + "' repeated in a set");
        s.insert(*id);
    }
    return s;
}

StrategyCatalog::StrategyCatalog(std::vector<StrategyDefinition> strategies, std::string taxonomy_version)
    : strategies_(std::move(strategies)), taxonomy_version_(std::move(taxonomy_version)) {}

const StrategyDefinition* StrategyCatalog::find(StrategyId id) const {
    for (const auto& s : strategies_)
        if (s.id == id) return &s;
    return nullptr;
}

std::string StrategyCatalog::display_name(StrategyId id) const {
    const auto* s = find(id);
    return s && !s->name.empty() ? s->name : std::string(strategy_default_name(id));
}

ValidationReport check_disjointness(const StrategyCatalog& c) {
    // technique id -> strategies using it, in first-seen order
    std::map<std::string, std::vector<StrategyId>> owners;
    std::vector<std::string> order;
    for (const auto& s : c.strategies()) {
        std::set<std::string> own{s.execution_technique};
        own.insert(s.preparation_techniques.begin(), s.preparation_techniques.end());
        for (const auto& tech : own) {
            auto& v = owners[tech];
            if (v.empty()) order.push_back(tech);
            if (std::find(v.begin(), v.end(), s.id) == v.end()) v.push_back(s.id);
        }
    }
    ValidationReport report;
    for (const auto& tech : order) {
        const auto& v = owners[tech];
        if (v.size() < 2) continue;
        std::string who;
        for (auto id : v) {
            if (!who.empty()) who += ", ";
            who += strategy_code(id);
        }
        report.push_back({"shared-technique", tech, "technique '" + tech + "' appears in strategies " + who});
    }
    return report;
}

StrategyCatalog load_strategy_catalog(std::string_view document, const Taxonomy& t) {
    const auto doc = detail::parse_json(document, "catalog");
    if (!doc.is_object()) throw Error(ErrorCode::Schema, "catalog: top level must be an object");
    const std::string version = detail::require_string(doc, "taxonomy_version", "catalog");
    if (version != t.version())
        throw Error(ErrorCode::Schema, "catalog targets taxonomy version '" + version + "' but loaded taxonomy is '" +
                                           t.version() + "'");

    auto resolve = [&](const std::string& ref, const std::string& ctx) -> const Technique& {
        try {
            return lookup_technique(t, ref);
        } catch (const Error& e) {
            if (e.code() == ErrorCode::NotFound)
                throw Error(ErrorCode::UnknownTechnique, ctx + ": unknown technique '" + ref + "'");
            throw;
        }
    };

    std::vector<StrategyDefinition> defs;
    const auto& arr = detail::require_array(doc, "strategies", "catalog");
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const std::string ctx = "strategies[" + std::to_string(i) + "]";
        StrategyDefinition def;
        const std::string code = detail::require_string(arr[i], "id", ctx);
        auto id = parse_strategy_code(code);
        if (!id) throw Error(ErrorCode::Schema, ctx + ": unknown strategy id '" + code + "'");
        def.id = *id;
        for (const auto& d : defs)
            if (d.id == def.id) throw Error(ErrorCode::Schema, ctx + ": duplicate strategy id '" + code + "'");
        def.name = detail::require_string(arr[i], "name", ctx);
        def.description = detail::optional_string(arr[i], "description", ctx);

        const Technique& exec = resolve(detail::require_string(arr[i], "execution_technique", ctx), ctx);
        if (t.phase_name_of(exec) != "Execute")
            throw Error(ErrorCode::PhaseViolation, ctx + " (" + code + "): execution technique '" + exec.id +
                                                       "' is in phase '" + t.phase_name_of(exec) +
                                                       "', expected Execute");
        def.execution_technique = exec.id;

        const auto& prep = detail::require_array(arr[i], "preparation_techniques", ctx);
        if (prep.empty()) throw Error(ErrorCode::Schema, ctx + " (" + code + "): no preparation techniques");
        for (const auto& ref : prep) {
            if (!ref.is_string()) throw Error(ErrorCode::Schema, ctx + ": preparation techniques must be strings");
            const Technique& p = resolve(ref.get<std::string>(), ctx);
            if (t.phase_name_of(p) != "Prepare")
                throw Error(ErrorCode::PhaseViolation, ctx + " (" + code + "): preparation technique '" + p.id +
                                                           "' is in phase '" + t.phase_name_of(p) +
                                                           "', expected Prepare");
            if (p.id == def.execution_technique ||
                std::find(def.preparation_techniques.begin(), def.preparation_techniques.end(), p.id) !=
                    def.preparation_techniques.end())
                throw Error(ErrorCode::Schema, ctx + " (" + code + "): technique '" + p.id + "' listed twice");
            def.preparation_techniques.push_back(p.id);
        }
        defs.push_back(std::move(def));
    }
    std::stable_sort(defs.begin(), defs.end(),
                     [](const auto& a, const auto& b) { return index_of(a.id) < index_of(b.id); });

    StrategyCatalog catalog(std::move(defs), version);
    const auto report = check_disjointness(catalog);
    if (!report.empty()) {
        std::string msg = "catalog pipelines are not disjoint:";
        for (const auto& v : report) msg += "\n  " + v.message;
        throw Error(ErrorCode::DisjointnessViolation, msg);
    }
    return catalog;
}

StrategyCatalog load_strategy_catalog_file(const std::string& path, const Taxonomy& t) {
    return load_strategy_catalog(detail::read_file(path), t);
}

StrategyProfile classify_incident(const Incident& incident, const StrategyCatalog& c, ClassifyOptions options) {
    StrategyProfile profile;
    profile.incident_id = incident.incident_id;
    for (const auto& s : c.strategies()) {
        if (!incident.techniques.contains(s.execution_technique)) continue;
        std::vector<std::string> evidence{s.execution_technique};
        for (const auto& p : s.preparation_techniques)
            if (incident.techniques.contains(p)) evidence.push_back(p);
        if (options.require_preparation && evidence.size() < 2) continue;
        profile.strategies.insert(s.id);
        profile.evidence.emplace(s.id, std::move(evidence));
    }
    return profile;
}

std::size_t ClassifiedCorpus::mapped_count() const {
    return static_cast<std::size_t>(
        std::count_if(profiles.begin(), profiles.end(), [](const auto& p) { return !p.strategies.empty(); }));
}

std::vector<std::string> ClassifiedCorpus::unmapped_ids() const {
    std::vector<std::string> out;
    for (const auto& p : profiles)
        if (p.strategies.empty()) out.push_back(p.incident_id);
    return out;
}

ClassifiedCorpus ClassifiedCorpus::from_sets(const std::vector<StrategySet>& sets) {
    ClassifiedCorpus cc;
    cc.profiles.reserve(sets.size());
    for (std::size_t i = 0; i < sets.size(); ++i) cc.profiles.push_back({"i" + std::to_string(i), sets[i], {}});
    return cc;
}

ClassifiedCorpus classify_corpus(const Corpus& corpus, const StrategyCatalog& c, ClassifyOptions options) {
    if (corpus.incidents.empty()) throw Error(ErrorCode::EmptyCorpus, "corpus has no incidents");
    ClassifiedCorpus cc;
    cc.profiles.reserve(corpus.incidents.size());
    for (const auto& incident : corpus.incidents) cc.profiles.push_back(classify_incident(incident, c, options));
    return cc;
}

}  // namespace infops
