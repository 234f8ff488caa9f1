#include "infops/taxonomy.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "infops/error.hpp"
#include "io.hpp"

namespace infops {

namespace {

char ascii_lower(char c) { return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c; }

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), ascii_lower);
    return out;
}

template <typename T>
std::unordered_map<std::string, std::size_t> index_by_id(const std::vector<T>& items) {
    std::unordered_map<std::string, std::size_t> idx;
    for (std::size_t i = 0; i < items.size(); ++i) idx.emplace(items[i].id, i);  // first wins
    return idx;
}

constexpr int kTacticsPerPhase[] = {3, 6, 6, 1};  // Plan, Prepare, Execute, Assess

}  // namespace

bool equals_ignore_ascii_case(std::string_view a, std::string_view b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (ascii_lower(a[i]) != ascii_lower(b[i])) return false;
    return true;
}

Taxonomy::Taxonomy(std::string version, std::vector<Phase> phases, std::vector<Tactic> tactics,
                   std::vector<Technique> techniques, std::string profile, std::string provenance)
    : version_(std::move(version)),
      profile_(std::move(profile)),
      provenance_(std::move(provenance)),
      phases_(std::move(phases)),
      tactics_(std::move(tactics)),
      techniques_(std::move(techniques)),
      phase_index_(index_by_id(phases_)),
      tactic_index_(index_by_id(tactics_)),
      technique_index_(index_by_id(techniques_)) {}

const Phase* Taxonomy::find_phase(std::string_view id) const {
    auto it = phase_index_.find(std::string(id));
    return it == phase_index_.end() ? nullptr : &phases_[it->second];
}

const Tactic* Taxonomy::find_tactic(std::string_view id) const {
    auto it = tactic_index_.find(std::string(id));
    return it == tactic_index_.end() ? nullptr : &tactics_[it->second];
}

const Technique* Taxonomy::find_technique(std::string_view id) const {
    auto it = technique_index_.find(std::string(id));
    return it == technique_index_.end() ? nullptr : &techniques_[it->second];
}

std::string Taxonomy::phase_name_of(const Technique& t) const {
    const Tactic* tactic = find_tactic(t.tactic_id);
    if (!tactic) return {};
    const Phase* phase = find_phase(tactic->phase_id);
    return phase ? phase->name : std::string{};
}

ValidationReport validate_taxonomy(const Taxonomy& t) {
    ValidationReport report;
    auto add = [&](std::string kind, std::string subject, std::string message) {
        report.push_back({std::move(kind), std::move(subject), std::move(message)});
    };

    auto check_ids = [&](const auto& items, const char* level) {
        std::set<std::string> seen;
        for (const auto& item : items) {
            if (item.id.empty()) add(std::string("empty-id"), {}, std::string(level) + " with empty id");
            else if (!seen.insert(item.id).second)
                add("duplicate-id", item.id, std::string("duplicate ") + level + " id '" + item.id + "'");
            if (item.name.empty()) add("empty-name", item.id, std::string(level) + " '" + item.id + "' has no name");
        }
    };
    check_ids(t.phases(), "phase");
    check_ids(t.tactics(), "tactic");
    check_ids(t.techniques(), "technique");

    if (t.phases().size() != 4)
        add("phase-count", {}, "phase count mismatch: expected 4, found " + std::to_string(t.phases().size()));
    std::set<std::string> phase_names;
    for (const auto& p : t.phases()) {
        auto known = std::find(std::begin(kPhaseNames), std::end(kPhaseNames), p.name);
        if (known == std::end(kPhaseNames))
            add("unknown-phase-name", p.id, "phase '" + p.id + "' has unknown name '" + p.name + "'");
        else if (!phase_names.insert(p.name).second)
            add("duplicate-phase-name", p.id, "phase name '" + p.name + "' used twice");
    }

    for (const auto& tac : t.tactics()) {
        if (!t.find_phase(tac.phase_id))
            add("orphan-tactic", tac.id,
                "tactic '" + tac.id + "' references unknown phase '" + tac.phase_id + "'");
    }

    std::map<std::pair<std::string, std::string>, std::string> names_in_tactic;
    for (const auto& tech : t.techniques()) {
        if (!t.find_tactic(tech.tactic_id)) {
            add("orphan-technique", tech.id,
                "technique '" + tech.id + "' references unknown tactic '" + tech.tactic_id + "'");
            continue;
        }
        auto key = std::make_pair(tech.tactic_id, lower(tech.name));
        auto [it, inserted] = names_in_tactic.emplace(key, tech.id);
        if (!inserted && it->second != tech.id)
            add("duplicate-name", tech.id,
                "technique name '" + tech.name + "' used by '" + it->second + "' and '" + tech.id +
                    "' under tactic '" + tech.tactic_id + "'");
    }

    if (t.profile() == kSixteenTacticProfile) {
        if (t.tactics().size() != 16)
            add("tactic-count", {},
                "tactic count mismatch: profile sixteen-tactic expects 16, found " + std::to_string(t.tactics().size()));
        for (std::size_t i = 0; i < 4; ++i) {
            const std::string_view name = kPhaseNames[i];
            int n = 0;
            for (const auto& tac : t.tactics()) {
                const Phase* p = t.find_phase(tac.phase_id);
                if (p && p->name == name) ++n;
            }
            if (n != kTacticsPerPhase[i])
                add("tactic-count", std::string(name),
                    "tactic count mismatch: phase " + std::string(name) + " expects " +
                        std::to_string(kTacticsPerPhase[i]) + ", found " + std::to_string(n));
        }
    } else if (!t.profile().empty()) {
        add("unknown-profile", t.profile(), "unknown taxonomy profile '" + t.profile() + "'");
    }
    return report;
}

namespace {

template <typename T>
std::vector<T> read_entries(const nlohmann::json& doc, const char* key) {
    std::vector<T> out;
    const auto& arr = detail::require_array(doc, key, "taxonomy");
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const std::string ctx = std::string(key) + "[" + std::to_string(i) + "]";
        T item;
        item.id = detail::require_string(arr[i], "id", ctx);
        item.name = detail::require_string(arr[i], "name", ctx);
        if constexpr (std::is_same_v<T, Tactic>) {
            item.phase_id = detail::require_string(arr[i], "parent_id", ctx);
        } else if constexpr (std::is_same_v<T, Technique>) {
            item.tactic_id = detail::require_string(arr[i], "parent_id", ctx);
        }
        out.push_back(std::move(item));
    }
    return out;
}

}  // namespace

Taxonomy load_taxonomy(std::string_view document) {
    const auto doc = detail::parse_json(document, "taxonomy");
    if (!doc.is_object()) throw Error(ErrorCode::Schema, "taxonomy: top level must be an object");
    Taxonomy t(detail::require_string(doc, "version", "taxonomy"),
               read_entries<Phase>(doc, "phases"),
               read_entries<Tactic>(doc, "tactics"),
               read_entries<Technique>(doc, "techniques"),
               detail::optional_string(doc, "profile", "taxonomy"),
               detail::optional_string(doc, "provenance", "taxonomy"));
    const auto report = validate_taxonomy(t);
    if (!report.empty()) {
        std::string msg = "taxonomy failed validation:";
        for (const auto& v : report) msg += "\n  " + v.message;
        throw Error(ErrorCode::Schema, msg);
    }
    return t;
}

Taxonomy load_taxonomy_file(const std::string& path) { return load_taxonomy(detail::read_file(path)); }

std::string serialize_taxonomy(const Taxonomy& t) {
    nlohmann::ordered_json doc;
    doc["version"] = t.version();
    if (!t.profile().empty()) doc["profile"] = t.profile();
    if (!t.provenance().empty()) doc["provenance"] = t.provenance();
    auto entry = [](const std::string& id, const std::string& name, const std::string* parent) {
        nlohmann::ordered_json e;
        e["id"] = id;
        e["name"] = name;
        if (parent) e["parent_id"] = *parent;
        return e;
    };
    doc["phases"] = nlohmann::ordered_json::array();
    for (const auto& p : t.phases()) doc["phases"].push_back(entry(p.id, p.name, nullptr));
    doc["tactics"] = nlohmann::ordered_json::array();
    for (const auto& x : t.tactics()) doc["tactics"].push_back(entry(x.id, x.name, &x.phase_id));
    doc["techniques"] = nlohmann::ordered_json::array();
    for (const auto& x : t.techniques()) doc["techniques"].push_back(entry(x.id, x.name, &x.tactic_id));
    return detail::dump(doc);
}

const Technique& lookup_technique(const Taxonomy& t, std::string_view key,
                                  std::optional<std::string_view> tactic_id) {
    if (const Technique* byId = t.find_technique(key)) {
        if (!tactic_id || byId->tactic_id == *tactic_id) return *byId;
    }
    const Technique* found = nullptr;
    for (const auto& tech : t.techniques()) {
        if (tactic_id && tech.tactic_id != *tactic_id) continue;
        if (!equals_ignore_ascii_case(tech.name, key)) continue;
        if (found)
            throw Error(ErrorCode::AmbiguousName, "technique name '" + std::string(key) + "' matches both '" +
                                                      found->id + "' and '" + tech.id + "'");
        found = &tech;
    }
    if (!found) throw Error(ErrorCode::NotFound, "no technique with id or name '" + std::string(key) + "'");
    return *found;
}

}  // namespace infops
