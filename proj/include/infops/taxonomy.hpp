#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace infops {

struct Phase {
    std::string id;
    std::string name;

    friend bool operator==(const Phase&, const Phase&) = default;
};

struct Tactic {
    std::string id;
    std::string name;
    std::string phase_id;

    friend bool operator==(const Tactic&, const Tactic&) = default;
};

struct Technique {
    std::string id;
    std::string name;
    std::string tactic_id;

    friend bool operator==(const Technique&, const Technique&) = default;
};

struct Violation {
    std::string kind;     // short machine tag, e.g. "orphan-technique"
    std::string subject;  // offending id, empty when the violation is global
    std::string message;

    friend bool operator==(const Violation&, const Violation&) = default;
};

using ValidationReport = std::vector<Violation>;

// Known phase names; a taxonomy uses exactly these four.
inline constexpr std::string_view kPhaseNames[] = {"Plan", "Prepare", "Execute", "Assess"};

// Declared structural profile. "sixteen-tactic" pins the 16-tactic layout
// (Plan 3, Prepare 6, Execute 6, Assess 1).
inline constexpr std::string_view kSixteenTacticProfile = "sixteen-tactic";

/// Phase -> tactic -> technique tree. Immutable once built; the constructor
/// only indexes, it does not validate (see validate_taxonomy).
class Taxonomy {
public:
    Taxonomy() = default;
    Taxonomy(std::string version, std::vector<Phase> phases, std::vector<Tactic> tactics,
             std::vector<Technique> techniques, std::string profile = {},
             std::string provenance = {});

    const std::string& version() const { return version_; }
    const std::string& profile() const { return profile_; }
    const std::string& provenance() const { return provenance_; }
    const std::vector<Phase>& phases() const { return phases_; }
    const std::vector<Tactic>& tactics() const { return tactics_; }
    const std::vector<Technique>& techniques() const { return techniques_; }

    const Phase* find_phase(std::string_view id) const;
    const Tactic* find_tactic(std::string_view id) const;
    const Technique* find_technique(std::string_view id) const;

    // Name of the phase owning this technique, empty when the chain is broken.
    std::string phase_name_of(const Technique& t) const;

    friend bool operator==(const Taxonomy& a, const Taxonomy& b) {
        return a.version_ == b.version_ && a.profile_ == b.profile_ &&
               a.provenance_ == b.provenance_ && a.phases_ == b.phases_ &&
               a.tactics_ == b.tactics_ && a.techniques_ == b.techniques_;
    }

private:
    std::string version_;
    std::string profile_;
    std::string provenance_;
    std::vector<Phase> phases_;
    std::vector<Tactic> tactics_;
    std::vector<Technique> techniques_;
    std::unordered_map<std::string, std::size_t> phase_index_;
    std::unordered_map<std::string, std::size_t> tactic_index_;
    std::unordered_map<std::string, std::size_t> technique_index_;
};

/// Parses a taxonomy document and validates it. Throws Error(Parse) on
/// malformed JSON and Error(Schema) on missing fields or any violation.
Taxonomy load_taxonomy(std::string_view document);
Taxonomy load_taxonomy_file(const std::string& path);

std::string serialize_taxonomy(const Taxonomy& t);

ValidationReport validate_taxonomy(const Taxonomy& t);

/// Resolves an id (byte-exact) or a name (ASCII case-insensitive).
/// `tactic_id` narrows name lookups when the same name lives under two tactics.
const Technique& lookup_technique(const Taxonomy& t, std::string_view key,
                                  std::optional<std::string_view> tactic_id = std::nullopt);

bool equals_ignore_ascii_case(std::string_view a, std::string_view b);

}  // namespace infops
