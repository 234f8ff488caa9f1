#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "infops/taxonomy.hpp"

namespace infops {

struct Incident;
struct Corpus;

// Enumeration order is the canonical display order everywhere.
enum class StrategyId : std::uint8_t { NR = 0, NS, NA, CNR, NM, TD, IP };

inline constexpr std::size_t kStrategyCount = 7;

inline constexpr std::array<StrategyId, kStrategyCount> kAllStrategies = {
    StrategyId::NR, StrategyId::NS, StrategyId::NA, StrategyId::CNR,
    StrategyId::NM, StrategyId::TD, StrategyId::IP};

std::string_view strategy_code(StrategyId id);
std::string_view strategy_default_name(StrategyId id);
std::optional<StrategyId> parse_strategy_code(std::string_view code);

inline std::size_t index_of(StrategyId id) { return static_cast<std::size_t>(id); }

/// Set of strategies as a 7-bit mask. Bit i is the i-th strategy in
/// enumeration order, so numeric order of masks is not display order.
class StrategySet {
public:
    constexpr StrategySet() = default;
    constexpr explicit StrategySet(std::uint8_t bits) : bits_(bits & 0x7F) {}
    StrategySet(std::initializer_list<StrategyId> ids) {
        for (auto id : ids) insert(id);
    }

    static constexpr StrategySet all() { return StrategySet(0x7F); }

    void insert(StrategyId id) { bits_ |= bit(id); }
    void erase(StrategyId id) { bits_ &= static_cast<std::uint8_t>(~bit(id)); }
    bool contains(StrategyId id) const { return (bits_ & bit(id)) != 0; }
    bool contains_all(StrategySet other) const { return (bits_ & other.bits_) == other.bits_; }
    bool empty() const { return bits_ == 0; }
    std::size_t size() const { return static_cast<std::size_t>(std::popcount(bits_)); }
    std::uint8_t bits() const { return bits_; }

    std::vector<StrategyId> members() const;
    // Codes in enumeration order, e.g. {"NR", "NM", "IP"}.
    std::vector<std::string> codes() const;
    std::string label(std::string_view sep = ",") const;

    friend bool operator==(StrategySet, StrategySet) = default;

private:
    static constexpr std::uint8_t bit(StrategyId id) {
        return static_cast<std::uint8_t>(1u << static_cast<unsigned>(id));
    }
    std::uint8_t bits_ = 0;
};

// Order used by every sorted output: size first, then lexicographic over
// enumeration positions.
bool canonical_less(StrategySet a, StrategySet b);

StrategySet parse_strategy_set(const std::vector<std::string>& codes);

struct StrategyDefinition {
    StrategyId id = StrategyId::NR;
    std::string name;
    std::string execution_technique;                  // technique id
    std::vector<std::string> preparation_techniques;  // technique ids
    std::string description;

    friend bool operator==(const StrategyDefinition&, const StrategyDefinition&) = default;
};

class StrategyCatalog {
public:
    StrategyCatalog() = default;
    StrategyCatalog(std::vector<StrategyDefinition> strategies, std::string taxonomy_version);

    const std::vector<StrategyDefinition>& strategies() const { return strategies_; }
    const std::string& taxonomy_version() const { return taxonomy_version_; }
    const StrategyDefinition* find(StrategyId id) const;
    std::string display_name(StrategyId id) const;

private:
    std::vector<StrategyDefinition> strategies_;
    std::string taxonomy_version_;
};

/// Loads and checks a catalog against `t`. Technique references may be ids
/// or names; they are stored as ids. Strategies are reordered to enumeration
/// order.
StrategyCatalog load_strategy_catalog(std::string_view document, const Taxonomy& t);
StrategyCatalog load_strategy_catalog_file(const std::string& path, const Taxonomy& t);

ValidationReport check_disjointness(const StrategyCatalog& c);

struct StrategyProfile {
    std::string incident_id;
    StrategySet strategies;
    std::map<StrategyId, std::vector<std::string>> evidence;
};

struct ClassifyOptions {
    // Also require at least one preparation technique. Only ever removes
    // strategies relative to the default rule.
    bool require_preparation = false;
};

StrategyProfile classify_incident(const Incident& incident, const StrategyCatalog& c,
                                  ClassifyOptions options = {});

struct ClassifiedCorpus {
    std::vector<StrategyProfile> profiles;

    std::size_t total() const { return profiles.size(); }
    std::size_t mapped_count() const;
    std::size_t unmapped_count() const { return total() - mapped_count(); }
    std::vector<std::string> unmapped_ids() const;

    // Profiles with no evidence, for analytics tests that start from sets.
    static ClassifiedCorpus from_sets(const std::vector<StrategySet>& sets);
};

/// Throws Error(EmptyCorpus) for an empty corpus. Output order is input order.
ClassifiedCorpus classify_corpus(const Corpus& corpus, const StrategyCatalog& c,
                                 ClassifyOptions options = {});

}  // namespace infops
