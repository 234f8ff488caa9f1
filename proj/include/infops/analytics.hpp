#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "infops/fraction.hpp"
#include "infops/strategy.hpp"

namespace infops::analytics {

// All statistics count mapped incidents only (profiles with >= 1 strategy).
// Every operation throws Error(EmptyCorpus) when there are none.

struct PrevalenceEntry {
    StrategyId strategy = StrategyId::NR;
    std::int64_t count = 0;
    Fraction fraction;  // count / denominator
};

struct PrevalenceReport {
    std::int64_t denominator = 0;
    std::vector<PrevalenceEntry> entries;  // count desc, ties in enumeration order

    std::int64_t count_of(StrategyId id) const;
    Fraction fraction_of(StrategyId id) const;
};

PrevalenceReport prevalence(const ClassifiedCorpus& cc);

struct SizeDistribution {
    std::int64_t mapped = 0;
    std::int64_t multi = 0;                               // incidents with >= 2 strategies
    std::array<std::int64_t, kStrategyCount + 1> counts{};  // index = set size, [0] unused
    Fraction multi_fraction_of_all() const { return {multi, mapped}; }
    Fraction of_mapped(std::size_t k) const { return {counts.at(k), mapped}; }
    // Only meaningful for k >= 2.
    Fraction of_multi(std::size_t k) const { return {counts.at(k), multi}; }
};

SizeDistribution size_distribution(const ClassifiedCorpus& cc);

struct PatternRow {
    StrategySet pattern;
    std::int64_t exact_count = 0;
    std::int64_t containment_count = 0;
};

struct PatternTable {
    std::vector<PatternRow> rows;  // exact desc, size asc, then lexicographic
    std::size_t distinct_pattern_count() const { return rows.size(); }
    const PatternRow* find(StrategySet s) const;
};

PatternTable pattern_frequencies(const ClassifiedCorpus& cc);

// Incidents whose profile includes `s`; defined for any set, observed or not.
std::int64_t containment_count(const ClassifiedCorpus& cc, StrategySet s);

struct CooccurrenceEdge {
    StrategyId a = StrategyId::NR;  // a precedes b in enumeration order
    StrategyId b = StrategyId::NR;
    std::int64_t weight = 0;
};

struct CooccurrenceGraph {
    std::array<std::int64_t, kStrategyCount> node_weight{};
    std::vector<CooccurrenceEdge> edges;  // weight > 0 only, enumeration order
    std::int64_t weight(StrategyId a, StrategyId b) const;

    std::array<std::array<std::int64_t, kStrategyCount>, kStrategyCount> matrix{};
};

CooccurrenceGraph cooccurrence(const ClassifiedCorpus& cc);

struct ConditionalEdge {
    StrategyId from = StrategyId::NR;
    StrategyId to = StrategyId::NR;
    Fraction probability;  // cooc(from,to) / count(from), unreduced
};

struct ConditionalGraph {
    std::int64_t min_support = 1;
    std::array<std::int64_t, kStrategyCount> support{};  // count(A)
    std::vector<ConditionalEdge> edges;                   // from != to

    // cp(a, b) for any pair whose source has support; self pairs give 1.
    // Throws Error(NotFound) when `a` is below the support threshold.
    Fraction probability(StrategyId a, StrategyId b) const;
    bool has_source(StrategyId a) const;

    std::array<std::array<std::int64_t, kStrategyCount>, kStrategyCount> cooc{};
};

ConditionalGraph conditional_probabilities(const ClassifiedCorpus& cc, std::int64_t min_support = 1);

/// Sum of C(n, k) for k in [min_size, n]. Throws Error(InvalidRange).
std::uint64_t possible_combination_count(int n_strategies, int min_size);

struct MappingCoverage {
    std::int64_t mapped = 0;
    std::int64_t total = 0;
    Fraction fraction() const { return {mapped, total}; }
};

MappingCoverage mapping_coverage(const ClassifiedCorpus& cc);

}  // namespace infops::analytics
