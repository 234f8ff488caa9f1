#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "infops/corpus.hpp"
#include "infops/strategy.hpp"

namespace infops {

enum class GeneratorMode { ExactPatterns, MarginalSolver };

struct PatternCount {
    StrategySet pattern;
    std::int64_t count = 0;

    friend bool operator==(const PatternCount&, const PatternCount&) = default;
};

struct GeneratorSpec {
    GeneratorMode mode = GeneratorMode::ExactPatterns;

    // exact-patterns
    std::vector<PatternCount> pattern_counts;

    // marginal-solver
    std::array<std::int64_t, kStrategyCount> marginals{};
    std::array<std::int64_t, kStrategyCount + 1> size_distribution{};  // index = set size
    std::vector<PatternCount> pinned_patterns;
    // Required number of distinct mapped patterns in the output, if any.
    std::optional<std::int64_t> distinct_patterns;

    std::int64_t unmapped_count = 0;
    std::uint64_t seed = 0;
    // Give every incident its strategies' full preparation pipelines too.
    bool with_preparation = false;
    std::string note;
};

/// Reads a generator spec document. Strategy sets are arrays of codes.
GeneratorSpec parse_generator_spec(std::string_view document);
GeneratorSpec load_generator_spec_file(const std::string& path);
std::string serialize_generator_spec(const GeneratorSpec& spec);

/// Pattern multiset chosen for a spec (mapped incidents only), in the order
/// the solver fixed them.
std::vector<PatternCount> solve_patterns(const GeneratorSpec& spec);

/// Deterministic synthetic corpus: same spec (seed included) gives the same
/// corpus on every platform. Throws Error(InfeasibleSpec) or
/// Error(ZeroIncidents).
Corpus generate_corpus(const GeneratorSpec& spec, const StrategyCatalog& c);

// Node budget for the backtracking search before it reports exhaustion.
inline constexpr std::uint64_t kSolverNodeBudget = 20'000'000;

}  // namespace infops
