#include "infops/analytics.hpp"

#include <algorithm>

#include "infops/error.hpp"

namespace infops::analytics {

namespace {

using PatternCounts = std::array<std::int64_t, 128>;

// Exact-pattern histogram over mapped incidents; the common basis of every
// statistic below.
PatternCounts histogram(const ClassifiedCorpus& cc) {
    PatternCounts h{};
    std::int64_t mapped = 0;
    for (const auto& p : cc.profiles) {
        if (p.strategies.empty()) continue;
        ++h[p.strategies.bits()];
        ++mapped;
    }
    if (mapped == 0) throw Error(ErrorCode::EmptyCorpus, "no mapped incidents to analyse");
    return h;
}

std::int64_t total(const PatternCounts& h) {
    std::int64_t n = 0;
    for (auto c : h) n += c;
    return n;
}

std::array<std::int64_t, kStrategyCount> strategy_counts(const PatternCounts& h) {
    std::array<std::int64_t, kStrategyCount> counts{};
    for (unsigned bits = 1; bits < 128; ++bits) {
        if (!h[bits]) continue;
        for (std::size_t s = 0; s < kStrategyCount; ++s)
            if (bits & (1u << s)) counts[s] += h[bits];
    }
    return counts;
}

std::array<std::array<std::int64_t, kStrategyCount>, kStrategyCount> pair_counts(const PatternCounts& h) {
    std::array<std::array<std::int64_t, kStrategyCount>, kStrategyCount> m{};
    for (unsigned bits = 1; bits < 128; ++bits) {
        if (!h[bits]) continue;
        for (std::size_t a = 0; a < kStrategyCount; ++a) {
            if (!(bits & (1u << a))) continue;
            for (std::size_t b = 0; b < kStrategyCount; ++b)
                if (bits & (1u << b)) m[a][b] += h[bits];
        }
    }
    return m;
}

}  // namespace

std::int64_t PrevalenceReport::count_of(StrategyId id) const {
    for (const auto& e : entries)
        if (e.strategy == id) return e.count;
    return 0;
}

Fraction PrevalenceReport::fraction_of(StrategyId id) const { return {count_of(id), denominator}; }

PrevalenceReport prevalence(const ClassifiedCorpus& cc) {
    const auto h = histogram(cc);
    const auto counts = strategy_counts(h);
    PrevalenceReport r;
    r.denominator = total(h);
    for (auto id : kAllStrategies) r.entries.push_back({id, counts[index_of(id)], {counts[index_of(id)], r.denominator}});
    std::stable_sort(r.entries.begin(), r.entries.end(), [](const auto& a, const auto& b) { return a.count > b.count; });
    return r;
}

SizeDistribution size_distribution(const ClassifiedCorpus& cc) {
    const auto h = histogram(cc);
    SizeDistribution d;
    for (unsigned bits = 1; bits < 128; ++bits) d.counts[static_cast<std::size_t>(std::popcount(bits))] += h[bits];
    d.mapped = total(h);
    d.multi = d.mapped - d.counts[1];
    return d;
}

const PatternRow* PatternTable::find(StrategySet s) const {
    for (const auto& r : rows)
        if (r.pattern == s) return &r;
    return nullptr;
}

PatternTable pattern_frequencies(const ClassifiedCorpus& cc) {
    const auto h = histogram(cc);
    std::vector<unsigned> present;
    for (unsigned bits = 1; bits < 128; ++bits)
        if (h[bits]) present.push_back(bits);
    PatternTable t;
    t.rows.reserve(present.size());
    for (unsigned bits : present) {
        std::int64_t containing = 0;
        for (unsigned sup : present)
            if ((sup & bits) == bits) containing += h[sup];
        t.rows.push_back({StrategySet(static_cast<std::uint8_t>(bits)), h[bits], containing});
    }
    std::sort(t.rows.begin(), t.rows.end(), [](const PatternRow& a, const PatternRow& b) {
        if (a.exact_count != b.exact_count) return a.exact_count > b.exact_count;
        return canonical_less(a.pattern, b.pattern);
    });
    return t;
}

std::int64_t containment_count(const ClassifiedCorpus& cc, StrategySet s) {
    const auto h = histogram(cc);
    std::int64_t n = 0;
    for (unsigned sup = 1; sup < 128; ++sup)
        if ((sup & s.bits()) == s.bits()) n += h[sup];
    return n;
}

std::int64_t CooccurrenceGraph::weight(StrategyId a, StrategyId b) const { return matrix[index_of(a)][index_of(b)]; }

CooccurrenceGraph cooccurrence(const ClassifiedCorpus& cc) {
    const auto h = histogram(cc);
    CooccurrenceGraph g;
    g.matrix = pair_counts(h);
    for (std::size_t a = 0; a < kStrategyCount; ++a) g.node_weight[a] = g.matrix[a][a];
    for (std::size_t a = 0; a < kStrategyCount; ++a)
        for (std::size_t b = a + 1; b < kStrategyCount; ++b)
            if (g.matrix[a][b] > 0) g.edges.push_back({kAllStrategies[a], kAllStrategies[b], g.matrix[a][b]});
    return g;
}

bool ConditionalGraph::has_source(StrategyId a) const {
    return support[index_of(a)] >= std::max<std::int64_t>(min_support, 1);
}

Fraction ConditionalGraph::probability(StrategyId a, StrategyId b) const {
    if (!has_source(a))
        throw Error(ErrorCode::NotFound, "strategy " + std::string(strategy_code(a)) + " is below min_support");
    return {cooc[index_of(a)][index_of(b)], support[index_of(a)]};
}

ConditionalGraph conditional_probabilities(const ClassifiedCorpus& cc, std::int64_t min_support) {
    if (min_support < 0)
        throw Error(ErrorCode::NegativeSupport, "min_support must be >= 0, got " + std::to_string(min_support));
    const auto h = histogram(cc);
    ConditionalGraph g;
    g.min_support = min_support;
    g.cooc = pair_counts(h);
    for (std::size_t a = 0; a < kStrategyCount; ++a) g.support[a] = g.cooc[a][a];
    for (auto a : kAllStrategies) {
        if (!g.has_source(a)) continue;
        for (auto b : kAllStrategies)
            if (a != b) g.edges.push_back({a, b, g.probability(a, b)});
    }
    return g;
}

std::uint64_t possible_combination_count(int n_strategies, int min_size) {
    if (n_strategies < 0 || min_size < 0 || min_size > n_strategies || n_strategies > 62)
        throw Error(ErrorCode::InvalidRange, "need 0 <= min_size <= n_strategies <= 62, got n=" +
                                                 std::to_string(n_strategies) + " min_size=" + std::to_string(min_size));
    std::uint64_t sum = 0;
    std::uint64_t binom = 1;  // C(n, k), built incrementally; exact for n <= 62
    for (int k = 0; k <= n_strategies; ++k) {
        if (k > 0) binom = binom * static_cast<std::uint64_t>(n_strategies - k + 1) / static_cast<std::uint64_t>(k);
        if (k >= min_size) sum += binom;
    }
    return sum;
}

MappingCoverage mapping_coverage(const ClassifiedCorpus& cc) {
    if (cc.profiles.empty()) throw Error(ErrorCode::EmptyCorpus, "corpus has no incidents");
    return {static_cast<std::int64_t>(cc.mapped_count()), static_cast<std::int64_t>(cc.total())};
}

}  // namespace infops::analytics
