#include "doctest.h"

#include <algorithm>
#include <functional>
#include <random>

#include "infops/analytics.hpp"
#include "infops/error.hpp"
#include "support.hpp"

using namespace infops;
using namespace infops::analytics;

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

std::string code(StrategyId id) { return std::string(strategy_code(id)); }

ClassifiedCorpus hand4() {
    const auto& t = support::bundled_taxonomy();
    const auto corpus = ingest_corpus_file(support::data_path("fixtures/hand4.csv"), t, IngestMode::Strict).corpus;
    return classify_corpus(corpus, support::bundled_catalog());
}

// Every statistic against the brute-force oracle.
void check_against_oracle(const std::vector<StrategySet>& sets) {
    const auto cc = ClassifiedCorpus::from_sets(sets);
    const auto inc = oracle::mapped_only(support::to_oracle(sets));
    const auto n = static_cast<std::int64_t>(inc.size());

    const auto prev = prevalence(cc);
    CHECK(prev.denominator == n);
    for (auto id : kAllStrategies) CHECK(prev.count_of(id) == oracle::count(inc, code(id)));
    for (std::size_t i = 1; i < prev.entries.size(); ++i) {
        const auto& a = prev.entries[i - 1];
        const auto& b = prev.entries[i];
        CHECK((a.count > b.count || (a.count == b.count && index_of(a.strategy) < index_of(b.strategy))));
    }

    const auto g = cooccurrence(cc);
    const auto cg = conditional_probabilities(cc);
    for (auto a : kAllStrategies) {
        for (auto b : kAllStrategies) {
            const auto expected = oracle::cooc(inc, code(a), code(b));
            CHECK(g.weight(a, b) == expected);
            const auto ca = oracle::count(inc, code(a));
            if (ca > 0) {
                const auto cp = cg.probability(a, b);
                CHECK(cp.identical(Fraction{expected, ca}));
            } else {
                CHECK_FALSE(cg.has_source(a));
            }
        }
    }
    std::size_t positive_pairs = 0;
    for (std::size_t a = 0; a < 7; ++a)
        for (std::size_t b = a + 1; b < 7; ++b)
            positive_pairs += oracle::cooc(inc, code(kAllStrategies[a]), code(kAllStrategies[b])) > 0;
    CHECK(g.edges.size() == positive_pairs);

    const auto table = pattern_frequencies(cc);
    const auto distinct = oracle::distinct(inc);
    CHECK(table.distinct_pattern_count() == distinct.size());
    for (const auto& row : table.rows) {
        const auto p = support::to_profile(row.pattern);
        CHECK(distinct.count(p) == 1);
        CHECK(row.exact_count == oracle::exact(inc, p));
        CHECK(row.containment_count == oracle::containing(inc, p));
    }

    const auto sd = size_distribution(cc);
    for (std::size_t k = 1; k <= 7; ++k) CHECK(sd.counts[k] == oracle::with_size(inc, k));
}

}  // namespace

TEST_CASE("hand-enumerated four-incident corpus") {
    // H1 {NR}, H2 {NR,IP}, H3 {NM}, H4 {NR,NM,IP}
    const auto cc = hand4();
    const auto prev = prevalence(cc);
    CHECK(prev.denominator == 4);
    CHECK(prev.entries[0].strategy == StrategyId::NR);
    CHECK(prev.entries[0].fraction.identical({3, 4}));
    CHECK(prev.entries[1].strategy == StrategyId::NM);
    CHECK(prev.entries[2].strategy == StrategyId::IP);
    CHECK(prev.count_of(StrategyId::NS) == 0);

    const auto sd = size_distribution(cc);
    CHECK(sd.counts[1] == 2);
    CHECK(sd.counts[2] == 1);
    CHECK(sd.counts[3] == 1);
    CHECK(sd.multi_fraction_of_all().identical({2, 4}));
    CHECK(sd.of_multi(3).identical({1, 2}));

    const auto g = cooccurrence(cc);
    CHECK(g.weight(StrategyId::NR, StrategyId::IP) == 2);
    CHECK(g.weight(StrategyId::NR, StrategyId::NM) == 1);
    CHECK(g.weight(StrategyId::NM, StrategyId::IP) == 1);
    CHECK(g.edges.size() == 3);

    const auto cg = conditional_probabilities(cc);
    CHECK(cg.probability(StrategyId::NR, StrategyId::IP).identical({2, 3}));
    CHECK(cg.probability(StrategyId::IP, StrategyId::NR).identical({2, 2}));
    CHECK(cg.probability(StrategyId::NM, StrategyId::IP).identical({1, 2}));
    CHECK(cg.probability(StrategyId::NR, StrategyId::NR) == Fraction{1, 1});
    CHECK(code_of([&] { (void)cg.probability(StrategyId::NS, StrategyId::NR); }) == ErrorCode::NotFound);

    const auto table = pattern_frequencies(cc);
    REQUIRE(table.distinct_pattern_count() == 4);
    CHECK(table.rows[0].pattern == StrategySet{StrategyId::NR});
    CHECK(table.rows[0].containment_count == 3);
    CHECK(table.rows[1].pattern == StrategySet{StrategyId::NM});
    CHECK(table.rows[2].pattern == StrategySet{StrategyId::NR, StrategyId::IP});
    CHECK(table.rows[2].containment_count == 2);
    CHECK(containment_count(cc, {StrategyId::NM, StrategyId::IP}) == 1);
    CHECK(containment_count(cc, {StrategyId::TD}) == 0);

    CHECK(mapping_coverage(cc).fraction().identical({4, 4}));
}

TEST_CASE("unmapped incidents are excluded from every denominator") {
    const std::vector<StrategySet> sets = {{StrategyId::NR}, {}, {StrategyId::NR, StrategyId::TD}};
    const auto cc = ClassifiedCorpus::from_sets(sets);
    CHECK(prevalence(cc).denominator == 2);
    CHECK(size_distribution(cc).mapped == 2);
    const auto cov = mapping_coverage(cc);
    CHECK(cov.fraction().identical({2, 3}));
}

TEST_CASE("random 7-strategy corpora match the oracle") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 300; ++trial) {
        const auto n = 1 + rng() % 60;
        auto sets = support::random_sets(rng, n, 7, true);
        sets.push_back(StrategySet(static_cast<std::uint8_t>(1 + rng() % 127)));
        check_against_oracle(sets);
    }
}

TEST_CASE("structural invariants") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 300; ++trial) {
        const auto sets = support::random_sets(rng, 1 + rng() % 40, 7, false);
        const auto cc = ClassifiedCorpus::from_sets(sets);
        const auto prev = prevalence(cc);
        const auto g = cooccurrence(cc);
        const auto cg = conditional_probabilities(cc);
        const auto table = pattern_frequencies(cc);
        const auto sd = size_distribution(cc);
        const auto n = prev.denominator;

        std::int64_t strategy_sum = 0;
        std::int64_t weighted_sizes = 0;
        std::int64_t size_total = 0;
        for (std::size_t k = 1; k <= 7; ++k) {
            weighted_sizes += static_cast<std::int64_t>(k) * sd.counts[k];
            size_total += sd.counts[k];
        }
        CHECK(size_total == n);
        std::int64_t exact_total = 0;
        for (const auto& r : table.rows) {
            exact_total += r.exact_count;
            CHECK(r.containment_count >= r.exact_count);
        }
        CHECK(exact_total == n);

        for (auto a : kAllStrategies) {
            const auto ca = prev.count_of(a);
            strategy_sum += ca;
            CHECK(ca <= n);
            CHECK(g.node_weight[index_of(a)] == ca);
            CHECK(cg.support[index_of(a)] == ca);
            std::int64_t from_patterns = 0;
            for (const auto& r : table.rows)
                if (r.pattern.contains(a)) from_patterns += r.exact_count;
            CHECK(from_patterns == ca);
            for (auto b : kAllStrategies) {
                const auto cb = prev.count_of(b);
                const auto w = g.weight(a, b);
                CHECK(w == g.weight(b, a));
                CHECK(w <= std::min(ca, cb));
                CHECK(w >= std::max<std::int64_t>(0, ca + cb - n));
                if (ca > 0) {
                    const auto cp = cg.probability(a, b);
                    CHECK(cp.num == w);
                    CHECK(cp.den == ca);
                    CHECK(cp.num <= cp.den);
                }
            }
        }
        CHECK(strategy_sum == weighted_sizes);
    }
}

TEST_CASE("statistics are invariant under incident order") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 100; ++trial) {
        auto sets = support::random_sets(rng, 2 + rng() % 30, 7, true);
        sets.push_back(StrategySet{StrategyId::CNR});
        auto shuffled = sets;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        const auto a = ClassifiedCorpus::from_sets(sets);
        const auto b = ClassifiedCorpus::from_sets(shuffled);
        CHECK(prevalence(a).entries.size() == prevalence(b).entries.size());
        for (std::size_t i = 0; i < prevalence(a).entries.size(); ++i) {
            CHECK(prevalence(a).entries[i].strategy == prevalence(b).entries[i].strategy);
            CHECK(prevalence(a).entries[i].count == prevalence(b).entries[i].count);
        }
        CHECK(cooccurrence(a).matrix == cooccurrence(b).matrix);
        const auto ta = pattern_frequencies(a);
        const auto tb = pattern_frequencies(b);
        REQUIRE(ta.rows.size() == tb.rows.size());
        for (std::size_t i = 0; i < ta.rows.size(); ++i) {
            CHECK(ta.rows[i].pattern == tb.rows[i].pattern);
            CHECK(ta.rows[i].exact_count == tb.rows[i].exact_count);
        }
        CHECK(size_distribution(a).counts == size_distribution(b).counts);
    }
}

TEST_CASE("min_support filters conditional sources") {
    const std::vector<StrategySet> sets = {{StrategyId::NR, StrategyId::IP}, {StrategyId::NR}, {StrategyId::TD}};
    const auto cc = ClassifiedCorpus::from_sets(sets);
    const auto g2 = conditional_probabilities(cc, 2);
    CHECK(g2.has_source(StrategyId::NR));
    CHECK_FALSE(g2.has_source(StrategyId::TD));
    for (const auto& e : g2.edges) CHECK(e.from == StrategyId::NR);
    CHECK(g2.edges.size() == 6);
    const auto g0 = conditional_probabilities(cc, 0);
    CHECK_FALSE(g0.has_source(StrategyId::NS));
    CHECK(code_of([&] { (void)conditional_probabilities(cc, -1); }) == ErrorCode::NegativeSupport);
}

TEST_CASE("combination counts") {
    CHECK(possible_combination_count(7, 2) == 120);
    CHECK(possible_combination_count(7, 1) == 127);
    CHECK(possible_combination_count(7, 0) == 128);
    CHECK(possible_combination_count(7, 7) == 1);
    CHECK(possible_combination_count(0, 0) == 1);
    CHECK(possible_combination_count(62, 0) == (std::uint64_t{1} << 62));
    for (int n = 0; n <= 16; ++n)
        for (int m = 0; m <= n; ++m) {
            std::uint64_t brute = 0;
            for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask)
                brute += std::popcount(mask) >= m;
            CHECK(possible_combination_count(n, m) == brute);
        }
    CHECK(code_of([] { (void)possible_combination_count(3, 4); }) == ErrorCode::InvalidRange);
    CHECK(code_of([] { (void)possible_combination_count(-1, 0); }) == ErrorCode::InvalidRange);
    CHECK(code_of([] { (void)possible_combination_count(63, 0); }) == ErrorCode::InvalidRange);
}

TEST_CASE("empty inputs") {
    const auto none = ClassifiedCorpus::from_sets(std::vector<StrategySet>{StrategySet{}, StrategySet{}});
    CHECK(code_of([&] { (void)prevalence(none); }) == ErrorCode::EmptyCorpus);
    CHECK(code_of([&] { (void)cooccurrence(none); }) == ErrorCode::EmptyCorpus);
    CHECK(code_of([&] { (void)pattern_frequencies(none); }) == ErrorCode::EmptyCorpus);
    CHECK(mapping_coverage(none).fraction().identical({0, 2}));
    CHECK(code_of([] { (void)mapping_coverage(ClassifiedCorpus{}); }) == ErrorCode::EmptyCorpus);
}
