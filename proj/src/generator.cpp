#include "infops/generator.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <numeric>
#include <random>

#include "infops/error.hpp"
#include "io.hpp"

namespace infops {

namespace {

constexpr int kFirstYear = 2014;
constexpr int kYearSpan = 11;  // 2014..2024

// mt19937_64 output is fixed by the standard; distributions are not, so
// bounded draws and shuffles are done here.
class DeterministicRng {
public:
    explicit DeterministicRng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t threshold = (0 - n) % n;
        std::uint64_t x;
        do {
            x = engine_();
        } while (x < threshold);
        return x % n;
    }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[static_cast<std::size_t>(below(i))]);
    }

private:
    std::mt19937_64 engine_;
};

std::int64_t read_count(const nlohmann::json& v, const std::string& ctx) {
    if (!v.is_number_integer()) throw Error(ErrorCode::Schema, ctx + ": count must be an integer");
    const auto n = v.get<std::int64_t>();
    if (n < 0) throw Error(ErrorCode::Schema, ctx + ": count must be >= 0, got " + std::to_string(n));
    return n;
}

std::vector<PatternCount> read_patterns(const nlohmann::json& doc, const char* key, bool required) {
    std::vector<PatternCount> out;
    auto it = doc.find(key);
    if (it == doc.end() || it->is_null()) {
        if (required) throw Error(ErrorCode::Schema, std::string("generator spec: missing '") + key + "'");
        return out;
    }
    if (!it->is_array()) throw Error(ErrorCode::Schema, std::string("generator spec: '") + key + "' must be an array");
    for (std::size_t i = 0; i < it->size(); ++i) {
        const std::string ctx = std::string(key) + "[" + std::to_string(i) + "]";
        const auto& entry = (*it)[i];
        const auto& arr = detail::require_array(entry, "strategies", ctx);
        std::vector<std::string> codes;
        for (const auto& c : arr) {
            if (!c.is_string()) throw Error(ErrorCode::Schema, ctx + ": strategies must be strings");
            codes.push_back(c.get<std::string>());
        }
        PatternCount pc{parse_strategy_set(codes), read_count(detail::require(entry, "count", ctx), ctx)};
        if (pc.pattern.empty())
            throw Error(ErrorCode::Schema, ctx + ": empty strategy set (use unmapped_count instead)");
        for (const auto& prev : out)
            if (prev.pattern == pc.pattern)
                throw Error(ErrorCode::Schema, ctx + ": pattern {" + pc.pattern.label() + "} listed twice");
        out.push_back(pc);
    }
    return out;
}

nlohmann::ordered_json write_patterns(const std::vector<PatternCount>& patterns) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& p : patterns) {
        nlohmann::ordered_json e;
        e["strategies"] = p.pattern.codes();
        e["count"] = p.count;
        arr.push_back(std::move(e));
    }
    return arr;
}

// Gale-Ryser: a 0/1 incidence matrix with row sums `sizes` (incidents) and
// column sums `r` (strategies) exists iff the sums agree and, for the
// column sums sorted descending, every prefix of length k is at most
// sum_i min(size_i, k).
bool gale_ryser(const std::array<std::int64_t, kStrategyCount>& r,
                const std::array<std::int64_t, kStrategyCount + 1>& size_counts) {
    std::array<std::int64_t, kStrategyCount> cols = r;
    std::sort(cols.begin(), cols.end(), std::greater<>());
    std::int64_t col_total = 0;
    std::int64_t row_total = 0;
    for (auto c : cols) {
        if (c < 0) return false;
        col_total += c;
    }
    for (std::size_t k = 1; k <= kStrategyCount; ++k) row_total += static_cast<std::int64_t>(k) * size_counts[k];
    if (col_total != row_total) return false;
    std::int64_t prefix = 0;
    for (std::size_t k = 1; k <= kStrategyCount; ++k) {
        prefix += cols[k - 1];
        std::int64_t cap = 0;
        for (std::size_t s = 1; s <= kStrategyCount; ++s)
            cap += size_counts[s] * static_cast<std::int64_t>(std::min(s, k));
        if (prefix > cap) return false;
    }
    return true;
}

constexpr std::uint64_t kFirstAttemptBudget = 20'000;

class PatternSolver {
public:
    PatternSolver(const GeneratorSpec& spec, DeterministicRng& rng) : rng_(rng) {
        remaining_ = spec.marginals;
        sizes_ = spec.size_distribution;
        for (const auto& pin : spec.pinned_patterns) {
            if (pin.count == 0) continue;
            for (auto id : pin.pattern.members()) remaining_[index_of(id)] -= pin.count;
            sizes_[pin.pattern.size()] -= pin.count;
            pinned_.push_back(pin.pattern);
        }
        for (auto id : kAllStrategies)
            if (remaining_[index_of(id)] < 0)
                throw Error(ErrorCode::InfeasibleSpec, "pinned patterns use strategy " +
                                                           std::string(strategy_code(id)) + " more often than its marginal allows");
        for (std::size_t k = 1; k <= kStrategyCount; ++k)
            if (sizes_[k] < 0)
                throw Error(ErrorCode::InfeasibleSpec, "pinned patterns need more size-" + std::to_string(k) +
                                                           " incidents than the size distribution provides");
        if (spec.distinct_patterns) {
            distinct_left_ = *spec.distinct_patterns - static_cast<std::int64_t>(pinned_.size());
            if (distinct_left_ < 0)
                throw Error(ErrorCode::InfeasibleSpec, "more pinned patterns than distinct_patterns allows");
            track_distinct_ = true;
        }
        for (unsigned bits = 1; bits < 128; ++bits) {
            const StrategySet s(static_cast<std::uint8_t>(bits));
            if (std::find(pinned_.begin(), pinned_.end(), s) != pinned_.end()) continue;
            candidates_[s.size()].push_back(s);
        }
    }

    std::vector<PatternCount> solve() {
        if (!gale_ryser(remaining_, sizes_))
            throw Error(ErrorCode::InfeasibleSpec,
                        "no assignment of strategies to incidents meets both the marginals and the size "
                        "distribution (Gale-Ryser condition fails)");
        // Restarts with a reshuffled candidate order and a growing per-attempt
        // budget, bounded overall by kSolverNodeBudget.
        const auto start_remaining = remaining_;
        const auto start_sizes = sizes_;
        const auto start_distinct = distinct_left_;
        std::uint64_t attempt_budget = kFirstAttemptBudget;
        std::uint64_t spent = 0;
        while (spent < kSolverNodeBudget) {
            remaining_ = start_remaining;
            sizes_ = start_sizes;
            distinct_left_ = start_distinct;
            chosen_.clear();
            nodes_ = 0;
            exhausted_ = false;
            attempt_limit_ = std::min(attempt_budget, kSolverNodeBudget - spent);
            for (std::size_t k = kStrategyCount; k >= 1; --k) rng_.shuffle(candidates_[k]);
            if (search(kStrategyCount, 0)) return chosen_;
            spent += nodes_;
            if (!exhausted_)
                throw Error(ErrorCode::InfeasibleSpec,
                            "backtracking search exhausted: no pattern multiset satisfies every constraint");
            attempt_budget *= 2;
        }
        throw Error(ErrorCode::InfeasibleSpec, "backtracking search exhausted its node budget");
    }

private:
    bool search(std::size_t k, std::size_t idx) {
        if (++nodes_ > attempt_limit_) {
            exhausted_ = true;
            return false;
        }
        if (k == 0) {
            return std::all_of(remaining_.begin(), remaining_.end(), [](auto v) { return v == 0; }) &&
                   (!track_distinct_ || distinct_left_ == 0);
        }
        if (sizes_[k] == 0) return search(k - 1, 0);
        if (!viable(k, idx)) return false;
        const auto& cands = candidates_[k];
        if (idx == cands.size()) return false;

        const StrategySet p = cands[idx];
        std::int64_t max_count = sizes_[k];
        for (auto id : p.members()) max_count = std::min(max_count, remaining_[index_of(id)]);

        for (std::int64_t c : count_order(k, max_count)) {
            apply(p, k, c);
            chosen_.push_back({p, c});
            if (search(k, idx + 1)) return true;
            chosen_.pop_back();
            apply(p, k, -c);
            if (exhausted_) return false;
        }
        return search(k, idx + 1);
    }

    void apply(StrategySet p, std::size_t k, std::int64_t c) {
        for (auto id : p.members()) remaining_[index_of(id)] -= c;
        sizes_[k] -= c;
        if (track_distinct_) distinct_left_ -= (c > 0 ? 1 : -1);
    }

    bool viable(std::size_t k, std::size_t idx) const {
        std::array<std::int64_t, kStrategyCount + 1> open{};
        for (std::size_t j = 1; j <= k; ++j) open[j] = sizes_[j];
        if (!gale_ryser(remaining_, open)) return false;
        if (track_distinct_) {
            std::int64_t min_new = 0;
            std::int64_t max_new = std::min<std::int64_t>(sizes_[k], static_cast<std::int64_t>(candidates_[k].size() - idx));
            if (sizes_[k] > 0) ++min_new;
            for (std::size_t j = 1; j < k; ++j) {
                if (sizes_[j] > 0) ++min_new;
                max_new += std::min<std::int64_t>(sizes_[j], static_cast<std::int64_t>(candidates_[j].size()));
            }
            if (distinct_left_ < min_new || distinct_left_ > max_new) return false;
        }
        return true;
    }

    // Counts to try for the next pattern. With a distinct-pattern target the
    // search aims at the average multiplicity still needed; otherwise it
    // fills greedily from the largest count down.
    std::vector<std::int64_t> count_order(std::size_t k, std::int64_t max_count) const {
        std::vector<std::int64_t> order;
        for (std::int64_t c = max_count; c >= 1; --c) order.push_back(c);
        if (track_distinct_ && distinct_left_ > 0) {
            std::int64_t incidents_left = 0;
            for (std::size_t j = 1; j <= k; ++j) incidents_left += sizes_[j];
            const std::int64_t target = std::max<std::int64_t>(1, (incidents_left + distinct_left_ / 2) / distinct_left_);
            std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) {
                const auto da = a > target ? a - target : target - a;
                const auto db = b > target ? b - target : target - b;
                if (da != db) return da < db;
                return a < b;
            });
        }
        return order;
    }

    DeterministicRng& rng_;
    std::array<std::int64_t, kStrategyCount> remaining_{};
    std::array<std::int64_t, kStrategyCount + 1> sizes_{};
    std::array<std::vector<StrategySet>, kStrategyCount + 1> candidates_;
    std::vector<StrategySet> pinned_;
    std::vector<PatternCount> chosen_;
    std::int64_t distinct_left_ = 0;
    bool track_distinct_ = false;
    bool exhausted_ = false;
    std::uint64_t nodes_ = 0;
    std::uint64_t attempt_limit_ = 0;
};

void check_solver_identities(const GeneratorSpec& spec) {
    if (spec.size_distribution[0] != 0)
        throw Error(ErrorCode::Schema, "size_distribution: size 0 is not allowed (use unmapped_count)");
    std::int64_t marginal_sum = 0;
    for (auto m : spec.marginals) marginal_sum += m;
    std::int64_t weighted = 0;
    for (std::size_t k = 1; k <= kStrategyCount; ++k) weighted += static_cast<std::int64_t>(k) * spec.size_distribution[k];
    if (marginal_sum != weighted)
        throw Error(ErrorCode::InfeasibleSpec,
                    "handshake identity violated: sum of marginals = " + std::to_string(marginal_sum) +
                        " but sum of k * size_distribution[k] = " + std::to_string(weighted));
}

std::vector<PatternCount> solve_with(const GeneratorSpec& spec, DeterministicRng& rng) {
    if (spec.mode == GeneratorMode::ExactPatterns) return spec.pattern_counts;
    check_solver_identities(spec);
    PatternSolver solver(spec, rng);
    auto solved = solver.solve();
    std::vector<PatternCount> out;
    for (const auto& pin : spec.pinned_patterns)
        if (pin.count > 0) out.push_back(pin);
    out.insert(out.end(), solved.begin(), solved.end());
    return out;
}

std::string zero_pad(std::size_t value, std::size_t width) {
    std::string s = std::to_string(value);
    if (s.size() < width) s.insert(0, width - s.size(), '0');
    return s;
}

}  // namespace

GeneratorSpec parse_generator_spec(std::string_view document) {
    const auto doc = detail::parse_json(document, "generator spec");
    if (!doc.is_object()) throw Error(ErrorCode::Schema, "generator spec: top level must be an object");
    GeneratorSpec spec;
    const std::string mode = detail::require_string(doc, "mode", "generator spec");
    if (mode == "exact-patterns") spec.mode = GeneratorMode::ExactPatterns;
    else if (mode == "marginal-solver") spec.mode = GeneratorMode::MarginalSolver;
    else throw Error(ErrorCode::Schema, "generator spec: unknown mode '" + mode + "'");

    if (auto it = doc.find("seed"); it != doc.end()) {
        if (!it->is_number_unsigned()) throw Error(ErrorCode::Schema, "generator spec: seed must be an unsigned integer");
        spec.seed = it->get<std::uint64_t>();
    }
    if (auto it = doc.find("unmapped_count"); it != doc.end()) spec.unmapped_count = read_count(*it, "unmapped_count");
    if (auto it = doc.find("with_preparation"); it != doc.end()) {
        if (!it->is_boolean()) throw Error(ErrorCode::Schema, "generator spec: with_preparation must be a boolean");
        spec.with_preparation = it->get<bool>();
    }
    spec.note = detail::optional_string(doc, "note", "generator spec");

    if (spec.mode == GeneratorMode::ExactPatterns) {
        spec.pattern_counts = read_patterns(doc, "pattern_counts", true);
        return spec;
    }

    const auto& marginals = detail::require(doc, "marginals", "generator spec");
    if (!marginals.is_object()) throw Error(ErrorCode::Schema, "generator spec: marginals must be an object");
    for (const auto& [code, value] : marginals.items()) {
        auto id = parse_strategy_code(code);
        if (!id) throw Error(ErrorCode::Schema, "marginals: unknown strategy id '" + code + "'");
        spec.marginals[index_of(*id)] = read_count(value, "marginals." + code);
    }
    const auto& sizes = detail::require(doc, "size_distribution", "generator spec");
    if (!sizes.is_object()) throw Error(ErrorCode::Schema, "generator spec: size_distribution must be an object");
    for (const auto& [key, value] : sizes.items()) {
        std::size_t k = 0;
        try {
            std::size_t used = 0;
            k = std::stoul(key, &used);
            if (used != key.size()) throw std::invalid_argument(key);
        } catch (const std::exception&) {
            throw Error(ErrorCode::Schema, "size_distribution: key '" + key + "' is not a set size");
        }
        if (k > kStrategyCount) throw Error(ErrorCode::Schema, "size_distribution: size " + key + " exceeds 7");
        spec.size_distribution[k] = read_count(value, "size_distribution." + key);
    }
    spec.pinned_patterns = read_patterns(doc, "pinned_patterns", false);
    if (auto it = doc.find("distinct_patterns"); it != doc.end() && !it->is_null())
        spec.distinct_patterns = read_count(*it, "distinct_patterns");
    return spec;
}

GeneratorSpec load_generator_spec_file(const std::string& path) {
    return parse_generator_spec(detail::read_file(path));
}

std::string serialize_generator_spec(const GeneratorSpec& spec) {
    nlohmann::ordered_json doc;
    doc["mode"] = spec.mode == GeneratorMode::ExactPatterns ? "exact-patterns" : "marginal-solver";
    if (!spec.note.empty()) doc["note"] = spec.note;
    doc["seed"] = spec.seed;
    doc["unmapped_count"] = spec.unmapped_count;
    if (spec.with_preparation) doc["with_preparation"] = true;
    if (spec.mode == GeneratorMode::ExactPatterns) {
        doc["pattern_counts"] = write_patterns(spec.pattern_counts);
    } else {
        nlohmann::ordered_json m = nlohmann::ordered_json::object();
        for (auto id : kAllStrategies) m[std::string(strategy_code(id))] = spec.marginals[index_of(id)];
        doc["marginals"] = m;
        nlohmann::ordered_json s = nlohmann::ordered_json::object();
        for (std::size_t k = 1; k <= kStrategyCount; ++k) s[std::to_string(k)] = spec.size_distribution[k];
        doc["size_distribution"] = s;
        doc["pinned_patterns"] = write_patterns(spec.pinned_patterns);
        if (spec.distinct_patterns) doc["distinct_patterns"] = *spec.distinct_patterns;
    }
    return detail::dump(doc);
}

std::vector<PatternCount> solve_patterns(const GeneratorSpec& spec) {
    DeterministicRng rng(spec.seed);
    return solve_with(spec, rng);
}

Corpus generate_corpus(const GeneratorSpec& spec, const StrategyCatalog& c) {
    DeterministicRng rng(spec.seed);
    const auto patterns = solve_with(spec, rng);

    std::int64_t total = spec.unmapped_count;
    for (const auto& p : patterns) total += p.count;
    if (total == 0) throw Error(ErrorCode::ZeroIncidents, "generator spec describes zero incidents");

    std::vector<StrategySet> slots;
    slots.reserve(static_cast<std::size_t>(total));
    for (const auto& p : patterns) {
        for (auto id : p.pattern.members())
            if (!c.find(id))
                throw Error(ErrorCode::InfeasibleSpec,
                            "catalog has no strategy " + std::string(strategy_code(id)) + " to realise a pattern");
        slots.insert(slots.end(), static_cast<std::size_t>(p.count), p.pattern);
    }
    slots.insert(slots.end(), static_cast<std::size_t>(spec.unmapped_count), StrategySet{});
    rng.shuffle(slots);

    const std::size_t width = std::max<std::size_t>(3, std::to_string(total).size());
    Corpus corpus;
    corpus.source = "generated:seed=" + std::to_string(spec.seed);
    corpus.incidents.reserve(slots.size());
    for (std::size_t i = 0; i < slots.size(); ++i) {
        Incident inc;
        const std::string n = zero_pad(i + 1, width);
        inc.incident_id = "SYN-" + n;
        inc.title = "Synthetic incident " + n;
        inc.year = kFirstYear + static_cast<int>(rng.below(kYearSpan));
        for (auto id : slots[i].members()) {
            const auto* def = c.find(id);
            inc.techniques.insert(def->execution_technique);
            if (spec.with_preparation) inc.techniques.insert(def->preparation_techniques.begin(), def->preparation_techniques.end());
        }
        corpus.incidents.push_back(std::move(inc));
    }
    return corpus;
}

}  // namespace infops
