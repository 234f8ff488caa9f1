#pragma once

#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "infops/corpus.hpp"
#include "infops/strategy.hpp"
#include "infops/taxonomy.hpp"
#include "oracle.hpp"

#ifndef INFOPS_TEST_DATA_DIR
#error "INFOPS_TEST_DATA_DIR must be defined"
#endif

namespace support {

inline std::string data_path(const std::string& rel) { return std::string(INFOPS_TEST_DATA_DIR) + "/" + rel; }

inline std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline const infops::Taxonomy& bundled_taxonomy() {
    static const infops::Taxonomy t = infops::load_taxonomy_file(data_path("taxonomy.json"));
    return t;
}

inline const infops::StrategyCatalog& bundled_catalog() {
    static const infops::StrategyCatalog c =
        infops::load_strategy_catalog_file(data_path("catalog.json"), bundled_taxonomy());
    return c;
}

inline oracle::Profile to_profile(infops::StrategySet s) { return oracle::of(s.codes()); }

inline oracle::Incidents to_oracle(const std::vector<infops::StrategySet>& sets) {
    oracle::Incidents out;
    for (auto s : sets) out.push_back(to_profile(s));
    return out;
}

// Random sets over the first `width` strategies; empty sets allowed when
// `allow_empty`, giving unmapped incidents.
inline std::vector<infops::StrategySet> random_sets(std::mt19937_64& rng, std::size_t n, unsigned width,
                                                    bool allow_empty) {
    std::uniform_int_distribution<unsigned> pick(allow_empty ? 0u : 1u, (1u << width) - 1u);
    std::vector<infops::StrategySet> out;
    for (std::size_t i = 0; i < n; ++i) out.emplace_back(static_cast<std::uint8_t>(pick(rng)));
    return out;
}

// Incident whose technique set is the union of the given strategies'
// execution techniques plus optional extras.
inline infops::Incident incident_for(const std::string& id, infops::StrategySet s,
                                     const infops::StrategyCatalog& c, bool with_prep = false) {
    infops::Incident inc;
    inc.incident_id = id;
    inc.year = 2020;
    for (auto sid : s.members()) {
        const auto* def = c.find(sid);
        inc.techniques.insert(def->execution_technique);
        if (with_prep)
            for (const auto& p : def->preparation_techniques) inc.techniques.insert(p);
    }
    return inc;
}

}  // namespace support
