#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <string_view>

#include "infops/error.hpp"
#include "json.hpp"

namespace infops::detail {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::Io, "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw Error(ErrorCode::Io, "read failed for '" + path + "'");
    return ss.str();
}

inline nlohmann::json parse_json(std::string_view document, std::string_view what) {
    try {
        return nlohmann::json::parse(document.begin(), document.end());
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorCode::Parse, std::string(what) + ": " + e.what());
    }
}

inline const nlohmann::json& require(const nlohmann::json& obj, const char* key, const std::string& ctx) {
    if (!obj.is_object()) throw Error(ErrorCode::Schema, ctx + ": expected an object");
    auto it = obj.find(key);
    if (it == obj.end() || it->is_null())
        throw Error(ErrorCode::Schema, ctx + ": missing required field '" + key + "'");
    return *it;
}

inline std::string require_string(const nlohmann::json& obj, const char* key, const std::string& ctx) {
    const auto& v = require(obj, key, ctx);
    if (!v.is_string()) throw Error(ErrorCode::Schema, ctx + ": field '" + key + "' must be a string");
    return v.get<std::string>();
}

inline std::string optional_string(const nlohmann::json& obj, const char* key, const std::string& ctx) {
    auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) return {};
    if (!it->is_string()) throw Error(ErrorCode::Schema, ctx + ": field '" + key + "' must be a string");
    return it->get<std::string>();
}

inline const nlohmann::json& require_array(const nlohmann::json& obj, const char* key, const std::string& ctx) {
    const auto& v = require(obj, key, ctx);
    if (!v.is_array()) throw Error(ErrorCode::Schema, ctx + ": field '" + key + "' must be an array");
    return v;
}

// Stable 2-space dump with a trailing newline for every emitted document.
inline std::string dump(const nlohmann::ordered_json& j) { return j.dump(2) + "\n"; }

}  // namespace infops::detail
