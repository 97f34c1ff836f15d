#include "support/json_check.hpp"

#include <cstddef>
#include <fstream>
#include <regex>
#include <stdexcept>

namespace testsupport {
namespace {

using nlohmann::json;

bool fail(std::string* err, const std::string& path, const std::string& reason) {
    if (err) *err = path + ": " + reason;
    return false;
}

bool type_matches(const json& v, const std::string& t) {
    if (t == "object") return v.is_object();
    if (t == "array") return v.is_array();
    if (t == "string") return v.is_string();
    if (t == "boolean") return v.is_boolean();
    if (t == "integer") return v.is_number_integer();
    if (t == "number") return v.is_number();
    if (t == "null") return v.is_null();
    return false;
}

bool check(const json& v, const json& s, const std::string& path, std::string* err) {
    if (!s.is_object()) return fail(err, path, "schema node is not an object");
    if (auto it = s.find("type"); it != s.end()) {
        const auto want = it->get<std::string>();
        if (!type_matches(v, want)) return fail(err, path, "expected type " + want);
    }
    if (auto it = s.find("enum"); it != s.end()) {
        bool hit = false;
        for (const json& cand : *it) {
            if (v == cand) {
                hit = true;
                break;
            }
        }
        if (!hit) return fail(err, path, "value not in enum: " + v.dump());
    }
    if (auto it = s.find("pattern"); it != s.end()) {
        if (!v.is_string()) return fail(err, path, "pattern applied to a non-string");
        const std::regex re(it->get<std::string>());
        if (!std::regex_search(v.get<std::string>(), re))
            return fail(err, path, "pattern mismatch: \"" + v.get<std::string>() + "\"");
    }
    if (v.is_object()) {
        if (auto it = s.find("required"); it != s.end()) {
            for (const json& key : *it) {
                if (!v.contains(key.get<std::string>()))
                    return fail(err, path, "missing required key " + key.get<std::string>());
            }
        }
        const json* props = nullptr;
        if (auto it = s.find("properties"); it != s.end()) props = &*it;
        bool extra_ok = true;
        if (auto it = s.find("additionalProperties"); it != s.end() && it->is_boolean())
            extra_ok = it->get<bool>();
        for (auto it = v.begin(); it != v.end(); ++it) {
            const std::string child = path + "." + it.key();
            if (props != nullptr && props->contains(it.key())) {
                if (!check(it.value(), props->at(it.key()), child, err)) return false;
            } else if (!extra_ok) {
                return fail(err, path, "unexpected key " + it.key());
            }
        }
    }
    if (v.is_array()) {
        if (auto it = s.find("minItems"); it != s.end() && v.size() < it->get<std::size_t>())
            return fail(err, path, "fewer than minItems elements");
        if (auto it = s.find("maxItems"); it != s.end() && v.size() > it->get<std::size_t>())
            return fail(err, path, "more than maxItems elements");
        if (auto it = s.find("items"); it != s.end()) {
            for (std::size_t i = 0; i < v.size(); ++i) {
                if (!check(v[i], *it, path + "[" + std::to_string(i) + "]", err)) return false;
            }
        }
    }
    return true;
}

}  // namespace

bool json_matches_schema(const nlohmann::json& doc, const nlohmann::json& schema,
                         std::string* err) {
    return check(doc, schema, "$", err);
}

nlohmann::json load_json_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("cannot open " + path);
    return nlohmann::json::parse(f);
}

}  // namespace testsupport
