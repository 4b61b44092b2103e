#include "foundry/schemas.hpp"

#include <set>

namespace foundry {

using nlohmann::json;

std::optional<json> extract_fenced_json(const std::string& raw, std::string* error) {
    auto try_parse = [&](const std::string& text) -> std::optional<json> {
        json parsed = json::parse(text, nullptr, false);
        if (parsed.is_discarded()) return std::nullopt;
        return parsed;
    };

    std::size_t fence = raw.find("```");
    while (fence != std::string::npos) {
        std::size_t body_start = raw.find('\n', fence);
        if (body_start == std::string::npos) break;
        std::size_t fence_end = raw.find("```", body_start);
        if (fence_end == std::string::npos) break;
        if (auto parsed = try_parse(raw.substr(body_start + 1, fence_end - body_start - 1))) {
            return parsed;
        }
        fence = raw.find("```", fence_end + 3);
    }

    if (auto parsed = try_parse(raw)) return parsed;

    for (char open : {'{', '['}) {
        char close = open == '{' ? '}' : ']';
        std::size_t first = raw.find(open);
        std::size_t last = raw.rfind(close);
        if (first != std::string::npos && last != std::string::npos && last > first) {
            if (auto parsed = try_parse(raw.substr(first, last - first + 1))) return parsed;
        }
    }

    if (error != nullptr) *error = "reply contains no parseable JSON block";
    return std::nullopt;
}

namespace {

std::optional<std::string> require_string(const json& j, const char* key) {
    if (!j.contains(key) || !j.at(key).is_string()) {
        return std::string("missing string field '") + key + "'";
    }
    return std::nullopt;
}

std::optional<std::string> require_array(const json& j, const char* key) {
    if (!j.contains(key) || !j.at(key).is_array()) {
        return std::string("missing array field '") + key + "'";
    }
    return std::nullopt;
}

std::optional<std::string> check_task_draft(const json& j) {
    if (auto err = require_string(j, "input")) return err;
    if (j.contains("choices")) {
        if (!j.at("choices").is_array() || j.at("choices").empty()) {
            return "field 'choices' must be a nonempty array";
        }
        for (const auto& c : j.at("choices")) {
            if (!c.is_string()) return "every choice must be a string";
        }
        if (auto err = require_string(j, "answer")) return err;
        return std::nullopt;
    }
    return require_string(j, "output");
}

}  // namespace

std::optional<std::string> check_schema(const std::string& schema, const json& value) {
    if (!value.is_object()) return "top-level value must be an object";

    if (schema == "factors_list") {
        if (auto err = require_array(value, "factors")) return err;
        for (const auto& f : value.at("factors")) {
            if (auto err = require_string(f, "name")) return err;
        }
        return std::nullopt;
    }
    if (schema == "factor_verdicts") {
        if (auto err = require_array(value, "decisions")) return err;
        for (const auto& d : value.at("decisions")) {
            if (auto err = require_string(d, "name")) return err;
            if (!d.contains("accept") || !d.at("accept").is_boolean()) {
                return "decision entries need a boolean 'accept'";
            }
        }
        return std::nullopt;
    }
    if (schema == "children_list" || schema == "children_critique") {
        if (auto err = require_array(value, "children")) return err;
        for (const auto& c : value.at("children")) {
            if (auto err = require_string(c, "label")) return err;
        }
        if (schema == "children_critique" && value.contains("edits")) {
            if (!value.at("edits").is_array()) return "'edits' must be an array";
            for (const auto& e : value.at("edits")) {
                if (auto err = require_string(e, "op")) return err;
                if (auto err = require_string(e, "label")) return err;
            }
        }
        return std::nullopt;
    }
    if (schema == "plan_text") return require_string(value, "plan");
    if (schema == "strategy_plan") {
        if (auto err = require_array(value, "strategies")) return err;
        if (value.at("strategies").empty()) return "'strategies' must be nonempty";
        for (const auto& s : value.at("strategies")) {
            if (auto err = require_string(s, "name")) return err;
            if (auto err = require_array(s, "taxonomies")) return err;
            if (!s.contains("weight") || !s.at("weight").is_number()) {
                return "strategy entries need a numeric 'weight'";
            }
        }
        return std::nullopt;
    }
    if (schema == "scenario_list") {
        if (auto err = require_array(value, "scenarios")) return err;
        for (const auto& s : value.at("scenarios")) {
            if (!s.is_string()) return "every scenario must be a string";
        }
        return std::nullopt;
    }
    if (schema == "rewrite_text") return require_string(value, "text");
    if (schema == "task_draft") return check_task_draft(value);
    if (schema == "verdict") {
        if (!value.contains("verdict") || !value.at("verdict").is_boolean()) {
            return "missing boolean field 'verdict'";
        }
        if (!value.at("verdict").get<bool>()) {
            if (!value.contains("explanation") || !value.at("explanation").is_string() ||
                value.at("explanation").get<std::string>().empty()) {
                return "negative verdicts need a nonempty 'explanation'";
            }
        }
        return std::nullopt;
    }
    if (schema == "score_list") {
        if (auto err = require_array(value, "scores")) return err;
        for (const auto& s : value.at("scores")) {
            if (auto err = require_string(s, "id")) return err;
            if (!s.contains("score") || !s.at("score").is_number()) {
                return "score entries need a numeric 'score'";
            }
            double score = s.at("score").get<double>();
            if (score < 0.0 || score > 100.0) return "scores must lie in [0, 100]";
        }
        return std::nullopt;
    }
    if (schema == "assignment_list") {
        if (auto err = require_array(value, "assignments")) return err;
        for (const auto& a : value.at("assignments")) {
            if (auto err = require_string(a, "id")) return err;
            if (auto err = require_string(a, "node_id")) return err;
        }
        return std::nullopt;
    }
    if (schema == "classification_list") {
        static const std::set<std::string> categories = {"GoodOverlapping", "GoodExclusive", "Redundant", "Bad"};
        if (auto err = require_array(value, "classifications")) return err;
        for (const auto& c : value.at("classifications")) {
            if (auto err = require_string(c, "node_id")) return err;
            if (auto err = require_string(c, "category")) return err;
            if (categories.count(c.at("category").get<std::string>()) == 0) {
                return "unknown classification category '" + c.at("category").get<std::string>() + "'";
            }
        }
        return std::nullopt;
    }
    if (schema == "answer_text") return require_string(value, "answer");

    return "unknown schema '" + schema + "'";
}

}  // namespace foundry
