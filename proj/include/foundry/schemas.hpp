#pragma once

#include <optional>
#include <string>

#include <json.hpp>

namespace foundry {

// Pulls the first machine-readable block out of a model reply: a fenced
// ```json block, a bare fenced block, or the outermost {...} / [...] span.
std::optional<nlohmann::json> extract_fenced_json(const std::string& raw, std::string* error);

// Structural check for a named reply shape. Returns an error description,
// or nullopt when the value conforms.
std::optional<std::string> check_schema(const std::string& schema, const nlohmann::json& value);

}  // namespace foundry
