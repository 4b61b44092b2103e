#pragma once

#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "foundry/errors.hpp"
#include "foundry/types.hpp"

namespace foundry {

using json = nlohmann::json;

template <typename T>
void set_optional(json& j, const char* key, const std::optional<T>& value) {
    if (value.has_value()) j[key] = *value;
}

template <typename T>
void get_optional(const json& j, const char* key, std::optional<T>& value) {
    if (j.contains(key) && !j.at(key).is_null()) {
        value = j.at(key).template get<T>();
    } else {
        value.reset();
    }
}

void to_json(json& j, const SystemVersion& v);
void from_json(const json& j, SystemVersion& v);
void to_json(json& j, const FactorSpec& v);
void from_json(const json& j, FactorSpec& v);
void to_json(json& j, const DatasetSpec& v);
void from_json(const json& j, DatasetSpec& v);
void to_json(json& j, const TaxonomyNode& v);
void from_json(const json& j, TaxonomyNode& v);
void to_json(json& j, const Taxonomy& v);
void from_json(const json& j, Taxonomy& v);
void to_json(json& j, const NodeRef& v);
void from_json(const json& j, NodeRef& v);
void to_json(json& j, const Mix& v);
void from_json(const json& j, Mix& v);
void to_json(json& j, const MetaPrompt& v);
void from_json(const json& j, MetaPrompt& v);
void to_json(json& j, const AuditStep& v);
void from_json(const json& j, AuditStep& v);
void to_json(json& j, const AuditTrace& v);
void from_json(const json& j, AuditTrace& v);
void to_json(json& j, const DataPoint& v);
void from_json(const json& j, DataPoint& v);

// One record per line, compact JSON. Returns the number of lines written;
// a stream failure raises IoError carrying the partial count.
template <typename T>
std::size_t persist_records(const std::vector<T>& records, std::ostream& out) {
    std::size_t written = 0;
    for (const T& record : records) {
        json j = record;
        out << j.dump() << '\n';
        if (!out.good()) throw IoError("record sink failed", written);
        ++written;
    }
    out.flush();
    if (!out.good()) throw IoError("record sink failed on flush", written);
    return written;
}

template <typename T>
std::size_t persist_records(const std::vector<T>& records, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out.is_open()) throw IoError("cannot open '" + path.string() + "'", 0);
    return persist_records(records, out);
}

template <typename T>
std::vector<T> load_records(std::istream& in) {
    std::vector<T> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        out.push_back(json::parse(line).template get<T>());
    }
    return out;
}

template <typename T>
std::vector<T> load_records(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in.is_open()) raise(ErrorKind::io, "cannot open '" + path.string() + "'");
    return load_records<T>(in);
}

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);
std::string file_sha256(const std::filesystem::path& path);

}  // namespace foundry
