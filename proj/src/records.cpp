#include "foundry/records.hpp"

#include <sstream>

#include "foundry/sha256.hpp"

namespace foundry {

void to_json(json& j, const SystemVersion& v) {
    j = json{{"taxonomy_depth_mode", to_string(v.taxonomy_depth_mode)},
             {"meta_prompting", v.meta_prompting},
             {"critic_steps", v.critic_steps}};
}

void from_json(const json& j, SystemVersion& v) {
    v.taxonomy_depth_mode = depth_mode_from_string(j.at("taxonomy_depth_mode").get<std::string>());
    v.meta_prompting = j.at("meta_prompting").get<bool>();
    v.critic_steps = j.at("critic_steps").get<bool>();
}

void to_json(json& j, const FactorSpec& v) {
    j = json{{"factor_name", v.factor_name}, {"depth", v.depth}};
}

void from_json(const json& j, FactorSpec& v) {
    v.factor_name = j.at("factor_name").get<std::string>();
    v.depth = j.at("depth").get<int>();
}

void to_json(json& j, const DatasetSpec& v) {
    j = json{{"description", v.description},
             {"sample_refs", v.sample_refs},
             {"factors", v.factors},
             {"target_size", v.target_size},
             {"complexify_fraction", v.complexify_fraction},
             {"scenarios_per_mix", v.scenarios_per_mix},
             {"system_flags", v.system_flags},
             {"seed", v.seed}};
}

void from_json(const json& j, DatasetSpec& v) {
    v.description = j.at("description").get<std::string>();
    v.sample_refs = j.value("sample_refs", std::vector<std::string>{});
    v.factors = j.value("factors", std::vector<FactorSpec>{});
    v.target_size = j.at("target_size").get<int>();
    v.complexify_fraction = j.value("complexify_fraction", 0.0);
    v.scenarios_per_mix = j.value("scenarios_per_mix", 1);
    if (j.contains("system_flags")) v.system_flags = j.at("system_flags").get<SystemVersion>();
    v.seed = j.value("seed", std::uint64_t{0});
}

void to_json(json& j, const TaxonomyNode& v) {
    j = json{{"node_id", v.node_id},
             {"label", v.label},
             {"description", v.description},
             {"level", v.level},
             {"children", v.children}};
    set_optional(j, "parent_id", v.parent_id);
}

void from_json(const json& j, TaxonomyNode& v) {
    v.node_id = j.at("node_id").get<std::string>();
    v.label = j.at("label").get<std::string>();
    v.description = j.value("description", std::string{});
    v.level = j.at("level").get<int>();
    v.children = j.value("children", std::vector<std::string>{});
    get_optional(j, "parent_id", v.parent_id);
}

void to_json(json& j, const Taxonomy& v) {
    j = json{{"factor_name", v.factor_name},
             {"depth", v.depth},
             {"snapshot_id", v.snapshot_id},
             {"nodes", v.nodes}};
}

void from_json(const json& j, Taxonomy& v) {
    v.factor_name = j.at("factor_name").get<std::string>();
    v.depth = j.at("depth").get<int>();
    v.snapshot_id = j.at("snapshot_id").get<std::string>();
    v.nodes = j.at("nodes").get<std::vector<TaxonomyNode>>();
}

void to_json(json& j, const NodeRef& v) {
    j = json{{"snapshot_id", v.snapshot_id}, {"node_id", v.node_id}};
}

void from_json(const json& j, NodeRef& v) {
    v.snapshot_id = j.at("snapshot_id").get<std::string>();
    v.node_id = j.at("node_id").get<std::string>();
}

void to_json(json& j, const Mix& v) {
    j = json{{"mix_id", v.mix_id},
             {"strategy_id", v.strategy_id},
             {"nodes", v.nodes},
             {"seed_offset", v.seed_offset}};
}

void from_json(const json& j, Mix& v) {
    v.mix_id = j.at("mix_id").get<std::string>();
    v.strategy_id = j.at("strategy_id").get<std::string>();
    v.nodes = j.at("nodes").get<std::vector<NodeRef>>();
    v.seed_offset = j.value("seed_offset", std::int64_t{0});
}

void to_json(json& j, const MetaPrompt& v) {
    j = json{{"prompt_id", v.prompt_id},
             {"mix_id", v.mix_id},
             {"text", v.text},
             {"complexified", v.complexified},
             {"generation_mode", to_string(v.generation_mode)},
             {"sibling_index", v.sibling_index}};
}

void from_json(const json& j, MetaPrompt& v) {
    v.prompt_id = j.at("prompt_id").get<std::string>();
    v.mix_id = j.at("mix_id").get<std::string>();
    v.text = j.at("text").get<std::string>();
    v.complexified = j.value("complexified", false);
    v.generation_mode = generation_mode_from_string(j.value("generation_mode", "independent"));
    v.sibling_index = j.value("sibling_index", 0);
}

void to_json(json& j, const AuditStep& v) {
    j = json{{"step_kind", to_string(v.step_kind)}, {"model_call_ids", v.model_call_ids}};
    set_optional(j, "verdict", v.verdict);
    set_optional(j, "explanation", v.explanation);
    set_optional(j, "ref", v.ref);
}

void from_json(const json& j, AuditStep& v) {
    v.step_kind = step_kind_from_string(j.at("step_kind").get<std::string>());
    v.model_call_ids = j.value("model_call_ids", std::vector<std::string>{});
    get_optional(j, "verdict", v.verdict);
    get_optional(j, "explanation", v.explanation);
    get_optional(j, "ref", v.ref);
}

void to_json(json& j, const AuditTrace& v) { j = v.steps; }

void from_json(const json& j, AuditTrace& v) { v.steps = j.get<std::vector<AuditStep>>(); }

void to_json(json& j, const DataPoint& v) {
    j = json{{"point_id", v.point_id},
             {"task_input", v.task_input},
             {"task_output", v.task_output},
             {"answer_kind", to_string(v.answer_kind)},
             {"provenance", v.provenance}};
    set_optional(j, "complexity_elo", v.complexity_elo);
    set_optional(j, "taxonomy_assignment", v.taxonomy_assignment);
}

void from_json(const json& j, DataPoint& v) {
    v.point_id = j.at("point_id").get<std::string>();
    v.task_input = j.at("task_input").get<std::string>();
    v.task_output = j.at("task_output").get<std::string>();
    v.answer_kind = answer_kind_from_string(j.value("answer_kind", "free-form"));
    v.provenance = j.value("provenance", AuditTrace{});
    get_optional(j, "complexity_elo", v.complexity_elo);
    get_optional(j, "taxonomy_assignment", v.taxonomy_assignment);
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in.is_open()) raise(ErrorKind::io, "cannot open '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out.is_open()) throw IoError("cannot open '" + path.string() + "'", 0);
    out.write(content.data(), std::streamsize(content.size()));
    if (!out.good()) throw IoError("write failed for '" + path.string() + "'", 0);
}

std::string file_sha256(const std::filesystem::path& path) {
    return sha256_hex(read_file(path));
}

}  // namespace foundry
