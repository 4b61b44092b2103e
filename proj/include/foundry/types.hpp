#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace foundry {

enum class DepthMode { top_level_only, full_depth };
enum class GenerationMode { independent, sequential_context };
enum class AnswerKind { free_form, closed_choice };
enum class StepKind { factor, sample, meta_prompt, complexify, generate, critique, refine, reject, accept };

const char* to_string(DepthMode mode);
const char* to_string(GenerationMode mode);
const char* to_string(AnswerKind kind);
const char* to_string(StepKind kind);
DepthMode depth_mode_from_string(std::string_view s);
GenerationMode generation_mode_from_string(std::string_view s);
AnswerKind answer_kind_from_string(std::string_view s);
StepKind step_kind_from_string(std::string_view s);

// Component toggles for one system configuration.
struct SystemVersion {
    DepthMode taxonomy_depth_mode = DepthMode::top_level_only;
    bool meta_prompting = false;
    bool critic_steps = false;

    bool operator==(const SystemVersion&) const = default;
};

// Named presets: baseline, local, global, local_global, full.
SystemVersion preset_system_version(std::string_view name);
std::vector<std::string> preset_names();

struct FactorSpec {
    std::string factor_name;
    int depth = 1;

    bool operator==(const FactorSpec&) const = default;
};

// Everything a generation run needs to know about the target dataset.
struct DatasetSpec {
    std::string description;
    std::vector<std::string> sample_refs;  // optional reference records
    std::vector<FactorSpec> factors;
    int target_size = 1;
    double complexify_fraction = 0.0;
    int scenarios_per_mix = 1;
    SystemVersion system_flags;
    std::uint64_t seed = 0;

    bool operator==(const DatasetSpec&) const = default;
};

void validate(const DatasetSpec& spec);

struct TaxonomyNode {
    std::string node_id;
    std::string label;
    std::string description;
    std::optional<std::string> parent_id;
    int level = 0;  // root = 0
    std::vector<std::string> children;  // ordered child node ids

    bool operator==(const TaxonomyNode&) const = default;
};

// One factor expanded into a tree. nodes[0] is always the root.
struct Taxonomy {
    std::string factor_name;
    int depth = 1;
    std::string snapshot_id;
    std::vector<TaxonomyNode> nodes;

    const TaxonomyNode& root() const { return nodes.front(); }
    const TaxonomyNode* find(std::string_view node_id) const;
    std::vector<const TaxonomyNode*> at_level(int level) const;
    int max_level() const;

    bool operator==(const Taxonomy&) const = default;
};

// lowercase, trimmed, inner whitespace collapsed
std::string normalize_label(std::string_view label);

// Content hash over the canonical pre-order serialization (normalized labels,
// siblings ordered by normalized label). Insensitive to node ids and to the
// order in which siblings were generated.
std::string compute_snapshot_id(const Taxonomy& taxonomy);

void validate(const Taxonomy& taxonomy);

struct NodeRef {
    std::string snapshot_id;
    std::string node_id;

    bool operator==(const NodeRef&) const = default;
    bool operator<(const NodeRef& other) const {
        return snapshot_id != other.snapshot_id ? snapshot_id < other.snapshot_id
                                                : node_id < other.node_id;
    }
};

// One sampled node-set: the requirements of a data point.
struct Mix {
    std::string mix_id;
    std::string strategy_id;
    std::vector<NodeRef> nodes;  // at most one node per taxonomy
    std::int64_t seed_offset = 0;

    bool operator==(const Mix&) const = default;
};

struct MetaPrompt {
    std::string prompt_id;
    std::string mix_id;
    std::string text;
    bool complexified = false;
    GenerationMode generation_mode = GenerationMode::independent;
    int sibling_index = 0;  // position among the K jointly generated scenarios

    bool operator==(const MetaPrompt&) const = default;
};

struct AuditStep {
    StepKind step_kind = StepKind::generate;
    std::vector<std::string> model_call_ids;
    std::optional<bool> verdict;
    std::optional<std::string> explanation;
    std::optional<std::string> ref;  // id of the record this step points at

    bool operator==(const AuditStep&) const = default;
};

// Append-only provenance chain; a finished trace ends in accept or reject.
struct AuditTrace {
    std::vector<AuditStep> steps;

    void add(AuditStep step) { steps.push_back(std::move(step)); }
    bool finished() const {
        return !steps.empty() && (steps.back().step_kind == StepKind::accept ||
                                  steps.back().step_kind == StepKind::reject);
    }
    bool accepted() const {
        return !steps.empty() && steps.back().step_kind == StepKind::accept;
    }

    bool operator==(const AuditTrace&) const = default;
};

struct DataPoint {
    std::string point_id;
    std::string task_input;
    std::string task_output;
    AnswerKind answer_kind = AnswerKind::free_form;
    AuditTrace provenance;
    std::optional<double> complexity_elo;
    std::optional<NodeRef> taxonomy_assignment;

    bool operator==(const DataPoint&) const = default;
};

}  // namespace foundry
