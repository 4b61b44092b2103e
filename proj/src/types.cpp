#include "foundry/types.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

#include "foundry/errors.hpp"
#include "foundry/sha256.hpp"

namespace foundry {

const char* to_string(DepthMode mode) {
    return mode == DepthMode::top_level_only ? "top-level-only" : "full-depth";
}

const char* to_string(GenerationMode mode) {
    return mode == GenerationMode::independent ? "independent" : "sequential-context";
}

const char* to_string(AnswerKind kind) {
    return kind == AnswerKind::free_form ? "free-form" : "closed-choice";
}

const char* to_string(StepKind kind) {
    switch (kind) {
        case StepKind::factor: return "factor";
        case StepKind::sample: return "sample";
        case StepKind::meta_prompt: return "meta_prompt";
        case StepKind::complexify: return "complexify";
        case StepKind::generate: return "generate";
        case StepKind::critique: return "critique";
        case StepKind::refine: return "refine";
        case StepKind::reject: return "reject";
        case StepKind::accept: return "accept";
    }
    return "generate";
}

DepthMode depth_mode_from_string(std::string_view s) {
    if (s == "top-level-only") return DepthMode::top_level_only;
    if (s == "full-depth") return DepthMode::full_depth;
    raise(ErrorKind::config, "unknown taxonomy_depth_mode '" + std::string(s) + "'");
}

GenerationMode generation_mode_from_string(std::string_view s) {
    if (s == "independent") return GenerationMode::independent;
    if (s == "sequential-context") return GenerationMode::sequential_context;
    raise(ErrorKind::config, "unknown generation_mode '" + std::string(s) + "'");
}

AnswerKind answer_kind_from_string(std::string_view s) {
    if (s == "free-form") return AnswerKind::free_form;
    if (s == "closed-choice") return AnswerKind::closed_choice;
    raise(ErrorKind::config, "unknown answer_kind '" + std::string(s) + "'");
}

StepKind step_kind_from_string(std::string_view s) {
    static const std::map<std::string_view, StepKind> table = {
        {"factor", StepKind::factor},       {"sample", StepKind::sample},
        {"meta_prompt", StepKind::meta_prompt}, {"complexify", StepKind::complexify},
        {"generate", StepKind::generate},   {"critique", StepKind::critique},
        {"refine", StepKind::refine},       {"reject", StepKind::reject},
        {"accept", StepKind::accept},
    };
    auto it = table.find(s);
    if (it == table.end()) raise(ErrorKind::config, "unknown step_kind '" + std::string(s) + "'");
    return it->second;
}

SystemVersion preset_system_version(std::string_view name) {
    std::string key;
    for (char c : name) {
        if (c == ' ' || c == '+' || c == '-') {
            if (!key.empty() && key.back() != '_') key.push_back('_');
        } else {
            key.push_back(char(std::tolower(static_cast<unsigned char>(c))));
        }
    }
    if (key == "baseline") return {DepthMode::top_level_only, false, false};
    if (key == "local") return {DepthMode::top_level_only, true, false};
    if (key == "global") return {DepthMode::full_depth, false, false};
    if (key == "local_global") return {DepthMode::full_depth, true, false};
    if (key == "full" || key == "local_global_critique") return {DepthMode::full_depth, true, true};
    raise(ErrorKind::config, "unknown preset '" + std::string(name) + "'");
}

std::vector<std::string> preset_names() {
    return {"baseline", "local", "global", "local_global", "full"};
}

void validate(const DatasetSpec& spec) {
    if (spec.description.empty()) raise(ErrorKind::config, "dataset description is empty");
    if (spec.target_size < 1) raise(ErrorKind::config, "target_size must be >= 1");
    if (spec.complexify_fraction < 0.0 || spec.complexify_fraction > 1.0) {
        raise(ErrorKind::config, "complexify_fraction must lie in [0, 1]");
    }
    if (spec.scenarios_per_mix < 1) raise(ErrorKind::config, "scenarios_per_mix must be >= 1");
    std::set<std::string> names;
    for (const auto& factor : spec.factors) {
        if (factor.depth < 1) {
            raise(ErrorKind::config, "factor '" + factor.factor_name + "' has depth < 1");
        }
        if (!names.insert(factor.factor_name).second) {
            raise(ErrorKind::config, "duplicate factor name '" + factor.factor_name + "'");
        }
    }
}

const TaxonomyNode* Taxonomy::find(std::string_view node_id) const {
    for (const auto& node : nodes) {
        if (node.node_id == node_id) return &node;
    }
    return nullptr;
}

std::vector<const TaxonomyNode*> Taxonomy::at_level(int level) const {
    std::vector<const TaxonomyNode*> out;
    for (const auto& node : nodes) {
        if (node.level == level) out.push_back(&node);
    }
    return out;
}

int Taxonomy::max_level() const {
    int m = 0;
    for (const auto& node : nodes) m = std::max(m, node.level);
    return m;
}

std::string normalize_label(std::string_view label) {
    std::string out;
    out.reserve(label.size());
    bool pending_space = false;
    for (char raw : label) {
        unsigned char c = static_cast<unsigned char>(raw);
        if (std::isspace(c)) {
            pending_space = !out.empty();
            continue;
        }
        if (pending_space) {
            out.push_back(' ');
            pending_space = false;
        }
        out.push_back(char(std::tolower(c)));
    }
    return out;
}

namespace {

void serialize_subtree(const Taxonomy& taxonomy, const TaxonomyNode& node, std::string& out) {
    out.push_back('(');
    out.append(normalize_label(node.label));
    std::vector<const TaxonomyNode*> children;
    for (const auto& child_id : node.children) {
        if (const TaxonomyNode* child = taxonomy.find(child_id)) children.push_back(child);
    }
    std::stable_sort(children.begin(), children.end(), [](const TaxonomyNode* a, const TaxonomyNode* b) {
        return normalize_label(a->label) < normalize_label(b->label);
    });
    for (const TaxonomyNode* child : children) serialize_subtree(taxonomy, *child, out);
    out.push_back(')');
}

}  // namespace

std::string compute_snapshot_id(const Taxonomy& taxonomy) {
    std::string canonical = normalize_label(taxonomy.factor_name);
    canonical.push_back('|');
    if (!taxonomy.nodes.empty()) serialize_subtree(taxonomy, taxonomy.root(), canonical);
    return sha256_hex(canonical).substr(0, 16);
}

void validate(const Taxonomy& taxonomy) {
    if (taxonomy.nodes.empty()) raise(ErrorKind::config, "taxonomy has no nodes");
    if (taxonomy.depth < 1) raise(ErrorKind::config, "taxonomy depth must be >= 1");

    const TaxonomyNode& root = taxonomy.root();
    if (root.level != 0 || root.parent_id.has_value()) {
        raise(ErrorKind::config, "nodes[0] must be a level-0 root without parent");
    }

    std::set<std::string> ids;
    for (const auto& node : taxonomy.nodes) {
        if (!ids.insert(node.node_id).second) {
            raise(ErrorKind::config, "duplicate node_id '" + node.node_id + "'");
        }
    }

    std::size_t reachable = 0;
    for (const auto& node : taxonomy.nodes) {
        if (node.level > taxonomy.depth) {
            raise(ErrorKind::config, "node '" + node.node_id + "' deeper than declared depth");
        }
        if (&node != &root) {
            if (!node.parent_id.has_value()) {
                raise(ErrorKind::config, "non-root node '" + node.node_id + "' has no parent (multiple roots?)");
            }
            const TaxonomyNode* parent = taxonomy.find(*node.parent_id);
            if (parent == nullptr) {
                raise(ErrorKind::config, "node '" + node.node_id + "' references missing parent");
            }
            if (node.level != parent->level + 1) {
                raise(ErrorKind::config, "node '" + node.node_id + "' level != parent level + 1");
            }
        }
        std::set<std::string> sibling_labels;
        for (const auto& child_id : node.children) {
            const TaxonomyNode* child = taxonomy.find(child_id);
            if (child == nullptr) {
                raise(ErrorKind::config, "node '" + node.node_id + "' references missing child '" + child_id + "'");
            }
            if (!child->parent_id.has_value() || *child->parent_id != node.node_id) {
                raise(ErrorKind::config, "child '" + child_id + "' does not point back to its parent");
            }
            if (!sibling_labels.insert(normalize_label(child->label)).second) {
                raise(ErrorKind::config, "duplicate sibling label under node '" + node.node_id + "'");
            }
            ++reachable;
        }
    }
    // acyclic + single root: every non-root node reachable exactly once as a child
    if (reachable != taxonomy.nodes.size() - 1) {
        raise(ErrorKind::config, "taxonomy is not a tree rooted at nodes[0]");
    }
}

}  // namespace foundry
