#pragma once

#include <optional>
#include <string>
#include <vector>

#include "foundry/gateway.hpp"
#include "foundry/types.hpp"

namespace foundry::taxonomy {

struct RawNode {
    std::string label;
    std::string description;

    bool operator==(const RawNode&) const = default;
};

// Reasoning context for one node expansion: the node, its ancestors
// (root-first), its already-finalized siblings, and the shared level plan.
struct ExpansionContext {
    std::string instructions;
    std::vector<std::string> sample_refs;
    std::string factor;
    TaxonomyNode node;
    std::vector<TaxonomyNode> ancestors;
    std::vector<TaxonomyNode> siblings;
    std::string plan;
};

struct FactorProposal {
    std::string factor_name;
    std::string rationale;
    bool accepted = false;
    enum class DecidedBy { model, human } decided_by = DecidedBy::model;

    bool operator==(const FactorProposal&) const = default;
};

struct BuilderOptions {
    int best_of = 3;          // proposal calls per node
    bool plan_enabled = true;
    int max_children = 25;    // post-critique cap, critic orders by relevance
    int workers = 4;
};

struct CritiqueOutcome {
    std::vector<RawNode> children;
    std::vector<AuditStep> steps;
};

struct PlanOutcome {
    std::string plan;
    std::optional<AuditStep> warning;  // set when the model failed and the previous plan was reused
};

struct BuildResult {
    Taxonomy taxonomy;
    AuditTrace audit;
};

std::vector<FactorProposal> propose_factors(Gateway& gateway, const DatasetSpec& spec);

// Union of n_samples independent proposal calls; duplicates are retained for
// the critic to merge.
std::vector<RawNode> propose_children(Gateway& gateway, const ExpansionContext& ctx, int n_samples);

CritiqueOutcome critique_children(Gateway& gateway, const ExpansionContext& ctx,
                                  const std::vector<RawNode>& raw, int max_children = 25);

PlanOutcome plan_next_level(Gateway& gateway, const DatasetSpec& spec, const std::string& factor,
                            int next_level, const std::vector<RawNode>& level_nodes,
                            const std::string& previous_plan);

// Level-synchronous breadth-first expansion: propose (best-of-N), critique,
// then plan the next level from everything the current level produced.
BuildResult expand_taxonomy(Gateway& gateway, const DatasetSpec& spec, const std::string& factor,
                            int depth, const BuilderOptions& options = {});

}  // namespace foundry::taxonomy
