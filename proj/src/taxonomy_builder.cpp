#include "foundry/taxonomy_builder.hpp"

#include <map>
#include <set>

#include "foundry/errors.hpp"
#include "foundry/prompts.hpp"
#include "foundry/worker_pool.hpp"

namespace foundry::taxonomy {

using nlohmann::json;

std::vector<FactorProposal> propose_factors(Gateway& gateway, const DatasetSpec& spec) {
    if (spec.description.empty()) {
        raise(ErrorKind::precondition, "propose_factors needs a nonempty description");
    }

    if (!spec.factors.empty()) {
        std::vector<FactorProposal> out;
        for (const auto& factor : spec.factors) {
            out.push_back({factor.factor_name, "pre-listed in the dataset spec", true,
                           FactorProposal::DecidedBy::human});
        }
        return out;
    }

    auto fetch_proposals = [&](bool second_attempt) {
        std::string prompt = factor_proposal_prompt(spec);
        if (second_attempt) {
            prompt += "\n(Second attempt: the factor list must not be empty.)";
        }
        ModelResponse resp = gateway.complete(make_request(Purpose::propose_factors, prompt, "factors_list"));
        std::vector<FactorProposal> proposals;
        std::set<std::string> seen;
        for (const auto& f : resp.parsed->at("factors")) {
            FactorProposal p;
            p.factor_name = f.at("name").get<std::string>();
            p.rationale = f.value("rationale", "");
            if (p.factor_name.empty()) continue;
            if (!seen.insert(normalize_label(p.factor_name)).second) continue;
            proposals.push_back(std::move(p));
        }
        return proposals;
    };

    std::vector<FactorProposal> proposals = fetch_proposals(false);
    if (proposals.empty()) proposals = fetch_proposals(true);
    if (proposals.empty()) {
        raise(ErrorKind::empty_proposal, "model returned zero factors after retries");
    }

    std::vector<std::string> names;
    for (const auto& p : proposals) names.push_back(p.factor_name);
    ModelResponse verdicts = gateway.complete(
        make_request(Purpose::critique_factors, factor_critique_prompt(spec, names), "factor_verdicts"));

    std::map<std::string, bool> decisions;
    for (const auto& d : verdicts.parsed->at("decisions")) {
        decisions[normalize_label(d.at("name").get<std::string>())] = d.at("accept").get<bool>();
    }
    for (auto& p : proposals) {
        auto it = decisions.find(normalize_label(p.factor_name));
        p.accepted = it == decisions.end() ? true : it->second;  // the critic only vetoes
        p.decided_by = FactorProposal::DecidedBy::model;
    }

    bool any_accepted = false;
    for (const auto& p : proposals) any_accepted |= p.accepted;
    if (!any_accepted) raise(ErrorKind::empty_proposal, "critic rejected every proposed factor");
    return proposals;
}

namespace {

std::vector<std::string> labels_of(const std::vector<TaxonomyNode>& nodes) {
    std::vector<std::string> out;
    out.reserve(nodes.size());
    for (const auto& n : nodes) out.push_back(n.label);
    return out;
}

}  // namespace

std::vector<RawNode> propose_children(Gateway& gateway, const ExpansionContext& ctx, int n_samples) {
    if (n_samples < 1) raise(ErrorKind::precondition, "propose_children needs n_samples >= 1");

    std::string base_prompt = child_proposal_prompt(
        ctx.instructions, ctx.sample_refs, ctx.factor, ctx.node.label, ctx.node.description,
        ctx.node.level + 1, labels_of(ctx.ancestors), labels_of(ctx.siblings), ctx.plan);

    std::vector<RawNode> pooled;
    int malformed = 0;
    for (int i = 0; i < n_samples; ++i) {
        // each best-of sample is an independent draw with its own call id
        std::string prompt = base_prompt + "\n(Proposal sample " + std::to_string(i + 1) + " of " +
                             std::to_string(n_samples) + ".)";
        try {
            ModelResponse resp =
                gateway.complete(make_request(Purpose::propose_children, prompt, "children_list"));
            for (const auto& c : resp.parsed->at("children")) {
                pooled.push_back({c.at("label").get<std::string>(), c.value("description", "")});
            }
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::malformed_output) throw;
            ++malformed;
        }
    }
    if (malformed == n_samples) {
        raise(ErrorKind::malformed_output, "all " + std::to_string(n_samples) +
                                               " proposal calls were malformed for node '" +
                                               ctx.node.label + "'");
    }
    return pooled;
}

CritiqueOutcome critique_children(Gateway& gateway, const ExpansionContext& ctx,
                                  const std::vector<RawNode>& raw, int max_children) {
    if (raw.empty()) raise(ErrorKind::precondition, "critique_children needs a nonempty proposal list");

    json raw_json = json::array();
    std::set<std::string> pre_critique;
    for (const auto& node : raw) {
        raw_json.push_back({{"label", node.label}, {"description", node.description}});
        pre_critique.insert(normalize_label(node.label));
    }
    std::string prompt = child_critique_prompt(ctx.instructions, ctx.factor, ctx.node.label,
                                               labels_of(ctx.ancestors), raw_json);

    CritiqueOutcome outcome;
    for (int attempt = 0; attempt < 2; ++attempt) {
        std::string effective = prompt;
        if (attempt == 1) {
            effective += "\n(Second attempt: return an empty list only if the node is truly a leaf.)";
        }
        ModelResponse resp =
            gateway.complete(make_request(Purpose::critique_children, effective, "children_critique"));

        std::vector<RawNode> refined;
        std::set<std::string> seen;
        for (const auto& c : resp.parsed->at("children")) {
            RawNode node{c.at("label").get<std::string>(), c.value("description", "")};
            if (node.label.empty()) continue;
            if (!seen.insert(normalize_label(node.label)).second) continue;
            refined.push_back(std::move(node));
            if (int(refined.size()) == max_children) break;
        }

        std::vector<AuditStep> steps;
        if (resp.parsed->contains("edits")) {
            for (const auto& e : resp.parsed->at("edits")) {
                std::string op = e.at("op").get<std::string>();
                std::string label = e.at("label").get<std::string>();
                if (op != "add" && pre_critique.count(normalize_label(label)) == 0) {
                    continue;  // edit must reference a pre-critique label
                }
                AuditStep step;
                step.step_kind = StepKind::critique;
                step.model_call_ids = {resp.call_id};
                step.explanation = op + ": " + label +
                                   (e.contains("detail") && e.at("detail").is_string()
                                        ? " (" + e.at("detail").get<std::string>() + ")"
                                        : "");
                step.ref = ctx.node.node_id;
                steps.push_back(std::move(step));
            }
        }

        if (!refined.empty() || attempt == 1) {
            if (refined.empty()) {
                AuditStep step;
                step.step_kind = StepKind::critique;
                step.model_call_ids = {resp.call_id};
                step.explanation = "critic removed all children twice; node finalized as a leaf";
                step.ref = ctx.node.node_id;
                steps.push_back(std::move(step));
            }
            outcome.children = std::move(refined);
            outcome.steps = std::move(steps);
            return outcome;
        }
    }
    return outcome;  // unreachable
}

PlanOutcome plan_next_level(Gateway& gateway, const DatasetSpec& spec, const std::string& factor,
                            int next_level, const std::vector<RawNode>& level_nodes,
                            const std::string& previous_plan) {
    if (level_nodes.empty()) raise(ErrorKind::precondition, "plan_next_level needs level nodes");

    std::vector<std::string> labels;
    for (const auto& n : level_nodes) labels.push_back(n.label);
    try {
        ModelResponse resp = gateway.complete(make_request(
            Purpose::plan_level, level_plan_prompt(spec.description, factor, next_level, labels),
            "plan_text"));
        std::string plan = resp.parsed->at("plan").get<std::string>();
        if (!plan.empty()) return {plan, std::nullopt};
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::malformed_output && e.kind() != ErrorKind::transport &&
            e.kind() != ErrorKind::missing_fixture) {
            throw;
        }
    }
    AuditStep warning;
    warning.step_kind = StepKind::critique;
    warning.verdict = false;
    warning.explanation = "plan generation failed for level " + std::to_string(next_level) +
                          "; previous plan reused";
    return {previous_plan, warning};
}

BuildResult expand_taxonomy(Gateway& gateway, const DatasetSpec& spec, const std::string& factor,
                            int depth, const BuilderOptions& options) {
    if (depth < 1) raise(ErrorKind::precondition, "expand_taxonomy needs depth >= 1");

    Taxonomy tax;
    tax.factor_name = factor;
    tax.depth = depth;

    TaxonomyNode root;
    root.node_id = "n0";
    root.label = factor;
    root.description = "factor of variation";
    root.level = 0;
    tax.nodes.push_back(root);

    AuditTrace audit;
    {
        AuditStep step;
        step.step_kind = StepKind::factor;
        step.ref = factor;
        step.explanation = "expanding factor '" + factor + "' to depth " + std::to_string(depth);
        audit.add(std::move(step));
    }

    std::string plan = "Expand based on the dataset description and factor '" + factor + "'.";

    for (int level = 1; level <= depth; ++level) {
        std::vector<std::size_t> parent_indices;
        for (std::size_t i = 0; i < tax.nodes.size(); ++i) {
            if (tax.nodes[i].level == level - 1) parent_indices.push_back(i);
        }

        std::vector<CritiqueOutcome> outcomes(parent_indices.size());
        parallel_for(parent_indices.size(), options.workers, [&](std::size_t i) {
            const TaxonomyNode& parent = tax.nodes[parent_indices[i]];

            ExpansionContext ctx;
            ctx.instructions = spec.description;
            ctx.sample_refs = spec.sample_refs;
            ctx.factor = factor;
            ctx.node = parent;
            ctx.plan = plan;
            for (const TaxonomyNode* cursor = &parent; cursor->parent_id.has_value();) {
                const TaxonomyNode* up = tax.find(*cursor->parent_id);
                ctx.ancestors.insert(ctx.ancestors.begin(), *up);
                cursor = up;
            }
            if (parent.parent_id.has_value()) {
                const TaxonomyNode* grandparent = tax.find(*parent.parent_id);
                for (const auto& sibling_id : grandparent->children) {
                    if (sibling_id == parent.node_id) continue;
                    ctx.siblings.push_back(*tax.find(sibling_id));
                }
            }

            std::vector<RawNode> raw = propose_children(gateway, ctx, options.best_of);
            if (!raw.empty()) {
                outcomes[i] = critique_children(gateway, ctx, raw, options.max_children);
            }
        });

        // barrier: materialize this level before anything at the next one starts
        std::vector<RawNode> level_nodes;
        for (std::size_t i = 0; i < parent_indices.size(); ++i) {
            TaxonomyNode& parent = tax.nodes[parent_indices[i]];
            std::set<std::string> used;
            for (const auto& child : outcomes[i].children) {
                if (!used.insert(normalize_label(child.label)).second) continue;
                TaxonomyNode node;
                node.node_id = "n" + std::to_string(tax.nodes.size());
                node.label = child.label;
                node.description = child.description;
                node.parent_id = parent.node_id;
                node.level = level;
                parent.children.push_back(node.node_id);
                tax.nodes.push_back(std::move(node));
                level_nodes.push_back(child);
            }
            for (auto& step : outcomes[i].steps) audit.add(std::move(step));
        }

        if (level_nodes.empty()) {
            raise(ErrorKind::degenerate_taxonomy,
                  "level " + std::to_string(level) + " of factor '" + factor + "' produced no nodes");
        }

        if (level < depth && options.plan_enabled) {
            PlanOutcome planned = plan_next_level(gateway, spec, factor, level + 1, level_nodes, plan);
            plan = planned.plan;
            if (planned.warning.has_value()) audit.add(*planned.warning);
        }
    }

    tax.snapshot_id = compute_snapshot_id(tax);
    validate(tax);
    return {std::move(tax), std::move(audit)};
}

}  // namespace foundry::taxonomy
