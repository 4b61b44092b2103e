#include "foundry/prompts.hpp"

#include <sstream>

namespace foundry {

using nlohmann::json;

std::string render_prompt(const std::string& instruction, const json& context,
                          const std::string& reply_shape) {
    std::ostringstream out;
    out << instruction << "\n\nContext:\n```json\n" << context.dump(2) << "\n```\n\n"
        << "Reply with exactly one fenced ```json block shaped like:\n" << reply_shape << "\n";
    return out.str();
}

std::string taxonomy_outline(const Taxonomy& taxonomy) {
    std::ostringstream out;
    // depth-first, children in stored order
    std::vector<const TaxonomyNode*> stack{&taxonomy.root()};
    while (!stack.empty()) {
        const TaxonomyNode* node = stack.back();
        stack.pop_back();
        for (int i = 0; i < node->level; ++i) out << "  ";
        out << node->node_id << ": " << node->label;
        if (!node->description.empty()) out << " -- " << node->description;
        out << "\n";
        for (auto it = node->children.rbegin(); it != node->children.rend(); ++it) {
            if (const TaxonomyNode* child = taxonomy.find(*it)) stack.push_back(child);
        }
    }
    return out.str();
}

std::string factor_proposal_prompt(const DatasetSpec& spec) {
    json ctx = {{"description", spec.description}, {"sample_refs", spec.sample_refs}};
    return render_prompt(
        "Identify the prime factors of variation for the dataset described below. "
        "A factor is a top-level axis along which data points differ (for example a subject "
        "area, a format, or an audience). Propose between 2 and 8 factors.",
        ctx, R"({"factors": [{"name": "...", "rationale": "..."}]})");
}

std::string factor_critique_prompt(const DatasetSpec& spec, const std::vector<std::string>& proposed) {
    json ctx = {{"description", spec.description}, {"proposed_factors", proposed}};
    return render_prompt(
        "Review the proposed factors for the dataset below. Accept factors that are distinct, "
        "relevant axes of variation; reject duplicates and factors that do not shape the data.",
        ctx, R"({"decisions": [{"name": "...", "accept": true, "rationale": "..."}]})");
}

std::string child_proposal_prompt(const std::string& description,
                                  const std::vector<std::string>& sample_refs,
                                  const std::string& factor, const std::string& node_label,
                                  const std::string& node_description, int child_level,
                                  const std::vector<std::string>& ancestors,
                                  const std::vector<std::string>& siblings, const std::string& plan) {
    json ctx = {{"description", description}, {"factor", factor},       {"node", node_label},
                {"node_description", node_description}, {"child_level", child_level},
                {"ancestors", ancestors},     {"siblings", siblings},   {"plan", plan}};
    if (!sample_refs.empty()) ctx["sample_refs"] = sample_refs;
    return render_prompt(
        "Propose child subcategories for the taxonomy node below, one level more specific than "
        "the node itself. Cover the node's concept space broadly, including edge cases.",
        ctx, R"({"children": [{"label": "...", "description": "..."}]})");
}

std::string child_critique_prompt(const std::string& description, const std::string& factor,
                                  const std::string& node_label,
                                  const std::vector<std::string>& ancestors, const json& raw_children) {
    json ctx = {{"description", description},
                {"factor", factor},
                {"node", node_label},
                {"ancestors", ancestors},
                {"proposed_children", raw_children}};
    return render_prompt(
        "Act as a critic for the proposed taxonomy children below. Improve completeness, soundness, "
        "and specificity by adding, removing, merging, or editing entries. Return the refined list "
        "ordered by relevance, and record each change in 'edits' with op one of add/remove/merge/edit.",
        ctx,
        R"({"children": [{"label": "...", "description": "..."}], "edits": [{"op": "merge", "label": "...", "detail": "..."}]})");
}

std::string level_plan_prompt(const std::string& description, const std::string& factor, int next_level,
                              const std::vector<std::string>& level_labels) {
    json ctx = {{"description", description},
                {"factor", factor},
                {"next_level", next_level},
                {"current_level_nodes", level_labels}};
    return render_prompt(
        "All nodes of the current taxonomy level are listed below. Write a short plan for expanding "
        "the next level so that independent expansions keep a similar degree of granularity.",
        ctx, R"({"plan": "..."})");
}

std::string strategy_plan_prompt(const DatasetSpec& spec, const json& taxonomy_summaries) {
    json ctx = {{"description", spec.description}, {"taxonomies", taxonomy_summaries}};
    return render_prompt(
        "Formulate sampling strategies for the taxonomies below. A strategy names the subset of "
        "taxonomies that are sampled together and a positive weight; group compatible taxonomies "
        "and keep incompatible combinations apart, explaining any exclusion. Every taxonomy must "
        "appear in at least one strategy. Refer to taxonomies by factor name.",
        ctx,
        R"({"strategies": [{"name": "...", "taxonomies": ["factor name"], "weight": 1.0, "exclusion_rationale": "..."}]})");
}

std::string meta_prompt_prompt(const std::string& description, const std::vector<std::string>& requirements,
                               int scenario_count, const std::vector<std::string>& previous) {
    json ctx = {{"description", description},
                {"requirements", requirements},
                {"scenario_count", scenario_count}};
    if (!previous.empty()) ctx["previous_scenarios"] = previous;
    std::string instruction =
        "Write " + std::to_string(scenario_count) +
        " diverse scenario instructions (meta prompts) for generating one data point each. Every "
        "scenario must honor every requirement listed in the context. Make the scenarios clearly "
        "distinct from each other.";
    if (!previous.empty()) {
        instruction +=
            " Earlier scenarios for the same requirements are listed under 'previous_scenarios'; "
            "produce scenarios that differ from them.";
    }
    return render_prompt(instruction, ctx, R"({"scenarios": ["..."]})");
}

std::string complexify_prompt(const std::string& description, const std::string& meta_text) {
    json ctx = {{"description", description}, {"meta_prompt", meta_text}};
    return render_prompt(
        "Increase the complexity of the scenario instruction below by injecting constraints or "
        "edge cases, while keeping every original requirement intact.",
        ctx, R"({"text": "..."})");
}

std::string generation_prompt(const std::string& description, const std::vector<std::string>& requirements,
                              const std::string& meta_text) {
    json ctx = {{"description", description}, {"requirements", requirements}};
    if (!meta_text.empty()) ctx["meta_prompt"] = meta_text;
    return render_prompt(
        "Produce one data point for the dataset described in the context. Follow the scenario "
        "instruction when present, otherwise work directly from the requirements. If the task "
        "calls for answer options, return 'choices' (including distractors) plus the single "
        "correct 'answer'; otherwise return 'output'.",
        ctx,
        R"({"input": "...", "output": "..."} or {"input": "...", "choices": ["..."], "answer": "..."})");
}

std::string requirements_critique_prompt(const std::vector<std::string>& requirements,
                                         const std::string& meta_text, const std::string& task_input,
                                         const std::string& task_output) {
    json ctx = {{"requirements", requirements},
                {"task_input", task_input},
                {"task_output", task_output}};
    if (!meta_text.empty()) ctx["meta_prompt"] = meta_text;
    std::string instruction =
        "Check whether the draft data point satisfies every requirement below; check each one "
        "explicitly:";
    for (const auto& r : requirements) instruction += "\n- " + r;
    instruction +=
        "\nReturn verdict=true only if all requirements and the scenario instruction are met; "
        "otherwise verdict=false with an explanation naming what failed.";
    return render_prompt(instruction, ctx, R"({"verdict": true, "explanation": "..."})");
}

std::string refine_prompt(const std::vector<std::string>& requirements, const std::string& meta_text,
                          const std::string& task_input, const std::string& task_output,
                          const std::string& explanation) {
    json ctx = {{"requirements", requirements},
                {"task_input", task_input},
                {"task_output", task_output},
                {"critique", explanation}};
    if (!meta_text.empty()) ctx["meta_prompt"] = meta_text;
    return render_prompt(
        "Revise the draft data point so that it resolves the critique while keeping all "
        "requirements satisfied.",
        ctx,
        R"({"input": "...", "output": "..."} or {"input": "...", "choices": ["..."], "answer": "..."})");
}

std::string double_critic_prompt(const std::string& task_input, const std::string& task_output,
                                 bool incorrectness_side) {
    json ctx = {{"task_input", task_input}, {"task_output", task_output}};
    const char* instruction =
        incorrectness_side
            ? "Is the provided answer incorrect for the task input? Reply verdict=true if the "
              "answer is incorrect, verdict=false if it is correct."
            : "Is the provided answer correct for the task input? Reply verdict=true if the "
              "answer is correct, verdict=false if it is incorrect.";
    return render_prompt(instruction, ctx, R"({"verdict": true, "explanation": "..."})");
}

std::string classification_prompt(const std::string& own_kind, const json& branch_nodes,
                                  const std::string& own_outline, const std::string& opposite_outline) {
    json ctx = {{"side", own_kind},
                {"branch_nodes", branch_nodes},
                {"own_taxonomy", own_outline},
                {"opposite_taxonomy", opposite_outline}};
    return render_prompt(
        "Classify each branch node against the opposite taxonomy. Categories: GoodOverlapping "
        "(well-defined, relevant, and a semantically equivalent node exists in the opposite "
        "taxonomy; set matched_node to that node id), GoodExclusive (well-defined and relevant "
        "but no equivalent opposite node), Redundant (duplicates another node of its own "
        "taxonomy), Bad (irrelevant, ill-defined, or misplaced).",
        ctx,
        R"({"classifications": [{"node_id": "...", "category": "GoodOverlapping", "matched_node": "...", "explanation": "..."}]})");
}

std::string score_batch_prompt(const std::string& guidance, const json& items) {
    json ctx = {{"rubric", "Rate how confusing, uncommon, or elaborate each item is for the dataset: " + guidance},
                {"items", items}};
    return render_prompt(
        "Score every item in this batch with an integer 0-100 reflecting its complexity relative "
        "to the other items in the batch. Score all items in one reply.",
        ctx, R"({"scores": [{"id": "...", "score": 50}]})");
}

std::string assignment_prompt(const std::string& outline, const json& items) {
    json ctx = {{"taxonomy", outline}, {"items", items}};
    return render_prompt(
        "Link each item to the most relevant node of the taxonomy below. Use node ids from the "
        "outline exactly.",
        ctx, R"({"assignments": [{"id": "...", "node_id": "..."}]})");
}

std::string corrupt_prompt(const std::string& task_input, const std::string& answer) {
    json ctx = {{"task_input", task_input}, {"answer", answer}};
    return render_prompt(
        "Subtly change the answer below so that it becomes incorrect for the task input, while "
        "keeping the task input fixed. The changed answer must differ from the original.",
        ctx, R"({"answer": "..."})");
}

}  // namespace foundry
