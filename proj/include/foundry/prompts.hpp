#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "foundry/types.hpp"

namespace foundry {

// Prompt builders for every pipeline step. Each prompt carries a fenced
// ```json Context block (machine-readable input) and names the reply shape,
// so offline providers and repair prompts can operate on the same structure.

std::string render_prompt(const std::string& instruction, const nlohmann::json& context,
                          const std::string& reply_shape);

// "node_id: label -- description" lines, indented by level.
std::string taxonomy_outline(const Taxonomy& taxonomy);

std::string factor_proposal_prompt(const DatasetSpec& spec);
std::string factor_critique_prompt(const DatasetSpec& spec, const std::vector<std::string>& proposed);

std::string child_proposal_prompt(const std::string& description,
                                  const std::vector<std::string>& sample_refs,
                                  const std::string& factor, const std::string& node_label,
                                  const std::string& node_description, int child_level,
                                  const std::vector<std::string>& ancestors,
                                  const std::vector<std::string>& siblings, const std::string& plan);
std::string child_critique_prompt(const std::string& description, const std::string& factor,
                                  const std::string& node_label,
                                  const std::vector<std::string>& ancestors,
                                  const nlohmann::json& raw_children);
std::string level_plan_prompt(const std::string& description, const std::string& factor, int next_level,
                              const std::vector<std::string>& level_labels);

std::string strategy_plan_prompt(const DatasetSpec& spec, const nlohmann::json& taxonomy_summaries);
std::string meta_prompt_prompt(const std::string& description, const std::vector<std::string>& requirements,
                               int scenario_count, const std::vector<std::string>& previous);
std::string complexify_prompt(const std::string& description, const std::string& meta_text);
std::string generation_prompt(const std::string& description, const std::vector<std::string>& requirements,
                              const std::string& meta_text);
std::string requirements_critique_prompt(const std::vector<std::string>& requirements,
                                         const std::string& meta_text, const std::string& task_input,
                                         const std::string& task_output);
std::string refine_prompt(const std::vector<std::string>& requirements, const std::string& meta_text,
                          const std::string& task_input, const std::string& task_output,
                          const std::string& explanation);
std::string double_critic_prompt(const std::string& task_input, const std::string& task_output,
                                 bool incorrectness_side);

std::string classification_prompt(const std::string& own_kind, const nlohmann::json& branch_nodes,
                                  const std::string& own_outline, const std::string& opposite_outline);

std::string score_batch_prompt(const std::string& guidance, const nlohmann::json& items);
std::string assignment_prompt(const std::string& outline, const nlohmann::json& items);
std::string corrupt_prompt(const std::string& task_input, const std::string& answer);

}  // namespace foundry
