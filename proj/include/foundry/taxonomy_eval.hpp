#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "foundry/gateway.hpp"
#include "foundry/types.hpp"

namespace foundry::taxonomy {

enum class NodeCategory { good_overlapping, good_exclusive, redundant, bad };
enum class TaxonomyKind { grounded, conceptual };

const char* to_string(NodeCategory category);
const char* to_string(TaxonomyKind kind);
NodeCategory node_category_from_string(std::string_view s);
TaxonomyKind taxonomy_kind_from_string(std::string_view s);

struct NodeClassification {
    std::string node_id;
    NodeCategory category = NodeCategory::bad;
    std::optional<std::string> matched_node;  // present iff category == good_overlapping
    std::string explanation;

    bool operator==(const NodeClassification&) const = default;
};

struct CategoryCounts {
    int good_overlapping = 0;
    int good_exclusive = 0;
    int redundant = 0;
    int bad = 0;

    int total() const { return good_overlapping + good_exclusive + redundant + bad; }
    int total_good() const { return good_overlapping + good_exclusive; }

    bool operator==(const CategoryCounts&) const = default;
};

CategoryCounts count_categories(const std::vector<NodeClassification>& classifications);

struct ClassificationSet {
    std::vector<NodeClassification> model_nodes;
    std::vector<NodeClassification> expert_nodes;
};

struct TaxonomyScore {
    double completeness = 0.0;
    double soundness = 0.0;
    std::optional<double> novelty;   // conceptual only
    std::optional<double> coverage;  // conceptual only; completeness + novelty
    TaxonomyKind taxonomy_kind = TaxonomyKind::conceptual;
    CategoryCounts model_counts;
    CategoryCounts expert_counts;
};

void to_json(nlohmann::json& j, const TaxonomyScore& score);

// Classifies every node of both taxonomies, batched per parent branch with
// the full opposite taxonomy in context. Batches whose verdicts stay
// malformed after retries fall back to Bad with the parse failure recorded.
ClassificationSet classify_nodes(Gateway& gateway, const Taxonomy& model_tax,
                                 const Taxonomy& expert_tax, int workers = 2);

TaxonomyScore score_taxonomy(const ClassificationSet& classifications, TaxonomyKind kind);

}  // namespace foundry::taxonomy
