#pragma once

#include "focustree/dataset.hpp"
#include "focustree/hierarchy.hpp"

#include <string>
#include <utility>
#include <vector>

namespace focustree {

struct ClusterSummary {
    NodeId node = 0;
    PointId representative = 0;
    std::string representative_thumbnail;  // empty when absent
    std::size_t size = 0;
    std::vector<PointId> most_similar;  // ascending distance to the representative
    std::vector<PointId> diverse;       // selection order
    std::vector<std::pair<std::string, std::size_t>> class_histogram;  // sorted by label
    double purity = 0.0;
    bool feature_space = false;  // distances measured on features rather than layout

    bool operator==(const ClusterSummary&) const = default;
};

inline constexpr std::size_t kSummaryPicks = 3;

// Distances use the dataset features when present, else layout positions.
// most_similar: the nearest non-representative members (ties: lowest id).
// diverse: greedy max-min picks seeded at the representative (ties: lowest id).
ClusterSummary summarize(const TreeNode& node, const Dataset& dataset);

// Largest class count over cluster size.
double class_purity(const TreeNode& node, const Dataset& dataset);

// Distance between two dataset rows in the space summarize() uses.
double summary_distance(const Dataset& dataset, std::size_t row_a, std::size_t row_b);

}  // namespace focustree
