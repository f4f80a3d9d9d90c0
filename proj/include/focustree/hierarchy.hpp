#pragma once

#include "focustree/dataset.hpp"
#include "focustree/sampler.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace focustree {

struct BuildConfig {
    GridConfig grid;
    std::size_t min_cluster_size = 200;  // pi

    void validate() const;
    bool operator==(const BuildConfig&) const = default;
};

using NodeId = std::uint32_t;

enum class LeafKind : std::uint8_t {
    None,       // interior node
    Small,      // fewer than 2*pi members, recursion stopped
    Collapsed,  // partitioning produced a single cluster (or one cluster per point)
};

struct TreeNode {
    NodeId id = 0;
    int level = 1;  // root is level 1
    int index = 1;  // 1-based position within its level
    std::optional<NodeId> parent;
    PointId representative_id = 0;
    std::vector<PointId> member_ids;  // ascending
    std::vector<NodeId> children;
    bool is_leaf = true;
    LeafKind leaf_kind = LeafKind::Small;

    std::size_t size() const { return member_ids.size(); }
    bool operator==(const TreeNode&) const = default;
};

// Flat node table; node ids are positions, assigned breadth-first from the root.
struct Tree {
    BuildConfig config;
    std::uint64_t dataset_fingerprint = 0;
    std::vector<TreeNode> nodes;

    const TreeNode& root() const { return nodes.front(); }
    const TreeNode& node(NodeId id) const;  // throws Error{UnknownNode}
    bool contains(NodeId id) const { return id < nodes.size(); }
    int max_level() const;
    // Edges on the longest root-to-leaf path.
    int depth() const { return max_level() - 1; }
    bool operator==(const Tree&) const = default;
};

struct Cluster {
    PointId representative = 0;
    std::vector<std::size_t> members;  // indices into the point span, ascending
};

// Assigns every point to its nearest representative (squared Euclidean distance,
// ties: lowest representative id). A representative always lands in its own
// cluster. Cluster order follows `representatives`. Throws Error{NoRepresentatives}.
std::vector<Cluster> partition(std::span<const PlanarPoint> points, const RepresentativeSet& representatives);

// Mean of all pairwise distances between members of `a` and members of `b`.
double mean_linkage(std::span<const PlanarPoint> points, const Cluster& a, const Cluster& b);

// Repeatedly folds the smallest cluster below `min_size` (ties: lowest representative
// id) into the cluster with the smallest mean linkage to it (ties: lowest representative
// id) until every cluster is valid or one remains. The merged cluster keeps the larger
// constituent's representative (equal sizes: the lower id) and the absorber's position.
std::vector<Cluster> merge_invalid(std::span<const PlanarPoint> points, std::vector<Cluster> clusters,
                                   std::size_t min_size);

// Throws Error{EmptyDataset, InvalidConfig}.
Tree build_tree(const Dataset& dataset, const BuildConfig& config);

struct Violation {
    NodeId node = 0;
    std::string kind;
    std::string message;
};

struct ValidationReport {
    std::vector<Violation> violations;
    std::vector<NodeId> collapsed_leaves;

    bool ok() const { return violations.empty(); }
};

ValidationReport validate_tree(const Tree& tree, const Dataset& dataset, std::size_t min_size);

}  // namespace focustree
