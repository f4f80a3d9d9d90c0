#include "focustree/hierarchy.hpp"

#include "focustree/error.hpp"
#include "focustree/spatial_index.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <numeric>
#include <queue>
#include <unordered_map>
#include <unordered_set>

namespace focustree {

void BuildConfig::validate() const {
    grid.validate();
    if (min_cluster_size < 1) throw Error(ErrorCode::InvalidConfig, "minimum cluster size pi must be >= 1");
}

const TreeNode& Tree::node(NodeId id) const {
    if (!contains(id)) throw Error(ErrorCode::UnknownNode, "unknown node " + std::to_string(id));
    return nodes[id];
}

int Tree::max_level() const {
    int level = 0;
    for (const auto& n : nodes) level = std::max(level, n.level);
    return level;
}

std::vector<Cluster> partition(std::span<const PlanarPoint> points, const RepresentativeSet& representatives) {
    if (representatives.empty()) throw Error(ErrorCode::NoRepresentatives, "partition needs a representative");

    std::unordered_map<PointId, std::size_t> index_of;
    index_of.reserve(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) index_of.emplace(points[i].id, i);

    std::vector<PlanarPoint> sites;
    std::unordered_map<PointId, std::size_t> cluster_of_rep;
    sites.reserve(representatives.size());
    for (std::size_t c = 0; c < representatives.size(); ++c) {
        auto it = index_of.find(representatives[c].id);
        if (it == index_of.end())
            throw Error(ErrorCode::NoRepresentatives,
                        "representative " + std::to_string(representatives[c].id) + " is not an input point");
        sites.push_back(points[it->second]);
        cluster_of_rep.emplace(representatives[c].id, c);
    }

    std::vector<Cluster> clusters(representatives.size());
    for (std::size_t c = 0; c < clusters.size(); ++c) clusters[c].representative = representatives[c].id;

    const NearestIndex index(sites);
    for (std::size_t i = 0; i < points.size(); ++i) {
        auto own = cluster_of_rep.find(points[i].id);
        const std::size_t c = own != cluster_of_rep.end() ? own->second : index.nearest(points[i].pos).site;
        clusters[c].members.push_back(i);
    }
    return clusters;
}

double mean_linkage(std::span<const PlanarPoint> points, const Cluster& a, const Cluster& b) {
    double sum = 0.0;
    for (std::size_t i : a.members) {
        const Vec2 pa = points[i].pos;
        for (std::size_t j : b.members) sum += distance(pa, points[j].pos);
    }
    return sum / (static_cast<double>(a.members.size()) * static_cast<double>(b.members.size()));
}

namespace {

Vec2 centroid_of(std::span<const PlanarPoint> points, const std::vector<std::size_t>& members) {
    Vec2 c;
    for (std::size_t i : members) c = c + points[i].pos;
    return c * (1.0 / static_cast<double>(members.size()));
}

}  // namespace

std::vector<Cluster> merge_invalid(std::span<const PlanarPoint> points, std::vector<Cluster> clusters,
                                   std::size_t min_size) {
    std::vector<bool> alive(clusters.size(), true);
    std::vector<Vec2> centroid(clusters.size());
    for (std::size_t c = 0; c < clusters.size(); ++c) centroid[c] = centroid_of(points, clusters[c].members);
    std::size_t n_alive = clusters.size();

    while (n_alive > 1) {
        std::optional<std::size_t> victim;
        for (std::size_t c = 0; c < clusters.size(); ++c) {
            if (!alive[c] || clusters[c].members.size() >= min_size) continue;
            if (!victim || clusters[c].members.size() < clusters[*victim].members.size() ||
                (clusters[c].members.size() == clusters[*victim].members.size() &&
                 clusters[c].representative < clusters[*victim].representative))
                victim = c;
        }
        if (!victim) break;
        const std::size_t a = *victim;

        // Mean pairwise distance is bounded below by centroid distance (Jensen), so
        // candidates are scanned in bound order and the scan stops once no remaining
        // bound can beat the best exact linkage.
        using Entry = std::pair<double, std::size_t>;
        std::vector<Entry> bounds;
        bounds.reserve(n_alive);
        for (std::size_t c = 0; c < clusters.size(); ++c)
            if (alive[c] && c != a) bounds.emplace_back(distance(centroid[a], centroid[c]), c);
        std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap(std::greater<>{}, std::move(bounds));

        std::size_t best = 0;
        double best_link = std::numeric_limits<double>::infinity();
        while (!heap.empty()) {
            const auto [lb, c] = heap.top();
            heap.pop();
            if (lb > best_link + 1e-9 * best_link) break;
            const double link = mean_linkage(points, clusters[a], clusters[c]);
            if (link < best_link || (link == best_link && clusters[c].representative < clusters[best].representative)) {
                best_link = link;
                best = c;
            }
        }

        auto& into = clusters[best];
        auto& from = clusters[a];
        const bool keep_from = from.members.size() > into.members.size() ||
                               (from.members.size() == into.members.size() && from.representative < into.representative);
        if (keep_from) into.representative = from.representative;
        std::vector<std::size_t> merged;
        merged.reserve(into.members.size() + from.members.size());
        std::merge(into.members.begin(), into.members.end(), from.members.begin(), from.members.end(),
                   std::back_inserter(merged));
        into.members = std::move(merged);
        from.members.clear();
        centroid[best] = centroid_of(points, into.members);
        alive[a] = false;
        --n_alive;
    }

    std::vector<Cluster> out;
    out.reserve(n_alive);
    for (std::size_t c = 0; c < clusters.size(); ++c)
        if (alive[c]) out.push_back(std::move(clusters[c]));
    return out;
}

Tree build_tree(const Dataset& dataset, const BuildConfig& config) {
    config.validate();
    if (dataset.empty()) throw Error(ErrorCode::EmptyDataset, "cannot build a tree over an empty dataset");
    const std::size_t pi = config.min_cluster_size;

    Tree tree;
    tree.config = config;
    tree.dataset_fingerprint = dataset.fingerprint();

    const auto& all = dataset.planar();
    std::vector<std::size_t> every(all.size());
    std::iota(every.begin(), every.end(), std::size_t{0});

    TreeNode root;
    root.id = 0;
    root.level = 1;
    root.index = 1;
    root.representative_id = all[exact_medoid(all, every)].id;
    root.member_ids.reserve(all.size());
    for (const auto& p : all) root.member_ids.push_back(p.id);
    std::sort(root.member_ids.begin(), root.member_ids.end());
    tree.nodes.push_back(std::move(root));

    struct Work {
        NodeId node;
        std::vector<PlanarPoint> points;
    };
    std::deque<Work> queue;
    queue.push_back({0, all});
    std::vector<int> level_count{0, 1};

    while (!queue.empty()) {
        Work work = std::move(queue.front());
        queue.pop_front();
        const NodeId id = work.node;
        const auto& pts = work.points;

        if (pts.size() < 2 * pi) {
            tree.nodes[id].leaf_kind = LeafKind::Small;
            continue;
        }
        const RepresentativeSet reps = sample(pts, config.grid);
        if (reps.size() == pts.size()) {
            tree.nodes[id].leaf_kind = LeafKind::Collapsed;
            continue;
        }
        std::vector<Cluster> clusters = merge_invalid(pts, partition(pts, reps), pi);
        if (clusters.size() == 1) {
            tree.nodes[id].leaf_kind = LeafKind::Collapsed;
            continue;
        }

        const int child_level = tree.nodes[id].level + 1;
        if (static_cast<int>(level_count.size()) <= child_level) level_count.resize(child_level + 1, 0);
        std::vector<NodeId> children;
        for (auto& cluster : clusters) {
            TreeNode child;
            child.id = static_cast<NodeId>(tree.nodes.size());
            child.level = child_level;
            child.index = ++level_count[child_level];
            child.parent = id;
            child.representative_id = cluster.representative;
            std::vector<PlanarPoint> sub;
            sub.reserve(cluster.members.size());
            child.member_ids.reserve(cluster.members.size());
            for (std::size_t i : cluster.members) {
                sub.push_back(pts[i]);
                child.member_ids.push_back(pts[i].id);
            }
            std::sort(child.member_ids.begin(), child.member_ids.end());
            children.push_back(child.id);
            tree.nodes.push_back(std::move(child));
            queue.push_back({children.back(), std::move(sub)});
        }
        tree.nodes[id].children = std::move(children);
        tree.nodes[id].is_leaf = false;
        tree.nodes[id].leaf_kind = LeafKind::None;
    }
    return tree;
}

ValidationReport validate_tree(const Tree& tree, const Dataset& dataset, std::size_t min_size) {
    ValidationReport report;
    auto fail = [&](NodeId node, std::string kind, std::string message) {
        report.violations.push_back({node, std::move(kind), std::move(message)});
    };
    if (tree.nodes.empty()) {
        fail(0, "root", "tree has no nodes");
        return report;
    }

    const auto& root = tree.nodes.front();
    if (root.level != 1 || root.parent) fail(0, "root", "root must be level 1 without a parent");
    {
        std::vector<PointId> ids;
        ids.reserve(dataset.size());
        for (const auto& p : dataset.points()) ids.push_back(p.id);
        std::sort(ids.begin(), ids.end());
        if (ids != root.member_ids) fail(0, "root", "root members differ from the dataset");
    }

    std::unordered_set<std::uint64_t> level_index;
    for (std::size_t pos = 0; pos < tree.nodes.size(); ++pos) {
        const auto& node = tree.nodes[pos];
        const NodeId id = static_cast<NodeId>(pos);
        if (node.id != id) fail(id, "id", "node id does not match its table position");
        const auto key = (static_cast<std::uint64_t>(node.level) << 32) | static_cast<std::uint32_t>(node.index);
        if (!level_index.insert(key).second) fail(id, "index", "duplicate (level, index)");

        if (node.member_ids.empty()) {
            fail(id, "empty", "node has no members");
            continue;
        }
        if (!std::is_sorted(node.member_ids.begin(), node.member_ids.end()) ||
            std::adjacent_find(node.member_ids.begin(), node.member_ids.end()) != node.member_ids.end())
            fail(id, "order", "member ids are not strictly ascending");
        if (!std::binary_search(node.member_ids.begin(), node.member_ids.end(), node.representative_id))
            fail(id, "representative", "representative is not a member");
        if (pos != 0 && node.size() < min_size)
            fail(id, "min_size", "size " + std::to_string(node.size()) + " below pi=" + std::to_string(min_size));
        if (node.is_leaf != node.children.empty()) fail(id, "leaf_flag", "is_leaf disagrees with children");
        if (node.is_leaf != (node.leaf_kind != LeafKind::None)) fail(id, "leaf_flag", "leaf kind disagrees with is_leaf");
        if (node.leaf_kind == LeafKind::Small && node.size() >= 2 * min_size)
            fail(id, "leaf_bound", "small leaf with " + std::to_string(node.size()) + " members");
        if (node.leaf_kind == LeafKind::Collapsed) report.collapsed_leaves.push_back(id);

        if (node.parent) {
            if (!tree.contains(*node.parent)) {
                fail(id, "parent", "parent out of range");
            } else {
                const auto& parent = tree.nodes[*node.parent];
                if (std::find(parent.children.begin(), parent.children.end(), id) == parent.children.end())
                    fail(id, "parent", "parent does not list this node as a child");
                if (node.level != parent.level + 1) fail(id, "level", "level is not parent level + 1");
            }
        } else if (pos != 0) {
            fail(id, "parent", "non-root node without a parent");
        }

        if (node.children.empty()) continue;
        std::vector<PointId> united;
        united.reserve(node.size());
        bool children_ok = true;
        for (NodeId c : node.children) {
            if (!tree.contains(c)) {
                fail(id, "partition", "child " + std::to_string(c) + " out of range");
                children_ok = false;
                continue;
            }
            const auto& child = tree.nodes[c];
            if (child.parent != id) fail(c, "parent", "child's parent link does not point back");
            united.insert(united.end(), child.member_ids.begin(), child.member_ids.end());
        }
        if (!children_ok) continue;
        std::sort(united.begin(), united.end());
        if (std::adjacent_find(united.begin(), united.end()) != united.end())
            fail(id, "partition", "children share points");
        united.erase(std::unique(united.begin(), united.end()), united.end());
        if (united != node.member_ids) fail(id, "partition", "union of children differs from node members");
    }

    if (tree.dataset_fingerprint != dataset.fingerprint())
        fail(0, "fingerprint", "tree was built from a different dataset");
    return report;
}

}  // namespace focustree
