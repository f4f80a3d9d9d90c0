#include "focustree/summaries.hpp"

#include "focustree/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace focustree {

namespace {

std::vector<std::pair<std::string, std::size_t>> histogram(const TreeNode& node, const Dataset& dataset) {
    std::map<std::string, std::size_t> counts;
    for (PointId id : node.member_ids) ++counts[dataset[dataset.row_of_checked(id)].label];
    return {counts.begin(), counts.end()};
}

double purity_of(const std::vector<std::pair<std::string, std::size_t>>& hist, std::size_t size) {
    std::size_t top = 0;
    for (const auto& [label, count] : hist) top = std::max(top, count);
    return size == 0 ? 0.0 : static_cast<double>(top) / static_cast<double>(size);
}

}  // namespace

double summary_distance(const Dataset& dataset, std::size_t row_a, std::size_t row_b) {
    const DataPoint& a = dataset[row_a];
    const DataPoint& b = dataset[row_b];
    if (!dataset.has_features()) return std::hypot(a.x - b.x, a.y - b.y);
    double s = 0.0;
    for (std::size_t i = 0; i < a.features.size(); ++i) {
        const double d = a.features[i] - b.features[i];
        s += d * d;
    }
    return std::sqrt(s);
}

ClusterSummary summarize(const TreeNode& node, const Dataset& dataset) {
    if (node.member_ids.empty()) throw Error(ErrorCode::InvalidArgs, "cannot summarize an empty node");
    ClusterSummary s;
    s.node = node.id;
    s.representative = node.representative_id;
    s.size = node.size();
    s.feature_space = dataset.has_features();
    const std::size_t rep_row = dataset.row_of_checked(node.representative_id);
    s.representative_thumbnail = dataset[rep_row].thumbnail;

    struct Candidate {
        PointId id;
        std::size_t row;
        double to_rep;
    };
    std::vector<Candidate> others;
    others.reserve(node.size());
    for (PointId id : node.member_ids) {
        if (id == node.representative_id) continue;
        const std::size_t row = dataset.row_of_checked(id);
        others.push_back({id, row, summary_distance(dataset, rep_row, row)});
    }

    std::vector<Candidate> ranked = others;
    const std::size_t picks = std::min(kSummaryPicks, ranked.size());
    std::partial_sort(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(picks), ranked.end(),
                      [](const Candidate& a, const Candidate& b) {
                          return a.to_rep != b.to_rep ? a.to_rep < b.to_rep : a.id < b.id;
                      });
    for (std::size_t i = 0; i < picks; ++i) s.most_similar.push_back(ranked[i].id);

    // others is in ascending id order, so strict comparison keeps the lowest id on ties.
    std::vector<double> gap(others.size());
    std::vector<bool> taken(others.size(), false);
    for (std::size_t i = 0; i < others.size(); ++i) gap[i] = others[i].to_rep;
    for (std::size_t round = 0; round < picks; ++round) {
        std::size_t best = others.size();
        double best_gap = -1.0;
        for (std::size_t i = 0; i < others.size(); ++i)
            if (!taken[i] && gap[i] > best_gap) {
                best = i;
                best_gap = gap[i];
            }
        taken[best] = true;
        s.diverse.push_back(others[best].id);
        for (std::size_t i = 0; i < others.size(); ++i)
            if (!taken[i]) gap[i] = std::min(gap[i], summary_distance(dataset, others[best].row, others[i].row));
    }

    s.class_histogram = histogram(node, dataset);
    s.purity = purity_of(s.class_histogram, node.size());
    return s;
}

double class_purity(const TreeNode& node, const Dataset& dataset) {
    if (node.member_ids.empty()) throw Error(ErrorCode::InvalidArgs, "cannot measure an empty node");
    return purity_of(histogram(node, dataset), node.size());
}

}  // namespace focustree
