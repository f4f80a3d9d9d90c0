#include "focustree/json_codec.hpp"

#include "focustree/tree_io.hpp"

#include <set>

namespace focustree {

using nlohmann::json;

std::string_view to_string(FocusMode mode) { return mode == FocusMode::Normal ? "normal" : "comparing"; }

std::string_view to_string(PolygonRole role) { return role == PolygonRole::Focus ? "focus" : "comparison"; }

json to_json(const FocusState& focus) {
    return {
        {"stack", focus.stack},
        {"comparison", focus.comparison ? json(*focus.comparison) : json(nullptr)},
        {"base_level", focus.base_level},
        {"mode", std::string(to_string(focus.mode()))},
    };
}

json to_json(const LayoutMarker& m) {
    json j = {
        {"kind", m.is_point ? "point" : "node"},
        {"node", m.node},
        {"point", m.point},
        {"x", m.pos.x},
        {"y", m.pos.y},
        {"radius", m.radius},
        {"level", m.level},
        {"in_focus", m.in_focus},
        {"member_count", m.member_count},
    };
    return j;
}

json to_json(const FocusPolygon& p) {
    json vertices = json::array();
    for (const auto& v : p.vertices) vertices.push_back({v.x, v.y});
    return {
        {"node", p.node},
        {"level", p.level},
        {"role", std::string(to_string(p.role))},
        {"saturation", p.saturation},
        {"vertices", std::move(vertices)},
    };
}

json to_json(const LayoutFrame& frame) {
    json markers = json::array();
    for (const auto& m : frame.markers) markers.push_back(to_json(m));
    json polygons = json::array();
    for (const auto& p : frame.polygons) polygons.push_back(to_json(p));
    json translation = nullptr;
    if (frame.translation)
        translation = {
            {"target", frame.translation->target},
            {"anchor", {frame.translation->anchor.x, frame.translation->anchor.y}},
            {"f", frame.translation->f},
            {"mode", std::string(to_string(frame.translation->mode))},
        };
    std::set<int> levels;
    for (const auto& m : frame.markers) levels.insert(m.level);
    for (const auto& p : frame.polygons) levels.insert(p.level);
    json level_colors = json::array();
    for (int level : levels) level_colors.push_back({{"level", level}, {"saturation", level - 1}});
    return {
        {"iteration", frame.iteration},
        {"focus", to_json(frame.focus)},
        {"level_colors", std::move(level_colors)},
        {"markers", std::move(markers)},
        {"polygons", std::move(polygons)},
        {"translation", std::move(translation)},
    };
}

json to_json(const ClusterSummary& s) {
    json hist = json::array();
    for (const auto& [label, count] : s.class_histogram) hist.push_back({{"label", label}, {"count", count}});
    return {
        {"node", s.node},
        {"representative",
         {{"id", s.representative},
          {"thumbnail", s.representative_thumbnail.empty() ? json(nullptr) : json(s.representative_thumbnail)}}},
        {"size", s.size},
        {"most_similar", s.most_similar},
        {"diverse", s.diverse},
        {"class_histogram", std::move(hist)},
        {"purity", s.purity},
        {"distance_space", s.feature_space ? "features" : "layout"},
    };
}

json node_info(const TreeNode& n) {
    return {
        {"id", n.id},
        {"level", n.level},
        {"index", n.index},
        {"parent", n.parent ? json(*n.parent) : json(nullptr)},
        {"representative_id", n.representative_id},
        {"size", n.size()},
        {"children", n.children},
        {"is_leaf", n.is_leaf},
        {"leaf_kind", std::string(to_string(n.leaf_kind))},
    };
}

json leaf_points_json(const TreeNode& node, const Dataset& dataset, const OverlapResult& result) {
    json points = json::array();
    for (const auto& m : result.markers) {
        const DataPoint& p = dataset[dataset.row_of_checked(m.id)];
        points.push_back({
            {"id", m.id},
            {"x", m.x},
            {"y", m.y},
            {"radius", m.radius},
            {"label", p.label},
            {"thumbnail", p.thumbnail.empty() ? json(nullptr) : json(p.thumbnail)},
        });
    }
    return {
        {"node", node.id},
        {"converged", result.converged},
        {"iterations", result.iterations},
        {"points", std::move(points)},
    };
}

std::string frame_document(const LayoutFrame& frame) { return to_json(frame).dump() + "\n"; }

}  // namespace focustree
