#pragma once

#include "focustree/focus_layout.hpp"
#include "focustree/overlap_removal.hpp"
#include "focustree/summaries.hpp"

#include <json.hpp>

#include <string>

namespace focustree {

// Wire shapes shared by the service, replay exports and the Python module.
// Row positions are not exported; markers carry everything a client draws.
// level_colors maps each level present to a saturation index (level - 1).
nlohmann::json to_json(const LayoutFrame& frame);
nlohmann::json to_json(const FocusState& focus);
nlohmann::json to_json(const LayoutMarker& marker);
nlohmann::json to_json(const FocusPolygon& polygon);
nlohmann::json to_json(const ClusterSummary& summary);

// Node metadata without member lists.
nlohmann::json node_info(const TreeNode& node);

// Overlap-free leaf markers with labels and thumbnails attached.
nlohmann::json leaf_points_json(const TreeNode& node, const Dataset& dataset, const OverlapResult& result);

// Deterministic text form: compact dump plus a trailing newline.
std::string frame_document(const LayoutFrame& frame);

std::string_view to_string(FocusMode mode);
std::string_view to_string(PolygonRole role);

}  // namespace focustree
