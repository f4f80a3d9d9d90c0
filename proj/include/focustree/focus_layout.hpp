#pragma once

#include "focustree/dataset.hpp"
#include "focustree/hierarchy.hpp"

#include <memory>
#include <optional>
#include <vector>

namespace focustree {

struct ScaleParams {
    double f_min = 0.5;
    double f_max = 4.0;
    double g_max = 2.0;
    double max_distance = 1.0;  // M, layout units
    double delta = 100.0;       // comparison cutoff, layout units

    void validate() const;  // throws Error{InvalidConfig}
    bool operator==(const ScaleParams&) const = default;
};

enum class FocusMode { Normal, Comparing };

// Linear map of a cluster size onto [f_min, f_max]; the midpoint when min == max.
// Throws Error{OutOfRange} unless min_size <= cluster_size <= max_size.
double f_scale(std::size_t cluster_size, std::size_t min_size, std::size_t max_size, const ScaleParams& params = {});

// g_max * log(1 + d) / log(1 + M), clamped to [0, g_max]. In comparing mode the
// result is exactly 0 beyond delta.
double g_scale(double distance, const ScaleParams& params, FocusMode mode);

struct MarkerStyle {
    double point_radius = 1.0;  // raw points and the smallest clusters
    double max_radius = 10.0;   // a marker standing for the whole dataset
};

struct LayoutParams {
    ScaleParams scale;
    MarkerStyle style;

    // M from the dataset; delta = 100 px, point radius 4 px, max radius 40 px on `viewport`.
    static LayoutParams for_dataset(const Dataset& dataset, const Viewport& viewport = {});
};

struct FocusState {
    std::vector<NodeId> stack;  // focus path, outermost first
    std::optional<NodeId> comparison;
    int base_level = 2;  // tree level shown when nothing is focused

    FocusMode mode() const { return comparison ? FocusMode::Comparing : FocusMode::Normal; }
    bool operator==(const FocusState&) const = default;
};

struct LayoutMarker {
    bool is_point = false;
    NodeId node = 0;     // valid when !is_point
    PointId point = 0;   // representative id, or the raw point id when is_point
    Vec2 pos;
    double radius = 0.0;
    int level = 0;
    bool in_focus = false;
    std::size_t member_count = 1;

    bool operator==(const LayoutMarker&) const = default;
};

enum class PolygonRole { Focus, Comparison };

struct FocusPolygon {
    NodeId node = 0;
    int level = 0;
    PolygonRole role = PolygonRole::Focus;
    int saturation = 1;  // 1 = outermost focus
    std::vector<Vec2> vertices;

    bool operator==(const FocusPolygon&) const = default;
};

// The translation step that produced a frame.
struct Translation {
    NodeId target = 0;
    Vec2 anchor;
    double f = 0.0;
    FocusMode mode = FocusMode::Normal;

    bool operator==(const Translation&) const = default;
};

struct LayoutFrame {
    int iteration = 0;
    FocusState focus;
    std::vector<LayoutMarker> markers;
    std::vector<FocusPolygon> polygons;
    std::optional<Translation> translation;
    std::vector<Vec2> positions;  // current position of every dataset row

    bool operator==(const LayoutFrame&) const = default;
};

using FramePtr = std::shared_ptr<const LayoutFrame>;

// A frame plus the checkpoints needed to undo it: one per stack entry, plus one
// for an active comparison.
struct ExplorationState {
    FramePtr frame;
    std::vector<FramePtr> checkpoints;

    const FocusState& focus() const { return frame->focus; }
};

// Stateless layout engine over a shared dataset and tree; every operation maps
// an exploration state to a new one.
class FocusLayout {
public:
    FocusLayout(std::shared_ptr<const Dataset> dataset, std::shared_ptr<const Tree> tree, LayoutParams params);

    const Dataset& dataset() const { return *dataset_; }
    const Tree& tree() const { return *tree_; }
    const LayoutParams& params() const { return params_; }

    // Nodes shown with an empty focus at `base_level`: every node of that level
    // plus shallower leaves, in depth-first order.
    std::vector<NodeId> frontier(int base_level) const;

    ExplorationState start(int base_level = 2) const;

    // Throws Error{UnknownNode, ComparisonActive, AlreadyFocused, NotAChild}.
    ExplorationState request_focus(const ExplorationState& state, NodeId target) const;
    // Throws Error{EmptyStack}. Also drops an active comparison.
    ExplorationState resolve_focus(const ExplorationState& state) const;
    // Falls back to request_focus when nothing is focused or the target is not a
    // visible node at the stack-top level; replaces an active comparison.
    ExplorationState compare_focus(const ExplorationState& state, NodeId target) const;
    // Throws Error{NotComparing}.
    ExplorationState resolve_comparison(const ExplorationState& state) const;
    // Rebuilds the unfocused frame at another tree level.
    // Throws Error{FocusActive, InvalidLevel}.
    ExplorationState set_global_level(const ExplorationState& state, int level) const;

    double marker_radius(std::size_t member_count) const;

private:
    ExplorationState push(const ExplorationState& state, NodeId target, FocusMode mode) const;
    LayoutFrame compose(FocusState focus, std::vector<Vec2> positions, int iteration,
                        std::optional<Translation> translation) const;
    std::pair<std::size_t, std::size_t> visible_sibling_sizes(const LayoutFrame& frame, NodeId target) const;
    bool is_visible_node(const LayoutFrame& frame, NodeId id) const;

    std::shared_ptr<const Dataset> dataset_;
    std::shared_ptr<const Tree> tree_;
    LayoutParams params_;
    std::vector<std::size_t> rep_row_;  // dataset row of each node's representative
};

}  // namespace focustree
