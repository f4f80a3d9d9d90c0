#include "focustree/focus_layout.hpp"

#include "focustree/error.hpp"

#include <algorithm>
#include <cmath>

namespace focustree {

void ScaleParams::validate() const {
    if (!(f_min <= f_max) || !std::isfinite(f_min) || !std::isfinite(f_max))
        throw Error(ErrorCode::InvalidConfig, "f range must be finite with f_min <= f_max");
    if (!(g_max >= 0.0) || !std::isfinite(g_max)) throw Error(ErrorCode::InvalidConfig, "g_max must be >= 0");
    if (!(max_distance >= 0.0) || !std::isfinite(max_distance))
        throw Error(ErrorCode::InvalidConfig, "max distance M must be >= 0");
    if (!(delta > 0.0)) throw Error(ErrorCode::InvalidConfig, "comparison cutoff delta must be > 0");
}

double f_scale(std::size_t cluster_size, std::size_t min_size, std::size_t max_size, const ScaleParams& params) {
    if (min_size > max_size || cluster_size < min_size || cluster_size > max_size)
        throw Error(ErrorCode::OutOfRange, "cluster size " + std::to_string(cluster_size) + " outside [" +
                                               std::to_string(min_size) + ", " + std::to_string(max_size) + "]");
    if (min_size == max_size) return 0.5 * (params.f_min + params.f_max);
    const double t = static_cast<double>(cluster_size - min_size) / static_cast<double>(max_size - min_size);
    return params.f_min + (params.f_max - params.f_min) * t;
}

double g_scale(double distance, const ScaleParams& params, FocusMode mode) {
    if (!(distance >= 0.0)) throw Error(ErrorCode::OutOfRange, "distance must be non-negative");
    if (mode == FocusMode::Comparing && distance > params.delta) return 0.0;
    if (!(params.max_distance > 0.0)) return 0.0;
    const double g = params.g_max * std::log1p(distance) / std::log1p(params.max_distance);
    return std::clamp(g, 0.0, params.g_max);
}

LayoutParams LayoutParams::for_dataset(const Dataset& dataset, const Viewport& viewport) {
    const double px = viewport.layout_per_pixel(dataset.bounds());
    LayoutParams p;
    p.scale.max_distance = dataset.max_distance();
    p.scale.delta = 100.0 * px;
    p.style.point_radius = 4.0 * px;
    p.style.max_radius = 40.0 * px;
    return p;
}

FocusLayout::FocusLayout(std::shared_ptr<const Dataset> dataset, std::shared_ptr<const Tree> tree,
                         LayoutParams params)
    : dataset_(std::move(dataset)), tree_(std::move(tree)), params_(params) {
    params_.scale.validate();
    if (tree_->dataset_fingerprint != dataset_->fingerprint())
        throw Error(ErrorCode::FingerprintMismatch, "tree does not belong to this dataset");
    rep_row_.reserve(tree_->nodes.size());
    for (const auto& n : tree_->nodes) rep_row_.push_back(dataset_->row_of_checked(n.representative_id));
}

double FocusLayout::marker_radius(std::size_t member_count) const {
    const double share = static_cast<double>(member_count) / static_cast<double>(std::max<std::size_t>(dataset_->size(), 1));
    return std::max(params_.style.point_radius, params_.style.max_radius * std::sqrt(share));
}

std::vector<NodeId> FocusLayout::frontier(int base_level) const {
    std::vector<NodeId> out;
    std::vector<NodeId> todo{0};
    while (!todo.empty()) {
        const NodeId id = todo.back();
        todo.pop_back();
        const auto& n = tree_->nodes[id];
        if (n.level >= base_level || n.is_leaf) {
            out.push_back(id);
            continue;
        }
        for (auto it = n.children.rbegin(); it != n.children.rend(); ++it) todo.push_back(*it);
    }
    return out;
}

LayoutFrame FocusLayout::compose(FocusState focus, std::vector<Vec2> positions, int iteration,
                                 std::optional<Translation> translation) const {
    LayoutFrame frame;
    frame.iteration = iteration;
    frame.translation = translation;

    auto expanded = [&](NodeId id) {
        return std::find(focus.stack.begin(), focus.stack.end(), id) != focus.stack.end() || focus.comparison == id;
    };
    auto emphasized = [&](NodeId id) {
        return (!focus.stack.empty() && focus.stack.back() == id) || focus.comparison == id;
    };

    auto emit = [&](auto&& self, NodeId id, bool inside) -> void {
        const auto& n = tree_->nodes[id];
        if (!expanded(id)) {
            LayoutMarker m;
            m.node = id;
            m.point = n.representative_id;
            m.pos = positions[rep_row_[id]];
            m.radius = marker_radius(n.size());
            m.level = n.level;
            m.in_focus = inside;
            m.member_count = n.size();
            frame.markers.push_back(m);
            return;
        }
        const bool in = inside || emphasized(id);
        if (n.is_leaf) {
            for (PointId pid : n.member_ids) {
                LayoutMarker m;
                m.is_point = true;
                m.node = id;
                m.point = pid;
                m.pos = positions[dataset_->row_of_checked(pid)];
                m.radius = params_.style.point_radius;
                m.level = n.level + 1;
                m.in_focus = in;
                frame.markers.push_back(m);
            }
            return;
        }
        for (NodeId c : n.children) self(self, c, in);
    };
    for (NodeId id : frontier(focus.base_level)) emit(emit, id, false);

    auto polygon = [&](NodeId id, PolygonRole role, int saturation) {
        const auto& n = tree_->nodes[id];
        std::vector<Vec2> pts;
        pts.reserve(n.size());
        for (PointId pid : n.member_ids) pts.push_back(positions[dataset_->row_of_checked(pid)]);
        FocusPolygon poly;
        poly.node = id;
        poly.level = n.level;
        poly.role = role;
        poly.saturation = saturation;
        poly.vertices = pad_polygon(convex_hull(std::move(pts)), 2.0 * params_.style.point_radius);
        frame.polygons.push_back(std::move(poly));
    };
    for (std::size_t i = 0; i < focus.stack.size(); ++i)
        polygon(focus.stack[i], PolygonRole::Focus, static_cast<int>(i) + 1);
    if (focus.comparison)
        polygon(*focus.comparison, PolygonRole::Comparison, static_cast<int>(focus.stack.size()));

    frame.focus = std::move(focus);
    frame.positions = std::move(positions);
    return frame;
}

ExplorationState FocusLayout::start(int base_level) const {
    if (base_level < 1) throw Error(ErrorCode::InvalidLevel, "base level must be >= 1");
    FocusState focus;
    focus.base_level = base_level;
    std::vector<Vec2> positions;
    positions.reserve(dataset_->size());
    for (const auto& p : dataset_->planar()) positions.push_back(p.pos);
    return {std::make_shared<const LayoutFrame>(compose(std::move(focus), std::move(positions), 0, std::nullopt)), {}};
}

bool FocusLayout::is_visible_node(const LayoutFrame& frame, NodeId id) const {
    return std::any_of(frame.markers.begin(), frame.markers.end(),
                       [&](const LayoutMarker& m) { return !m.is_point && m.node == id; });
}

std::pair<std::size_t, std::size_t> FocusLayout::visible_sibling_sizes(const LayoutFrame& frame, NodeId target) const {
    const auto& t = tree_->nodes[target];
    std::size_t lo = t.size(), hi = t.size();
    if (!t.parent) return {lo, hi};
    for (NodeId s : tree_->nodes[*t.parent].children) {
        if (!is_visible_node(frame, s)) continue;
        lo = std::min(lo, tree_->nodes[s].size());
        hi = std::max(hi, tree_->nodes[s].size());
    }
    return {lo, hi};
}

ExplorationState FocusLayout::push(const ExplorationState& state, NodeId target, FocusMode mode) const {
    const LayoutFrame& cur = *state.frame;
    const auto& node = tree_->nodes[target];
    const auto [lo, hi] = visible_sibling_sizes(cur, target);
    const double f = f_scale(node.size(), lo, hi, params_.scale);
    const Vec2 anchor = cur.positions[rep_row_[target]];

    std::vector<Vec2> positions = cur.positions;
    for (auto& p : positions) {
        const Vec2 offset = p - anchor;
        const double g = g_scale(offset.norm(), params_.scale, mode);
        if (g == 0.0) continue;  // leaves coordinates bit-identical
        p = p + offset * (f * g);
    }

    FocusState focus = cur.focus;
    if (mode == FocusMode::Normal)
        focus.stack.push_back(target);
    else
        focus.comparison = target;

    ExplorationState next;
    next.frame = std::make_shared<const LayoutFrame>(
        compose(std::move(focus), std::move(positions), cur.iteration + 1, Translation{target, anchor, f, mode}));
    next.checkpoints = state.checkpoints;
    next.checkpoints.push_back(state.frame);
    return next;
}

ExplorationState FocusLayout::request_focus(const ExplorationState& state, NodeId target) const {
    const auto& node = tree_->node(target);
    const FocusState& focus = state.focus();
    if (focus.comparison) throw Error(ErrorCode::ComparisonActive, "resolve the comparison before requesting focus");
    if (std::find(focus.stack.begin(), focus.stack.end(), target) != focus.stack.end())
        throw Error(ErrorCode::AlreadyFocused, "node " + std::to_string(target) + " is already focused");
    const bool allowed = focus.stack.empty() ? is_visible_node(*state.frame, target)
                                             : node.parent == focus.stack.back();
    if (!allowed)
        throw Error(ErrorCode::NotAChild, "node " + std::to_string(target) +
                                              (focus.stack.empty() ? " is not shown at the base level"
                                                                   : " is not a child of the focused node"));
    return push(state, target, FocusMode::Normal);
}

ExplorationState FocusLayout::resolve_focus(const ExplorationState& state) const {
    const FocusState& focus = state.focus();
    if (focus.stack.empty()) throw Error(ErrorCode::EmptyStack, "nothing is focused");
    const std::size_t keep = focus.stack.size() - 1;
    ExplorationState prev;
    prev.frame = state.checkpoints[keep];
    prev.checkpoints.assign(state.checkpoints.begin(), state.checkpoints.begin() + static_cast<std::ptrdiff_t>(keep));
    return prev;
}

ExplorationState FocusLayout::compare_focus(const ExplorationState& state, NodeId target) const {
    const auto& node = tree_->node(target);
    const FocusState& focus = state.focus();
    if (focus.stack.empty()) return request_focus(state, target);

    ExplorationState base = state;
    if (focus.comparison) base = resolve_comparison(state);
    const auto& stack = base.focus().stack;
    const bool valid = node.level == tree_->nodes[stack.back()].level &&
                       std::find(stack.begin(), stack.end(), target) == stack.end() &&
                       is_visible_node(*base.frame, target);
    if (!valid) return request_focus(state, target);
    return push(base, target, FocusMode::Comparing);
}

ExplorationState FocusLayout::resolve_comparison(const ExplorationState& state) const {
    if (!state.focus().comparison) throw Error(ErrorCode::NotComparing, "no comparison is active");
    ExplorationState prev;
    prev.frame = state.checkpoints.back();
    prev.checkpoints.assign(state.checkpoints.begin(), state.checkpoints.end() - 1);
    return prev;
}

ExplorationState FocusLayout::set_global_level(const ExplorationState& state, int level) const {
    const FocusState& focus = state.focus();
    if (!focus.stack.empty() || focus.comparison)
        throw Error(ErrorCode::FocusActive, "resolve every focus before changing the global level");
    if (level < 1 || level > std::max(2, tree_->max_level()))
        throw Error(ErrorCode::InvalidLevel, "level " + std::to_string(level) + " outside [1, " +
                                                 std::to_string(std::max(2, tree_->max_level())) + "]");
    return start(level);
}

}  // namespace focustree
