#include "focustree/service.hpp"

#include "focustree/embedding_io.hpp"
#include "focustree/json_codec.hpp"
#include "focustree/overlap_removal.hpp"
#include "focustree/replay.hpp"
#include "focustree/summaries.hpp"

#include <charconv>
#include <cstdio>
#include <sstream>
#include <vector>

namespace focustree {

using nlohmann::json;

struct ExplorerService::TreeEntry {
    std::shared_ptr<const Dataset> dataset;
    std::shared_ptr<const Tree> tree;
    std::shared_ptr<const FocusLayout> layout;
    mutable std::mutex summaries_mutex;
    mutable std::map<NodeId, json> summaries;

    const json& summary(NodeId id) const {
        std::lock_guard lock(summaries_mutex);
        auto it = summaries.find(id);
        if (it == summaries.end()) it = summaries.emplace(id, to_json(summarize(tree->node(id), *dataset))).first;
        return it->second;
    }
};

struct ExplorerService::Session {
    std::string id;
    std::string dataset_id;
    std::shared_ptr<const TreeEntry> entry;
    mutable std::mutex mutex;
    ExplorationState state;
    std::uint64_t sequence = 0;  // ops applied, for client staleness checks
};

namespace {

std::string require_string(const json& body, const char* key) {
    if (!body.is_object() || !body.contains(key) || !body[key].is_string())
        throw Error(ErrorCode::BadRequest, std::string("missing string field '") + key + "'");
    return body[key].get<std::string>();
}

std::int64_t require_int(const json& body, const char* key) {
    if (!body.contains(key) || !body[key].is_number_integer())
        throw Error(ErrorCode::BadRequest, std::string("missing integer field '") + key + "'");
    return body[key].get<std::int64_t>();
}

json parse_body(std::string_view text) {
    if (text.empty()) return json::object();
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw Error(ErrorCode::BadRequest, std::string("request body is not valid JSON: ") + e.what());
    }
}

NodeId parse_node(std::string_view text) {
    std::uint64_t v = 0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || end != text.data() + text.size() || v > std::numeric_limits<NodeId>::max())
        throw Error(ErrorCode::UnknownNode, "no node '" + std::string(text) + "'");
    return static_cast<NodeId>(v);
}

std::vector<std::string_view> split_path(std::string_view path) {
    std::vector<std::string_view> parts;
    std::size_t pos = 0;
    while (pos < path.size()) {
        const std::size_t slash = path.find('/', pos);
        const std::size_t end = slash == std::string_view::npos ? path.size() : slash;
        if (end > pos) parts.push_back(path.substr(pos, end - pos));
        pos = end + 1;
    }
    return parts;
}

Dataset dataset_from_points(const json& arr) {
    if (!arr.is_array()) throw Error(ErrorCode::BadRequest, "'points' must be an array");
    std::ostringstream jsonl;
    for (const auto& p : arr) jsonl << p.dump() << '\n';
    std::istringstream in(jsonl.str());
    return read_dataset(in, DataFormat::Jsonl);
}

DataFormat require_format(const std::string& name) {
    const auto f = parse_format(name);
    if (!f) throw Error(ErrorCode::BadRequest, "unknown dataset format '" + name + "' (expected csv or jsonl)");
    return *f;
}

}  // namespace

ExplorerService::ExplorerService(Viewport viewport) : viewport_(viewport) {}

ExplorerService::~ExplorerService() = default;

int ExplorerService::status_for(ErrorCode code) {
    switch (code) {
    case ErrorCode::UnknownDataset:
    case ErrorCode::UnknownSession:
    case ErrorCode::UnknownNode: return 404;
    case ErrorCode::NotAChild:
    case ErrorCode::AlreadyFocused:
    case ErrorCode::EmptyStack:
    case ErrorCode::NotComparing:
    case ErrorCode::ComparisonActive:
    case ErrorCode::FocusActive:
    case ErrorCode::InvalidLevel:
    case ErrorCode::NotALeaf:
    case ErrorCode::TooManyMarkers:
    case ErrorCode::NonConvergence:
    case ErrorCode::FingerprintMismatch: return 409;
    case ErrorCode::BuildFailure: return 500;
    default: return 400;
    }
}

json ExplorerService::error_body(std::string_view code, std::string_view message) {
    return {{"error", {{"code", std::string(code)}, {"message", std::string(message)}}}};
}

std::shared_ptr<const Dataset> ExplorerService::find_dataset(const std::string& id) const {
    std::shared_lock lock(datasets_mutex_);
    const auto it = datasets_.find(id);
    if (it == datasets_.end()) throw Error(ErrorCode::UnknownDataset, "no dataset '" + id + "'");
    return it->second;
}

std::shared_ptr<ExplorerService::Session> ExplorerService::find_session(const std::string& id) const {
    std::shared_lock lock(sessions_mutex_);
    const auto it = sessions_.find(id);
    if (it == sessions_.end()) throw Error(ErrorCode::UnknownSession, "no session '" + id + "'");
    return it->second;
}

json ExplorerService::add_dataset(const json& body) {
    if (!body.is_object()) throw Error(ErrorCode::BadRequest, "dataset request must be a JSON object");
    Dataset ds;
    if (body.contains("points")) {
        ds = dataset_from_points(body["points"]);
    } else if (body.contains("content")) {
        const auto format = require_format(body.value("format", std::string("csv")));
        std::istringstream in(require_string(body, "content"));
        ds = read_dataset(in, format);
    } else if (body.contains("path")) {
        const std::string path = require_string(body, "path");
        const auto format = body.contains("format") ? require_format(require_string(body, "format")) : format_from_path(path);
        ds = load_dataset(path, format);
    } else {
        throw Error(ErrorCode::BadRequest, "dataset request needs 'points', 'content' or 'path'");
    }
    auto shared = std::make_shared<const Dataset>(std::move(ds));
    const std::string id = shared->fingerprint_hex();
    {
        std::unique_lock lock(datasets_mutex_);
        datasets_.try_emplace(id, shared);
    }
    return {{"dataset_id", id},
            {"size", shared->size()},
            {"feature_dim", shared->feature_dim()},
            {"has_thumbnails", shared->has_thumbnails()}};
}

json ExplorerService::create_session(const json& body) {
    const std::string dataset_id = require_string(body, "dataset_id");
    auto dataset = find_dataset(dataset_id);
    const json cfg = body.value("config", json::object());
    if (!cfg.is_object()) throw Error(ErrorCode::BadRequest, "'config' must be an object");

    BuildConfig config;
    try {
        if (cfg.contains("k_px"))
            config.grid.cell_size = cfg.at("k_px").get<double>() * viewport_.layout_per_pixel(dataset->bounds());
        else if (cfg.contains("k"))
            config.grid.cell_size = cfg.at("k").get<double>();
        else
            throw Error(ErrorCode::BadRequest, "config needs 'k' or 'k_px'");
        config.grid.window = cfg.value("alpha", 1);
        config.min_cluster_size = cfg.value("pi", std::size_t{200});
    } catch (const json::exception& e) {
        throw Error(ErrorCode::BadRequest, std::string("bad config: ") + e.what());
    }
    config.validate();

    const TreeKey key{dataset->fingerprint(), config.grid.cell_size, config.grid.window, config.min_cluster_size};
    std::shared_ptr<TreeEntry> entry;
    {
        std::lock_guard lock(trees_mutex_);
        auto& slot = trees_[key];
        if (!slot) {
            auto fresh = std::make_shared<TreeEntry>();
            fresh->dataset = dataset;
            try {
                fresh->tree = std::make_shared<const Tree>(build_tree(*dataset, config));
            } catch (const Error& e) {
                trees_.erase(key);
                if (e.code() == ErrorCode::InvalidConfig) throw;
                throw Error(ErrorCode::BuildFailure, e.what());
            } catch (const std::exception& e) {
                trees_.erase(key);
                throw Error(ErrorCode::BuildFailure, e.what());
            }
            fresh->layout = std::make_shared<const FocusLayout>(dataset, fresh->tree,
                                                                LayoutParams::for_dataset(*dataset, viewport_));
            ++tree_builds_;
            slot = fresh;
        }
        entry = slot;
    }

    auto session = std::make_shared<Session>();
    char buf[32];
    std::snprintf(buf, sizeof buf, "s%06llu", static_cast<unsigned long long>(next_session_++));
    session->id = buf;
    session->dataset_id = dataset_id;
    session->entry = entry;
    session->state = entry->layout->start();
    {
        std::unique_lock lock(sessions_mutex_);
        sessions_.emplace(session->id, session);
    }
    std::lock_guard lock(session->mutex);
    json out = frame_payload(*session);
    out["dataset_id"] = dataset_id;
    out["tree"] = {{"nodes", entry->tree->nodes.size()},
                   {"max_level", entry->tree->max_level()},
                   {"depth", entry->tree->depth()},
                   {"config",
                    {{"k", config.grid.cell_size}, {"alpha", config.grid.window}, {"pi", config.min_cluster_size}}}};
    return out;
}

json ExplorerService::frame_payload(const Session& s) const {
    json summaries = json::object();
    for (const auto& m : s.state.frame->markers)
        if (!m.is_point) summaries[std::to_string(m.node)] = s.entry->summary(m.node);
    return {{"session_id", s.id},
            {"sequence", s.sequence},
            {"iteration", s.state.frame->iteration},
            {"frame", to_json(*s.state.frame)},
            {"summaries", std::move(summaries)}};
}

json ExplorerService::apply(const std::string& session_id, const json& body) {
    auto session = find_session(session_id);
    const auto kind = parse_op_kind(require_string(body, "op"));
    if (!kind) throw Error(ErrorCode::BadRequest, "unknown op '" + body["op"].get<std::string>() + "'");
    FocusOp op{*kind, 0, 0};
    if (*kind == OpKind::SetGlobalLevel)
        op.arg = require_int(body, "level");
    else if (op_takes_argument(*kind))
        op.arg = require_int(body, "target");

    std::lock_guard lock(session->mutex);
    session->state = apply_op(*session->entry->layout, session->state, op);
    ++session->sequence;
    return frame_payload(*session);
}

json ExplorerService::frame(const std::string& session_id) const {
    auto session = find_session(session_id);
    std::lock_guard lock(session->mutex);
    return frame_payload(*session);
}

json ExplorerService::summary(const std::string& session_id, NodeId node) const {
    auto session = find_session(session_id);
    json out = session->entry->summary(node);
    out["info"] = node_info(session->entry->tree->node(node));
    return out;
}

json ExplorerService::leaf_points(const std::string& session_id, NodeId node_id) const {
    auto session = find_session(session_id);
    const TreeEntry& entry = *session->entry;
    const TreeNode& node = entry.tree->node(node_id);
    if (!node.is_leaf) throw Error(ErrorCode::NotALeaf, "node " + std::to_string(node_id) + " has children");
    FramePtr frame;
    {
        std::lock_guard lock(session->mutex);
        frame = session->state.frame;
    }
    const double radius = entry.layout->params().style.point_radius;
    std::vector<Marker> markers;
    markers.reserve(node.size());
    for (PointId id : node.member_ids) {
        const Vec2 p = frame->positions[entry.dataset->row_of_checked(id)];
        markers.push_back({id, p.x, p.y, radius});
    }
    const auto result = remove_overlaps(markers, 1000, 4 * entry.tree->config.min_cluster_size);
    return leaf_points_json(node, *entry.dataset, result);
}

ServiceResponse ExplorerService::handle(std::string_view method, std::string_view path,
                                        const std::map<std::string, std::string>& query, std::string_view body) {
    try {
        const auto parts = split_path(path);
        auto session_param = [&]() -> std::string {
            const auto it = query.find("session");
            if (it == query.end()) throw Error(ErrorCode::BadRequest, "query parameter 'session' is required");
            return it->second;
        };
        if (method == "POST" && parts.size() == 1 && parts[0] == "datasets")
            return {201, add_dataset(parse_body(body))};
        if (method == "POST" && parts.size() == 1 && parts[0] == "sessions")
            return {201, create_session(parse_body(body))};
        if (parts.size() == 3 && parts[0] == "sessions") {
            const std::string id(parts[1]);
            if (method == "POST" && parts[2] == "ops") return {200, apply(id, parse_body(body))};
            if (method == "GET" && parts[2] == "frame") return {200, frame(id)};
        }
        if (method == "GET" && parts.size() == 3 && parts[0] == "nodes") {
            if (parts[2] == "summary") return {200, summary(session_param(), parse_node(parts[1]))};
            if (parts[2] == "leaf-points") return {200, leaf_points(session_param(), parse_node(parts[1]))};
        }
        return {404, error_body("NotFound", "no route for " + std::string(method) + " " + std::string(path))};
    } catch (const Error& e) {
        return {status_for(e.code()), error_body(e.code_name(), e.what())};
    } catch (const std::exception& e) {
        return {500, error_body("Internal", e.what())};
    }
}

}  // namespace focustree
