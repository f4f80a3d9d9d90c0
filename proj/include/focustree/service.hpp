#pragma once

#include "focustree/error.hpp"
#include "focustree/focus_layout.hpp"

#include <json.hpp>

#include <atomic>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <tuple>

namespace focustree {

struct ServiceResponse {
    int status = 200;
    nlohmann::json body;
};

// Transport-independent request handling. Datasets and trees are shared
// immutably; each session serializes its own ops.
class ExplorerService {
public:
    explicit ExplorerService(Viewport viewport = {});
    ~ExplorerService();

    // {"format": "csv"|"jsonl", "content": "..."} or {"path": "..."} or {"points": [...]}.
    nlohmann::json add_dataset(const nlohmann::json& body);
    // {"dataset_id", "config": {"k" | "k_px", "alpha", "pi"}}.
    nlohmann::json create_session(const nlohmann::json& body);
    // {"op": name, "target": node} or {"op": "set_global_level", "level": L}.
    nlohmann::json apply(const std::string& session_id, const nlohmann::json& body);
    nlohmann::json frame(const std::string& session_id) const;
    nlohmann::json summary(const std::string& session_id, NodeId node) const;
    nlohmann::json leaf_points(const std::string& session_id, NodeId node) const;

    // Routes the endpoint table; never throws.
    ServiceResponse handle(std::string_view method, std::string_view path,
                           const std::map<std::string, std::string>& query, std::string_view body);

    std::size_t tree_builds() const { return tree_builds_.load(); }

    static int status_for(ErrorCode code);
    static nlohmann::json error_body(std::string_view code, std::string_view message);

private:
    struct TreeEntry;
    struct Session;
    using TreeKey = std::tuple<std::uint64_t, double, int, std::size_t>;

    std::shared_ptr<const Dataset> find_dataset(const std::string& id) const;
    std::shared_ptr<Session> find_session(const std::string& id) const;
    nlohmann::json frame_payload(const Session& session) const;

    Viewport viewport_;
    mutable std::shared_mutex datasets_mutex_;
    std::map<std::string, std::shared_ptr<const Dataset>> datasets_;
    std::mutex trees_mutex_;
    std::map<TreeKey, std::shared_ptr<TreeEntry>> trees_;
    mutable std::shared_mutex sessions_mutex_;
    std::map<std::string, std::shared_ptr<Session>> sessions_;
    std::atomic<std::uint64_t> next_session_{1};
    std::atomic<std::size_t> tree_builds_{0};
};

}  // namespace focustree
