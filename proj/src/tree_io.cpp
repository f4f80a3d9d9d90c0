#include "focustree/tree_io.hpp"

#include "focustree/error.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace focustree {

using nlohmann::json;

namespace {

constexpr const char* kFormat = "focustree.tree/1";

LeafKind leaf_kind_from(const std::string& s) {
    if (s == "none") return LeafKind::None;
    if (s == "small") return LeafKind::Small;
    if (s == "collapsed") return LeafKind::Collapsed;
    throw Error(ErrorCode::ParseError, "unknown leaf kind '" + s + "'");
}

}  // namespace

std::string_view to_string(LeafKind kind) {
    switch (kind) {
    case LeafKind::None: return "none";
    case LeafKind::Small: return "small";
    case LeafKind::Collapsed: return "collapsed";
    }
    return "none";
}

std::string serialize_tree(const Tree& tree) {
    json nodes = json::array();
    for (const auto& n : tree.nodes) {
        nodes.push_back({
            {"id", n.id},
            {"level", n.level},
            {"index", n.index},
            {"parent", n.parent ? json(*n.parent) : json(nullptr)},
            {"representative_id", n.representative_id},
            {"member_ids", n.member_ids},
            {"children", n.children},
            {"is_leaf", n.is_leaf},
            {"leaf_kind", std::string(to_string(n.leaf_kind))},
        });
    }
    json doc = {
        {"format", kFormat},
        {"config",
         {{"k", tree.config.grid.cell_size},
          {"alpha", tree.config.grid.window},
          {"pi", tree.config.min_cluster_size}}},
        {"dataset_fingerprint", to_hex(tree.dataset_fingerprint)},
        {"nodes", std::move(nodes)},
    };
    return doc.dump() + "\n";
}

Tree deserialize_tree(const std::string& text) {
    try {
        const json doc = json::parse(text);
        if (doc.value("format", "") != kFormat) throw Error(ErrorCode::ParseError, "not a focustree tree document");
        Tree tree;
        const auto& cfg = doc.at("config");
        tree.config.grid.cell_size = cfg.at("k").get<double>();
        tree.config.grid.window = cfg.at("alpha").get<int>();
        tree.config.min_cluster_size = cfg.at("pi").get<std::size_t>();
        tree.dataset_fingerprint = std::stoull(doc.at("dataset_fingerprint").get<std::string>(), nullptr, 16);
        for (const auto& jn : doc.at("nodes")) {
            TreeNode n;
            n.id = jn.at("id").get<NodeId>();
            n.level = jn.at("level").get<int>();
            n.index = jn.at("index").get<int>();
            if (!jn.at("parent").is_null()) n.parent = jn.at("parent").get<NodeId>();
            n.representative_id = jn.at("representative_id").get<PointId>();
            n.member_ids = jn.at("member_ids").get<std::vector<PointId>>();
            n.children = jn.at("children").get<std::vector<NodeId>>();
            n.is_leaf = jn.at("is_leaf").get<bool>();
            n.leaf_kind = leaf_kind_from(jn.at("leaf_kind").get<std::string>());
            tree.nodes.push_back(std::move(n));
        }
        if (tree.nodes.empty()) throw Error(ErrorCode::ParseError, "tree document has no nodes");
        return tree;
    } catch (const json::exception& e) {
        throw Error(ErrorCode::ParseError, std::string("malformed tree document: ") + e.what());
    } catch (const std::invalid_argument&) {
        throw Error(ErrorCode::ParseError, "malformed dataset fingerprint");
    }
}

void save_tree(const Tree& tree, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoFailure, "cannot write " + path.string());
    out << serialize_tree(tree);
    if (!out) throw Error(ErrorCode::IoFailure, "write failed: " + path.string());
}

Tree load_tree(const std::filesystem::path& path, const Dataset& dataset) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::IoFailure, "cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    Tree tree = deserialize_tree(buf.str());
    if (tree.dataset_fingerprint != dataset.fingerprint())
        throw Error(ErrorCode::FingerprintMismatch, "tree " + path.string() + " was built from dataset " +
                                                        to_hex(tree.dataset_fingerprint) + ", not " +
                                                        dataset.fingerprint_hex());
    return tree;
}

}  // namespace focustree
