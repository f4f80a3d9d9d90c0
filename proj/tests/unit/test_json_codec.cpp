#include "focustree/json_codec.hpp"

#include <doctest.h>

using namespace focustree;
using nlohmann::json;

TEST_CASE("frame wire shape") {
    LayoutFrame f;
    f.iteration = 2;
    f.focus.stack = {4, 9};
    f.focus.comparison = 11;
    LayoutMarker node;
    node.node = 12;
    node.point = 77;
    node.pos = {1.5, -2.0};
    node.radius = 3.0;
    node.level = 3;
    node.in_focus = true;
    node.member_count = 40;
    LayoutMarker pt;
    pt.is_point = true;
    pt.node = 9;
    pt.point = 5;
    pt.level = 4;
    f.markers = {node, pt};
    f.polygons.push_back({4, 2, PolygonRole::Focus, 1, {{0, 0}, {1, 0}, {0, 1}}});
    f.polygons.push_back({11, 3, PolygonRole::Comparison, 2, {}});
    f.translation = Translation{11, {0.5, 0.25}, 1.75, FocusMode::Comparing};
    f.positions = {{9, 9}};

    const json j = to_json(f);
    CHECK(j["iteration"] == 2);
    CHECK(j["focus"] == json{{"stack", {4, 9}}, {"comparison", 11}, {"base_level", 2}, {"mode", "comparing"}});
    CHECK(j["markers"][0] == json{{"kind", "node"}, {"node", 12}, {"point", 77}, {"x", 1.5}, {"y", -2.0},
                                  {"radius", 3.0}, {"level", 3}, {"in_focus", true}, {"member_count", 40}});
    CHECK(j["markers"][1]["kind"] == "point");
    CHECK(j["polygons"][0]["vertices"] == json{{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}});
    CHECK(j["polygons"][1]["role"] == "comparison");
    CHECK(j["translation"] == json{{"target", 11}, {"anchor", {0.5, 0.25}}, {"f", 1.75}, {"mode", "comparing"}});
    CHECK(j["level_colors"] == json{{{"level", 2}, {"saturation", 1}}, {{"level", 3}, {"saturation", 2}},
                                    {{"level", 4}, {"saturation", 3}}});
    CHECK_FALSE(j.contains("positions"));

    const std::string doc = frame_document(f);
    CHECK(doc.back() == '\n');
    CHECK(json::parse(doc) == j);
    f.translation.reset();
    CHECK(to_json(f)["translation"].is_null());
}

TEST_CASE("summary and node wire shape") {
    ClusterSummary s;
    s.node = 3;
    s.representative = 8;
    s.size = 10;
    s.most_similar = {1, 2, 3};
    s.diverse = {4, 5, 6};
    s.class_histogram = {{"a", 7}, {"b", 3}};
    s.purity = 0.7;
    const json j = to_json(s);
    CHECK(j["representative"] == json{{"id", 8}, {"thumbnail", nullptr}});
    CHECK(j["class_histogram"] == json{{{"label", "a"}, {"count", 7}}, {{"label", "b"}, {"count", 3}}});
    CHECK(j["distance_space"] == "layout");
    s.feature_space = true;
    s.representative_thumbnail = "t.png";
    CHECK(to_json(s)["distance_space"] == "features");
    CHECK(to_json(s)["representative"]["thumbnail"] == "t.png");

    TreeNode n;
    n.id = 5;
    n.level = 2;
    n.parent = 0;
    n.member_ids = {1, 2};
    n.leaf_kind = LeafKind::Collapsed;
    const json info = node_info(n);
    CHECK(info["size"] == 2);
    CHECK(info["leaf_kind"] == "collapsed");
    CHECK_FALSE(info.contains("member_ids"));
}
