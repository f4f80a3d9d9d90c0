#include "../support/generators.hpp"

#include "focustree/embedding_io.hpp"
#include "focustree/http_server.hpp"
#include "focustree/service.hpp"
#include "focustree/synth.hpp"

#include <doctest.h>
#include <httplib.h>

#include <sstream>
#include <thread>

using namespace focustree;
using nlohmann::json;

namespace {

std::string csv_of(const Dataset& d) {
    std::ostringstream out;
    write_dataset(d, out, DataFormat::Csv);
    return out.str();
}

struct Client {
    ExplorerService& s;
    ServiceResponse call(const std::string& method, const std::string& path, const json& body = nullptr,
                         std::map<std::string, std::string> query = {}) {
        return s.handle(method, path, query, body.is_null() ? "" : body.dump());
    }
};

std::string make_session(Client& c, const Dataset& d, double k = 3.0, std::size_t pi = 15) {
    const auto ds = c.call("POST", "/datasets", {{"format", "csv"}, {"content", csv_of(d)}});
    REQUIRE(ds.status == 201);
    const auto s = c.call("POST", "/sessions", {{"dataset_id", ds.body["dataset_id"]}, {"config", {{"k", k}, {"alpha", 1}, {"pi", pi}}}});
    REQUIRE(s.status == 201);
    return s.body["session_id"].get<std::string>();
}

Dataset demo(std::uint64_t seed = 3, std::size_t n = 2000) {
    SynthConfig c;
    c.n = n;
    c.blobs = 4;
    c.seed = seed;
    c.thumbnails = true;
    return synthesize(c);
}

}  // namespace

TEST_CASE("session lifecycle over the endpoint table") {
    ExplorerService svc;
    Client c{svc};
    const Dataset d = demo();
    const auto ds = c.call("POST", "/datasets", {{"format", "csv"}, {"content", csv_of(d)}});
    REQUIRE(ds.status == 201);
    CHECK(ds.body["dataset_id"] == d.fingerprint_hex());
    CHECK(ds.body["size"] == 2000);

    const json create = {{"dataset_id", d.fingerprint_hex()}, {"config", {{"k", 1.0}, {"alpha", 1}, {"pi", 15}}}};
    const auto s1 = c.call("POST", "/sessions", create);
    REQUIRE(s1.status == 201);
    const auto s2 = c.call("POST", "/sessions", create);
    CHECK(svc.tree_builds() == 1);
    CHECK(s1.body["frame"] == s2.body["frame"]);
    CHECK(s1.body["session_id"] != s2.body["session_id"]);
    const std::string sid = s1.body["session_id"];
    const auto& markers = s1.body["frame"]["markers"];
    CHECK(markers.size() == s1.body["summaries"].size());
    CHECK(s1.body["iteration"] == 0);

    const NodeId first = markers[0]["node"];
    const auto r = c.call("POST", "/sessions/" + sid + "/ops", {{"op", "request"}, {"target", first}});
    REQUIRE(r.status == 200);
    CHECK(r.body["sequence"] == 1);
    CHECK(r.body["iteration"] == 1);
    CHECK(r.body["frame"]["polygons"].size() == 1);
    CHECK(c.call("GET", "/sessions/" + sid + "/frame").body == r.body);

    // Session isolation: the second session still shows its initial frame.
    CHECK(c.call("GET", "/sessions/" + std::string(s2.body["session_id"]) + "/frame").body["frame"] == s2.body["frame"]);

    const auto back = c.call("POST", "/sessions/" + sid + "/ops", {{"op", "resolve"}});
    CHECK(back.body["frame"] == s1.body["frame"]);
    CHECK(back.body["sequence"] == 2);
    const auto empty = c.call("POST", "/sessions/" + sid + "/ops", {{"op", "resolve"}});
    CHECK(empty.status == 409);
    CHECK(empty.body["error"]["code"] == "EmptyStack");

    const auto summary = c.call("GET", "/nodes/" + std::to_string(first) + "/summary", nullptr, {{"session", sid}});
    REQUIRE(summary.status == 200);
    CHECK(summary.body["node"] == first);
    CHECK(summary.body["representative"]["thumbnail"].is_string());
}

TEST_CASE("error codes and statuses") {
    ExplorerService svc;
    Client c{svc};
    CHECK(c.call("POST", "/sessions", {{"dataset_id", "nope"}, {"config", {{"k", 1.0}}}}).body["error"]["code"] ==
          "UnknownDataset");
    CHECK(c.call("GET", "/sessions/nope/frame").status == 404);
    CHECK(c.call("GET", "/sessions/nope/frame").body["error"]["code"] == "UnknownSession");
    CHECK(c.call("POST", "/datasets", nullptr).status == 400);
    CHECK(svc.handle("POST", "/datasets", {}, "{broken").status == 400);
    CHECK(c.call("POST", "/datasets", {{"content", "id,x,y,label\n0,nan,0,a\n"}}).body["error"]["code"] ==
          "NonFiniteCoordinate");
    CHECK(c.call("GET", "/elsewhere").status == 404);

    const Dataset d = demo();
    const std::string sid = make_session(c, d);
    CHECK(c.call("POST", "/sessions/" + sid + "/ops", {{"op", "zoom"}}).status == 400);
    CHECK(c.call("POST", "/sessions/" + sid + "/ops", {{"op", "request"}}).status == 400);
    const auto unknown = c.call("POST", "/sessions/" + sid + "/ops", {{"op", "request"}, {"target", 987654}});
    CHECK(unknown.status == 404);
    CHECK(unknown.body["error"]["code"] == "UnknownNode");
    CHECK(c.call("GET", "/nodes/0/summary").status == 400);
    CHECK(c.call("GET", "/nodes/x/summary", nullptr, {{"session", sid}}).status == 404);
    const auto bad_cfg = c.call("POST", "/sessions", {{"dataset_id", d.fingerprint_hex()}, {"config", {{"k", -1.0}}}});
    CHECK(bad_cfg.status == 400);
    CHECK(bad_cfg.body["error"]["code"] == "InvalidConfig");
    CHECK(c.call("GET", "/nodes/0/leaf-points", nullptr, {{"session", sid}}).body["error"]["code"] == "NotALeaf");
}

TEST_CASE("leaf points are overlap free and carry metadata") {
    ExplorerService svc;
    Client c{svc};
    const Dataset d = demo(9, 3000);
    const std::string sid = make_session(c, d, 3.0, 10);
    const auto frame = c.call("GET", "/sessions/" + sid + "/frame").body;
    NodeId leaf = 0;
    bool found = false;
    for (const auto& m : frame["frame"]["markers"]) {
        const auto info = c.call("GET", "/nodes/" + std::to_string(m["node"].get<int>()) + "/summary", nullptr, {{"session", sid}});
        if (info.body["info"]["is_leaf"].get<bool>()) {
            leaf = m["node"];
            found = true;
            break;
        }
    }
    REQUIRE(found);
    const auto pts = c.call("GET", "/nodes/" + std::to_string(leaf) + "/leaf-points", nullptr, {{"session", sid}});
    REQUIRE(pts.status == 200);
    CHECK(pts.body["converged"] == true);
    const auto& ps = pts.body["points"];
    for (std::size_t i = 0; i < ps.size(); ++i) {
        CHECK(ps[i]["label"].is_string());
        CHECK(ps[i]["thumbnail"].is_string());
        for (std::size_t j = i + 1; j < ps.size(); ++j) {
            const double dd = std::hypot(ps[i]["x"].get<double>() - ps[j]["x"].get<double>(),
                                         ps[i]["y"].get<double>() - ps[j]["y"].get<double>());
            CHECK(dd >= ps[i]["radius"].get<double>() + ps[j]["radius"].get<double>() - 1e-6);
        }
    }
}

TEST_CASE("interleaved sessions replay identically") {
    ExplorerService svc;
    Client c{svc};
    const Dataset d = demo(4);
    const std::string a = make_session(c, d), b = make_session(c, d);
    const auto start = c.call("GET", "/sessions/" + a + "/frame").body["frame"];
    const NodeId n0 = start["markers"][0]["node"], n1 = start["markers"][1]["node"];
    std::vector<json> ops{{{"op", "request"}, {"target", n0}}, {{"op", "compare"}, {"target", n1}},
                          {{"op", "resolve_comparison"}}, {{"op", "resolve"}}, {{"op", "set_global_level"}, {"level", 3}}};
    std::vector<json> fa, fb;
    for (const auto& op : ops) {
        fa.push_back(c.call("POST", "/sessions/" + a + "/ops", op).body["frame"]);
        c.call("GET", "/sessions/" + b + "/frame");
    }
    for (const auto& op : ops) fb.push_back(c.call("POST", "/sessions/" + b + "/ops", op).body["frame"]);
    for (std::size_t i = 0; i < ops.size(); ++i) CHECK(fa[i].dump() == fb[i].dump());
}

TEST_CASE("concurrent sessions from several threads") {
    ExplorerService svc;
    Client c{svc};
    const Dataset d = demo(6);
    std::vector<std::string> ids;
    for (int i = 0; i < 4; ++i) ids.push_back(make_session(c, d));
    const json start = c.call("GET", "/sessions/" + ids[0] + "/frame").body["frame"];
    const NodeId n0 = start["markers"][0]["node"];
    std::vector<std::thread> threads;
    std::vector<std::string> finals(ids.size());
    for (std::size_t t = 0; t < ids.size(); ++t)
        threads.emplace_back([&, t] {
            for (int rep = 0; rep < 10; ++rep) {
                svc.handle("POST", "/sessions/" + ids[t] + "/ops", {}, json{{"op", "request"}, {"target", n0}}.dump());
                svc.handle("POST", "/sessions/" + ids[t] + "/ops", {}, json{{"op", "resolve"}}.dump());
            }
            finals[t] = svc.handle("GET", "/sessions/" + ids[t] + "/frame", {}, "").body["frame"].dump();
        });
    for (auto& th : threads) th.join();
    for (const auto& f : finals) CHECK(f == start.dump());
}

TEST_CASE("http transport round trip") {
    ExplorerService svc;
    HttpServer server(svc);
    const int port = server.bind("127.0.0.1", 0);
    REQUIRE(port > 0);
    std::thread th([&] { server.run(); });
    httplib::Client cli("127.0.0.1", port);
    const Dataset d = demo(2, 600);
    auto res = cli.Post("/datasets", json{{"content", csv_of(d)}}.dump(), "application/json");
    REQUIRE(res);
    CHECK(res->status == 201);
    const std::string id = json::parse(res->body)["dataset_id"];
    res = cli.Post("/sessions", json{{"dataset_id", id}, {"config", {{"k", 2.0}, {"pi", 10}}}}.dump(), "application/json");
    REQUIRE(res);
    CHECK(res->status == 201);
    const std::string sid = json::parse(res->body)["session_id"];
    res = cli.Get(("/sessions/" + sid + "/frame").c_str());
    REQUIRE(res);
    CHECK(res->status == 200);
    CHECK(res->get_header_value("Access-Control-Allow-Origin") == "*");
    res = cli.Get("/nodes/0/summary?session=" + sid);
    REQUIRE(res);
    CHECK(json::parse(res->body)["node"] == 0);
    res = cli.Post(("/sessions/" + sid + "/ops").c_str(), R"({"op":"resolve"})", "application/json");
    REQUIRE(res);
    CHECK(res->status == 409);
    server.stop();
    th.join();
}
