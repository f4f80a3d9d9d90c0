#include "focustree/http_server.hpp"

#include <httplib.h>

namespace focustree {

struct HttpServer::Impl {
    ExplorerService& service;
    httplib::Server server;

    explicit Impl(ExplorerService& s) : service(s) {
        auto route = [this](const httplib::Request& req, httplib::Response& res) {
            std::map<std::string, std::string> query;
            for (const auto& [k, v] : req.params) query.emplace(k, v);
            const ServiceResponse out = service.handle(req.method, req.path, query, req.body);
            res.status = out.status;
            res.set_content(out.body.dump(), "application/json");
        };
        server.Get(R"(/.*)", route);
        server.Post(R"(/.*)", route);
        server.Options(R"(/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
        server.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                                    {"Access-Control-Allow-Headers", "Content-Type"},
                                    {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"}});
    }
};

HttpServer::HttpServer(ExplorerService& service) : impl_(std::make_unique<Impl>(service)) {}

HttpServer::~HttpServer() = default;

int HttpServer::bind(const std::string& host, int port) {
    if (port == 0) return impl_->server.bind_to_any_port(host);
    return impl_->server.bind_to_port(host, port) ? port : -1;
}

bool HttpServer::run() { return impl_->server.listen_after_bind(); }

void HttpServer::stop() { impl_->server.stop(); }

}  // namespace focustree
