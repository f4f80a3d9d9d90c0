#pragma once

#include "focustree/service.hpp"

#include <memory>
#include <string>

namespace focustree {

// HTTP transport for ExplorerService. JSON bodies; CORS open for local clients.
class HttpServer {
public:
    explicit HttpServer(ExplorerService& service);
    ~HttpServer();

    // Returns the bound port, or -1. Port 0 picks a free port.
    int bind(const std::string& host, int port);
    // Blocks until stop() is called.
    bool run();
    void stop();

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace focustree
