// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 idrecon contributors

#pragma once

#include <memory>
#include <string>
#include <thread>

#include "idrecon/error.hpp"
#include "idrecon/workspace.hpp"

namespace httplib {
class Server;
}

namespace idrecon {

/// HTTP status for a domain error.
int http_status_for(ErrorCode code) noexcept;

/// JSON over HTTP for one workspace. Not authenticated; bind to localhost.
class ApiService {
  public:
    explicit ApiService(Workspace& workspace);
    ~ApiService();

    ApiService(const ApiService&) = delete;
    ApiService& operator=(const ApiService&) = delete;

    /// Binds the socket; port 0 picks a free one. Returns the bound port. Throws BindError.
    int bind(const std::string& host, int port);
    /// Serves on the calling thread until stop().
    void listen();
    /// Serves on a background thread.
    void start();
    /// Stops accepting requests, waits for running jobs and writes the graph.
    void stop();

    [[nodiscard]] int port() const noexcept { return port_; }

  private:
    void routes();

    Workspace& workspace_;
    std::unique_ptr<httplib::Server> server_;
    std::thread thread_;
    int port_ = 0;
    bool stopped_ = false;
};

}  // namespace idrecon
