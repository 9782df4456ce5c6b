// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 idrecon contributors

#pragma once

#include <chrono>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace idrecon {

struct HttpRequest {
    std::string method = "GET";
    std::string url;
};

struct HttpResponse {
    int status = 0;
    std::map<std::string, std::string> headers;
    std::string body;

    friend bool operator==(const HttpResponse&, const HttpResponse&) = default;
};

/// Something that can actually put bytes on the wire. Throws NetworkFailure.
class HttpBackend {
  public:
    virtual ~HttpBackend() = default;
    virtual HttpResponse send(const HttpRequest& request) = 0;
};

struct LiveOptions {
    std::string user_agent = "idrecon/0.1 (identity OSINT self-assessment)";
    std::chrono::milliseconds timeout{10000};
    std::chrono::milliseconds delay{0};
};

/// cpp-httplib backed client; http and https, redirects are not followed.
class HttplibBackend final : public HttpBackend {
  public:
    explicit HttplibBackend(LiveOptions options = {});
    HttpResponse send(const HttpRequest& request) override;

  private:
    LiveOptions options_;
};

struct Interaction {
    HttpRequest request;
    HttpResponse response;
};

/// Recorded request/response pairs, matched on (method, url); first match wins.
class Fixture {
  public:
    Fixture() = default;
    explicit Fixture(std::vector<Interaction> interactions) : interactions_(std::move(interactions)) {}

    static Fixture parse(std::string_view json);
    static Fixture load(const std::filesystem::path& path);
    [[nodiscard]] std::string to_json() const;
    void save(const std::filesystem::path& path) const;

    [[nodiscard]] const HttpResponse* find(std::string_view method, std::string_view url) const;
    void append(Interaction interaction) { interactions_.push_back(std::move(interaction)); }
    /// Replaces the first recording of the same (method, url), or appends.
    void put(Interaction interaction);
    [[nodiscard]] const std::vector<Interaction>& interactions() const { return interactions_; }

  private:
    std::vector<Interaction> interactions_;
};

enum class TransportMode { Live, Record, Replay };

std::string_view to_string(TransportMode mode) noexcept;
TransportMode parse_transport_mode(std::string_view text);

/// The only way modules reach the network. Replay never touches the backend;
/// Record forwards to the backend and rewrites the fixture file after each exchange.
class Transport {
  public:
    static Transport replay(Fixture fixture);
    static Transport live(std::shared_ptr<HttpBackend> backend);
    static Transport record(std::shared_ptr<HttpBackend> backend, std::optional<std::filesystem::path> fixture_path);

    /// Throws ReplayMiss or NetworkFailure.
    HttpResponse fetch(std::string_view method, std::string_view url);

    [[nodiscard]] TransportMode mode() const noexcept { return mode_; }
    [[nodiscard]] Fixture recorded() const;

  private:
    Transport(TransportMode mode, std::shared_ptr<HttpBackend> backend, Fixture fixture,
              std::optional<std::filesystem::path> path);

    TransportMode mode_;
    std::shared_ptr<HttpBackend> backend_;
    Fixture fixture_;
    std::optional<std::filesystem::path> path_;
    std::unique_ptr<std::mutex> record_mutex_;
};

}  // namespace idrecon
