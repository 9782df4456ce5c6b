// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 idrecon contributors

#include "idrecon/transport.hpp"

#include <fstream>
#include <sstream>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "idrecon/codec.hpp"
#include "idrecon/error.hpp"
#include "idrecon/project_store.hpp"

namespace idrecon {

using ordered_json = nlohmann::ordered_json;

HttplibBackend::HttplibBackend(LiveOptions options) : options_(std::move(options)) {}

HttpResponse HttplibBackend::send(const HttpRequest& request) {
    auto scheme_end = request.url.find("://");
    if (scheme_end == std::string::npos) fail(ErrorCode::NetworkFailure, "not an absolute URL: " + request.url);
    auto path_start = request.url.find('/', scheme_end + 3);
    std::string origin = request.url.substr(0, path_start);
    std::string path = path_start == std::string::npos ? "/" : request.url.substr(path_start);

    if (options_.delay.count() > 0) std::this_thread::sleep_for(options_.delay);
    httplib::Client client(origin);
    auto secs = std::chrono::duration_cast<std::chrono::seconds>(options_.timeout);
    client.set_connection_timeout(secs.count() > 0 ? secs.count() : 1, 0);
    client.set_read_timeout(secs.count() > 0 ? secs.count() : 1, 0);
    client.set_follow_location(false);
    httplib::Headers headers{{"User-Agent", options_.user_agent}};

    if (request.method != "GET" && request.method != "HEAD") {
        fail(ErrorCode::NetworkFailure, "unsupported method " + request.method);
    }
    httplib::Result result = request.method == "HEAD" ? client.Head(path, headers) : client.Get(path, headers);
    if (!result) {
        fail(ErrorCode::NetworkFailure, request.url + ": " + httplib::to_string(result.error()));
    }
    HttpResponse response;
    response.status = result->status;
    for (const auto& [k, v] : result->headers) response.headers[k] = v;
    response.body = result->body;
    return response;
}

// --- Fixture -------------------------------------------------------------------

Fixture Fixture::parse(std::string_view json) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(json);
    } catch (const nlohmann::json::parse_error& e) {
        fail(ErrorCode::SchemaViolation, std::string("fixture is not JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("interactions") || !doc["interactions"].is_array()) {
        fail(ErrorCode::SchemaViolation, "fixture needs an 'interactions' array");
    }
    std::vector<Interaction> out;
    try {
        for (const auto& item : doc["interactions"]) {
            Interaction i;
            const auto& req = item.at("request");
            i.request.method = req.at("method").get<std::string>();
            i.request.url = req.at("url").get<std::string>();
            const auto& res = item.at("response");
            i.response.status = res.at("status").get<int>();
            if (auto h = res.find("headers"); h != res.end()) {
                for (const auto& [k, v] : h->items()) i.response.headers[k] = v.get<std::string>();
            }
            i.response.body = codec::base64_decode(res.at("body_b64").get<std::string>());
            out.push_back(std::move(i));
        }
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::SchemaViolation, std::string("bad fixture interaction: ") + e.what());
    }
    return Fixture(std::move(out));
}

Fixture Fixture::load(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorCode::IoError, "cannot read fixture " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

std::string Fixture::to_json() const {
    ordered_json doc;
    doc["interactions"] = ordered_json::array();
    for (const auto& i : interactions_) {
        ordered_json item;
        item["request"]["method"] = i.request.method;
        item["request"]["url"] = i.request.url;
        item["response"]["status"] = i.response.status;
        item["response"]["headers"] = ordered_json::object();
        for (const auto& [k, v] : i.response.headers) item["response"]["headers"][k] = v;
        item["response"]["body_b64"] = codec::base64_encode(i.response.body);
        doc["interactions"].push_back(std::move(item));
    }
    return doc.dump(2) + "\n";
}

void Fixture::save(const std::filesystem::path& path) const {
    write_file_atomic(path, to_json());
}

const HttpResponse* Fixture::find(std::string_view method, std::string_view url) const {
    for (const auto& i : interactions_) {
        if (i.request.method == method && i.request.url == url) return &i.response;
    }
    return nullptr;
}

// --- Transport -----------------------------------------------------------------

std::string_view to_string(TransportMode mode) noexcept {
    switch (mode) {
        case TransportMode::Live: return "live";
        case TransportMode::Record: return "record";
        case TransportMode::Replay: return "replay";
    }
    return "unknown";
}

TransportMode parse_transport_mode(std::string_view text) {
    if (text == "live") return TransportMode::Live;
    if (text == "record") return TransportMode::Record;
    if (text == "replay") return TransportMode::Replay;
    fail(ErrorCode::InvalidArgument, "unknown transport mode '" + std::string(text) + "'");
}

Transport::Transport(TransportMode mode, std::shared_ptr<HttpBackend> backend, Fixture fixture,
                     std::optional<std::filesystem::path> path)
    : mode_(mode),
      backend_(std::move(backend)),
      fixture_(std::move(fixture)),
      path_(std::move(path)),
      record_mutex_(std::make_unique<std::mutex>()) {}

Transport Transport::replay(Fixture fixture) {
    return Transport(TransportMode::Replay, nullptr, std::move(fixture), std::nullopt);
}

Transport Transport::live(std::shared_ptr<HttpBackend> backend) {
    if (!backend) fail(ErrorCode::InvalidArgument, "live transport needs a backend");
    return Transport(TransportMode::Live, std::move(backend), Fixture{}, std::nullopt);
}

Transport Transport::record(std::shared_ptr<HttpBackend> backend, std::optional<std::filesystem::path> fixture_path) {
    if (!backend) fail(ErrorCode::InvalidArgument, "record transport needs a backend");
    Fixture existing;
    if (fixture_path && std::filesystem::exists(*fixture_path)) existing = Fixture::load(*fixture_path);
    return Transport(TransportMode::Record, std::move(backend), std::move(existing), std::move(fixture_path));
}

HttpResponse Transport::fetch(std::string_view method, std::string_view url) {
    if (mode_ == TransportMode::Replay) {
        if (const HttpResponse* hit = fixture_.find(method, url)) return *hit;
        fail(ErrorCode::ReplayMiss, std::string(method) + " " + std::string(url) + " is not in the fixture");
    }
    HttpResponse response = backend_->send(HttpRequest{std::string(method), std::string(url)});
    if (mode_ == TransportMode::Record) {
        std::lock_guard lock(*record_mutex_);
        fixture_.put(Interaction{HttpRequest{std::string(method), std::string(url)}, response});
        if (path_) fixture_.save(*path_);
    }
    return response;
}

void Fixture::put(Interaction interaction) {
    for (auto& existing : interactions_) {
        if (existing.request.method == interaction.request.method && existing.request.url == interaction.request.url) {
            existing = std::move(interaction);
            return;
        }
    }
    interactions_.push_back(std::move(interaction));
}

Fixture Transport::recorded() const {
    std::lock_guard lock(*record_mutex_);
    return fixture_;
}

}  // namespace idrecon
