// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 idrecon contributors

#include "idrecon/api_service.hpp"

#include <httplib.h>

#include <filesystem>

#include <json.hpp>

#include "idrecon/project_store.hpp"

namespace idrecon {

using ordered_json = nlohmann::ordered_json;
using json = nlohmann::json;

int http_status_for(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::KindMismatch:
        case ErrorCode::DuplicateName:
        case ErrorCode::DuplicateId:
        case ErrorCode::PathOccupied:
            return 409;
        case ErrorCode::UnknownNode:
        case ErrorCode::UnknownJob:
        case ErrorCode::UnknownModule:
        case ErrorCode::NotFound:
            return 404;
        case ErrorCode::IoError:
        case ErrorCode::SinkError:
        case ErrorCode::BindError:
            return 500;
        case ErrorCode::NetworkFailure:
        case ErrorCode::AdapterError:
        case ErrorCode::AdapterUnavailable:
            return 502;
        case ErrorCode::InvalidArgument:
            return 400;
        default:
            return 422;
    }
}

namespace {

void send_json(httplib::Response& res, int status, const ordered_json& body) {
    res.status = status;
    res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, int status, std::string_view code, std::string_view message) {
    ordered_json body;
    body["code"] = code;
    body["message"] = message;
    send_json(res, status, body);
}

json parse_body(const httplib::Request& req) {
    try {
        auto body = json::parse(req.body);
        if (!body.is_object()) fail(ErrorCode::InvalidArgument, "request body must be a JSON object");
        return body;
    } catch (const json::parse_error& e) {
        fail(ErrorCode::InvalidArgument, std::string("request body is not JSON: ") + e.what());
    }
}

std::string text_field(const json& body, const char* key, bool required = true) {
    auto it = body.find(key);
    if (it == body.end() || it->is_null()) {
        if (required) fail(ErrorCode::InvalidArgument, std::string("missing field '") + key + "'");
        return {};
    }
    if (!it->is_string()) fail(ErrorCode::InvalidArgument, std::string("field '") + key + "' must be a string");
    return it->get<std::string>();
}

std::string scalar_text(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    if (v.is_array()) {
        std::string out;
        bool first = true;
        for (const auto& item : v) {
            std::string s = scalar_text(item);
            if (s.find(',') != std::string::npos) fail(ErrorCode::InvalidConfig, "list items must not contain ','");
            if (!first) out += ',';
            out += s;
            first = false;
        }
        return out;
    }
    fail(ErrorCode::InvalidArgument, "unsupported value " + v.dump());
}

std::string content_type_for(const std::filesystem::path& path) {
    auto ext = path.extension().string();
    for (auto& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (ext == ".jpg" || ext == ".jpeg") return "image/jpeg";
    if (ext == ".png") return "image/png";
    if (ext == ".txt") return "text/plain; charset=utf-8";
    if (ext == ".json") return "application/json";
    return "application/octet-stream";
}

template <typename Handler>
httplib::Server::Handler guarded(Handler handler) {
    return [handler](const httplib::Request& req, httplib::Response& res) {
        try {
            handler(req, res);
        } catch (const Error& e) {
            send_error(res, http_status_for(e.code()), error_code_name(e.code()), e.message());
        } catch (const std::exception& e) {
            send_error(res, 500, "Internal", e.what());
        }
    };
}

}  // namespace

ApiService::ApiService(Workspace& workspace) : workspace_(workspace), server_(std::make_unique<httplib::Server>()) {
    routes();
}

ApiService::~ApiService() {
    stop();
}

void ApiService::routes() {
    auto& srv = *server_;
    Workspace& ws = workspace_;

    srv.Get("/api/project", guarded([&ws](const httplib::Request&, httplib::Response& res) {
        send_json(res, 200, ws.project_info());
    }));

    srv.Get("/api/graph", guarded([&ws](const httplib::Request&, httplib::Response& res) {
        res.status = 200;
        res.set_content(ws.export_graph(), "application/json");
    }));

    srv.Post("/api/nodes", guarded([&ws](const httplib::Request& req, httplib::Response& res) {
        json body = parse_body(req);
        EntityKind kind = parse_entity_kind(text_field(body, "kind"));
        std::string category = text_field(body, "source_category", false);
        std::optional<SourceCategory> cat;
        if (!category.empty()) cat = parse_source_category(category);
        auto [node, created] = ws.add_node(kind, text_field(body, "value"), cat);
        send_json(res, created ? 201 : 200, to_json(node));
    }));

    srv.Post("/api/edges", guarded([&ws](const httplib::Request& req, httplib::Response& res) {
        json body = parse_body(req);
        auto edge = ws.add_edge(NodeId(text_field(body, "from")), NodeId(text_field(body, "to")),
                                text_field(body, "label", false));
        send_json(res, 201, to_json(edge));
    }));

    srv.Get("/api/modules", guarded([&ws](const httplib::Request& req, httplib::Response& res) {
        std::optional<EntityKind> kind;
        if (req.has_param("input_kind") && !req.get_param_value("input_kind").empty()) {
            kind = parse_entity_kind(req.get_param_value("input_kind"));
        }
        ordered_json out = ordered_json::array();
        for (const auto& d : ws.modules(kind)) out.push_back(to_json(d));
        send_json(res, 200, out);
    }));

    srv.Post("/api/jobs", guarded([&ws](const httplib::Request& req, httplib::Response& res) {
        json body = parse_body(req);
        RunRequest run;
        run.module = text_field(body, "module");
        run.node = NodeId(text_field(body, "node"));
        if (auto p = body.find("params"); p != body.end() && !p->is_null()) {
            if (!p->is_object()) fail(ErrorCode::ParamInvalid, "params must be an object");
            for (const auto& [k, v] : p->items()) run.params[k] = scalar_text(v);
        }
        if (auto t = body.find("transport"); t != body.end() && !t->is_null()) {
            if (t->is_string()) {
                run.transport.mode = parse_transport_mode(t->get<std::string>());
            } else if (t->is_object()) {
                run.transport.mode = parse_transport_mode(t->value("mode", "replay"));
                if (t->contains("fixture") && !(*t)["fixture"].is_null()) {
                    run.transport.fixture = (*t)["fixture"].get<std::string>();
                }
            } else {
                fail(ErrorCode::InvalidArgument, "transport must be a string or an object");
            }
        }
        if (auto f = body.find("fixture"); f != body.end() && f->is_string()) run.transport.fixture = f->get<std::string>();
        JobId id = ws.run(run);
        send_json(res, 202, ws.job_json(id));
    }));

    srv.Get(R"(/api/jobs/([^/]+))", guarded([&ws](const httplib::Request& req, httplib::Response& res) {
        send_json(res, 200, ws.job_json(JobId(req.matches[1].str())));
    }));

    srv.Get(R"(/api/jobs/([^/]+)/events)", guarded([&ws](const httplib::Request& req, httplib::Response& res) {
        JobId id(req.matches[1].str());
        ordered_json snapshot = ws.job_json(id);  // 404 before the stream starts
        bool live = true;
        try {
            (void)ws.engine().job_status(id);
        } catch (const Error&) {
            live = false;
        }
        res.set_header("Cache-Control", "no-cache");
        if (!live) {
            std::string body;
            for (const auto& e : snapshot["events"]) body += "event: state\ndata: " + e.dump() + "\n\n";
            res.set_content(body, "text/event-stream");
            return;
        }
        auto seen = std::make_shared<std::size_t>(0);
        res.set_chunked_content_provider("text/event-stream", [&ws, id, seen](std::size_t, httplib::DataSink& sink) {
            auto events = ws.engine().wait_events(id, *seen, std::chrono::milliseconds(500));
            for (; *seen < events.size(); ++*seen) {
                std::string chunk = "event: state\ndata: " + to_json(events[*seen]).dump() + "\n\n";
                if (!sink.write(chunk.data(), chunk.size())) return false;
            }
            if (!events.empty() &&
                (events.back().state == JobState::Succeeded || events.back().state == JobState::Failed)) {
                sink.done();
            }
            return true;
        });
    }));

    srv.Get(R"(/api/files/(.+))", guarded([&ws](const httplib::Request& req, httplib::Response& res) {
        std::string rel = req.matches[1].str();
        std::string bytes;
        try {
            if (!ws.store().exists(rel)) fail(ErrorCode::NotFound, "no file '" + rel + "'");
            bytes = ws.store().read(rel);
        } catch (const Error& e) {
            if (e.code() == ErrorCode::InvalidPathValue) fail(ErrorCode::NotFound, "no file '" + rel + "'");
            throw;
        }
        res.status = 200;
        res.set_content(bytes, content_type_for(rel));
    }));

    srv.Post("/api/wordlists", guarded([&ws](const httplib::Request& req, httplib::Response& res) {
        json body = parse_body(req);
        WordlistRequest request;
        if (auto t = body.find("tokens"); t != body.end() && !t->is_null()) {
            if (!t->is_array()) fail(ErrorCode::InvalidArgument, "tokens must be a list");
            for (const auto& tok : *t) request.tokens.push_back(tok.get<std::string>());
        }
        std::string from = text_field(body, "from_node", false);
        if (!from.empty()) request.from_node = NodeId(from);
        if (auto c = body.find("config"); c != body.end() && !c->is_null()) {
            if (!c->is_object()) fail(ErrorCode::InvalidConfig, "config must be an object");
            for (const auto& [k, v] : c->items()) {
                if (k == "include_node_values") {
                    request.include_node_values.clear();
                    for (const auto& kind : v) request.include_node_values.insert(parse_entity_kind(kind.get<std::string>()));
                } else {
                    request.options[k] = scalar_text(v);
                }
            }
        }
        auto result = ws.make_wordlist(request);
        ordered_json out;
        out["count"] = result.count;
        out["download_url"] = "/api/wordlists/" + result.file_name;
        out["fingerprint"] = result.fingerprint;
        out["tokens"] = result.tokens;
        send_json(res, 201, out);
    }));

    srv.Get(R"(/api/wordlists/([^/]+))", guarded([&ws](const httplib::Request& req, httplib::Response& res) {
        std::string name = req.matches[1].str();
        if (name != sanitize_file_name(name)) fail(ErrorCode::NotFound, "no wordlist '" + name + "'");
        auto path = ws.store().wordlists_dir() / name;
        std::error_code ec;
        if (!std::filesystem::is_regular_file(path, ec)) fail(ErrorCode::NotFound, "no wordlist '" + name + "'");
        res.status = 200;
        res.set_header("Content-Disposition", "attachment; filename=\"" + name + "\"");
        res.set_content(read_file(path), "text/plain; charset=utf-8");
    }));

    srv.set_error_handler([](const httplib::Request&, httplib::Response& res) {
        if (res.body.empty()) send_error(res, res.status, "NotFound", "no such endpoint");
    });
}

int ApiService::bind(const std::string& host, int port) {
    if (port == 0) {
        port_ = server_->bind_to_any_port(host);
    } else {
        port_ = server_->bind_to_port(host, port) ? port : -1;
    }
    if (port_ <= 0) fail(ErrorCode::BindError, "cannot bind " + host + ":" + std::to_string(port));
    return port_;
}

void ApiService::listen() {
    server_->listen_after_bind();
}

void ApiService::start() {
    thread_ = std::thread([this] { server_->listen_after_bind(); });
    server_->wait_until_ready();
}

void ApiService::stop() {
    if (stopped_) return;
    stopped_ = true;
    server_->stop();
    if (thread_.joinable()) thread_.join();
    workspace_.flush();
}

}  // namespace idrecon
