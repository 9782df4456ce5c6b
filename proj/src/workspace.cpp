// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 idrecon contributors

#include "idrecon/workspace.hpp"

#include <iostream>

#include "idrecon/builtin_modules.hpp"
#include "idrecon/external_tool.hpp"
#include "idrecon/text_analysis.hpp"
#include "idrecon/unicode.hpp"
#include "idrecon/vision.hpp"

namespace idrecon {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

fs::path resolve_fixture(const ProjectStore& store, const fs::path& path) {
    std::error_code ec;
    if (path.is_absolute() || fs::exists(path, ec)) return path;
    fs::path inside = store.fixtures_dir() / path;
    if (fs::exists(inside, ec)) return inside;
    return path;
}

namespace {

EngineEnvironment make_environment(const ProjectStore& store, const WorkspaceOptions& options) {
    EngineEnvironment env;
    env.clock = options.clock;
    TransportFactory inner = options.transport_factory ? options.transport_factory
                                                       : default_transport_factory(options.live);
    const ProjectStore* s = &store;
    env.transport_factory = [inner, s](const TransportRequest& request) {
        TransportRequest resolved = request;
        if (resolved.fixture && resolved.mode == TransportMode::Replay) {
            resolved.fixture = resolve_fixture(*s, *resolved.fixture);
        }
        return inner(resolved);
    };
    std::error_code ec;
    if (options.vision) {
        env.vision = options.vision;
    } else if (fs::exists(store.fixtures_dir() / "gad.json", ec)) {
        env.vision = media::FixtureVisionAdapter::load((store.fixtures_dir() / "gad.json").string());
    }
    fs::path ner_dir = store.fixtures_dir() / "ner";
    if (fs::is_directory(ner_dir, ec)) {
        for (const auto& entry : fs::directory_iterator(ner_dir)) {
            if (entry.path().extension() != ".json") continue;
            env.ner_adapters[entry.path().stem().string()] = text::FixtureNerAdapter::parse(read_file(entry.path()));
        }
    }
    return env;
}

std::vector<JobId> logged_job_ids(const ProjectStore& store) {
    std::vector<JobId> ids;
    for (const auto& line : store.job_records()) {
        try {
            auto j = nlohmann::json::parse(line);
            ids.emplace_back(j.at("id").get<std::string>());
        } catch (const nlohmann::json::exception&) {
            std::cerr << "idrecon: skipping unreadable jobs.log line\n";
        }
    }
    return ids;
}

}  // namespace

Workspace::Workspace(std::unique_ptr<ProjectStore> store, WorkspaceOptions options)
    : options_(std::move(options)), store_(std::move(store)) {
    graph_ = std::make_unique<EntityGraph>(options_.clock);
    graph_->replace(store_->load_graph());
    registry_ = default_registry();
    std::error_code ec;
    if (fs::exists(store_->root() / "tools.json", ec)) register_external_tools_file(*registry_, store_->root() / "tools.json");

    engine_ = std::make_unique<ModuleEngine>(*graph_, *store_, *registry_, make_environment(*store_, options_));
    std::vector<JobId> known = logged_job_ids(*store_);
    for (const auto& node : graph_->snapshot().nodes) {
        if (node.provenance.job_id) known.push_back(*node.provenance.job_id);
    }
    engine_->add_known_jobs(known);
    engine_->on_commit([this] { persist(); });
    engine_->on_finished([this](const Job& job) { store_->append_job_record(to_json(job).dump()); });
}

Workspace::~Workspace() {
    engine_.reset();
}

std::unique_ptr<Workspace> Workspace::init(const fs::path& root, std::string_view name, WorkspaceOptions options) {
    auto store = ProjectStore::init(root, name, options.clock);
    return std::unique_ptr<Workspace>(new Workspace(std::move(store), std::move(options)));
}

std::unique_ptr<Workspace> Workspace::open(const fs::path& root, WorkspaceOptions options) {
    auto store = ProjectStore::open(root);
    return std::unique_ptr<Workspace>(new Workspace(std::move(store), std::move(options)));
}

void Workspace::persist() {
    std::lock_guard lock(persist_mutex_);
    store_->save_graph(*graph_);
}

void Workspace::flush() {
    engine_->wait_idle();
    persist();
}

ordered_json Workspace::project_info() const {
    ordered_json j;
    j["name"] = store_->meta().name;
    j["root"] = store_->root().string();
    j["created_at"] = format_rfc3339(store_->meta().created_at);
    j["schema_version"] = store_->meta().schema_version;
    j["nodes"] = graph_->node_count();
    j["edges"] = graph_->edge_count();
    return j;
}

std::pair<EntityNode, bool> Workspace::add_node(EntityKind kind, std::string_view value,
                                                std::optional<SourceCategory> category) {
    if (is_file_kind(kind) && !store_->exists(canonicalize_value(kind, value))) {
        fail(ErrorCode::NotFound, "no file '" + std::string(value) + "' under Files/");
    }
    auto r = graph_->upsert(kind, value, Provenance::user_seed(category));
    if (r.created) persist();
    return {graph_->node(r.id), r.created};
}

std::pair<EntityNode, bool> Workspace::add_file(EntityKind kind, const fs::path& source) {
    if (!is_file_kind(kind)) fail(ErrorCode::KindMismatch, std::string(to_string(kind)) + " is not a file kind");
    std::string bytes = read_file(source);
    std::string name = source.filename().string();
    std::string stored;
    if (auto same = store_->find_identical(name, bytes)) {
        stored = *same;
    } else {
        stored = store_->store(name, bytes);
    }
    return add_node(kind, stored);
}

DerivationEdge Workspace::add_edge(const NodeId& from, const NodeId& to, std::string_view label) {
    EdgeId id = graph_->add_edge(from, to, label);
    persist();
    for (const auto& n : graph_->neighbors(from, Direction::Out)) {
        if (n.edge.id == id) return n.edge;
    }
    fail(ErrorCode::NotFound, "edge vanished");
}

std::vector<ModuleDescriptor> Workspace::modules(std::optional<EntityKind> input_kind) const {
    return registry_->list_modules(input_kind);
}

JobId Workspace::run(const RunRequest& request) {
    return engine_->run_module(request);
}

Job Workspace::wait(const JobId& id) {
    Job job = engine_->wait(id);
    engine_->wait_idle();
    return job;
}

ordered_json Workspace::job_json(const JobId& id) const {
    if (engine_->knows_job(id)) {
        try {
            return to_json(engine_->job_status(id));
        } catch (const Error& e) {
            if (e.code() != ErrorCode::UnknownJob) throw;
        }
    }
    std::optional<ordered_json> found;
    for (const auto& line : store_->job_records()) {
        try {
            auto j = ordered_json::parse(line);
            if (j.value("id", "") == id.str()) found = std::move(j);
        } catch (const nlohmann::json::exception&) {
        }
    }
    if (!found) fail(ErrorCode::UnknownJob, "unknown job '" + id.str() + "'");
    return *found;
}

std::vector<probe::ProbeResult> Workspace::probe(std::string_view username, const std::optional<fs::path>& sites,
                                                 const TransportRequest& transport, std::size_t concurrency) {
    auto list = sites ? probe::load_site_list_file(sites->string()) : probe::bundled_test_pack();
    TransportFactory factory = make_environment(*store_, options_).transport_factory;
    auto t = factory(transport);
    return probe::probe_username(username, list, *t, probe::ProbeOptions{concurrency});
}

std::vector<std::string> Workspace::tokens_for_node(const NodeId& id, const std::set<EntityKind>& include_kinds) const {
    EntityNode node = graph_->node(id);
    std::vector<std::string> tokens;
    auto add_value = [&](const EntityNode& n) {
        if (!include_kinds.contains(n.kind)) return;
        if (n.kind == EntityKind::Person) {
            std::string word;
            for (char32_t cp : unicode::decode(n.value)) {
                if (unicode::is_space(cp)) {
                    if (!word.empty()) tokens.push_back(std::move(word));
                    word.clear();
                } else {
                    word += unicode::encode(std::u32string(1, cp));
                }
            }
            if (!word.empty()) tokens.push_back(std::move(word));
        } else {
            tokens.push_back(n.value);
        }
    };
    if (node.kind == EntityKind::TextFile) {
        for (const auto& t : text::token_pipeline(store_->read(node.value), text::RuleBased{},
                                                  text::Gazetteers::builtin())) {
            tokens.push_back(t.token);
        }
    }
    add_value(node);
    for (const auto& n : graph_->neighbors(id, Direction::Both)) add_value(n.node);
    return text::clean_tokens(tokens);
}

WordlistResult Workspace::make_wordlist(const WordlistRequest& request) {
    std::vector<std::string> tokens = request.tokens;
    if (request.from_node) {
        auto more = tokens_for_node(*request.from_node, request.include_node_values);
        tokens.insert(tokens.end(), more.begin(), more.end());
    }
    auto config = wordlist::config_from_options(request.options);
    auto list = wordlist::generate_wordlist(tokens, config);
    std::string bytes = wordlist::render_wordlist(list);
    std::string name = "wordlist-" + list.config_fingerprint.substr(0, 12) + ".txt";

    std::lock_guard lock(wordlist_mutex_);
    std::error_code ec;
    fs::path target = store_->wordlists_dir() / name;
    if (!fs::exists(target, ec) || read_file(target) != bytes) name = store_->store_wordlist(name, bytes);
    return WordlistResult{list.candidates.size(), name, list.config_fingerprint, text::clean_tokens(tokens)};
}

}  // namespace idrecon
