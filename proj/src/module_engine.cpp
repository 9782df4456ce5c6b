// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 idrecon contributors

#include "idrecon/module_engine.hpp"

#include <algorithm>
#include <charconv>
#include <iostream>

namespace idrecon {

using ordered_json = nlohmann::ordered_json;

std::string_view to_string(Phase phase) noexcept {
    switch (phase) {
        case Phase::Collection: return "Collection";
        case Phase::Analysis: return "Analysis";
        case Phase::Extraction: return "Extraction";
    }
    return "Collection";
}

std::string_view to_string(NetworkAccess access) noexcept {
    return access == NetworkAccess::Transport ? "Transport" : "None";
}

std::string_view to_string(ParamType type) noexcept {
    switch (type) {
        case ParamType::Text: return "text";
        case ParamType::Int: return "int";
        case ParamType::Flag: return "flag";
    }
    return "text";
}

Phase parse_phase(std::string_view text) {
    if (text == "Collection" || text == "collection") return Phase::Collection;
    if (text == "Analysis" || text == "analysis") return Phase::Analysis;
    if (text == "Extraction" || text == "extraction") return Phase::Extraction;
    fail(ErrorCode::InvalidArgument, "unknown phase '" + std::string(text) + "'");
}

std::string_view to_string(JobState state) noexcept {
    switch (state) {
        case JobState::Pending: return "Pending";
        case JobState::Running: return "Running";
        case JobState::Succeeded: return "Succeeded";
        case JobState::Failed: return "Failed";
    }
    return "Pending";
}

// --- descriptors -----------------------------------------------------------------

namespace {

std::optional<std::int64_t> parse_int(std::string_view text) {
    std::int64_t v = 0;
    auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || p != text.data() + text.size() || text.empty()) return std::nullopt;
    return v;
}

std::optional<bool> parse_flag(std::string_view text) {
    if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
    if (text == "false" || text == "0" || text == "no" || text == "off" || text.empty()) return false;
    return std::nullopt;
}

}  // namespace

void ModuleDescriptor::validate() const {
    if (name.empty()) fail(ErrorCode::InvalidDescriptor, "module name is empty");
    if (input_kinds.empty()) fail(ErrorCode::InvalidDescriptor, name + ": input_kinds must not be empty");
    if (output_kinds.empty()) fail(ErrorCode::InvalidDescriptor, name + ": output_kinds must not be empty");
    if (produces_files && std::none_of(output_kinds.begin(), output_kinds.end(), is_file_kind)) {
        fail(ErrorCode::InvalidDescriptor, name + ": produces_files needs a file output kind");
    }
    std::set<std::string> seen;
    for (const auto& p : params_schema) {
        if (p.name.empty() || !seen.insert(p.name).second) {
            fail(ErrorCode::InvalidDescriptor, name + ": bad or duplicate parameter '" + p.name + "'");
        }
        if (p.type == ParamType::Int && !parse_int(p.default_value)) {
            fail(ErrorCode::InvalidDescriptor, name + ": default of '" + p.name + "' is not an int");
        }
        if (p.type == ParamType::Flag && !parse_flag(p.default_value)) {
            fail(ErrorCode::InvalidDescriptor, name + ": default of '" + p.name + "' is not a flag");
        }
    }
}

ordered_json to_json(const ModuleDescriptor& d) {
    ordered_json j;
    j["name"] = d.name;
    j["phase"] = std::string(to_string(d.phase));
    j["input_kinds"] = ordered_json::array();
    for (auto k : d.input_kinds) j["input_kinds"].push_back(std::string(to_string(k)));
    j["output_kinds"] = ordered_json::array();
    for (auto k : d.output_kinds) j["output_kinds"].push_back(std::string(to_string(k)));
    j["produces_files"] = d.produces_files;
    j["network_access"] = std::string(to_string(d.network_access));
    j["source_category"] = d.source_category ? ordered_json(std::string(to_string(*d.source_category))) : ordered_json(nullptr);
    j["params"] = ordered_json::array();
    for (const auto& p : d.params_schema) {
        ordered_json pj;
        pj["name"] = p.name;
        pj["type"] = std::string(to_string(p.type));
        pj["default"] = p.default_value;
        pj["help"] = p.help;
        j["params"].push_back(std::move(pj));
    }
    j["description"] = d.description;
    return j;
}

ModuleDescriptor descriptor_from_json(const nlohmann::json& j) {
    ModuleDescriptor d;
    try {
        d.name = j.at("name").get<std::string>();
        d.phase = parse_phase(j.at("phase").get<std::string>());
        for (const auto& k : j.at("input_kinds")) d.input_kinds.insert(parse_entity_kind(k.get<std::string>()));
        for (const auto& k : j.at("output_kinds")) d.output_kinds.insert(parse_entity_kind(k.get<std::string>()));
        d.produces_files = j.value("produces_files", false);
        std::string net = j.value("network_access", "None");
        if (net == "Transport") d.network_access = NetworkAccess::Transport;
        else if (net != "None") fail(ErrorCode::InvalidDescriptor, "bad network_access '" + net + "'");
        if (auto c = j.find("source_category"); c != j.end() && !c->is_null()) {
            d.source_category = parse_source_category(c->get<std::string>());
        }
        d.description = j.value("description", "");
        if (auto ps = j.find("params"); ps != j.end()) {
            for (const auto& p : *ps) {
                ParamSpec spec;
                spec.name = p.at("name").get<std::string>();
                std::string type = p.value("type", "text");
                if (type == "text") spec.type = ParamType::Text;
                else if (type == "int") spec.type = ParamType::Int;
                else if (type == "flag") spec.type = ParamType::Flag;
                else fail(ErrorCode::InvalidDescriptor, "bad param type '" + type + "'");
                spec.default_value = p.value("default", "");
                spec.help = p.value("help", "");
                d.params_schema.push_back(std::move(spec));
            }
        }
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::InvalidDescriptor, std::string("bad module descriptor: ") + e.what());
    } catch (const Error& e) {
        if (e.code() == ErrorCode::InvalidDescriptor) throw;
        fail(ErrorCode::InvalidDescriptor, e.message());
    }
    d.validate();
    return d;
}

// --- params ----------------------------------------------------------------------

const std::string& ParamValues::text(const std::string& name) const {
    auto it = values_.find(name);
    if (it == values_.end() || !std::holds_alternative<std::string>(it->second)) {
        fail(ErrorCode::ParamInvalid, "no text parameter '" + name + "'");
    }
    return std::get<std::string>(it->second);
}

std::int64_t ParamValues::integer(const std::string& name) const {
    auto it = values_.find(name);
    if (it == values_.end() || !std::holds_alternative<std::int64_t>(it->second)) {
        fail(ErrorCode::ParamInvalid, "no int parameter '" + name + "'");
    }
    return std::get<std::int64_t>(it->second);
}

bool ParamValues::flag(const std::string& name) const {
    auto it = values_.find(name);
    if (it == values_.end() || !std::holds_alternative<bool>(it->second)) {
        fail(ErrorCode::ParamInvalid, "no flag parameter '" + name + "'");
    }
    return std::get<bool>(it->second);
}

std::map<std::string, std::string> ParamValues::as_strings() const {
    std::map<std::string, std::string> out;
    for (const auto& [k, v] : values_) {
        if (auto s = std::get_if<std::string>(&v)) out[k] = *s;
        else if (auto i = std::get_if<std::int64_t>(&v)) out[k] = std::to_string(*i);
        else out[k] = std::get<bool>(v) ? "true" : "false";
    }
    return out;
}

ParamValues bind_params(const ModuleDescriptor& descriptor, const std::map<std::string, std::string>& raw) {
    for (const auto& [k, _] : raw) {
        bool known = std::any_of(descriptor.params_schema.begin(), descriptor.params_schema.end(),
                                 [&](const ParamSpec& p) { return p.name == k; });
        if (!known) fail(ErrorCode::ParamInvalid, descriptor.name + " has no parameter '" + k + "'");
    }
    std::map<std::string, ParamValue> values;
    for (const auto& spec : descriptor.params_schema) {
        auto it = raw.find(spec.name);
        const std::string& text = it == raw.end() ? spec.default_value : it->second;
        switch (spec.type) {
            case ParamType::Text:
                values[spec.name] = text;
                break;
            case ParamType::Int: {
                auto v = parse_int(text);
                if (!v) fail(ErrorCode::ParamInvalid, spec.name + " must be an integer, got '" + text + "'");
                values[spec.name] = *v;
                break;
            }
            case ParamType::Flag: {
                auto v = parse_flag(text);
                if (!v) fail(ErrorCode::ParamInvalid, spec.name + " must be true or false, got '" + text + "'");
                values[spec.name] = *v;
                break;
            }
        }
    }
    return ParamValues(std::move(values));
}

// --- transport -------------------------------------------------------------------

TransportFactory make_transport_factory(BackendSource backends) {
    return [backends = std::move(backends)](const TransportRequest& request) -> std::unique_ptr<Transport> {
        switch (request.mode) {
            case TransportMode::Replay:
                if (!request.fixture) fail(ErrorCode::InvalidArgument, "replay transport needs a fixture");
                return std::make_unique<Transport>(Transport::replay(Fixture::load(*request.fixture)));
            case TransportMode::Record:
                return std::make_unique<Transport>(Transport::record(backends(), request.fixture));
            case TransportMode::Live:
                return std::make_unique<Transport>(Transport::live(backends()));
        }
        fail(ErrorCode::InvalidArgument, "unknown transport mode");
    };
}

TransportFactory default_transport_factory(LiveOptions options) {
    return make_transport_factory([options] { return std::make_shared<HttplibBackend>(options); });
}

// --- context ---------------------------------------------------------------------

ModuleContext::ModuleContext(const JobId& job, const ModuleDescriptor& descriptor, EntityNode input,
                             ParamValues params, Transport* transport, const FileStore& files,
                             const EngineEnvironment& env)
    : job_(job),
      descriptor_(descriptor),
      input_(std::move(input)),
      params_(std::move(params)),
      transport_(transport),
      file_store_(files),
      env_(env) {}

Transport& ModuleContext::transport() const {
    if (!transport_) fail(ErrorCode::PreconditionViolation, descriptor_.name + " has no network access");
    return *transport_;
}

std::string ModuleContext::read_input_file() const {
    if (!is_file_kind(input_.kind)) fail(ErrorCode::KindMismatch, "input node is not a file");
    return file_store_.read(input_.value);
}

void ModuleContext::stage_node(EntityKind kind, std::string value, std::string label) {
    nodes_.push_back(StagedNode{kind, std::move(value), std::move(label)});
}

void ModuleContext::stage_file(std::string suggested_name, std::string bytes, EntityKind kind, std::string label) {
    files_.push_back(StagedFile{std::move(suggested_name), std::move(bytes), kind, std::move(label)});
}

// --- registry --------------------------------------------------------------------

void ModuleRegistry::register_module(ModuleDescriptor descriptor, std::shared_ptr<const Module> implementation) {
    descriptor.validate();
    if (!implementation) fail(ErrorCode::InvalidDescriptor, descriptor.name + ": no implementation");
    std::lock_guard lock(mutex_);
    if (entries_.contains(descriptor.name)) {
        fail(ErrorCode::DuplicateName, "module '" + descriptor.name + "' is already registered");
    }
    std::string name = descriptor.name;
    entries_.emplace(std::move(name), Entry{std::move(descriptor), std::move(implementation)});
}

std::vector<ModuleDescriptor> ModuleRegistry::list_modules(std::optional<EntityKind> input_kind,
                                                           std::optional<Phase> phase) const {
    std::lock_guard lock(mutex_);
    std::vector<ModuleDescriptor> out;
    for (const auto& [name, e] : entries_) {
        if (input_kind && !e.descriptor.input_kinds.contains(*input_kind)) continue;
        if (phase && e.descriptor.phase != *phase) continue;
        out.push_back(e.descriptor);
    }
    return out;
}

const ModuleDescriptor& ModuleRegistry::descriptor(std::string_view name) const {
    std::lock_guard lock(mutex_);
    auto it = entries_.find(name);
    if (it == entries_.end()) fail(ErrorCode::UnknownModule, "unknown module '" + std::string(name) + "'");
    return it->second.descriptor;
}

std::shared_ptr<const Module> ModuleRegistry::implementation(std::string_view name) const {
    std::lock_guard lock(mutex_);
    auto it = entries_.find(name);
    if (it == entries_.end()) fail(ErrorCode::UnknownModule, "unknown module '" + std::string(name) + "'");
    return it->second.implementation;
}

bool ModuleRegistry::contains(std::string_view name) const {
    std::lock_guard lock(mutex_);
    return entries_.find(name) != entries_.end();
}

// --- job json --------------------------------------------------------------------

ordered_json to_json(const JobEvent& event) {
    ordered_json j;
    j["state"] = std::string(to_string(event.state));
    j["message"] = event.message ? ordered_json(*event.message) : ordered_json(nullptr);
    j["at"] = format_rfc3339(event.at);
    return j;
}

ordered_json to_json(const Job& job) {
    auto ts = [](const std::optional<Timestamp>& t) { return t ? ordered_json(format_rfc3339(*t)) : ordered_json(nullptr); };
    ordered_json j;
    j["id"] = job.id.str();
    j["module"] = job.module_name;
    j["input_node"] = job.input_node.str();
    j["params"] = job.params;
    j["transport"] = std::string(to_string(job.transport));
    j["state"] = std::string(to_string(job.state));
    j["staged_nodes"] = ordered_json::array();
    for (const auto& s : job.staged_nodes) {
        j["staged_nodes"].push_back({{"kind", std::string(to_string(s.kind))}, {"value", s.value}, {"label", s.label}});
    }
    j["staged_files"] = ordered_json::array();
    for (const auto& [name, size] : job.staged_files) j["staged_files"].push_back({{"name", name}, {"size", size}});
    j["error"] = job.error ? ordered_json(*job.error) : ordered_json(nullptr);
    j["error_code"] = job.error_code ? ordered_json(std::string(error_code_name(*job.error_code))) : ordered_json(nullptr);
    j["started_at"] = ts(job.started_at);
    j["finished_at"] = ts(job.finished_at);
    j["committed_nodes"] = ordered_json::array();
    for (const auto& n : job.committed_nodes) j["committed_nodes"].push_back(n.str());
    j["committed_files"] = job.committed_files;
    j["events"] = ordered_json::array();
    for (const auto& e : job.events) j["events"].push_back(to_json(e));
    return j;
}

// --- engine ----------------------------------------------------------------------

ModuleEngine::ModuleEngine(EntityGraph& graph, FileStore& files, const ModuleRegistry& registry, EngineEnvironment env)
    : graph_(graph), files_(files), registry_(registry), env_(std::move(env)) {}

ModuleEngine::~ModuleEngine() {
    std::map<JobId, std::jthread> threads;
    {
        std::lock_guard lock(mutex_);
        threads.swap(threads_);
    }
    threads.clear();
}

void ModuleEngine::add_known_jobs(const std::vector<JobId>& ids) {
    std::lock_guard lock(mutex_);
    for (const auto& id : ids) {
        known_jobs_.insert(id);
        if (id.str().size() > 1 && id.str()[0] == 'j') {
            if (auto n = parse_int(std::string_view(id.str()).substr(1)); n && *n >= 0) {
                next_job_ = std::max<std::uint64_t>(next_job_, static_cast<std::uint64_t>(*n) + 1);
            }
        }
    }
}

bool ModuleEngine::knows_job(const JobId& id) const {
    std::lock_guard lock(mutex_);
    return jobs_.contains(id) || known_jobs_.contains(id);
}

JobId ModuleEngine::run_module(const RunRequest& request) {
    const ModuleDescriptor& descriptor = registry_.descriptor(request.module);
    EntityNode input = graph_.node(request.node);
    if (!descriptor.input_kinds.contains(input.kind)) {
        fail(ErrorCode::KindMismatch, descriptor.name + " cannot consume a " + std::string(to_string(input.kind)) +
                                          " node");
    }
    ParamValues params = bind_params(descriptor, request.params);

    std::vector<std::jthread> finished;
    std::lock_guard lock(mutex_);
    for (auto it = threads_.begin(); it != threads_.end();) {
        if (jobs_.at(it->first).finished()) {
            finished.push_back(std::move(it->second));
            it = threads_.erase(it);
        } else {
            ++it;
        }
    }
    JobId id("j" + std::to_string(next_job_++));
    Job job;
    job.id = id;
    job.module_name = descriptor.name;
    job.input_node = request.node;
    job.params = params.as_strings();
    job.transport = request.transport.mode;
    jobs_.emplace(id, std::move(job));
    ++active_;
    threads_.emplace(id, std::jthread([this, id, request] { execute(id, request); }));
    return id;
}

void ModuleEngine::transition(const JobId& id, JobState state, std::optional<std::string> message,
                              std::optional<ErrorCode> code) {
    Job snapshot;
    {
        std::lock_guard lock(mutex_);
        Job& job = jobs_.at(id);
        Timestamp now = env_.clock();
        job.state = state;
        job.events.push_back(JobEvent{state, message, now});
        if (state == JobState::Running) job.started_at = now;
        if (state == JobState::Failed) {
            job.error = message;
            job.error_code = code;
        }
        if (state == JobState::Succeeded || state == JobState::Failed) job.finished_at = now;
        snapshot = job;
    }
    if (snapshot.finished() && on_finished_) {
        try {
            on_finished_(snapshot);
        } catch (const std::exception& e) {
            std::cerr << "idrecon: job listener failed: " << e.what() << "\n";
        }
    }
    std::lock_guard lock(mutex_);
    if (snapshot.finished()) --active_;
    changed_.notify_all();
}

void ModuleEngine::execute(JobId id, RunRequest request) {
    transition(id, JobState::Running);
    try {
        const ModuleDescriptor& descriptor = registry_.descriptor(request.module);
        auto implementation = registry_.implementation(request.module);
        EntityNode input = graph_.node(request.node);
        ParamValues params = bind_params(descriptor, request.params);
        std::unique_ptr<Transport> transport;
        if (descriptor.network_access == NetworkAccess::Transport) {
            if (!env_.transport_factory) fail(ErrorCode::PreconditionViolation, "no transport available");
            transport = env_.transport_factory(request.transport);
        }
        ModuleContext context(id, descriptor, std::move(input), std::move(params), transport.get(), files_, env_);
        implementation->run(context);
        {
            std::lock_guard lock(mutex_);
            Job& job = jobs_.at(id);
            job.staged_nodes = context.staged_nodes();
            for (const auto& f : context.staged_files()) job.staged_files.emplace_back(f.suggested_name, f.bytes.size());
        }
        commit(id, descriptor, context);
        transition(id, JobState::Succeeded);
    } catch (const Error& e) {
        transition(id, JobState::Failed, e.message(), e.code());
    } catch (const std::exception& e) {
        transition(id, JobState::Failed, e.what(), ErrorCode::InvalidArgument);
    }
}

void ModuleEngine::commit(const JobId& id, const ModuleDescriptor& descriptor, const ModuleContext& context) {
    for (const auto& n : context.staged_nodes()) {
        if (!descriptor.output_kinds.contains(n.kind)) {
            fail(ErrorCode::KindMismatch, descriptor.name + " staged a " + std::string(to_string(n.kind)) +
                                              " node outside its declared outputs");
        }
        if (is_file_kind(n.kind)) fail(ErrorCode::KindMismatch, "file nodes must be staged as files");
        canonicalize_value(n.kind, n.value);
    }
    for (const auto& f : context.staged_files()) {
        if (!is_file_kind(f.kind) || !descriptor.output_kinds.contains(f.kind) || !descriptor.produces_files) {
            fail(ErrorCode::KindMismatch, descriptor.name + " staged a file it does not declare");
        }
    }

    std::lock_guard commit_lock(commit_mutex_);
    std::vector<std::string> created;
    std::vector<DerivedNode> derived;
    std::vector<std::string> file_paths;
    try {
        for (const auto& f : context.staged_files()) {
            std::string path;
            if (auto same = files_.find_identical(f.suggested_name, f.bytes)) {
                path = *same;
            } else {
                path = files_.store(f.suggested_name, f.bytes);
                created.push_back(path);
            }
            file_paths.push_back(path);
            derived.push_back(DerivedNode{f.kind, path, f.label, std::nullopt});
        }
        for (const auto& n : context.staged_nodes()) derived.push_back(DerivedNode{n.kind, n.value, n.label, std::nullopt});
        auto provenance = Provenance::module_output(descriptor.name, id, descriptor.source_category);
        std::vector<NodeId> ids = derived.empty() ? std::vector<NodeId>{}
                                                  : graph_.commit_derived(context.input().id, derived, provenance);
        {
            std::lock_guard lock(mutex_);
            Job& job = jobs_.at(id);
            job.committed_nodes = std::move(ids);
            job.committed_files = std::move(file_paths);
        }
    } catch (...) {
        for (const auto& path : created) files_.remove(path);
        throw;
    }
    if (on_commit_) {
        try {
            on_commit_();
        } catch (const std::exception& e) {
            std::cerr << "idrecon: commit listener failed: " << e.what() << "\n";
        }
    }
}

Job ModuleEngine::job_status(const JobId& id) const {
    std::lock_guard lock(mutex_);
    auto it = jobs_.find(id);
    if (it == jobs_.end()) fail(ErrorCode::UnknownJob, "unknown job '" + id.str() + "'");
    return it->second;
}

Job ModuleEngine::wait(const JobId& id) const {
    std::unique_lock lock(mutex_);
    auto it = jobs_.find(id);
    if (it == jobs_.end()) fail(ErrorCode::UnknownJob, "unknown job '" + id.str() + "'");
    changed_.wait(lock, [&] { return it->second.finished(); });
    return it->second;
}

std::vector<JobEvent> ModuleEngine::wait_events(const JobId& id, std::size_t seen,
                                                std::chrono::milliseconds timeout) const {
    std::unique_lock lock(mutex_);
    auto it = jobs_.find(id);
    if (it == jobs_.end()) fail(ErrorCode::UnknownJob, "unknown job '" + id.str() + "'");
    changed_.wait_for(lock, timeout, [&] { return it->second.events.size() > seen; });
    return it->second.events;
}

void ModuleEngine::wait_idle() const {
    std::unique_lock lock(mutex_);
    changed_.wait(lock, [&] { return active_ == 0; });
}

std::vector<Job> ModuleEngine::jobs() const {
    std::lock_guard lock(mutex_);
    std::vector<Job> out;
    for (const auto& [_, j] : jobs_) out.push_back(j);
    return out;
}

}  // namespace idrecon
