// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 idrecon contributors

#pragma once

#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <thread>
#include <variant>
#include <vector>

#include <json.hpp>

#include "idrecon/entity_graph.hpp"
#include "idrecon/error.hpp"
#include "idrecon/project_store.hpp"
#include "idrecon/text_analysis.hpp"
#include "idrecon/transport.hpp"
#include "idrecon/vision.hpp"

namespace idrecon {

enum class Phase { Collection, Analysis, Extraction };
enum class NetworkAccess { None, Transport };
enum class ParamType { Text, Int, Flag };

std::string_view to_string(Phase phase) noexcept;
std::string_view to_string(NetworkAccess access) noexcept;
std::string_view to_string(ParamType type) noexcept;
Phase parse_phase(std::string_view text);

struct ParamSpec {
    std::string name;
    ParamType type = ParamType::Text;
    std::string default_value;
    std::string help;
};

/// A transform's declared contract.
struct ModuleDescriptor {
    std::string name;
    Phase phase = Phase::Collection;
    std::set<EntityKind> input_kinds;
    std::set<EntityKind> output_kinds;
    bool produces_files = false;
    NetworkAccess network_access = NetworkAccess::None;
    std::vector<ParamSpec> params_schema;
    std::optional<SourceCategory> source_category;
    std::string description;

    /// Throws InvalidDescriptor.
    void validate() const;
};

nlohmann::ordered_json to_json(const ModuleDescriptor& descriptor);
/// Throws InvalidDescriptor.
ModuleDescriptor descriptor_from_json(const nlohmann::json& j);

using ParamValue = std::variant<std::string, std::int64_t, bool>;

/// Parameters after validation against a params_schema, defaults filled in.
class ParamValues {
  public:
    ParamValues() = default;
    explicit ParamValues(std::map<std::string, ParamValue> values) : values_(std::move(values)) {}

    [[nodiscard]] const std::string& text(const std::string& name) const;
    [[nodiscard]] std::int64_t integer(const std::string& name) const;
    [[nodiscard]] bool flag(const std::string& name) const;
    [[nodiscard]] std::map<std::string, std::string> as_strings() const;

  private:
    std::map<std::string, ParamValue> values_;
};

/// Throws ParamInvalid for unknown names or values that do not parse as the declared type.
ParamValues bind_params(const ModuleDescriptor& descriptor, const std::map<std::string, std::string>& raw);

struct StagedNode {
    EntityKind kind;
    std::string value;
    std::string label;
};

struct StagedFile {
    std::string suggested_name;
    std::string bytes;
    EntityKind kind = EntityKind::ImageFile;
    std::string label;
};

struct TransportRequest {
    TransportMode mode = TransportMode::Replay;
    std::optional<std::filesystem::path> fixture;
};

using TransportFactory = std::function<std::unique_ptr<Transport>(const TransportRequest&)>;

using BackendSource = std::function<std::shared_ptr<HttpBackend>()>;

/// Replay loads the fixture and never asks for a backend; Record and Live take one from `backends`.
TransportFactory make_transport_factory(BackendSource backends);

/// make_transport_factory over real HTTP (cpp-httplib).
TransportFactory default_transport_factory(LiveOptions options = {});

/// Shared capabilities handed to modules.
struct EngineEnvironment {
    TransportFactory transport_factory = default_transport_factory();
    std::shared_ptr<media::VisionAdapter> vision;
    std::map<std::string, std::shared_ptr<text::NerAdapter>> ner_adapters;
    text::Gazetteers gazetteers = text::Gazetteers::builtin();
    Clock clock = now_utc;
};

/// What a running module sees. Output is staged and only reaches the graph on success.
class ModuleContext {
  public:
    ModuleContext(const JobId& job, const ModuleDescriptor& descriptor, EntityNode input, ParamValues params,
                  Transport* transport, const FileStore& files, const EngineEnvironment& env);

    [[nodiscard]] const JobId& job_id() const noexcept { return job_; }
    [[nodiscard]] const ModuleDescriptor& descriptor() const noexcept { return descriptor_; }
    [[nodiscard]] const EntityNode& input() const noexcept { return input_; }
    [[nodiscard]] const ParamValues& params() const noexcept { return params_; }
    /// Throws PreconditionViolation if the module did not declare network access.
    [[nodiscard]] Transport& transport() const;
    /// Bytes of the input node's file (ImageFile/TextFile inputs only).
    [[nodiscard]] std::string read_input_file() const;
    [[nodiscard]] const EngineEnvironment& environment() const noexcept { return env_; }

    void stage_node(EntityKind kind, std::string value, std::string label);
    void stage_file(std::string suggested_name, std::string bytes, EntityKind kind, std::string label);

    [[nodiscard]] const std::vector<StagedNode>& staged_nodes() const noexcept { return nodes_; }
    [[nodiscard]] const std::vector<StagedFile>& staged_files() const noexcept { return files_; }

  private:
    JobId job_;
    const ModuleDescriptor& descriptor_;
    EntityNode input_;
    ParamValues params_;
    Transport* transport_;
    const FileStore& file_store_;
    const EngineEnvironment& env_;
    std::vector<StagedNode> nodes_;
    std::vector<StagedFile> files_;
};

/// A transform implementation. Must be reentrant: one instance serves concurrent jobs.
class Module {
  public:
    virtual ~Module() = default;
    virtual void run(ModuleContext& context) const = 0;
};

class ModuleRegistry {
  public:
    /// Throws DuplicateName or InvalidDescriptor.
    void register_module(ModuleDescriptor descriptor, std::shared_ptr<const Module> implementation);

    /// Sorted by name; filters are conjunctive.
    [[nodiscard]] std::vector<ModuleDescriptor> list_modules(std::optional<EntityKind> input_kind = std::nullopt,
                                                             std::optional<Phase> phase = std::nullopt) const;
    /// Throws UnknownModule.
    [[nodiscard]] const ModuleDescriptor& descriptor(std::string_view name) const;
    [[nodiscard]] std::shared_ptr<const Module> implementation(std::string_view name) const;
    [[nodiscard]] bool contains(std::string_view name) const;

  private:
    struct Entry {
        ModuleDescriptor descriptor;
        std::shared_ptr<const Module> implementation;
    };
    mutable std::mutex mutex_;
    std::map<std::string, Entry, std::less<>> entries_;
};

enum class JobState { Pending, Running, Succeeded, Failed };

std::string_view to_string(JobState state) noexcept;

struct JobEvent {
    JobState state = JobState::Pending;
    std::optional<std::string> message;
    Timestamp at;
};

struct Job {
    JobId id;
    std::string module_name;
    NodeId input_node;
    std::map<std::string, std::string> params;
    TransportMode transport = TransportMode::Replay;
    JobState state = JobState::Pending;
    std::vector<StagedNode> staged_nodes;
    std::vector<std::pair<std::string, std::size_t>> staged_files;
    std::optional<std::string> error;
    std::optional<ErrorCode> error_code;
    std::optional<Timestamp> started_at;
    std::optional<Timestamp> finished_at;
    std::vector<NodeId> committed_nodes;
    std::vector<std::string> committed_files;
    std::vector<JobEvent> events;

    [[nodiscard]] bool finished() const noexcept { return state == JobState::Succeeded || state == JobState::Failed; }
};

nlohmann::ordered_json to_json(const Job& job);
nlohmann::ordered_json to_json(const JobEvent& event);

struct RunRequest {
    std::string module;
    NodeId node;
    std::map<std::string, std::string> params;
    TransportRequest transport;
};

/// Runs jobs on background threads and commits their staged output atomically.
class ModuleEngine {
  public:
    using JobListener = std::function<void(const Job&)>;

    ModuleEngine(EntityGraph& graph, FileStore& files, const ModuleRegistry& registry, EngineEnvironment env);
    ~ModuleEngine();

    ModuleEngine(const ModuleEngine&) = delete;
    ModuleEngine& operator=(const ModuleEngine&) = delete;

    /// Validates synchronously, then starts the job. Throws UnknownModule, UnknownNode,
    /// KindMismatch or ParamInvalid.
    JobId run_module(const RunRequest& request);

    /// Throws UnknownJob.
    [[nodiscard]] Job job_status(const JobId& id) const;
    Job wait(const JobId& id) const;
    /// Blocks until the job has more than `seen` events or the timeout passes.
    std::vector<JobEvent> wait_events(const JobId& id, std::size_t seen, std::chrono::milliseconds timeout) const;
    void wait_idle() const;
    [[nodiscard]] std::vector<Job> jobs() const;

    /// Job ids recorded by earlier sessions; provenance of old nodes resolves against these.
    void add_known_jobs(const std::vector<JobId>& ids);
    [[nodiscard]] bool knows_job(const JobId& id) const;

    /// Called after a successful commit, under the commit lock.
    void on_commit(std::function<void()> listener) { on_commit_ = std::move(listener); }
    /// Called once per job when it reaches Succeeded or Failed.
    void on_finished(JobListener listener) { on_finished_ = std::move(listener); }

  private:
    void execute(JobId id, RunRequest request);
    void commit(const JobId& id, const ModuleDescriptor& descriptor, const ModuleContext& context);
    void transition(const JobId& id, JobState state, std::optional<std::string> message = std::nullopt,
                    std::optional<ErrorCode> code = std::nullopt);

    EntityGraph& graph_;
    FileStore& files_;
    const ModuleRegistry& registry_;
    EngineEnvironment env_;
    std::function<void()> on_commit_;
    JobListener on_finished_;

    mutable std::mutex mutex_;
    mutable std::condition_variable changed_;
    std::map<JobId, Job> jobs_;
    std::set<JobId> known_jobs_;
    std::uint64_t next_job_ = 1;
    std::size_t active_ = 0;
    std::mutex commit_mutex_;
    std::map<JobId, std::jthread> threads_;
};

}  // namespace idrecon
