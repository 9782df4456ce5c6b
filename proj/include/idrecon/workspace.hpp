// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 idrecon contributors

#pragma once

#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "idrecon/entity_graph.hpp"
#include "idrecon/module_engine.hpp"
#include "idrecon/project_store.hpp"
#include "idrecon/site_probe.hpp"
#include "idrecon/wordlist.hpp"

namespace idrecon {

struct WorkspaceOptions {
    Clock clock = now_utc;
    LiveOptions live;
    /// Overrides fixtures/gad.json when set.
    std::shared_ptr<media::VisionAdapter> vision;
    /// Replaces the default transport factory (tests use this to count connections).
    TransportFactory transport_factory;
};

struct WordlistRequest {
    std::vector<std::string> tokens;
    std::optional<NodeId> from_node;
    std::map<std::string, std::string> options;
    /// Kinds whose values near from_node join the token stream.
    std::set<EntityKind> include_node_values{EntityKind::Username, EntityKind::Person, EntityKind::Token};
};

struct WordlistResult {
    std::size_t count = 0;
    std::string file_name;
    std::string fingerprint;
    std::vector<std::string> tokens;
};

/// One open project: its store, graph, module registry and job engine. The CLI, the HTTP
/// service and the Python bindings all go through this class.
class Workspace {
  public:
    static std::unique_ptr<Workspace> init(const std::filesystem::path& root, std::string_view name,
                                           WorkspaceOptions options = {});
    static std::unique_ptr<Workspace> open(const std::filesystem::path& root, WorkspaceOptions options = {});
    ~Workspace();

    Workspace(const Workspace&) = delete;
    Workspace& operator=(const Workspace&) = delete;

    [[nodiscard]] ProjectStore& store() noexcept { return *store_; }
    [[nodiscard]] EntityGraph& graph() noexcept { return *graph_; }
    [[nodiscard]] ModuleRegistry& registry() noexcept { return *registry_; }
    [[nodiscard]] ModuleEngine& engine() noexcept { return *engine_; }

    [[nodiscard]] nlohmann::ordered_json project_info() const;

    /// Seeds a node (UserSeed provenance). Returns the node and whether it was new.
    std::pair<EntityNode, bool> add_node(EntityKind kind, std::string_view value,
                                         std::optional<SourceCategory> category = std::nullopt);
    /// Copies a file into Files/ and seeds an ImageFile/TextFile node for it.
    std::pair<EntityNode, bool> add_file(EntityKind kind, const std::filesystem::path& source);
    DerivationEdge add_edge(const NodeId& from, const NodeId& to, std::string_view label);

    [[nodiscard]] std::vector<ModuleDescriptor> modules(std::optional<EntityKind> input_kind = std::nullopt) const;
    JobId run(const RunRequest& request);
    Job wait(const JobId& id);
    /// Live jobs come from the engine; earlier sessions' jobs from jobs.log. Throws UnknownJob.
    [[nodiscard]] nlohmann::ordered_json job_json(const JobId& id) const;

    [[nodiscard]] std::string export_graph() const { return graph_->export_json(); }

    std::vector<probe::ProbeResult> probe(std::string_view username, const std::optional<std::filesystem::path>& sites,
                                          const TransportRequest& transport, std::size_t concurrency = 4);

    /// Tokens a wordlist built from this node would start from.
    [[nodiscard]] std::vector<std::string> tokens_for_node(const NodeId& id,
                                                           const std::set<EntityKind>& include_kinds) const;
    /// Writes wordlists/<name>. Throws EmptyTokenSet, InvalidConfig, UnknownNode.
    WordlistResult make_wordlist(const WordlistRequest& request);

    /// Waits for running jobs and writes the graph.
    void flush();

  private:
    Workspace(std::unique_ptr<ProjectStore> store, WorkspaceOptions options);
    void persist();

    WorkspaceOptions options_;
    std::unique_ptr<ProjectStore> store_;
    std::unique_ptr<EntityGraph> graph_;
    std::unique_ptr<ModuleRegistry> registry_;
    std::unique_ptr<ModuleEngine> engine_;
    std::mutex persist_mutex_;
    std::mutex wordlist_mutex_;
};

/// Resolves a fixture path: as given if it exists, else under the project's fixtures/.
std::filesystem::path resolve_fixture(const ProjectStore& store, const std::filesystem::path& path);

}  // namespace idrecon
