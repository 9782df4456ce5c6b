// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 idrecon contributors

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "idrecon/ids.hpp"
#include "idrecon/timeutil.hpp"

namespace idrecon {

enum class EntityKind {
    Person,
    Username,
    Email,
    Password,
    PhoneNumber,
    Address,
    SocialProfile,
    ImageFile,
    TextFile,
    Domain,
    Organization,
    Token,
    Attribute,
};

enum class SourceCategory {
    SocialMedia,
    SearchEngine,
    PublicMedia,
    PublicRecord,
    Repository,
    Archive,
    LeakPage,
    DarkDeepWeb,
    OtherInternet,
    OrgWebsite,
    Network,
};

std::string_view to_string(EntityKind kind) noexcept;
std::string_view to_string(SourceCategory category) noexcept;
/// Case-insensitive; '-', '_' and spaces are ignored ("image-file" == "ImageFile").
EntityKind parse_entity_kind(std::string_view text);
SourceCategory parse_source_category(std::string_view text);
const std::vector<EntityKind>& all_entity_kinds();

[[nodiscard]] constexpr bool is_file_kind(EntityKind kind) noexcept {
    return kind == EntityKind::ImageFile || kind == EntityKind::TextFile;
}

enum class Origin { UserSeed, ModuleOutput };

struct Provenance {
    Origin origin = Origin::UserSeed;
    std::optional<std::string> module_name;
    std::optional<JobId> job_id;
    std::optional<SourceCategory> source_category;

    static Provenance user_seed(std::optional<SourceCategory> category = std::nullopt);
    static Provenance module_output(std::string module, JobId job,
                                    std::optional<SourceCategory> category = std::nullopt);

    /// Throws InvalidArgument unless module/job presence matches the origin.
    void validate() const;

    friend bool operator==(const Provenance&, const Provenance&) = default;
};

struct EntityNode {
    NodeId id;
    EntityKind kind = EntityKind::Person;
    std::string value;
    std::string display_label;
    Provenance provenance;
    Timestamp created_at;

    friend bool operator==(const EntityNode&, const EntityNode&) = default;
};

struct DerivationEdge {
    EdgeId id;
    NodeId from;
    NodeId to;
    std::string label;
    std::optional<JobId> job;

    friend bool operator==(const DerivationEdge&, const DerivationEdge&) = default;
};

enum class Direction { Out, In, Both };

struct Neighbor {
    DerivationEdge edge;
    EntityNode node;
};

/// Canonical form used for dedup: trim + NFC, lowercase for Email/Username/Domain.
/// File kinds must be relative paths that stay inside the Files/ directory.
/// Throws EmptyValue or InvalidPathValue.
std::string canonicalize_value(EntityKind kind, std::string_view value);

/// Serializable, self-contained picture of a graph. Arrays are kept sorted
/// by (created_at, id) for nodes and by id for edges.
nlohmann::ordered_json to_json(const EntityNode& node);
nlohmann::ordered_json to_json(const DerivationEdge& edge);

struct GraphDocument {
    std::vector<EntityNode> nodes;
    std::vector<DerivationEdge> edges;

    /// Compact UTF-8 JSON terminated by a single LF.
    [[nodiscard]] std::string to_json() const;
    /// Throws SchemaViolation, DanglingEdge or DuplicateId.
    static GraphDocument parse(std::string_view json);
};

/// One node a module wants to attach to its input node.
struct DerivedNode {
    EntityKind kind;
    std::string value;
    std::string edge_label;
    std::optional<std::string> display_label;
};

/// Investigation graph. Mutations take an exclusive lock; reads share it.
class EntityGraph {
  public:
    explicit EntityGraph(Clock clock = now_utc);

    EntityGraph(const EntityGraph&) = delete;
    EntityGraph& operator=(const EntityGraph&) = delete;

    struct UpsertResult {
        NodeId id;
        bool created = false;
    };

    NodeId upsert_node(EntityKind kind, std::string_view value, const Provenance& provenance);
    UpsertResult upsert(EntityKind kind, std::string_view value, const Provenance& provenance,
                        std::optional<std::string> display_label = std::nullopt);

    EdgeId add_edge(const NodeId& from, const NodeId& to, std::string_view label,
                    const std::optional<JobId>& job = std::nullopt);

    /// Upserts every derived node and links it from `source` in one critical section.
    /// Either everything is applied or nothing is. Returns ids in input order.
    std::vector<NodeId> commit_derived(const NodeId& source, const std::vector<DerivedNode>& derived,
                                       const Provenance& provenance);

    [[nodiscard]] std::vector<Neighbor> neighbors(const NodeId& node, Direction direction) const;
    [[nodiscard]] std::vector<EntityNode> find_nodes(std::optional<EntityKind> kind = std::nullopt,
                                                     std::optional<std::string_view> value_substring = std::nullopt) const;
    [[nodiscard]] EntityNode node(const NodeId& id) const;
    [[nodiscard]] bool contains(const NodeId& id) const;
    [[nodiscard]] std::optional<NodeId> lookup(EntityKind kind, std::string_view value) const;
    [[nodiscard]] std::size_t node_count() const;
    [[nodiscard]] std::size_t edge_count() const;

    [[nodiscard]] GraphDocument snapshot() const;
    [[nodiscard]] std::string export_json() const { return snapshot().to_json(); }

    /// Replaces the whole graph. The document is validated before anything changes.
    void replace(const GraphDocument& document);
    void import_json(std::string_view json) { replace(GraphDocument::parse(json)); }

    /// Lists referential-integrity and dedup violations; empty when the graph is sound.
    [[nodiscard]] std::vector<std::string> check_invariants() const;

  private:
    struct KindValueKey {
        EntityKind kind;
        std::string value;
        friend bool operator<(const KindValueKey& a, const KindValueKey& b) {
            if (a.kind != b.kind) return a.kind < b.kind;
            return a.value < b.value;
        }
    };
    struct EdgeKey {
        NodeId from;
        NodeId to;
        std::string label;
        friend bool operator<(const EdgeKey& a, const EdgeKey& b) {
            if (a.from != b.from) return a.from < b.from;
            if (a.to != b.to) return a.to < b.to;
            return a.label < b.label;
        }
    };

    UpsertResult upsert_locked(EntityKind kind, const std::string& canonical, std::string display,
                               const Provenance& provenance);
    EdgeId add_edge_locked(const NodeId& from, const NodeId& to, std::string_view label,
                           const std::optional<JobId>& job);

    Clock clock_;
    mutable std::shared_mutex mutex_;
    std::map<NodeId, EntityNode> nodes_;
    std::map<EdgeId, DerivationEdge> edges_;
    std::map<KindValueKey, NodeId> by_value_;
    std::map<EdgeKey, EdgeId> by_endpoints_;
    std::unordered_map<NodeId, std::vector<EdgeId>> out_;
    std::unordered_map<NodeId, std::vector<EdgeId>> in_;
    std::uint64_t next_node_ = 1;
    std::uint64_t next_edge_ = 1;
};

}  // namespace idrecon
