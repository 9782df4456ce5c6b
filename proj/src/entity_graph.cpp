// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 idrecon contributors

#include "idrecon/entity_graph.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <mutex>
#include <set>

#include <json.hpp>

#include "idrecon/error.hpp"
#include "idrecon/unicode.hpp"

namespace idrecon {

using ordered_json = nlohmann::ordered_json;

namespace {

constexpr std::array<std::pair<EntityKind, std::string_view>, 13> kKindNames{{
    {EntityKind::Person, "Person"},
    {EntityKind::Username, "Username"},
    {EntityKind::Email, "Email"},
    {EntityKind::Password, "Password"},
    {EntityKind::PhoneNumber, "PhoneNumber"},
    {EntityKind::Address, "Address"},
    {EntityKind::SocialProfile, "SocialProfile"},
    {EntityKind::ImageFile, "ImageFile"},
    {EntityKind::TextFile, "TextFile"},
    {EntityKind::Domain, "Domain"},
    {EntityKind::Organization, "Organization"},
    {EntityKind::Token, "Token"},
    {EntityKind::Attribute, "Attribute"},
}};

constexpr std::array<std::pair<SourceCategory, std::string_view>, 11> kCategoryNames{{
    {SourceCategory::SocialMedia, "SocialMedia"},
    {SourceCategory::SearchEngine, "SearchEngine"},
    {SourceCategory::PublicMedia, "PublicMedia"},
    {SourceCategory::PublicRecord, "PublicRecord"},
    {SourceCategory::Repository, "Repository"},
    {SourceCategory::Archive, "Archive"},
    {SourceCategory::LeakPage, "LeakPage"},
    {SourceCategory::DarkDeepWeb, "DarkDeepWeb"},
    {SourceCategory::OtherInternet, "OtherInternet"},
    {SourceCategory::OrgWebsite, "OrgWebsite"},
    {SourceCategory::Network, "Network"},
}};

std::string squash(std::string_view text) {
    std::string out;
    for (char c : text) {
        if (c == '-' || c == '_' || c == ' ') continue;
        out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
    return out;
}

template <class Table>
auto parse_enum(const Table& table, std::string_view text, std::string_view what) {
    const std::string key = squash(text);
    for (const auto& [value, name] : table) {
        if (squash(name) == key) return value;
    }
    fail(ErrorCode::InvalidArgument, "unknown " + std::string(what) + " '" + std::string(text) + "'");
}

std::string normalize_relative_path(const std::string& path) {
    if (path.find('\0') != std::string::npos) fail(ErrorCode::InvalidPathValue, "path contains NUL");
    if (path.front() == '/' || path.front() == '\\' ||
        (path.size() >= 2 && path[1] == ':' && std::isalpha(static_cast<unsigned char>(path[0])))) {
        fail(ErrorCode::InvalidPathValue, "absolute path '" + path + "'");
    }
    std::vector<std::string> parts;
    std::string current;
    auto flush = [&] {
        if (current.empty() || current == ".") {
        } else if (current == "..") {
            fail(ErrorCode::InvalidPathValue, "path '" + path + "' escapes Files/");
        } else {
            parts.push_back(current);
        }
        current.clear();
    };
    for (char c : path) {
        if (c == '/' || c == '\\') {
            flush();
        } else {
            current.push_back(c);
        }
    }
    flush();
    if (parts.empty()) fail(ErrorCode::InvalidPathValue, "path '" + path + "' names no file");
    std::string out;
    for (const auto& p : parts) {
        if (!out.empty()) out.push_back('/');
        out += p;
    }
    return out;
}

std::string file_label(const std::string& path) {
    auto slash = path.rfind('/');
    return slash == std::string::npos ? path : path.substr(slash + 1);
}

bool node_order(const EntityNode& a, const EntityNode& b) {
    if (a.created_at != b.created_at) return a.created_at < b.created_at;
    return a.id < b.id;
}

std::optional<std::uint64_t> sequence_of(const std::string& id, char prefix) {
    if (id.size() < 2 || id[0] != prefix || id.size() > 19) return std::nullopt;
    std::uint64_t n = 0;
    for (std::size_t i = 1; i < id.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(id[i]))) return std::nullopt;
        n = n * 10 + static_cast<std::uint64_t>(id[i] - '0');
    }
    return n;
}

ordered_json optional_json(const std::optional<std::string>& v) {
    return v ? ordered_json(*v) : ordered_json(nullptr);
}

const ordered_json& require(const ordered_json& obj, const char* key, ordered_json::value_t type) {
    auto it = obj.find(key);
    if (it == obj.end()) fail(ErrorCode::SchemaViolation, std::string("missing field '") + key + "'");
    if (it->type() != type) fail(ErrorCode::SchemaViolation, std::string("field '") + key + "' has wrong type");
    return *it;
}

std::optional<std::string> optional_string(const ordered_json& obj, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end()) fail(ErrorCode::SchemaViolation, std::string("missing field '") + key + "'");
    if (it->is_null()) return std::nullopt;
    if (!it->is_string()) fail(ErrorCode::SchemaViolation, std::string("field '") + key + "' has wrong type");
    return it->get<std::string>();
}

template <class Fn>
auto rethrow_as_schema(Fn&& fn) {
    try {
        return fn();
    } catch (const Error& e) {
        if (e.code() == ErrorCode::SchemaViolation) throw;
        fail(ErrorCode::SchemaViolation, e.message());
    }
}

}  // namespace

std::string_view to_string(EntityKind kind) noexcept {
    for (const auto& [k, name] : kKindNames) {
        if (k == kind) return name;
    }
    return "Unknown";
}

std::string_view to_string(SourceCategory category) noexcept {
    for (const auto& [c, name] : kCategoryNames) {
        if (c == category) return name;
    }
    return "Unknown";
}

EntityKind parse_entity_kind(std::string_view text) {
    return parse_enum(kKindNames, text, "entity kind");
}

SourceCategory parse_source_category(std::string_view text) {
    return parse_enum(kCategoryNames, text, "source category");
}

const std::vector<EntityKind>& all_entity_kinds() {
    static const std::vector<EntityKind> kinds = [] {
        std::vector<EntityKind> out;
        for (const auto& [k, _] : kKindNames) out.push_back(k);
        return out;
    }();
    return kinds;
}

Provenance Provenance::user_seed(std::optional<SourceCategory> category) {
    return Provenance{Origin::UserSeed, std::nullopt, std::nullopt, category};
}

Provenance Provenance::module_output(std::string module, JobId job, std::optional<SourceCategory> category) {
    return Provenance{Origin::ModuleOutput, std::move(module), std::move(job), category};
}

void Provenance::validate() const {
    if (origin == Origin::ModuleOutput) {
        if (!module_name || module_name->empty() || !job_id || job_id->empty()) {
            fail(ErrorCode::InvalidArgument, "module output provenance requires module and job");
        }
    } else if (module_name || job_id) {
        fail(ErrorCode::InvalidArgument, "user seed provenance must not name a module or job");
    }
}

std::string canonicalize_value(EntityKind kind, std::string_view value) {
    std::string canonical = unicode::trim(unicode::nfc(value));
    if (canonical.empty()) fail(ErrorCode::EmptyValue, std::string(to_string(kind)) + " value is empty");
    switch (kind) {
        case EntityKind::Email:
        case EntityKind::Username:
        case EntityKind::Domain:
            return unicode::to_lower(canonical);
        case EntityKind::ImageFile:
        case EntityKind::TextFile:
            return normalize_relative_path(canonical);
        default:
            return canonical;
    }
}

// --- GraphDocument -------------------------------------------------------------

ordered_json to_json(const EntityNode& n) {
    ordered_json prov;
    prov["origin"] = n.provenance.origin == Origin::UserSeed ? "UserSeed" : "ModuleOutput";
    prov["module"] = optional_json(n.provenance.module_name);
    prov["job"] = n.provenance.job_id ? ordered_json(n.provenance.job_id->str()) : ordered_json(nullptr);
    prov["source_category"] = n.provenance.source_category
                                  ? ordered_json(std::string(to_string(*n.provenance.source_category)))
                                  : ordered_json(nullptr);
    ordered_json node;
    node["id"] = n.id.str();
    node["kind"] = std::string(to_string(n.kind));
    node["value"] = n.value;
    node["label"] = n.display_label;
    node["provenance"] = std::move(prov);
    node["created_at"] = format_rfc3339(n.created_at);
    return node;
}

ordered_json to_json(const DerivationEdge& e) {
    ordered_json edge;
    edge["id"] = e.id.str();
    edge["from"] = e.from.str();
    edge["to"] = e.to.str();
    edge["label"] = e.label;
    edge["job"] = e.job ? ordered_json(e.job->str()) : ordered_json(nullptr);
    return edge;
}


std::string GraphDocument::to_json() const {
    std::vector<EntityNode> sorted_nodes = nodes;
    std::sort(sorted_nodes.begin(), sorted_nodes.end(), node_order);
    std::vector<DerivationEdge> sorted_edges = edges;
    std::sort(sorted_edges.begin(), sorted_edges.end(),
              [](const DerivationEdge& a, const DerivationEdge& b) { return a.id < b.id; });

    ordered_json doc;
    doc["version"] = 1;
    doc["nodes"] = ordered_json::array();
    for (const auto& n : sorted_nodes) doc["nodes"].push_back(idrecon::to_json(n));
    doc["edges"] = ordered_json::array();
    for (const auto& e : sorted_edges) doc["edges"].push_back(idrecon::to_json(e));
    return doc.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace) + "\n";
}

GraphDocument GraphDocument::parse(std::string_view json) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(json);
    } catch (const nlohmann::json::parse_error& e) {
        fail(ErrorCode::SchemaViolation, std::string("graph document is not JSON: ") + e.what());
    }
    if (!doc.is_object()) fail(ErrorCode::SchemaViolation, "graph document must be an object");
    if (auto v = doc.find("version"); v != doc.end() && !(v->is_number_integer() && v->get<int>() == 1)) {
        fail(ErrorCode::SchemaViolation, "unsupported graph document version");
    }
    const auto& nodes = require(doc, "nodes", ordered_json::value_t::array);
    const auto& edges = require(doc, "edges", ordered_json::value_t::array);

    GraphDocument out;
    std::set<std::string> node_ids;
    std::set<std::pair<EntityKind, std::string>> keys;
    for (const auto& n : nodes) {
        if (!n.is_object()) fail(ErrorCode::SchemaViolation, "node must be an object");
        EntityNode node;
        node.id = NodeId(require(n, "id", ordered_json::value_t::string).get<std::string>());
        if (node.id.empty()) fail(ErrorCode::SchemaViolation, "empty node id");
        node.kind = rethrow_as_schema(
            [&] { return parse_entity_kind(require(n, "kind", ordered_json::value_t::string).get<std::string>()); });
        node.value = require(n, "value", ordered_json::value_t::string).get<std::string>();
        node.display_label = require(n, "label", ordered_json::value_t::string).get<std::string>();
        node.created_at = parse_rfc3339(require(n, "created_at", ordered_json::value_t::string).get<std::string>());
        const auto& prov = require(n, "provenance", ordered_json::value_t::object);
        std::string origin = require(prov, "origin", ordered_json::value_t::string).get<std::string>();
        if (origin == "UserSeed") {
            node.provenance.origin = Origin::UserSeed;
        } else if (origin == "ModuleOutput") {
            node.provenance.origin = Origin::ModuleOutput;
        } else {
            fail(ErrorCode::SchemaViolation, "unknown provenance origin '" + origin + "'");
        }
        node.provenance.module_name = optional_string(prov, "module");
        if (auto job = optional_string(prov, "job")) node.provenance.job_id = JobId(*job);
        if (auto cat = optional_string(prov, "source_category")) {
            node.provenance.source_category = rethrow_as_schema([&] { return parse_source_category(*cat); });
        }
        rethrow_as_schema([&] {
            node.provenance.validate();
            return 0;
        });
        std::string canonical = rethrow_as_schema([&] { return canonicalize_value(node.kind, node.value); });
        if (canonical != node.value) {
            fail(ErrorCode::SchemaViolation, "node " + node.id.str() + " value is not canonical");
        }
        if (!node_ids.insert(node.id.str()).second) {
            fail(ErrorCode::DuplicateId, "duplicate node id '" + node.id.str() + "'");
        }
        if (!keys.emplace(node.kind, node.value).second) {
            fail(ErrorCode::SchemaViolation, "duplicate (kind, value) for node " + node.id.str());
        }
        out.nodes.push_back(std::move(node));
    }

    std::set<std::string> edge_ids;
    std::set<std::tuple<std::string, std::string, std::string>> endpoints;
    for (const auto& e : edges) {
        if (!e.is_object()) fail(ErrorCode::SchemaViolation, "edge must be an object");
        DerivationEdge edge;
        edge.id = EdgeId(require(e, "id", ordered_json::value_t::string).get<std::string>());
        if (edge.id.empty()) fail(ErrorCode::SchemaViolation, "empty edge id");
        edge.from = NodeId(require(e, "from", ordered_json::value_t::string).get<std::string>());
        edge.to = NodeId(require(e, "to", ordered_json::value_t::string).get<std::string>());
        edge.label = require(e, "label", ordered_json::value_t::string).get<std::string>();
        if (auto job = optional_string(e, "job")) edge.job = JobId(*job);
        if (!node_ids.contains(edge.from.str()) || !node_ids.contains(edge.to.str())) {
            fail(ErrorCode::DanglingEdge, "edge " + edge.id.str() + " references a missing node");
        }
        if (!edge_ids.insert(edge.id.str()).second) {
            fail(ErrorCode::DuplicateId, "duplicate edge id '" + edge.id.str() + "'");
        }
        if (!endpoints.emplace(edge.from.str(), edge.to.str(), edge.label).second) {
            fail(ErrorCode::SchemaViolation, "duplicate edge " + edge.id.str());
        }
        out.edges.push_back(std::move(edge));
    }
    std::sort(out.nodes.begin(), out.nodes.end(), node_order);
    std::sort(out.edges.begin(), out.edges.end(),
              [](const DerivationEdge& a, const DerivationEdge& b) { return a.id < b.id; });
    return out;
}

// --- EntityGraph ---------------------------------------------------------------

EntityGraph::EntityGraph(Clock clock) : clock_(std::move(clock)) {}

NodeId EntityGraph::upsert_node(EntityKind kind, std::string_view value, const Provenance& provenance) {
    return upsert(kind, value, provenance).id;
}

EntityGraph::UpsertResult EntityGraph::upsert(EntityKind kind, std::string_view value, const Provenance& provenance,
                                              std::optional<std::string> display_label) {
    provenance.validate();
    std::string canonical = canonicalize_value(kind, value);
    std::string display = display_label ? *display_label
                          : is_file_kind(kind) ? file_label(canonical)
                                               : unicode::trim(unicode::nfc(value));
    std::unique_lock lock(mutex_);
    return upsert_locked(kind, canonical, std::move(display), provenance);
}

EntityGraph::UpsertResult EntityGraph::upsert_locked(EntityKind kind, const std::string& canonical,
                                                     std::string display, const Provenance& provenance) {
    KindValueKey key{kind, canonical};
    if (auto it = by_value_.find(key); it != by_value_.end()) return {it->second, false};
    NodeId id("n" + std::to_string(next_node_++));
    EntityNode node{id, kind, canonical, std::move(display), provenance, clock_()};
    nodes_.emplace(id, std::move(node));
    by_value_.emplace(std::move(key), id);
    return {id, true};
}

EdgeId EntityGraph::add_edge(const NodeId& from, const NodeId& to, std::string_view label,
                             const std::optional<JobId>& job) {
    std::unique_lock lock(mutex_);
    return add_edge_locked(from, to, label, job);
}

EdgeId EntityGraph::add_edge_locked(const NodeId& from, const NodeId& to, std::string_view label,
                                    const std::optional<JobId>& job) {
    if (!nodes_.contains(from)) fail(ErrorCode::UnknownNode, "unknown node '" + from.str() + "'");
    if (!nodes_.contains(to)) fail(ErrorCode::UnknownNode, "unknown node '" + to.str() + "'");
    EdgeKey key{from, to, std::string(label)};
    if (auto it = by_endpoints_.find(key); it != by_endpoints_.end()) return it->second;
    EdgeId id("e" + std::to_string(next_edge_++));
    edges_.emplace(id, DerivationEdge{id, from, to, std::string(label), job});
    by_endpoints_.emplace(std::move(key), id);
    out_[from].push_back(id);
    if (from != to) in_[to].push_back(id);
    return id;
}

std::vector<NodeId> EntityGraph::commit_derived(const NodeId& source, const std::vector<DerivedNode>& derived,
                                                const Provenance& provenance) {
    provenance.validate();
    struct Prepared {
        EntityKind kind;
        std::string canonical;
        std::string display;
        std::string label;
    };
    std::vector<Prepared> prepared;
    prepared.reserve(derived.size());
    for (const auto& d : derived) {
        std::string canonical = canonicalize_value(d.kind, d.value);
        std::string display = d.display_label ? *d.display_label
                              : is_file_kind(d.kind) ? file_label(canonical)
                                                     : unicode::trim(unicode::nfc(d.value));
        prepared.push_back({d.kind, std::move(canonical), std::move(display), d.edge_label});
    }
    std::unique_lock lock(mutex_);
    if (!nodes_.contains(source)) fail(ErrorCode::UnknownNode, "unknown node '" + source.str() + "'");
    std::vector<NodeId> ids;
    ids.reserve(prepared.size());
    for (auto& p : prepared) {
        NodeId id = upsert_locked(p.kind, p.canonical, std::move(p.display), provenance).id;
        add_edge_locked(source, id, p.label, provenance.job_id);
        ids.push_back(std::move(id));
    }
    return ids;
}

std::vector<Neighbor> EntityGraph::neighbors(const NodeId& node, Direction direction) const {
    std::shared_lock lock(mutex_);
    if (!nodes_.contains(node)) fail(ErrorCode::UnknownNode, "unknown node '" + node.str() + "'");
    std::vector<EdgeId> ids;
    auto collect = [&](const std::unordered_map<NodeId, std::vector<EdgeId>>& index) {
        if (auto it = index.find(node); it != index.end()) ids.insert(ids.end(), it->second.begin(), it->second.end());
    };
    if (direction != Direction::In) collect(out_);
    if (direction != Direction::Out) collect(in_);
    if (direction == Direction::In) {
        // Self-loops live only in the out index.
        if (auto it = out_.find(node); it != out_.end()) {
            for (const auto& id : it->second) {
                if (edges_.at(id).to == node) ids.push_back(id);
            }
        }
    }
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    std::vector<Neighbor> out;
    out.reserve(ids.size());
    for (const auto& id : ids) {
        const DerivationEdge& e = edges_.at(id);
        const NodeId& other = e.from == node ? e.to : e.from;
        out.push_back({e, nodes_.at(other)});
    }
    return out;
}

std::vector<EntityNode> EntityGraph::find_nodes(std::optional<EntityKind> kind,
                                                std::optional<std::string_view> value_substring) const {
    std::string needle = value_substring ? unicode::to_lower(unicode::nfc(*value_substring)) : std::string();
    std::shared_lock lock(mutex_);
    std::vector<EntityNode> out;
    for (const auto& [id, n] : nodes_) {
        if (kind && n.kind != *kind) continue;
        if (!needle.empty() && unicode::to_lower(n.value).find(needle) == std::string::npos) continue;
        out.push_back(n);
    }
    std::sort(out.begin(), out.end(), node_order);
    return out;
}

EntityNode EntityGraph::node(const NodeId& id) const {
    std::shared_lock lock(mutex_);
    auto it = nodes_.find(id);
    if (it == nodes_.end()) fail(ErrorCode::UnknownNode, "unknown node '" + id.str() + "'");
    return it->second;
}

bool EntityGraph::contains(const NodeId& id) const {
    std::shared_lock lock(mutex_);
    return nodes_.contains(id);
}

std::optional<NodeId> EntityGraph::lookup(EntityKind kind, std::string_view value) const {
    std::string canonical = canonicalize_value(kind, value);
    std::shared_lock lock(mutex_);
    auto it = by_value_.find(KindValueKey{kind, canonical});
    if (it == by_value_.end()) return std::nullopt;
    return it->second;
}

std::size_t EntityGraph::node_count() const {
    std::shared_lock lock(mutex_);
    return nodes_.size();
}

std::size_t EntityGraph::edge_count() const {
    std::shared_lock lock(mutex_);
    return edges_.size();
}

GraphDocument EntityGraph::snapshot() const {
    std::shared_lock lock(mutex_);
    GraphDocument doc;
    doc.nodes.reserve(nodes_.size());
    for (const auto& [_, n] : nodes_) doc.nodes.push_back(n);
    std::sort(doc.nodes.begin(), doc.nodes.end(), node_order);
    doc.edges.reserve(edges_.size());
    for (const auto& [_, e] : edges_) doc.edges.push_back(e);
    return doc;
}

void EntityGraph::replace(const GraphDocument& document) {
    // Round-trip through the validating parser so hand-built documents get the same checks.
    GraphDocument checked = GraphDocument::parse(document.to_json());

    std::map<NodeId, EntityNode> nodes;
    std::map<EdgeId, DerivationEdge> edges;
    std::map<KindValueKey, NodeId> by_value;
    std::map<EdgeKey, EdgeId> by_endpoints;
    std::unordered_map<NodeId, std::vector<EdgeId>> out;
    std::unordered_map<NodeId, std::vector<EdgeId>> in;
    std::uint64_t next_node = 1;
    std::uint64_t next_edge = 1;
    for (auto& n : checked.nodes) {
        if (auto seq = sequence_of(n.id.str(), 'n')) next_node = std::max(next_node, *seq + 1);
        by_value.emplace(KindValueKey{n.kind, n.value}, n.id);
        nodes.emplace(n.id, n);
    }
    for (auto& e : checked.edges) {
        if (auto seq = sequence_of(e.id.str(), 'e')) next_edge = std::max(next_edge, *seq + 1);
        by_endpoints.emplace(EdgeKey{e.from, e.to, e.label}, e.id);
        out[e.from].push_back(e.id);
        if (e.from != e.to) in[e.to].push_back(e.id);
        edges.emplace(e.id, e);
    }
    std::unique_lock lock(mutex_);
    nodes_ = std::move(nodes);
    edges_ = std::move(edges);
    by_value_ = std::move(by_value);
    by_endpoints_ = std::move(by_endpoints);
    out_ = std::move(out);
    in_ = std::move(in);
    next_node_ = next_node;
    next_edge_ = next_edge;
}

std::vector<std::string> EntityGraph::check_invariants() const {
    std::shared_lock lock(mutex_);
    std::vector<std::string> problems;
    for (const auto& [id, e] : edges_) {
        if (!nodes_.contains(e.from) || !nodes_.contains(e.to)) {
            problems.push_back("edge " + id.str() + " is dangling");
        }
    }
    std::set<std::pair<EntityKind, std::string>> seen;
    for (const auto& [id, n] : nodes_) {
        if (!seen.emplace(n.kind, n.value).second) problems.push_back("node " + id.str() + " duplicates a value");
        try {
            if (canonicalize_value(n.kind, n.value) != n.value) {
                problems.push_back("node " + id.str() + " value is not canonical");
            }
            n.provenance.validate();
        } catch (const Error& err) {
            problems.push_back("node " + id.str() + ": " + err.message());
        }
    }
    std::set<std::tuple<std::string, std::string, std::string>> endpoints;
    for (const auto& [id, e] : edges_) {
        if (!endpoints.emplace(e.from.str(), e.to.str(), e.label).second) {
            problems.push_back("edge " + id.str() + " is a parallel duplicate");
        }
    }
    return problems;
}

}  // namespace idrecon
