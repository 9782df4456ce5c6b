// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 idrecon contributors

#include "idrecon/project_store.hpp"

#include <atomic>
#include <fstream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "idrecon/error.hpp"

namespace idrecon {

using ordered_json = nlohmann::ordered_json;

void write_file_atomic(const fs::path& path, std::string_view content) {
    static std::atomic<unsigned long> counter{0};
    fs::path tmp = path;
    tmp += ".tmp-" + std::to_string(std::hash<std::thread::id>{}(std::this_thread::get_id()) % 100000) + "-" +
           std::to_string(counter++);
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) fail(ErrorCode::IoError, "cannot write " + tmp.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) fail(ErrorCode::IoError, "short write to " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp, ec);
        fail(ErrorCode::IoError, "cannot replace " + path.string());
    }
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorCode::IoError, "cannot read " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string sanitize_file_name(std::string_view suggested) {
    std::vector<std::string> parts;
    std::string current;
    auto flush = [&] {
        if (!current.empty() && current != "." && current != "..") parts.push_back(current);
        current.clear();
    };
    for (char c : suggested) {
        if (c == '/' || c == '\\') {
            flush();
        } else if (static_cast<unsigned char>(c) >= 0x20 && c != ':' && c != 0x7f) {
            current.push_back(c);
        }
    }
    flush();
    std::string out;
    for (const auto& p : parts) {
        if (!out.empty()) out.push_back('_');
        out += p;
    }
    std::size_t lead = out.find_first_not_of('.');
    out = lead == std::string::npos ? std::string() : out.substr(lead);
    if (out.size() > 200) out.resize(200);
    if (out.empty()) out = "file";
    return out;
}

std::string suffixed_name(const std::string& name, std::size_t n) {
    if (n == 0) return name;
    auto dot = name.rfind('.');
    if (dot == std::string::npos || dot == 0) return name + std::to_string(n);
    return name.substr(0, dot) + std::to_string(n) + name.substr(dot);
}

// --- MemoryFileStore -----------------------------------------------------------

std::string MemoryFileStore::store(std::string_view suggested_name, std::string_view bytes) {
    std::string base = sanitize_file_name(suggested_name);
    std::lock_guard lock(mutex_);
    for (std::size_t n = 0;; ++n) {
        std::string name = suffixed_name(base, n);
        if (!files_.contains(name)) {
            files_.emplace(name, std::string(bytes));
            return name;
        }
    }
}

std::optional<std::string> MemoryFileStore::find_identical(std::string_view suggested_name,
                                                           std::string_view bytes) const {
    std::string base = sanitize_file_name(suggested_name);
    std::lock_guard lock(mutex_);
    for (std::size_t n = 0;; ++n) {
        auto it = files_.find(suffixed_name(base, n));
        if (it == files_.end()) return std::nullopt;
        if (it->second == bytes) return it->first;
    }
}

std::string MemoryFileStore::read(std::string_view relative_path) const {
    std::lock_guard lock(mutex_);
    auto it = files_.find(std::string(relative_path));
    if (it == files_.end()) fail(ErrorCode::IoError, "no such file '" + std::string(relative_path) + "'");
    return it->second;
}

bool MemoryFileStore::exists(std::string_view relative_path) const {
    std::lock_guard lock(mutex_);
    return files_.contains(std::string(relative_path));
}

void MemoryFileStore::remove(std::string_view relative_path) {
    std::lock_guard lock(mutex_);
    files_.erase(std::string(relative_path));
}

std::map<std::string, std::string> MemoryFileStore::contents() const {
    std::lock_guard lock(mutex_);
    return files_;
}

// --- ProjectStore --------------------------------------------------------------

ProjectStore::ProjectStore(fs::path root, ProjectMeta meta) : root_(std::move(root)), meta_(std::move(meta)) {}

std::unique_ptr<ProjectStore> ProjectStore::init(const fs::path& root, std::string_view name, Clock clock) {
    std::error_code ec;
    if (fs::exists(root, ec)) {
        if (!fs::is_directory(root, ec) || !fs::is_empty(root, ec)) {
            fail(ErrorCode::PathOccupied, root.string() + " exists and is not an empty directory");
        }
    }
    if (name.empty()) fail(ErrorCode::InvalidArgument, "project name is empty");
    for (const char* dir : {"Files", "wordlists", "fixtures"}) {
        fs::create_directories(root / dir, ec);
        if (ec) fail(ErrorCode::IoError, "cannot create " + (root / dir).string() + ": " + ec.message());
    }
    ProjectMeta meta{std::string(name), clock(), kSchemaVersion};
    ordered_json doc;
    doc["name"] = meta.name;
    doc["created_at"] = format_rfc3339(meta.created_at);
    doc["schema_version"] = meta.schema_version;
    write_file_atomic(root / "project.json", doc.dump(2) + "\n");
    write_file_atomic(root / "graph.json", GraphDocument{}.to_json());
    write_file_atomic(root / "jobs.log", "");
    return std::unique_ptr<ProjectStore>(new ProjectStore(fs::absolute(root), std::move(meta)));
}

std::unique_ptr<ProjectStore> ProjectStore::open(const fs::path& root) {
    fs::path meta_path = root / "project.json";
    std::error_code ec;
    if (!fs::is_regular_file(meta_path, ec)) fail(ErrorCode::IoError, root.string() + " is not a project");
    ProjectMeta meta;
    try {
        auto doc = nlohmann::json::parse(read_file(meta_path));
        meta.name = doc.at("name").get<std::string>();
        meta.created_at = parse_rfc3339(doc.at("created_at").get<std::string>());
        meta.schema_version = doc.at("schema_version").get<int>();
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::SchemaViolation, std::string("bad project.json: ") + e.what());
    }
    if (meta.schema_version != kSchemaVersion) {
        fail(ErrorCode::SchemaViolation, "unsupported schema_version " + std::to_string(meta.schema_version));
    }
    for (const char* dir : {"Files", "wordlists", "fixtures"}) fs::create_directories(root / dir, ec);
    return std::unique_ptr<ProjectStore>(new ProjectStore(fs::absolute(root), std::move(meta)));
}

fs::path ProjectStore::resolve_file(std::string_view relative_path) const {
    std::string canonical = canonicalize_value(EntityKind::TextFile, relative_path);
    return files_dir() / canonical;
}

std::string ProjectStore::store(std::string_view suggested_name, std::string_view bytes) {
    std::string base = sanitize_file_name(suggested_name);
    std::lock_guard lock(files_mutex_);
    for (std::size_t n = 0;; ++n) {
        std::string name = suffixed_name(base, n);
        fs::path target = files_dir() / name;
        if (fs::exists(target)) continue;
        std::ofstream out(target, std::ios::binary);
        if (!out) fail(ErrorCode::IoError, "cannot create " + target.string());
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        if (!out) fail(ErrorCode::IoError, "short write to " + target.string());
        return name;
    }
}

std::optional<std::string> ProjectStore::find_identical(std::string_view suggested_name,
                                                        std::string_view bytes) const {
    std::string base = sanitize_file_name(suggested_name);
    std::lock_guard lock(files_mutex_);
    for (std::size_t n = 0;; ++n) {
        std::string name = suffixed_name(base, n);
        fs::path target = files_dir() / name;
        if (!fs::exists(target)) return std::nullopt;
        if (fs::file_size(target) == bytes.size() && read_file(target) == bytes) return name;
    }
}

std::string ProjectStore::read(std::string_view relative_path) const {
    return read_file(resolve_file(relative_path));
}

bool ProjectStore::exists(std::string_view relative_path) const {
    std::error_code ec;
    return fs::is_regular_file(resolve_file(relative_path), ec);
}

void ProjectStore::remove(std::string_view relative_path) {
    std::lock_guard lock(files_mutex_);
    std::error_code ec;
    fs::remove(resolve_file(relative_path), ec);
}

void ProjectStore::save_graph(const EntityGraph& graph) {
    save_graph_document(graph.snapshot());
}

void ProjectStore::save_graph_document(const GraphDocument& document) {
    std::string content = document.to_json();
    std::lock_guard lock(graph_mutex_);
    write_file_atomic(graph_path(), content);
}

GraphDocument ProjectStore::load_graph() const {
    std::string content;
    {
        std::lock_guard lock(graph_mutex_);
        content = read_file(graph_path());
    }
    try {
        return GraphDocument::parse(content);
    } catch (const Error& e) {
        if (e.code() == ErrorCode::SchemaViolation) throw;
        fail(ErrorCode::SchemaViolation, "graph.json: " + e.message());
    }
}

void ProjectStore::append_job_record(std::string_view json_line) {
    std::lock_guard lock(log_mutex_);
    std::ofstream out(jobs_log_path(), std::ios::binary | std::ios::app);
    if (!out) fail(ErrorCode::IoError, "cannot append to jobs.log");
    out.write(json_line.data(), static_cast<std::streamsize>(json_line.size()));
    out.put('\n');
}

std::vector<std::string> ProjectStore::job_records() const {
    std::lock_guard lock(log_mutex_);
    std::ifstream in(jobs_log_path(), std::ios::binary);
    std::vector<std::string> out;
    for (std::string line; std::getline(in, line);) {
        if (!line.empty()) out.push_back(line);
    }
    return out;
}

std::string ProjectStore::store_wordlist(std::string_view suggested_name, std::string_view bytes) {
    std::string base = sanitize_file_name(suggested_name);
    std::lock_guard lock(files_mutex_);
    for (std::size_t n = 0;; ++n) {
        std::string name = suffixed_name(base, n);
        if (fs::exists(wordlists_dir() / name)) continue;
        write_file_atomic(wordlists_dir() / name, bytes);
        return name;
    }
}

}  // namespace idrecon
