// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 idrecon contributors

#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "idrecon/entity_graph.hpp"
#include "idrecon/timeutil.hpp"

namespace idrecon {

namespace fs = std::filesystem;

/// Write to a sibling temp file, then rename over `path`. Throws IoError.
void write_file_atomic(const fs::path& path, std::string_view content);
std::string read_file(const fs::path& path);

/// Single path component safe to create under Files/: "../../etc/x" -> "etc_x".
std::string sanitize_file_name(std::string_view suggested);
/// n == 0 keeps the name; otherwise the number goes before the extension: "a.jpg", 3 -> "a3.jpg".
std::string suffixed_name(const std::string& name, std::size_t n);

/// Where module output files go. Paths are relative to the Files/ directory.
class FileStore {
  public:
    virtual ~FileStore() = default;
    /// Never overwrites: collisions get the next free numeric suffix.
    virtual std::string store(std::string_view suggested_name, std::string_view bytes) = 0;
    /// An existing file in the suffix family of `suggested_name` with exactly these bytes.
    [[nodiscard]] virtual std::optional<std::string> find_identical(std::string_view suggested_name,
                                                                    std::string_view bytes) const = 0;
    [[nodiscard]] virtual std::string read(std::string_view relative_path) const = 0;
    [[nodiscard]] virtual bool exists(std::string_view relative_path) const = 0;
    virtual void remove(std::string_view relative_path) = 0;
};

class MemoryFileStore final : public FileStore {
  public:
    std::string store(std::string_view suggested_name, std::string_view bytes) override;
    [[nodiscard]] std::optional<std::string> find_identical(std::string_view suggested_name,
                                                            std::string_view bytes) const override;
    [[nodiscard]] std::string read(std::string_view relative_path) const override;
    [[nodiscard]] bool exists(std::string_view relative_path) const override;
    void remove(std::string_view relative_path) override;
    [[nodiscard]] std::map<std::string, std::string> contents() const;

  private:
    mutable std::mutex mutex_;
    std::map<std::string, std::string> files_;
};

struct ProjectMeta {
    std::string name;
    Timestamp created_at;
    int schema_version = 1;
};

/// On-disk investigation:
///   project.json  graph.json  jobs.log  Files/  wordlists/  fixtures/
class ProjectStore final : public FileStore {
  public:
    static constexpr int kSchemaVersion = 1;

    /// Throws PathOccupied when `root` exists and is not an empty directory.
    static std::unique_ptr<ProjectStore> init(const fs::path& root, std::string_view name, Clock clock = now_utc);
    /// Throws IoError when `root` is not a project, SchemaViolation on a bad project.json.
    static std::unique_ptr<ProjectStore> open(const fs::path& root);

    [[nodiscard]] const fs::path& root() const noexcept { return root_; }
    [[nodiscard]] fs::path files_dir() const { return root_ / "Files"; }
    [[nodiscard]] fs::path wordlists_dir() const { return root_ / "wordlists"; }
    [[nodiscard]] fs::path fixtures_dir() const { return root_ / "fixtures"; }
    [[nodiscard]] fs::path graph_path() const { return root_ / "graph.json"; }
    [[nodiscard]] fs::path jobs_log_path() const { return root_ / "jobs.log"; }
    [[nodiscard]] const ProjectMeta& meta() const noexcept { return meta_; }

    std::string store_file(std::string_view suggested_name, std::string_view bytes) {
        return store(suggested_name, bytes);
    }
    std::string store(std::string_view suggested_name, std::string_view bytes) override;
    [[nodiscard]] std::optional<std::string> find_identical(std::string_view suggested_name,
                                                            std::string_view bytes) const override;
    [[nodiscard]] std::string read(std::string_view relative_path) const override;
    [[nodiscard]] bool exists(std::string_view relative_path) const override;
    void remove(std::string_view relative_path) override;
    /// Absolute path of a Files/ entry. Throws InvalidPathValue if it would escape Files/.
    [[nodiscard]] fs::path resolve_file(std::string_view relative_path) const;

    void save_graph(const EntityGraph& graph);
    void save_graph_document(const GraphDocument& document);
    /// Throws SchemaViolation when graph.json is corrupt.
    [[nodiscard]] GraphDocument load_graph() const;

    /// jobs.log holds one JSON object per line.
    void append_job_record(std::string_view json_line);
    [[nodiscard]] std::vector<std::string> job_records() const;

    /// Saves a wordlist under wordlists/ and returns its file name.
    std::string store_wordlist(std::string_view suggested_name, std::string_view bytes);

  private:
    ProjectStore(fs::path root, ProjectMeta meta);

    fs::path root_;
    ProjectMeta meta_;
    mutable std::mutex files_mutex_;
    mutable std::mutex graph_mutex_;
    mutable std::mutex log_mutex_;
};

}  // namespace idrecon
