// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 idrecon contributors

#include <doctest.h>

#include <fstream>
#include <random>
#include <thread>

#include "idrecon/error.hpp"
#include "idrecon/project_store.hpp"
#include "../support/temp_dir.hpp"

using namespace idrecon;
using testing::TempDir;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("no error");
    return ErrorCode::InvalidArgument;
}

std::size_t count_files_outside(const fs::path& root, const fs::path& parent) {
    std::size_t n = 0;
    for (const auto& e : fs::recursive_directory_iterator(parent)) {
        auto rel = fs::relative(e.path(), root);
        if (*rel.begin() == "..") ++n;
    }
    return n;
}

}  // namespace

TEST_SUITE("project_store") {

TEST_CASE("init layout") {
    TempDir tmp;
    auto root = tmp / "p1";
    auto store = ProjectStore::init(root, "demo");
    std::size_t dirs = 1;  // the root
    std::size_t files = 0;
    for (const auto& e : fs::directory_iterator(root)) (e.is_directory() ? dirs : files)++;
    CHECK(dirs == 4);
    CHECK(files == 3);
    for (const char* d : {"Files", "wordlists", "fixtures"}) CHECK(fs::is_directory(root / d));
    for (const char* f : {"project.json", "graph.json", "jobs.log"}) CHECK(fs::is_regular_file(root / f));

    auto reopened = ProjectStore::open(root);
    CHECK(reopened->meta().name == "demo");
    CHECK(reopened->meta().schema_version == 1);
    CHECK(reopened->load_graph().nodes.empty());
    CHECK(code_of([&] { ProjectStore::init(root, "again"); }) == ErrorCode::PathOccupied);
    CHECK(code_of([&] { ProjectStore::open(tmp / "nothing"); }) == ErrorCode::IoError);
    auto empty_dir = tmp / "empty";
    fs::create_directories(empty_dir);
    CHECK_NOTHROW(ProjectStore::init(empty_dir, "ok"));
}

TEST_CASE("file naming") {
    TempDir tmp;
    auto store = ProjectStore::init(tmp / "p", "demo");
    std::vector<std::string> names;
    for (int i = 0; i < 11; ++i) names.push_back(store->store_file("olafscholz.jpg", std::to_string(i)));
    CHECK(names.front() == "olafscholz.jpg");
    CHECK(names[1] == "olafscholz1.jpg");
    CHECK(names.back() == "olafscholz10.jpg");
    CHECK(store->read("olafscholz10.jpg") == "10");
    CHECK(store->find_identical("olafscholz.jpg", "7") == std::optional<std::string>{"olafscholz7.jpg"});
    CHECK_FALSE(store->find_identical("olafscholz.jpg", "x"));

    CHECK(store->store_file("../../etc/x", "pwn") == "etc_x");
    CHECK(fs::exists(store->files_dir() / "etc_x"));
    auto empty = store->store_file("empty.txt", "");
    CHECK(fs::file_size(store->files_dir() / empty) == 0);
    CHECK(code_of([&] { (void)store->resolve_file("../project.json"); }) == ErrorCode::InvalidPathValue);
}

TEST_CASE("suffix helpers") {
    CHECK(suffixed_name("a.jpg", 0) == "a.jpg");
    CHECK(suffixed_name("a.jpg", 3) == "a3.jpg");
    CHECK(suffixed_name("README", 2) == "README2");
    CHECK(sanitize_file_name("../../etc/x") == "etc_x");
    CHECK_FALSE(sanitize_file_name("..").empty());
    CHECK(sanitize_file_name("..").find('/') == std::string::npos);
}

TEST_CASE("containment under traversal payloads") {
    TempDir tmp;
    auto root = tmp / "p";
    auto store = ProjectStore::init(root, "demo");
    std::vector<std::string> payloads{"../x", "..", ".", "/etc/passwd", "a/../../b", "..\\..\\c", "",
                                      "....//....//d", "%2e%2e/e", "\x01\x02", "name\0null"};
    std::mt19937 rng(99);
    const std::string alphabet = "./\\a_-%~";
    for (int i = 0; i < 200; ++i) {
        std::string s;
        for (int k = 0; k < 1 + static_cast<int>(rng() % 12); ++k) s += alphabet[rng() % alphabet.size()];
        payloads.push_back(s);
    }
    for (const auto& p : payloads) {
        auto rel = store->store_file(p, "x");
        CHECK(rel.find('/') == std::string::npos);
        CHECK(fs::exists(store->files_dir() / rel));
    }
    CHECK(count_files_outside(root, tmp.path()) == 0);
}

TEST_CASE("corrupted graph") {
    TempDir tmp;
    auto store = ProjectStore::init(tmp / "p", "demo");
    EntityGraph g(stepping_clock(Timestamp{}));
    g.upsert_node(EntityKind::Username, "olafscholz", Provenance::user_seed());
    store->save_graph(g);
    CHECK(store->load_graph().to_json() == g.export_json());
    {
        std::ofstream out(store->graph_path(), std::ios::trunc);
        out << "{\"nodes\": [";
    }
    CHECK(code_of([&] { (void)store->load_graph(); }) == ErrorCode::SchemaViolation);
    CHECK(ProjectStore::open(tmp / "p")->meta().name == "demo");
}

TEST_CASE("interrupted save leaves the previous graph") {
    TempDir tmp;
    auto store = ProjectStore::init(tmp / "p", "demo");
    EntityGraph g(stepping_clock(Timestamp{}));
    g.upsert_node(EntityKind::Person, "Olaf Scholz", Provenance::user_seed());
    store->save_graph(g);
    // a half-written temp sibling, as left by a crash before rename
    std::ofstream(store->root() / "graph.json.tmp") << "{\"nod";
    CHECK(store->load_graph().nodes.size() == 1);
}

TEST_CASE("concurrent saves") {
    TempDir tmp;
    auto store = ProjectStore::init(tmp / "p", "demo");
    std::vector<std::string> exports;
    std::vector<std::thread> writers;
    for (int w = 0; w < 8; ++w) {
        EntityGraph g(stepping_clock(Timestamp{}));
        for (int i = 0; i <= w; ++i) g.upsert_node(EntityKind::Token, "t" + std::to_string(i), Provenance::user_seed());
        exports.push_back(g.export_json());
    }
    for (int w = 0; w < 8; ++w) {
        writers.emplace_back([&, w] {
            for (int k = 0; k < 20; ++k) store->save_graph_document(GraphDocument::parse(exports[w]));
        });
    }
    for (auto& t : writers) t.join();
    auto last = store->load_graph().to_json();
    CHECK(std::find(exports.begin(), exports.end(), last) != exports.end());
    std::size_t stray = 0;
    for (const auto& e : fs::directory_iterator(store->root())) {
        if (e.path().filename().string().find("tmp") != std::string::npos) ++stray;
    }
    CHECK(stray == 0);
}

TEST_CASE("job log and wordlists") {
    TempDir tmp;
    auto store = ProjectStore::init(tmp / "p", "demo");
    store->append_job_record("{\"id\":\"j1\"}");
    store->append_job_record("{\"id\":\"j2\"}");
    CHECK(store->job_records() == std::vector<std::string>{"{\"id\":\"j1\"}", "{\"id\":\"j2\"}"});
    auto name = store->store_wordlist("w.txt", "a\n");
    CHECK(read_file(store->wordlists_dir() / name) == "a\n");
}

TEST_CASE("memory store") {
    MemoryFileStore m;
    CHECK(m.store("a.txt", "1") == "a.txt");
    CHECK(m.store("a.txt", "2") == "a1.txt");
    CHECK(m.find_identical("a.txt", "2") == std::optional<std::string>{"a1.txt"});
    m.remove("a.txt");
    CHECK_FALSE(m.exists("a.txt"));
    CHECK(m.contents().size() == 1);
}

}
