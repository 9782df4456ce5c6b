// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 idrecon contributors

#include <doctest.h>

#include <fstream>

#include "idrecon/error.hpp"
#include "idrecon/workspace.hpp"
#include "../support/fake_backend.hpp"
#include "../support/temp_dir.hpp"

using namespace idrecon;
using testing::TempDir;

namespace {

const fs::path kFixtures = IDRECON_TEST_FIXTURES;

ErrorCode code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("no error");
    return ErrorCode::InvalidArgument;
}

WorkspaceOptions offline(std::shared_ptr<testing::CountingBackend> backend = nullptr) {
    WorkspaceOptions o;
    o.clock = stepping_clock(Timestamp{});
    if (!backend) backend = std::make_shared<testing::CountingBackend>();
    o.transport_factory = make_transport_factory([backend] { return backend; });
    return o;
}

std::unique_ptr<Workspace> fixture_project(const fs::path& root) {
    Workspace::init(root, "media-geo", offline());
    fs::copy_file(kFixtures / "crawl-olafscholz.json", root / "fixtures" / "crawl-olafscholz.json");
    fs::copy_file(kFixtures / "gad-olafscholz.json", root / "fixtures" / "gad.json");
    return Workspace::open(root, offline());
}

}  // namespace

TEST_SUITE("workspace") {

TEST_CASE("crawl then gad, persisted across sessions") {
    TempDir tmp;
    auto root = tmp / "p";
    auto backend = std::make_shared<testing::CountingBackend>();
    JobId crawl_id;
    NodeId image;
    {
        auto ws = fixture_project(root);
        auto [user, created] = ws->add_node(EntityKind::Username, "olafscholz");
        CHECK(created);
        crawl_id = ws->run({"media-crawler", user.id, {}, {TransportMode::Replay, "crawl-olafscholz.json"}});
        auto crawl = ws->wait(crawl_id);
        REQUIRE(crawl.state == JobState::Succeeded);
        CHECK(crawl.committed_nodes.size() == 19);
        CHECK(ws->graph().find_nodes(EntityKind::ImageFile).size() == 19);
        auto img = ws->graph().lookup(EntityKind::ImageFile, "olafscholz10.jpg");
        REQUIRE(img);
        image = *img;
        auto gad = ws->wait(ws->run({"gad", image, {}, {}}));
        REQUIRE(gad.state == JobState::Succeeded);
        CHECK(gad.committed_nodes.size() == 2);
        CHECK(ws->graph().lookup(EntityKind::Attribute, "age:60-70"));
        CHECK(ws->graph().lookup(EntityKind::Attribute, "gender:male"));
    }
    CHECK(backend->calls == 0);
    auto ws = Workspace::open(root, offline());
    CHECK(ws->graph().node_count() == 22);
    CHECK(ws->graph().check_invariants().empty());
    auto j = ws->job_json(crawl_id);
    CHECK(j["state"] == "Succeeded");
    CHECK(code_of([&] { (void)ws->job_json(JobId{"j77"}); }) == ErrorCode::UnknownJob);
    // new jobs never reuse ids from the log
    auto next = ws->run({"exif-metadata", image, {}, {}});
    CHECK(next != crawl_id);
    CHECK(next.str() == "j3");
    CHECK(ws->wait(next).state == JobState::Succeeded);
    CHECK(fs::exists(root / "Files" / "olafscholz18.jpg"));
}

TEST_CASE("seeding") {
    TempDir tmp;
    auto ws = Workspace::init(tmp / "p", "demo", offline());
    auto [a, created] = ws->add_node(EntityKind::Email, "Olaf@Example.org");
    CHECK(created);
    CHECK(a.value == "olaf@example.org");
    CHECK_FALSE(ws->add_node(EntityKind::Email, "olaf@example.org ").second);
    CHECK(code_of([&] { ws->add_node(EntityKind::ImageFile, "missing.jpg"); }) == ErrorCode::NotFound);
    std::ofstream(tmp / "note.txt") << "Olaf trifft Britta.";
    auto [file, fresh] = ws->add_file(EntityKind::TextFile, tmp / "note.txt");
    CHECK(fresh);
    CHECK(file.value == "note.txt");
    CHECK_FALSE(ws->add_file(EntityKind::TextFile, tmp / "note.txt").second);
    auto info = ws->project_info();
    CHECK(info["name"] == "demo");
    auto e = ws->add_edge(a.id, file.id, "mentions");
    CHECK(e.label == "mentions");
}

TEST_CASE("wordlists from a node") {
    TempDir tmp;
    auto ws = Workspace::init(tmp / "p", "demo", offline());
    std::ofstream(tmp / "post.txt") << "Heute trifft Olaf seine Frau Britta. Britta lacht. #Urlaub mit @olaf";
    auto text = ws->add_file(EntityKind::TextFile, tmp / "post.txt").first;
    auto person = ws->add_node(EntityKind::Person, "Britta Ernst").first;
    auto pw = ws->add_node(EntityKind::Password, "secret").first;
    ws->add_edge(text.id, person.id, "mentions");
    ws->add_edge(text.id, pw.id, "mentions");
    auto tokens = ws->tokens_for_node(text.id, {EntityKind::Person});
    CHECK(tokens == std::vector<std::string>{"Britta", "Olaf", "Urlaub", "Ernst"});
    WordlistRequest req;
    req.from_node = text.id;
    req.options = {{"case", "lower"}, {"suffixes", ""}};
    auto r = ws->make_wordlist(req);
    CHECK(r.count == r.tokens.size());
    auto content = read_file(ws->store().wordlists_dir() / r.file_name);
    CHECK(content.find("britta\n") == 0);
    CHECK(content.find("secret") == std::string::npos);
    CHECK(ws->make_wordlist(req).file_name == r.file_name);
    WordlistRequest none;
    CHECK(code_of([&] { ws->make_wordlist(none); }) == ErrorCode::EmptyTokenSet);
    none.from_node = NodeId{"n99"};
    CHECK(code_of([&] { ws->make_wordlist(none); }) == ErrorCode::UnknownNode);
}

TEST_CASE("external tools from tools.json") {
    TempDir tmp;
    auto root = tmp / "p";
    Workspace::init(root, "demo", offline());
    std::ofstream(root / "tools.json") << R"({"modules":[
      {"name":"echo-list","phase":"Collection","input_kinds":["Username"],"output_kinds":["Username"],
       "produces_files":false,"network_access":"None","source_category":null,"params":[],
       "description":"","command":["printf","['%s1', \"%s2\"]\n","{value}","{value}"],"list_output":true},
      {"name":"lines","phase":"Collection","input_kinds":["Username"],"output_kinds":["Token"],
       "produces_files":false,"network_access":"None","source_category":null,
       "params":[{"name":"word","type":"text","default":"x","help":""}],
       "description":"","command":["printf","%s\n%s\n","{value}","{param:word}"],"list_output":false},
      {"name":"falls-over","phase":"Collection","input_kinds":["Username"],"output_kinds":["Token"],
       "produces_files":false,"network_access":"None","source_category":null,"params":[],
       "description":"","command":["false"],"list_output":false}]})";
    auto ws = Workspace::open(root, offline());
    auto u = ws->add_node(EntityKind::Username, "olaf").first;
    auto listed = ws->wait(ws->run({"echo-list", u.id, {}, {}}));
    REQUIRE(listed.state == JobState::Succeeded);
    CHECK(ws->graph().lookup(EntityKind::Username, "olaf1"));
    CHECK(ws->graph().lookup(EntityKind::Username, "olaf2"));
    auto lines = ws->wait(ws->run({"lines", u.id, {{"word", "kanzler"}}, {}}));
    CHECK(lines.committed_nodes.size() == 2);
    CHECK(ws->graph().lookup(EntityKind::Token, "kanzler"));
    auto bad = ws->wait(ws->run({"falls-over", u.id, {}, {}}));
    CHECK(bad.state == JobState::Failed);
    CHECK(bad.error_code == ErrorCode::AdapterError);
}

TEST_CASE("probe through the workspace") {
    TempDir tmp;
    auto ws = Workspace::init(tmp / "p", "demo", offline());
    auto results = ws->probe("olafscholz", std::nullopt,
                             {TransportMode::Replay, kFixtures / "probe-olafscholz.json"});
    CHECK(results.size() == 5);
}

}

TEST_SUITE("workspace") {

// Set IDRECON_UPDATE_GOLDEN=1 to rewrite the file after an intended format change.
TEST_CASE("fixture project export matches the golden graph") {
    TempDir tmp;
    auto ws = fixture_project(tmp / "p");
    auto user = ws->add_node(EntityKind::Username, "olafscholz").first;
    ws->wait(ws->run({"media-crawler", user.id, {}, {TransportMode::Replay, "crawl-olafscholz.json"}}));
    auto image = ws->graph().lookup(EntityKind::ImageFile, "olafscholz10.jpg");
    REQUIRE(image);
    ws->wait(ws->run({"gad", *image, {}, {}}));
    ws->wait(ws->run({"exif-metadata", *image, {}, {}}));
    auto golden = kFixtures / "golden" / "media-geo-graph.json";
    if (std::getenv("IDRECON_UPDATE_GOLDEN")) {
        fs::create_directories(golden.parent_path());
        write_file_atomic(golden, ws->export_graph());
    }
    CHECK(ws->export_graph() == read_file(golden));
}

}
