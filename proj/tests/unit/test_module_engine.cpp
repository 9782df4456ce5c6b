// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 idrecon contributors

#include <doctest.h>

#include <atomic>

#include "idrecon/error.hpp"
#include "idrecon/builtin_modules.hpp"
#include "idrecon/module_engine.hpp"
#include "../support/fake_backend.hpp"

using namespace idrecon;

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

ModuleDescriptor descriptor(std::string name, std::set<EntityKind> in, std::set<EntityKind> out,
                            Phase phase = Phase::Analysis) {
    ModuleDescriptor d;
    d.name = std::move(name);
    d.phase = phase;
    d.input_kinds = std::move(in);
    d.output_kinds = std::move(out);
    return d;
}

class Lambda final : public Module {
  public:
    explicit Lambda(std::function<void(ModuleContext&)> f) : f_(std::move(f)) {}
    void run(ModuleContext& c) const override { f_(c); }

  private:
    std::function<void(ModuleContext&)> f_;
};

std::shared_ptr<const Module> lambda(std::function<void(ModuleContext&)> f) {
    return std::make_shared<Lambda>(std::move(f));
}

EngineEnvironment offline_env() {
    EngineEnvironment env;
    env.transport_factory = make_transport_factory([]() -> std::shared_ptr<HttpBackend> {
        fail(ErrorCode::PreconditionViolation, "no network in tests");
    });
    env.clock = stepping_clock(Timestamp{});
    return env;
}

struct Rig {
    EntityGraph graph{stepping_clock(Timestamp{})};
    MemoryFileStore files;
    ModuleRegistry registry;
    std::unique_ptr<ModuleEngine> engine;

    Rig() {
        registry.register_module(
            descriptor("split", {EntityKind::Person}, {EntityKind::Token}),
            lambda([](ModuleContext& c) {
                std::string v = c.input().value;
                std::size_t at = v.find(' ');
                c.stage_node(EntityKind::Token, v.substr(0, at), "part");
                if (at != std::string::npos) c.stage_node(EntityKind::Token, v.substr(at + 1), "part");
            }));
        registry.register_module(
            descriptor("half-then-fail", {EntityKind::Person}, {EntityKind::Token, EntityKind::TextFile}),
            lambda([](ModuleContext& c) {
                c.stage_node(EntityKind::Token, "never", "x");
                c.stage_file("never.txt", "bytes", EntityKind::TextFile, "x");
                fail(ErrorCode::AdapterError, "boom");
            }));
        registry.register_module(
            descriptor("liar", {EntityKind::Person}, {EntityKind::Token}),
            lambda([](ModuleContext& c) { c.stage_node(EntityKind::Email, "a@b.c", "x"); }));
        auto files_desc = descriptor("writer", {EntityKind::Person}, {EntityKind::TextFile});
        files_desc.produces_files = true;
        registry.register_module(files_desc, lambda([](ModuleContext& c) {
                                     c.stage_file("note.txt", "hello", EntityKind::TextFile, "wrote");
                                 }));
        auto with_params = descriptor("params", {EntityKind::Person}, {EntityKind::Token});
        with_params.params_schema = {{"count", ParamType::Int, "2", ""}, {"loud", ParamType::Flag, "false", ""}};
        registry.register_module(with_params, lambda([](ModuleContext& c) {
                                     for (std::int64_t i = 0; i < c.params().integer("count"); ++i) {
                                         std::string t = "tok" + std::to_string(i);
                                         if (c.params().flag("loud")) t += "!";
                                         c.stage_node(EntityKind::Token, t, "p");
                                     }
                                 }));
        engine = std::make_unique<ModuleEngine>(graph, files, registry, offline_env());
    }

    NodeId person(const std::string& v) { return graph.upsert_node(EntityKind::Person, v, Provenance::user_seed()); }
    Job run(const std::string& module, const NodeId& node, std::map<std::string, std::string> params = {}) {
        return engine->wait(engine->run_module({module, node, std::move(params), {}}));
    }
};

}  // namespace

TEST_SUITE("module_engine") {

TEST_CASE("registry") {
    ModuleRegistry r;
    auto d = descriptor("x", {EntityKind::Person}, {EntityKind::Token});
    r.register_module(d, lambda([](ModuleContext&) {}));
    CHECK(code_of([&] { r.register_module(d, lambda([](ModuleContext&) {})); }) == ErrorCode::DuplicateName);
    CHECK(code_of([&] { r.register_module(descriptor("y", {}, {EntityKind::Token}), lambda([](ModuleContext&) {})); }) ==
          ErrorCode::InvalidDescriptor);
    CHECK(code_of([&] { r.register_module(descriptor("", {EntityKind::Person}, {}), lambda([](ModuleContext&) {})); }) ==
          ErrorCode::InvalidDescriptor);
    CHECK(code_of([&] { (void)r.descriptor("nope"); }) == ErrorCode::UnknownModule);
}

TEST_CASE("builtin listing") {
    auto reg = default_registry();
    std::vector<std::string> names;
    for (const auto& d : reg->list_modules()) names.push_back(d.name);
    CHECK(names == std::vector<std::string>{"email-candidates", "exif-metadata", "gad", "media-crawler", "ner",
                                            "site-probe", "username-candidates", "wordlist"});
    names.clear();
    for (const auto& d : reg->list_modules(EntityKind::Username)) names.push_back(d.name);
    CHECK(names == std::vector<std::string>{"media-crawler", "site-probe"});
    CHECK(reg->list_modules(EntityKind::Password).empty());
    CHECK(reg->list_modules(EntityKind::ImageFile, Phase::Analysis).size() == 2);
    for (const auto& d : reg->list_modules()) {
        auto again = descriptor_from_json(nlohmann::json::parse(to_json(d).dump()));
        CHECK(to_json(again) == to_json(d));
    }
}

TEST_CASE("params") {
    auto d = descriptor("p", {EntityKind::Person}, {EntityKind::Token});
    d.params_schema = {{"n", ParamType::Int, "3", ""}, {"f", ParamType::Flag, "", ""}, {"s", ParamType::Text, "x", ""}};
    auto v = bind_params(d, {{"f", "yes"}});
    CHECK(v.integer("n") == 3);
    CHECK(v.flag("f"));
    CHECK(v.text("s") == "x");
    CHECK_FALSE(bind_params(d, {}).flag("f"));
    CHECK(code_of([&] { bind_params(d, {{"zzz", "1"}}); }) == ErrorCode::ParamInvalid);
    CHECK(code_of([&] { bind_params(d, {{"n", "three"}}); }) == ErrorCode::ParamInvalid);
    CHECK(code_of([&] { bind_params(d, {{"f", "maybe"}}); }) == ErrorCode::ParamInvalid);
}

TEST_CASE("successful run commits with provenance") {
    Rig rig;
    auto p = rig.person("Britta Ernst");
    auto job = rig.run("split", p);
    CHECK(job.state == JobState::Succeeded);
    REQUIRE(job.events.size() == 2);
    CHECK(job.events[0].state == JobState::Running);
    CHECK(job.events[1].state == JobState::Succeeded);
    REQUIRE(job.committed_nodes.size() == 2);
    auto tok = rig.graph.node(job.committed_nodes[0]);
    CHECK(tok.value == "Britta");
    CHECK(tok.provenance.origin == Origin::ModuleOutput);
    CHECK(tok.provenance.module_name == std::optional<std::string>{"split"});
    CHECK(tok.provenance.job_id == job.id);
    auto out = rig.graph.neighbors(p, Direction::Out);
    REQUIRE(out.size() == 2);
    CHECK(out[0].edge.label == "part");
    CHECK(out[0].edge.job == job.id);
    CHECK(rig.graph.check_invariants().empty());
}

TEST_CASE("re-run is idempotent") {
    Rig rig;
    auto p = rig.person("Britta Ernst");
    rig.run("split", p);
    auto before = rig.graph.export_json();
    auto nodes = rig.graph.node_count();
    auto edges = rig.graph.edge_count();
    auto second = rig.run("split", p);
    CHECK(second.state == JobState::Succeeded);
    CHECK(rig.graph.node_count() == nodes);
    CHECK(rig.graph.edge_count() == edges);
    CHECK(rig.graph.export_json() == before);
}

TEST_CASE("failure leaves the graph and file store untouched") {
    Rig rig;
    auto p = rig.person("Olaf Scholz");
    auto before = rig.graph.export_json();
    auto job = rig.run("half-then-fail", p);
    CHECK(job.state == JobState::Failed);
    CHECK(job.error_code == ErrorCode::AdapterError);
    CHECK(job.error == std::optional<std::string>{"boom"});
    CHECK(job.events.back().state == JobState::Failed);
    CHECK(rig.graph.export_json() == before);
    CHECK(rig.files.contents().empty());

    auto liar = rig.run("liar", p);
    CHECK(liar.state == JobState::Failed);
    CHECK(rig.graph.export_json() == before);
}

TEST_CASE("file output") {
    Rig rig;
    auto p = rig.person("Olaf Scholz");
    auto job = rig.run("writer", p);
    CHECK(job.state == JobState::Succeeded);
    CHECK(job.committed_files == std::vector<std::string>{"note.txt"});
    CHECK(rig.files.read("note.txt") == "hello");
    rig.run("writer", p);
    CHECK(rig.files.contents().size() == 1);
    CHECK(rig.graph.find_nodes(EntityKind::TextFile).size() == 1);
}

TEST_CASE("synchronous validation") {
    Rig rig;
    auto p = rig.person("Olaf Scholz");
    auto u = rig.graph.upsert_node(EntityKind::Username, "olafscholz", Provenance::user_seed());
    CHECK(code_of([&] { rig.engine->run_module({"nope", p, {}, {}}); }) == ErrorCode::UnknownModule);
    CHECK(code_of([&] { rig.engine->run_module({"split", NodeId{"n999"}, {}, {}}); }) == ErrorCode::UnknownNode);
    CHECK(code_of([&] { rig.engine->run_module({"split", u, {}, {}}); }) == ErrorCode::KindMismatch);
    CHECK(code_of([&] { rig.engine->run_module({"params", p, {{"count", "x"}}, {}}); }) == ErrorCode::ParamInvalid);
    CHECK(code_of([&] { (void)rig.engine->job_status(JobId{"j999"}); }) == ErrorCode::UnknownJob);
    CHECK(rig.engine->jobs().empty());
}

TEST_CASE("params reach the module") {
    Rig rig;
    auto p = rig.person("Olaf Scholz");
    auto job = rig.run("params", p, {{"count", "3"}, {"loud", "on"}});
    REQUIRE(job.committed_nodes.size() == 3);
    CHECK(rig.graph.node(job.committed_nodes[2]).value == "tok2!");
    CHECK(job.params.at("count") == "3");
}

TEST_CASE("concurrent jobs") {
    Rig rig;
    std::vector<NodeId> people;
    for (int i = 0; i < 16; ++i) people.push_back(rig.person("Name" + std::to_string(i) + " Shared"));
    std::vector<JobId> ids;
    for (const auto& p : people) ids.push_back(rig.engine->run_module({"split", p, {}, {}}));
    rig.engine->wait_idle();
    for (const auto& id : ids) CHECK(rig.engine->job_status(id).state == JobState::Succeeded);
    CHECK(rig.graph.find_nodes(EntityKind::Token, std::string_view("Shared")).size() == 1);
    CHECK(rig.graph.edge_count() == 32);
    CHECK(rig.graph.check_invariants().empty());
    auto events = rig.engine->wait_events(ids[0], 0, std::chrono::milliseconds(10));
    CHECK(events.size() == 2);
}

TEST_CASE("transport modules without fixtures fail cleanly") {
    EntityGraph graph{stepping_clock(Timestamp{})};
    MemoryFileStore files;
    auto reg = default_registry();
    ModuleEngine engine(graph, files, *reg, offline_env());
    auto u = graph.upsert_node(EntityKind::Username, "olafscholz", Provenance::user_seed());
    auto job = engine.wait(engine.run_module({"site-probe", u, {}, {TransportMode::Replay, std::nullopt}}));
    CHECK(job.state == JobState::Failed);
    CHECK(graph.node_count() == 1);
}

}
