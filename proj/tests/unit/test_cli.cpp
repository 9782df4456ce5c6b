// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 idrecon contributors

#include <doctest.h>

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "idrecon/error.hpp"
#include "idrecon/cli.hpp"
#include "idrecon/workspace.hpp"
#include "../support/temp_dir.hpp"

using namespace idrecon;
using testing::TempDir;

namespace {

const fs::path kFixtures = IDRECON_TEST_FIXTURES;

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result invoke(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string trim(std::string s) {
    while (!s.empty() && (s.back() == '\n' || s.back() == ' ')) s.pop_back();
    return s;
}

// Structure of an export without ids' timestamps: kind/value per node, labelled edges by value.
std::set<std::string> shape(const std::string& export_json) {
    auto j = nlohmann::json::parse(export_json);
    std::map<std::string, std::string> names;
    std::set<std::string> out;
    for (const auto& n : j["nodes"]) {
        std::string key = n["kind"].get<std::string>() + ":" + n["value"].get<std::string>();
        names[n["id"]] = key;
        out.insert(key);
    }
    for (const auto& e : j["edges"]) {
        out.insert(names[e["from"]] + " -" + e["label"].get<std::string>() + "-> " + names[e["to"]]);
    }
    return out;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("init, add, modules") {
    TempDir tmp;
    auto p = (tmp / "p").string();
    auto r = invoke({"init", "--project", p, "--name", "demo"});
    CHECK(r.code == 0);
    CHECK(fs::exists(tmp / "p" / "graph.json"));
    CHECK(invoke({"init", "--project", p}).code == 3);
    r = invoke({"add", "--project", p, "--kind", "username", "--value", "olafscholz"});
    CHECK(r.code == 0);
    CHECK(trim(r.out) == "n1");
    r = invoke({"--json", "add", "--project", p, "--kind", "username", "--value", "OlafScholz"});
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["id"] == "n1");
    CHECK(j["created"] == false);
    r = invoke({"modules", "--project", p, "--input-kind", "username", "--json"});
    auto mods = nlohmann::json::parse(r.out);
    REQUIRE(mods.size() == 2);
    CHECK(mods[0]["name"] == "media-crawler");
    CHECK(invoke({"add", "--project", p, "--kind", "planet", "--value", "x"}).code == 1);
}

TEST_CASE("exit codes") {
    TempDir tmp;
    auto p = (tmp / "p").string();
    CHECK(invoke({}).code == 1);
    CHECK(invoke({"frobnicate"}).code == 1);
    CHECK(invoke({"init", "--project", p, "--bogus"}).code == 1);
    CHECK(invoke({"status", "--project", (tmp / "none").string(), "--job", "j1"}).code == 3);
    invoke({"init", "--project", p});
    CHECK(invoke({"status", "--project", p, "--job", "j9"}).code == 2);
    auto u = trim(invoke({"add", "--project", p, "--kind", "username", "--value", "olafscholz"}).out);
    CHECK(invoke({"run", "--project", p, "--module", "gad", "--node", u}).code == 2);
    CHECK(invoke({"run", "--project", p, "--module", "site-probe", "--node", u}).code == 1);
    CHECK(invoke({"run", "--project", p, "--module", "username-candidates", "--node", u, "--param", "x"}).code == 2);
    CHECK(invoke({"wordlist", "--project", p}).code == 1);
}

TEST_CASE("run and status") {
    TempDir tmp;
    auto p = (tmp / "p").string();
    invoke({"init", "--project", p});
    auto u = trim(invoke({"add", "--project", p, "--kind", "username", "--value", "olafscholz"}).out);
    auto fixture = (kFixtures / "probe-olafscholz.json").string();
    auto r = invoke({"--json", "run", "--project", p, "--module", "site-probe", "--node", u, "--transport", "replay",
                  "--fixture", fixture});
    REQUIRE(r.code == 0);
    auto job = nlohmann::json::parse(r.out);
    CHECK(job["state"] == "Succeeded");
    auto id = job["id"].get<std::string>();
    auto st = invoke({"status", "--project", p, "--job", id, "--json"});
    CHECK(st.code == 0);
    CHECK(nlohmann::json::parse(st.out)["state"] == "Succeeded");
    auto out_file = (tmp / "g.json").string();
    CHECK(invoke({"graph-export", "--project", p, "--out", out_file}).code == 0);
    auto g = nlohmann::json::parse(read_file(out_file));
    bool found = false;
    for (const auto& n : g["nodes"]) found |= n["value"] == "https://photogram.example/olafscholz/";
    CHECK(found);
}

TEST_CASE("probe without a project") {
    auto r = invoke({"--json", "probe", "--username", "olafscholz", "--transport", "replay", "--fixture",
                  (kFixtures / "probe-olafscholz.json").string()});
    REQUIRE(r.code == 0);
    auto arr = nlohmann::json::parse(r.out);
    std::map<std::string, std::string> verdicts;
    for (const auto& x : arr) verdicts[x["site"]] = x["verdict"];
    CHECK(verdicts["photogram"] == "Found");
    CHECK(verdicts["codehub"] == "NotFound");
    CHECK(verdicts["talkboard"] == "NotFound");
    CHECK(verdicts["pastebox"] == "Ambiguous");
    CHECK(verdicts["webvault"] == "TransportError");
}

TEST_CASE("wordlist from a file") {
    TempDir tmp;
    std::ofstream(tmp / "t.txt") << "Olaf trifft Britta in Berlin.";
    auto r = invoke({"wordlist", "--from-file", (tmp / "t.txt").string(), "--case", "lower", "--suffixes", ""});
    CHECK(r.code == 0);
    CHECK(r.out == "berlin\nbritta\nolaf\n");
    r = invoke({"wordlist", "--from-file", (tmp / "t.txt").string(), "--depth", "3"});
    CHECK(r.code == 2);
}

TEST_CASE("verbs match direct calls") {
    TempDir tmp;
    auto p = (tmp / "cli").string();
    invoke({"init", "--project", p});
    auto person = trim(invoke({"add", "--project", p, "--kind", "person", "--value", "Olaf Scholz"}).out);
    invoke({"run", "--project", p, "--module", "username-candidates", "--node", person, "--param", "extras=58"});
    invoke({"run", "--project", p, "--module", "email-candidates", "--node", person, "--param", "domain=bund.de"});

    auto ws = Workspace::init(tmp / "direct", "direct");
    auto n = ws->add_node(EntityKind::Person, "Olaf Scholz").first;
    ws->wait(ws->run({"username-candidates", n.id, {{"extras", "58"}}, {}}));
    ws->wait(ws->run({"email-candidates", n.id, {{"domain", "bund.de"}}, {}}));
    ws->flush();
    CHECK(shape(read_file(fs::path(p) / "graph.json")) == shape(ws->export_graph()));
}

}
