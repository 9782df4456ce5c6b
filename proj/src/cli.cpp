// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 idrecon contributors

#include "idrecon/cli.hpp"

#include <csignal>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <pthread.h>

#include <CLI11.hpp>
#include <json.hpp>

#include "idrecon/api_service.hpp"
#include "idrecon/site_probe.hpp"
#include "idrecon/text_analysis.hpp"
#include "idrecon/workspace.hpp"
#include "idrecon/wordlist.hpp"

namespace idrecon::cli {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace {

int exit_code_for(ErrorCode code) {
    switch (code) {
        case ErrorCode::IoError:
        case ErrorCode::SinkError:
        case ErrorCode::PathOccupied:
        case ErrorCode::BindError:
            return kExitIo;
        default:
            return kExitDomain;
    }
}

struct Options {
    bool json = false;
    std::string project;
    std::string name;
    std::string kind;
    std::string value;
    std::string file;
    std::string input_kind;
    std::string module;
    std::string node;
    std::vector<std::string> params;
    std::string transport = "replay";
    std::string fixture;
    bool async = false;
    std::string job;
    std::string out;
    std::string username;
    std::string sites;
    int concurrency = 4;
    std::string from_node;
    std::string from_file;
    std::string cases;
    bool leet = false;
    std::string suffixes;
    bool suffixes_set = false;
    int depth = 1;
    int max = static_cast<int>(wordlist::kDefaultMaxCandidates);
    std::string years;
    std::string addr = "127.0.0.1";
    int port = 8080;
};

void add_project(CLI::App* cmd, Options& o) {
    cmd->add_option("--project,-p", o.project, "project directory")->envname("IDRECON_PROJECT")->required();
}

std::unique_ptr<Workspace> open_workspace(const Options& o) {
    return Workspace::open(o.project);
}

TransportRequest transport_request(const Options& o) {
    TransportRequest t;
    t.mode = parse_transport_mode(o.transport);
    if (!o.fixture.empty()) t.fixture = o.fixture;
    if (t.mode == TransportMode::Replay && !t.fixture) {
        fail(ErrorCode::InvalidArgument, "--transport replay needs --fixture");
    }
    return t;
}

std::string pad(std::string s, std::size_t width) {
    if (s.size() < width) s.append(width - s.size(), ' ');
    return s;
}

void print_job(std::ostream& out, const ordered_json& job, bool as_json) {
    if (as_json) {
        out << job.dump() << "\n";
        return;
    }
    out << job["id"].get<std::string>() << "  " << job["module"].get<std::string>() << "  "
        << job["state"].get<std::string>() << "\n";
    if (!job["error"].is_null()) out << "  error: " << job["error"].get<std::string>() << "\n";
    if (!job["committed_nodes"].empty()) {
        out << "  committed " << job["committed_nodes"].size() << " node(s):";
        for (const auto& n : job["committed_nodes"]) out << " " << n.get<std::string>();
        out << "\n";
    }
}

std::map<std::string, std::string> wordlist_options(const Options& o) {
    std::map<std::string, std::string> opts;
    if (!o.cases.empty()) opts["case"] = o.cases;
    opts["leet"] = o.leet ? "true" : "false";
    if (o.suffixes_set) opts["suffixes"] = o.suffixes;
    opts["depth"] = std::to_string(o.depth);
    opts["max"] = std::to_string(o.max);
    if (!o.years.empty()) opts["years"] = o.years;
    return opts;
}

int serve(const Options& o, std::ostream& out) {
    auto ws = open_workspace(o);
    ApiService api(*ws);
    int port = api.bind(o.addr, o.port);
    sigset_t set;
    sigemptyset(&set);
    sigaddset(&set, SIGINT);
    sigaddset(&set, SIGTERM);
    pthread_sigmask(SIG_BLOCK, &set, nullptr);
    api.start();
    out << "serving " << ws->store().meta().name << " on http://" << o.addr << ":" << port << "\n" << std::flush;
    int sig = 0;
    sigwait(&set, &sig);
    api.stop();
    pthread_sigmask(SIG_UNBLOCK, &set, nullptr);
    out << "stopped\n";
    return kExitOk;
}

int dispatch(CLI::App& app, const Options& o, std::ostream& out) {
    auto* sub = app.get_subcommands().empty() ? nullptr : app.get_subcommands().front();
    if (!sub) fail(ErrorCode::InvalidArgument, "no command given");
    const std::string verb = sub->get_name();

    if (verb == "init") {
        auto ws = Workspace::init(o.project, o.name.empty() ? fs::path(o.project).filename().string() : o.name);
        if (o.json) out << ws->project_info().dump() << "\n";
        else out << "initialized project '" << ws->store().meta().name << "' at " << ws->store().root().string() << "\n";
        return kExitOk;
    }
    if (verb == "add") {
        auto ws = open_workspace(o);
        std::pair<EntityNode, bool> r;
        if (!o.file.empty()) {
            EntityKind kind;
            if (!o.kind.empty()) {
                kind = parse_entity_kind(o.kind);
            } else {
                auto ext = fs::path(o.file).extension().string();
                kind = (ext == ".txt" || ext == ".md") ? EntityKind::TextFile : EntityKind::ImageFile;
            }
            r = ws->add_file(kind, o.file);
        } else {
            if (o.kind.empty() || o.value.empty()) fail(ErrorCode::InvalidArgument, "add needs --kind and --value, or --file");
            r = ws->add_node(parse_entity_kind(o.kind), o.value);
        }
        if (o.json) {
            auto j = to_json(r.first);
            j["created"] = r.second;
            out << j.dump() << "\n";
        } else {
            out << r.first.id.str() << "\n";
        }
        return kExitOk;
    }
    if (verb == "modules") {
        auto ws = open_workspace(o);
        std::optional<EntityKind> kind;
        if (!o.input_kind.empty()) kind = parse_entity_kind(o.input_kind);
        auto list = ws->modules(kind);
        if (o.json) {
            ordered_json arr = ordered_json::array();
            for (const auto& d : list) arr.push_back(to_json(d));
            out << arr.dump() << "\n";
        } else {
            for (const auto& d : list) {
                std::string in, outk;
                for (auto k : d.input_kinds) in += (in.empty() ? "" : ",") + std::string(to_string(k));
                for (auto k : d.output_kinds) outk += (outk.empty() ? "" : ",") + std::string(to_string(k));
                out << pad(d.name, 22) << pad(std::string(to_string(d.phase)), 12) << in << " -> " << outk << "\n";
            }
        }
        return kExitOk;
    }
    if (verb == "run") {
        auto ws = open_workspace(o);
        RunRequest req;
        req.module = o.module;
        req.node = NodeId(o.node);
        for (const auto& p : o.params) {
            auto eq = p.find('=');
            if (eq == std::string::npos) fail(ErrorCode::ParamInvalid, "--param expects key=value, got '" + p + "'");
            req.params[p.substr(0, eq)] = p.substr(eq + 1);
        }
        const auto& descriptor = ws->registry().descriptor(req.module);
        if (descriptor.network_access == NetworkAccess::Transport) {
            req.transport = transport_request(o);
        } else {
            req.transport.mode = parse_transport_mode(o.transport);
        }
        JobId id = ws->run(req);
        if (o.async) {
            if (o.json) out << ordered_json{{"id", id.str()}}.dump() << "\n";
            else out << id.str() << "\n";
            ws->flush();
            return kExitOk;
        }
        Job job = ws->wait(id);
        ws->flush();
        print_job(out, ws->job_json(id), o.json);
        return job.state == JobState::Succeeded ? kExitOk : kExitDomain;
    }
    if (verb == "status") {
        auto ws = open_workspace(o);
        print_job(out, ws->job_json(JobId(o.job)), o.json);
        return kExitOk;
    }
    if (verb == "graph-export") {
        auto ws = open_workspace(o);
        std::string doc = ws->export_graph();
        if (o.out.empty() || o.out == "-") {
            out << doc;
        } else {
            write_file_atomic(o.out, doc);
            if (o.json) out << ordered_json{{"out", o.out}, {"bytes", doc.size()}}.dump() << "\n";
        }
        return kExitOk;
    }
    if (verb == "probe") {
        std::vector<probe::ProbeResult> results;
        auto sites = o.sites.empty() ? probe::bundled_test_pack() : probe::load_site_list_file(o.sites);
        if (o.concurrency < 1) fail(ErrorCode::InvalidArgument, "--concurrency must be at least 1");
        TransportRequest t = transport_request(o);
        if (!o.project.empty()) {
            auto ws = open_workspace(o);
            std::optional<fs::path> site_path;
            if (!o.sites.empty()) site_path = o.sites;
            results = ws->probe(o.username, site_path, t, static_cast<std::size_t>(o.concurrency));
        } else {
            auto transport = default_transport_factory()(t);
            results = probe::probe_username(o.username, sites, *transport,
                                            probe::ProbeOptions{static_cast<std::size_t>(o.concurrency)});
        }
        if (o.json) {
            ordered_json arr = ordered_json::array();
            for (const auto& r : results) {
                arr.push_back({{"site", r.site},
                               {"verdict", std::string(probe::to_string(r.verdict))},
                               {"url", r.url},
                               {"status", r.status ? ordered_json(*r.status) : ordered_json(nullptr)},
                               {"error", r.error ? ordered_json(*r.error) : ordered_json(nullptr)}});
            }
            out << arr.dump() << "\n";
        } else {
            for (const auto& r : results) {
                out << pad(r.site, 14) << pad(std::string(probe::to_string(r.verdict)), 16) << r.url << "\n";
            }
        }
        return kExitOk;
    }
    if (verb == "wordlist") {
        auto options = wordlist_options(o);
        if (o.from_node.empty() == o.from_file.empty()) {
            fail(ErrorCode::InvalidArgument, "wordlist needs exactly one of --from-node or --from-file");
        }
        std::string bytes;
        std::size_t count = 0;
        std::string fingerprint;
        std::string where;
        if (!o.from_node.empty()) {
            auto ws = open_workspace(o);
            WordlistRequest req;
            req.from_node = NodeId(o.from_node);
            req.options = options;
            auto result = ws->make_wordlist(req);
            count = result.count;
            fingerprint = result.fingerprint;
            fs::path stored = ws->store().wordlists_dir() / result.file_name;
            where = stored.string();
            if (!o.out.empty()) {
                bytes = read_file(stored);
            }
        } else {
            std::vector<std::string> tokens;
            for (const auto& t : text::token_pipeline(read_file(o.from_file), text::RuleBased{})) tokens.push_back(t.token);
            auto list = wordlist::generate_wordlist(tokens, wordlist::config_from_options(options));
            bytes = wordlist::render_wordlist(list);
            count = list.candidates.size();
            fingerprint = list.config_fingerprint;
            if (o.out.empty()) {
                out << bytes;
                return kExitOk;
            }
        }
        if (!o.out.empty()) {
            if (o.out == "-") {
                out << bytes;
                return kExitOk;
            }
            write_file_atomic(o.out, bytes);
            where = o.out;
        }
        if (o.json) out << ordered_json{{"count", count}, {"path", where}, {"fingerprint", fingerprint}}.dump() << "\n";
        else out << count << " candidates written to " << where << "\n";
        return kExitOk;
    }
    if (verb == "serve") return serve(o, out);
    fail(ErrorCode::InvalidArgument, "unknown command '" + verb + "'");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"idrecon: identity OSINT investigations with a provenance graph", "idrecon"};
    app.require_subcommand(1, 1);
    app.fallthrough();
    Options o;
    app.add_flag("--json", o.json, "machine-readable output");

    auto* init = app.add_subcommand("init", "create a project");
    init->add_option("--project,-p", o.project, "project directory")->envname("IDRECON_PROJECT")->required();
    init->add_option("--name", o.name, "project name");

    auto* add = app.add_subcommand("add", "seed a node");
    add_project(add, o);
    add->add_option("--kind", o.kind, "entity kind, e.g. username");
    add->add_option("--value", o.value, "node value");
    add->add_option("--file", o.file, "copy a file into Files/ and add it as a node")->check(CLI::ExistingFile);

    auto* modules = app.add_subcommand("modules", "list modules");
    add_project(modules, o);
    modules->add_option("--input-kind", o.input_kind, "only modules accepting this kind");

    auto* run_cmd = app.add_subcommand("run", "run a module on a node");
    add_project(run_cmd, o);
    run_cmd->add_option("--module,-m", o.module, "module name")->required();
    run_cmd->add_option("--node,-n", o.node, "input node id")->required();
    run_cmd->add_option("--param", o.params, "key=value, repeatable");
    run_cmd->add_option("--transport", o.transport, "live, replay or record")
        ->check(CLI::IsMember({"live", "replay", "record"}));
    run_cmd->add_option("--fixture", o.fixture, "transport recording");
    run_cmd->add_flag("--async", o.async, "return after starting the job");

    auto* status = app.add_subcommand("status", "show a job");
    add_project(status, o);
    status->add_option("--job,-j", o.job, "job id")->required();

    auto* exp = app.add_subcommand("graph-export", "write the graph as JSON");
    add_project(exp, o);
    exp->add_option("--out,-o", o.out, "output file (default stdout)");

    auto* probe_cmd = app.add_subcommand("probe", "check a username against a site list");
    probe_cmd->add_option("--project,-p", o.project, "project directory")->envname("IDRECON_PROJECT");
    probe_cmd->add_option("--username,-u", o.username, "username")->required();
    probe_cmd->add_option("--sites", o.sites, "site list JSON (default: bundled test pack)");
    probe_cmd->add_option("--transport", o.transport, "live, replay or record")
        ->check(CLI::IsMember({"live", "replay", "record"}));
    probe_cmd->add_option("--fixture", o.fixture, "transport recording");
    probe_cmd->add_option("--concurrency", o.concurrency, "parallel requests");

    auto* wl = app.add_subcommand("wordlist", "generate password candidates");
    wl->add_option("--project,-p", o.project, "project directory")->envname("IDRECON_PROJECT");
    wl->add_option("--from-node", o.from_node, "node whose text and neighbours seed the list");
    wl->add_option("--from-file", o.from_file, "text file to extract tokens from")->check(CLI::ExistingFile);
    wl->add_option("--out,-o", o.out, "output file, - for stdout");
    wl->add_option("--case", o.cases, "comma separated: lower,capitalized,upper");
    wl->add_flag("--leet", o.leet, "add leet variants");
    wl->add_option("--suffixes", o.suffixes, "comma separated suffixes, empty item = bare word")
        ->each([&o](const std::string&) { o.suffixes_set = true; });
    wl->add_option("--depth", o.depth, "1 or 2");
    wl->add_option("--max", o.max, "candidate cap");
    wl->add_option("--years", o.years, "year suffix range, e.g. 1950-1960");

    auto* srv = app.add_subcommand("serve", "start the HTTP API");
    add_project(srv, o);
    srv->add_option("--addr", o.addr, "bind address");
    srv->add_option("--port", o.port, "port");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "idrecon: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        return dispatch(app, o, out);
    } catch (const Error& e) {
        if (o.json) err << ordered_json{{"code", error_code_name(e.code())}, {"message", e.message()}}.dump() << "\n";
        else err << "idrecon: " << e.what() << "\n";
        if (e.code() == ErrorCode::InvalidArgument) return kExitUsage;
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        err << "idrecon: " << e.what() << "\n";
        return kExitIo;
    }
}

}  // namespace idrecon::cli
