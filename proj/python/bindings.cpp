// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 idrecon contributors

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "idrecon/cli.hpp"
#include "idrecon/error.hpp"
#include "idrecon/exif.hpp"
#include "idrecon/generators.hpp"
#include "idrecon/list_interpreter.hpp"
#include "idrecon/site_probe.hpp"
#include "idrecon/text_analysis.hpp"
#include "idrecon/wordlist.hpp"
#include "idrecon/workspace.hpp"

namespace py = pybind11;
using namespace idrecon;

namespace {

// Complex results cross the boundary as JSON text; the Python package decodes them.
std::string job_json(Workspace& ws, const JobId& id) { return ws.job_json(id).dump(); }

std::string node_json(const EntityNode& n, bool created) {
    auto j = to_json(n);
    j["created"] = created;
    return j.dump();
}

TransportRequest transport(const std::string& mode, const std::optional<std::string>& fixture) {
    TransportRequest t;
    t.mode = parse_transport_mode(mode);
    if (fixture) t.fixture = *fixture;
    return t;
}

std::optional<std::pair<double, double>> gps(const py::bytes& data) {
    std::string bytes = data;
    auto g = media::extract_exif_gps(bytes);
    if (!g) return std::nullopt;
    return std::make_pair(g->latitude, g->longitude);
}

std::optional<std::string> taken(const py::bytes& data) {
    std::string bytes = data;
    auto t = media::extract_exif_timestamp(bytes);
    if (!t) return std::nullopt;
    return t->to_string();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "idrecon core";

    static py::handle error_type = py::exception<Error>(m, "Error").release();
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            py::object exc = error_type(e.message());
            exc.attr("code") = std::string(error_code_name(e.code()));
            if (const auto* pe = dynamic_cast<const ParseError*>(&e)) exc.attr("position") = pe->position();
            PyErr_SetObject(error_type.ptr(), exc.ptr());
        }
    });

    m.def("interpret_list_output", &interpret_list_output, py::arg("text"));
    m.def("serialize_list", &serialize_list, py::arg("values"));

    m.def("fold_name", &generators::fold_name, py::arg("text"));
    m.def("split_full_name", [](const std::string& full) {
        auto p = generators::split_full_name(full);
        return py::make_tuple(p.first, p.last, p.extras);
    });
    m.def(
        "email_candidates",
        [](const std::string& first, const std::string& last, const std::string& domain) {
            return generators::generate_email_candidates({first, last, {}}, domain);
        },
        py::arg("first"), py::arg("last"), py::arg("domain"));
    m.def(
        "username_candidates",
        [](const std::string& first, const std::string& last, const std::vector<std::string>& extras) {
            return generators::generate_username_candidates({first, last, extras});
        },
        py::arg("first"), py::arg("last"), py::arg("extras") = std::vector<std::string>{});
    m.def("validate_email_syntax", &generators::validate_email_syntax, py::arg("text"));

    m.def("exif_gps", &gps, py::arg("jpeg"));
    m.def("exif_taken", &taken, py::arg("jpeg"));

    m.def("extract_entities", [](const std::string& text) {
        std::vector<py::tuple> out;
        for (const auto& e : text::extract_entities(text, text::RuleBased{})) {
            out.push_back(py::make_tuple(e.surface, std::string(text::to_string(e.klass)), e.span.start, e.span.end));
        }
        return out;
    });
    m.def("clean_tokens", &text::clean_tokens, py::arg("tokens"));
    m.def("rank_tokens", [](const std::vector<std::string>& tokens) {
        std::vector<std::pair<std::string, std::size_t>> out;
        for (const auto& t : text::rank_tokens(tokens)) out.emplace_back(t.token, t.count);
        return out;
    });
    m.def("token_pipeline", [](const std::string& text) {
        std::vector<std::pair<std::string, std::size_t>> out;
        for (const auto& t : text::token_pipeline(text, text::RuleBased{})) out.emplace_back(t.token, t.count);
        return out;
    });

    m.def(
        "generate_wordlist",
        [](const std::vector<std::string>& tokens, const std::map<std::string, std::string>& options) {
            auto w = wordlist::generate_wordlist(tokens, wordlist::config_from_options(options));
            return py::make_tuple(w.candidates, w.config_fingerprint);
        },
        py::arg("tokens"), py::arg("options") = std::map<std::string, std::string>{});

    m.def(
        "probe",
        [](const std::string& username, const std::string& mode, const std::optional<std::string>& fixture) {
            auto t = default_transport_factory()(transport(mode, fixture));
            std::vector<std::pair<std::string, std::string>> out;
            py::gil_scoped_release release;
            for (const auto& r : probe::probe_username(username, probe::bundled_test_pack(), *t)) {
                out.emplace_back(r.site, std::string(probe::to_string(r.verdict)));
            }
            return out;
        },
        py::arg("username"), py::arg("transport") = "replay", py::arg("fixture") = py::none());

    m.def(
        "cli",
        [](const std::vector<std::string>& args) {
            std::ostringstream out, err;
            int code;
            {
                py::gil_scoped_release release;
                code = cli::run(args, out, err);
            }
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"));

    py::class_<Workspace>(m, "Workspace")
        .def_static(
            "init", [](const std::filesystem::path& root, const std::string& name) { return Workspace::init(root, name); },
            py::arg("root"), py::arg("name"))
        .def_static(
            "open", [](const std::filesystem::path& root) { return Workspace::open(root); }, py::arg("root"))
        .def("project_info", [](const Workspace& ws) { return ws.project_info().dump(); })
        .def(
            "add_node",
            [](Workspace& ws, const std::string& kind, const std::string& value) {
                auto [node, created] = ws.add_node(parse_entity_kind(kind), value);
                return node_json(node, created);
            },
            py::arg("kind"), py::arg("value"))
        .def(
            "add_file",
            [](Workspace& ws, const std::string& kind, const std::filesystem::path& path) {
                auto [node, created] = ws.add_file(parse_entity_kind(kind), path);
                return node_json(node, created);
            },
            py::arg("kind"), py::arg("path"))
        .def(
            "add_edge",
            [](Workspace& ws, const std::string& from, const std::string& to, const std::string& label) {
                return to_json(ws.add_edge(NodeId(from), NodeId(to), label)).dump();
            },
            py::arg("from_node"), py::arg("to_node"), py::arg("label"))
        .def(
            "modules",
            [](const Workspace& ws, const std::optional<std::string>& input_kind) {
                std::optional<EntityKind> k;
                if (input_kind) k = parse_entity_kind(*input_kind);
                std::vector<std::string> names;
                for (const auto& d : ws.modules(k)) names.push_back(d.name);
                return names;
            },
            py::arg("input_kind") = py::none())
        .def(
            "run",
            [](Workspace& ws, const std::string& module, const std::string& node,
               const std::map<std::string, std::string>& params, const std::string& mode,
               const std::optional<std::string>& fixture, bool wait) {
                JobId id = ws.run({module, NodeId(node), params, transport(mode, fixture)});
                if (wait) {
                    py::gil_scoped_release release;
                    ws.wait(id);
                }
                return job_json(ws, id);
            },
            py::arg("module"), py::arg("node"), py::arg("params") = std::map<std::string, std::string>{},
            py::arg("transport") = "replay", py::arg("fixture") = py::none(), py::arg("wait") = true)
        .def(
            "job", [](Workspace& ws, const std::string& id) { return job_json(ws, JobId(id)); }, py::arg("id"))
        .def("export_graph", &Workspace::export_graph)
        .def(
            "make_wordlist",
            [](Workspace& ws, const std::vector<std::string>& tokens, const std::optional<std::string>& from_node,
               const std::map<std::string, std::string>& options) {
                WordlistRequest req;
                req.tokens = tokens;
                if (from_node) req.from_node = NodeId(*from_node);
                req.options = options;
                auto r = ws.make_wordlist(req);
                return py::make_tuple(r.count, r.file_name, r.fingerprint, r.tokens);
            },
            py::arg("tokens") = std::vector<std::string>{}, py::arg("from_node") = py::none(),
            py::arg("options") = std::map<std::string, std::string>{})
        .def("flush", [](Workspace& ws) {
            py::gil_scoped_release release;
            ws.flush();
        });
}
