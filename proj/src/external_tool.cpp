// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 idrecon contributors

#include "idrecon/external_tool.hpp"

#include <fcntl.h>
#include <spawn.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <array>
#include <cerrno>
#include <cstring>

#include "idrecon/list_interpreter.hpp"
#include "idrecon/project_store.hpp"

extern char** environ;

namespace idrecon {

ToolOutput run_process(const std::vector<std::string>& argv) {
    if (argv.empty() || argv.front().empty()) fail(ErrorCode::AdapterError, "empty command");
    std::array<int, 2> fds{};
    if (::pipe(fds.data()) != 0) fail(ErrorCode::AdapterError, std::string("pipe: ") + std::strerror(errno));

    posix_spawn_file_actions_t actions;
    posix_spawn_file_actions_init(&actions);
    posix_spawn_file_actions_addclose(&actions, fds[0]);
    posix_spawn_file_actions_adddup2(&actions, fds[1], STDOUT_FILENO);
    posix_spawn_file_actions_addclose(&actions, fds[1]);
    posix_spawn_file_actions_addopen(&actions, STDIN_FILENO, "/dev/null", O_RDONLY, 0);

    std::vector<char*> args;
    for (const auto& a : argv) args.push_back(const_cast<char*>(a.c_str()));
    args.push_back(nullptr);

    pid_t pid = 0;
    int rc = ::posix_spawnp(&pid, args[0], &actions, nullptr, args.data(), environ);
    posix_spawn_file_actions_destroy(&actions);
    ::close(fds[1]);
    if (rc != 0) {
        ::close(fds[0]);
        fail(ErrorCode::AdapterError, "cannot start '" + argv.front() + "': " + std::strerror(rc));
    }

    ToolOutput out;
    std::array<char, 4096> buf{};
    while (true) {
        ssize_t n = ::read(fds[0], buf.data(), buf.size());
        if (n > 0) {
            out.stdout_text.append(buf.data(), static_cast<std::size_t>(n));
        } else if (n == 0 || errno != EINTR) {
            break;
        }
    }
    ::close(fds[0]);

    int status = 0;
    while (::waitpid(pid, &status, 0) < 0 && errno == EINTR) {
    }
    out.exit_status = WIFEXITED(status) ? WEXITSTATUS(status) : 128 + (WIFSIGNALED(status) ? WTERMSIG(status) : 0);
    return out;
}

ExternalToolModule::ExternalToolModule(std::vector<std::string> command, bool list_output)
    : command_(std::move(command)), list_output_(list_output) {
    if (command_.empty()) fail(ErrorCode::InvalidDescriptor, "external tool needs a command");
}

namespace {

std::string expand(const std::string& arg, const ModuleContext& ctx, const std::map<std::string, std::string>& params) {
    std::string out;
    std::size_t i = 0;
    while (i < arg.size()) {
        if (arg[i] == '{') {
            auto close = arg.find('}', i);
            if (close != std::string::npos) {
                std::string key = arg.substr(i + 1, close - i - 1);
                if (key == "value") {
                    out += ctx.input().value;
                    i = close + 1;
                    continue;
                }
                if (key.rfind("param:", 0) == 0) {
                    auto it = params.find(key.substr(6));
                    if (it == params.end()) fail(ErrorCode::ParamInvalid, "command uses unknown parameter '" + key + "'");
                    out += it->second;
                    i = close + 1;
                    continue;
                }
            }
        }
        out += arg[i++];
    }
    return out;
}

}  // namespace

void ExternalToolModule::run(ModuleContext& ctx) const {
    auto params = ctx.params().as_strings();
    std::vector<std::string> argv;
    for (const auto& a : command_) argv.push_back(expand(a, ctx, params));
    ToolOutput result = run_process(argv);
    if (result.exit_status != 0) {
        fail(ErrorCode::AdapterError, argv.front() + " exited with status " + std::to_string(result.exit_status));
    }

    std::vector<std::string> values;
    if (list_output_) {
        values = interpret_list_output(result.stdout_text);
    } else {
        std::size_t start = 0;
        const std::string& s = result.stdout_text;
        while (start < s.size()) {
            auto nl = s.find('\n', start);
            if (nl == std::string::npos) nl = s.size();
            std::string line = s.substr(start, nl - start);
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (!line.empty()) values.push_back(std::move(line));
            start = nl + 1;
        }
    }
    EntityKind kind = *ctx.descriptor().output_kinds.begin();
    for (auto& v : values) {
        if (v.find_first_not_of(" \t") == std::string::npos) continue;
        ctx.stage_node(kind, std::move(v), ctx.descriptor().name);
    }
}

std::vector<std::string> register_external_tools(ModuleRegistry& registry, const nlohmann::json& manifest) {
    std::vector<std::string> names;
    if (!manifest.is_object() || !manifest.contains("modules") || !manifest["modules"].is_array()) {
        fail(ErrorCode::InvalidDescriptor, "tool manifest needs a \"modules\" array");
    }
    for (const auto& entry : manifest["modules"]) {
        ModuleDescriptor d = descriptor_from_json(entry);
        if (d.produces_files || std::any_of(d.output_kinds.begin(), d.output_kinds.end(), is_file_kind)) {
            fail(ErrorCode::InvalidDescriptor, d.name + ": external tools cannot produce files");
        }
        std::vector<std::string> command;
        try {
            command = entry.at("command").get<std::vector<std::string>>();
        } catch (const nlohmann::json::exception&) {
            fail(ErrorCode::InvalidDescriptor, d.name + ": \"command\" must be a list of strings");
        }
        bool list_output = entry.value("list_output", false);
        names.push_back(d.name);
        registry.register_module(std::move(d), std::make_shared<ExternalToolModule>(std::move(command), list_output));
    }
    return names;
}

std::vector<std::string> register_external_tools_file(ModuleRegistry& registry, const std::filesystem::path& path) {
    nlohmann::json manifest;
    try {
        manifest = nlohmann::json::parse(read_file(path));
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::InvalidDescriptor, path.string() + ": " + e.what());
    }
    return register_external_tools(registry, manifest);
}

}  // namespace idrecon
