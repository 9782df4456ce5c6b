// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 idrecon contributors

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "idrecon/module_engine.hpp"

namespace idrecon {

struct ToolOutput {
    int exit_status = 0;
    std::string stdout_text;
};

/// Runs argv[0] (PATH lookup) with no shell, capturing standard output. Throws AdapterError
/// when the process cannot be started.
ToolOutput run_process(const std::vector<std::string>& argv);

/// Wraps a command-line program as a module. Each argv item may contain {value} (the input
/// node value) and {param:NAME}. With list_output, stdout goes through interpret_list_output
/// and every element becomes a node of the first output kind; otherwise each non-empty line does.
class ExternalToolModule final : public Module {
  public:
    ExternalToolModule(std::vector<std::string> command, bool list_output);
    void run(ModuleContext& context) const override;

  private:
    std::vector<std::string> command_;
    bool list_output_;
};

/// {"modules":[descriptor + "command":[...], "list_output":bool]}. Returns the names registered.
/// Throws InvalidDescriptor or DuplicateName.
std::vector<std::string> register_external_tools(ModuleRegistry& registry, const nlohmann::json& manifest);
std::vector<std::string> register_external_tools_file(ModuleRegistry& registry, const std::filesystem::path& path);

}  // namespace idrecon
