// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 idrecon contributors

#pragma once

#include <memory>
#include <string_view>
#include <vector>

#include "idrecon/module_engine.hpp"

namespace idrecon {

/// Descriptors from the bundled manifest, in file order.
std::vector<ModuleDescriptor> builtin_descriptors();

/// nullptr when no built-in implementation carries that name.
std::shared_ptr<const Module> builtin_implementation(std::string_view name);

/// Registers every manifest entry. Throws DuplicateName if any is already present.
void register_builtin_modules(ModuleRegistry& registry);

/// A registry holding the built-ins only.
std::unique_ptr<ModuleRegistry> default_registry();

}  // namespace idrecon
