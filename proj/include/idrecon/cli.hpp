// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 idrecon contributors

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace idrecon::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitDomain = 2;
inline constexpr int kExitIo = 3;

/// Runs one command line (args exclude the program name). Never throws.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace idrecon::cli
