// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 idrecon contributors

#include <iostream>

#include "idrecon/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return idrecon::cli::run(args, std::cout, std::cerr);
}
