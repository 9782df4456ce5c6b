// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 idrecon contributors

#pragma once

#include <string_view>

// Files from data/ compiled into the library at configure time.
namespace idrecon::embedded {

std::string_view modules_manifest_json();
std::string_view site_pack_json();
std::string_view given_names();
std::string_view cities();
std::string_view org_suffixes();
std::string_view ignored_words();

}  // namespace idrecon::embedded
