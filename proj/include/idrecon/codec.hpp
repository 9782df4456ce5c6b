// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 idrecon contributors

#pragma once

#include <string>
#include <string_view>

namespace idrecon::codec {

std::string sha256_hex(std::string_view bytes);
std::string base64_encode(std::string_view bytes);
/// Throws SchemaViolation on malformed input.
std::string base64_decode(std::string_view text);
/// RFC 3986 percent-encoding; unreserved characters pass through.
std::string url_encode(std::string_view text);

}  // namespace idrecon::codec
