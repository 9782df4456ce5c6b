// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 idrecon contributors

#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace idrecon {

/// Turns a wrapped tool's printed list (e.g. Python's `print(['a', "b"])`) back into values.
///
/// Grammar: optional whitespace, `[`, zero or more quoted strings separated by commas
/// (one trailing comma allowed), `]`, optional whitespace. Strings use single or double
/// quotes; recognised escapes are \\ \' \" \n \t \r. Anything else throws ParseError with
/// the byte offset of the offending character.
std::vector<std::string> interpret_list_output(std::string_view text);

/// Inverse used by tests and by tools that emit lists: single quotes, escaping \ ' and the
/// newline, tab and carriage-return characters.
std::string serialize_list(const std::vector<std::string>& values);

}  // namespace idrecon
