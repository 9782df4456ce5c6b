// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 idrecon contributors

#pragma once

#include <string>
#include <string_view>

// Thin UTF-8 helpers over ICU. Invalid UTF-8 input is replaced with U+FFFD.
namespace idrecon::unicode {

std::string nfc(std::string_view utf8);
std::string trim(std::string_view utf8);
std::string to_lower(std::string_view utf8);
std::string to_upper(std::string_view utf8);
/// First code point upper-cased, the rest lower-cased.
std::string capitalize(std::string_view utf8);

std::u32string decode(std::string_view utf8);
std::string encode(std::u32string_view text);
std::string encode(char32_t cp);
std::size_t length(std::string_view utf8);

bool is_letter(char32_t cp);
bool is_digit(char32_t cp);
bool is_upper(char32_t cp);
bool is_space(char32_t cp);
bool is_punct(char32_t cp);

/// Case-fold a single code point to lower case (simple mapping).
char32_t lower(char32_t cp);

/// Strip combining marks after canonical decomposition: "é" -> "e".
std::string strip_diacritics(std::string_view utf8);

}  // namespace idrecon::unicode
