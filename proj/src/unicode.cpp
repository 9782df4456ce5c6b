// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 idrecon contributors

#include "idrecon/unicode.hpp"

#include <unicode/locid.h>
#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

#include "idrecon/error.hpp"

namespace idrecon::unicode {
namespace {

icu::UnicodeString to_icu(std::string_view utf8) {
    return icu::UnicodeString::fromUTF8(icu::StringPiece(utf8.data(), static_cast<int32_t>(utf8.size())));
}

std::string from_icu(const icu::UnicodeString& s) {
    std::string out;
    s.toUTF8String(out);
    return out;
}

const icu::Normalizer2& normalizer(bool compose) {
    UErrorCode status = U_ZERO_ERROR;
    const icu::Normalizer2* n =
        compose ? icu::Normalizer2::getNFCInstance(status) : icu::Normalizer2::getNFDInstance(status);
    if (U_FAILURE(status) || n == nullptr) {
        fail(ErrorCode::IoError, "ICU normalizer unavailable");
    }
    return *n;
}

}  // namespace

std::string nfc(std::string_view utf8) {
    UErrorCode status = U_ZERO_ERROR;
    icu::UnicodeString out = normalizer(true).normalize(to_icu(utf8), status);
    if (U_FAILURE(status)) {
        fail(ErrorCode::InvalidArgument, "NFC normalization failed");
    }
    return from_icu(out);
}

std::string trim(std::string_view utf8) {
    std::u32string cps = decode(utf8);
    std::size_t begin = 0;
    std::size_t end = cps.size();
    while (begin < end && is_space(cps[begin])) ++begin;
    while (end > begin && is_space(cps[end - 1])) --end;
    return encode(std::u32string_view(cps).substr(begin, end - begin));
}

std::string to_lower(std::string_view utf8) {
    icu::UnicodeString s = to_icu(utf8);
    s.toLower(icu::Locale::getRoot());
    return from_icu(s);
}

std::string to_upper(std::string_view utf8) {
    icu::UnicodeString s = to_icu(utf8);
    s.toUpper(icu::Locale::getRoot());
    return from_icu(s);
}

std::string capitalize(std::string_view utf8) {
    std::u32string cps = decode(utf8);
    if (cps.empty()) return {};
    std::string head = to_upper(encode(cps.front()));
    return head + to_lower(encode(std::u32string_view(cps).substr(1)));
}

std::u32string decode(std::string_view utf8) {
    std::u32string out;
    out.reserve(utf8.size());
    const auto* bytes = reinterpret_cast<const uint8_t*>(utf8.data());
    int32_t length = static_cast<int32_t>(utf8.size());
    int32_t i = 0;
    while (i < length) {
        UChar32 c = 0;
        U8_NEXT(bytes, i, length, c);
        out.push_back(c < 0 ? U'\uFFFD' : static_cast<char32_t>(c));
    }
    return out;
}

std::string encode(std::u32string_view text) {
    std::string out;
    out.reserve(text.size());
    for (char32_t cp : text) out += encode(cp);
    return out;
}

std::string encode(char32_t cp) {
    uint8_t buf[U8_MAX_LENGTH];
    int32_t n = 0;
    UBool error = false;
    U8_APPEND(buf, n, U8_MAX_LENGTH, static_cast<UChar32>(cp), error);
    if (error) return "\xEF\xBF\xBD";
    return std::string(reinterpret_cast<const char*>(buf), static_cast<std::size_t>(n));
}

std::size_t length(std::string_view utf8) {
    return decode(utf8).size();
}

bool is_letter(char32_t cp) { return u_isalpha(static_cast<UChar32>(cp)); }
bool is_digit(char32_t cp) { return u_isdigit(static_cast<UChar32>(cp)); }
bool is_upper(char32_t cp) { return u_isupper(static_cast<UChar32>(cp)) || u_istitle(static_cast<UChar32>(cp)); }
bool is_space(char32_t cp) { return u_isUWhiteSpace(static_cast<UChar32>(cp)); }
bool is_punct(char32_t cp) { return u_ispunct(static_cast<UChar32>(cp)); }

char32_t lower(char32_t cp) { return static_cast<char32_t>(u_tolower(static_cast<UChar32>(cp))); }

std::string strip_diacritics(std::string_view utf8) {
    UErrorCode status = U_ZERO_ERROR;
    icu::UnicodeString decomposed = normalizer(false).normalize(to_icu(utf8), status);
    if (U_FAILURE(status)) {
        fail(ErrorCode::InvalidArgument, "NFD normalization failed");
    }
    icu::UnicodeString kept;
    for (int32_t i = 0; i < decomposed.length();) {
        UChar32 c = decomposed.char32At(i);
        if (u_charType(c) != U_NON_SPACING_MARK) kept.append(c);
        i += U16_LENGTH(c);
    }
    return from_icu(kept);
}

}  // namespace idrecon::unicode
