// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 idrecon contributors

#include "idrecon/generators.hpp"

#include <algorithm>
#include <unordered_set>

#include "idrecon/error.hpp"
#include "idrecon/unicode.hpp"

namespace idrecon::generators {
namespace {

std::string substitute(std::string_view pattern, const std::string& first, const std::string& last) {
    std::string out;
    for (std::size_t i = 0; i < pattern.size();) {
        if (pattern[i] == '{') {
            auto close = pattern.find('}', i);
            std::string_view key = pattern.substr(i + 1, close - i - 1);
            if (key == "first") out += first;
            else if (key == "last") out += last;
            else if (key == "f") out += first.substr(0, 1);
            else if (key == "l") out += last.substr(0, 1);
            i = close + 1;
        } else {
            out.push_back(pattern[i++]);
        }
    }
    return out;
}

void push_unique(std::vector<std::string>& out, std::unordered_set<std::string>& seen, std::string value) {
    if (seen.insert(value).second) out.push_back(std::move(value));
}

bool is_ldh(char c) {
    return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '-';
}

}  // namespace

std::string fold_name(std::string_view text) {
    std::string lowered = unicode::to_lower(unicode::nfc(text));
    std::string transliterated;
    for (char32_t cp : unicode::decode(lowered)) {
        switch (cp) {
            case U'ä': transliterated += "ae"; break;
            case U'ö': transliterated += "oe"; break;
            case U'ü': transliterated += "ue"; break;
            case U'ß': transliterated += "ss"; break;
            default: transliterated += unicode::encode(cp);
        }
    }
    std::string stripped = unicode::strip_diacritics(transliterated);
    std::string out;
    for (char c : stripped) {
        if ((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9')) out.push_back(c);
    }
    if (out.empty()) fail(ErrorCode::EmptyAfterFold, "'" + std::string(text) + "' folds to nothing");
    return out;
}

NameParts split_full_name(std::string_view full_name) {
    std::string text = unicode::trim(full_name);
    std::vector<std::string> words;
    auto comma = text.find(',');
    if (comma != std::string::npos) {
        std::string last = unicode::trim(std::string_view(text).substr(0, comma));
        std::string rest = unicode::trim(std::string_view(text).substr(comma + 1));
        auto space = rest.find(' ');
        return NameParts{rest.substr(0, space), last, {}};
    }
    std::string current;
    for (char c : text) {
        if (c == ' ' || c == '\t') {
            if (!current.empty()) words.push_back(std::move(current));
            current.clear();
        } else {
            current.push_back(c);
        }
    }
    if (!current.empty()) words.push_back(std::move(current));
    // trailing numbers ("Britta Ernst 1961") are extras, not name parts
    std::vector<std::string> extras;
    auto numeric = [](const std::string& w) {
        return std::all_of(w.begin(), w.end(), [](char c) { return c >= '0' && c <= '9'; });
    };
    while (words.size() > 2 && numeric(words.back())) {
        extras.insert(extras.begin(), std::move(words.back()));
        words.pop_back();
    }
    if (words.size() < 2) fail(ErrorCode::EmptyAfterFold, "'" + text + "' needs a first and a last name");
    return NameParts{words.front(), words.back(), std::move(extras)};
}

bool is_valid_domain(std::string_view domain) {
    if (domain.empty() || domain.size() > 253) return false;
    std::size_t labels = 0;
    std::size_t start = 0;
    while (start <= domain.size()) {
        auto dot = domain.find('.', start);
        std::string_view label = domain.substr(start, dot == std::string_view::npos ? std::string_view::npos : dot - start);
        if (label.empty() || label.size() > 63 || label.front() == '-' || label.back() == '-') return false;
        for (char c : label) {
            char lc = (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
            if (!is_ldh(lc)) return false;
        }
        ++labels;
        if (dot == std::string_view::npos) break;
        start = dot + 1;
    }
    return labels >= 2;
}

bool validate_email_syntax(std::string_view text) {
    auto at = text.find('@');
    if (at == std::string_view::npos || text.find('@', at + 1) != std::string_view::npos) return false;
    std::string_view local = text.substr(0, at);
    std::string_view domain = text.substr(at + 1);
    if (local.empty() || local.front() == '.' || local.back() == '.') return false;
    if (local.find("..") != std::string_view::npos) return false;
    for (char c : local) {
        char lc = (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
        bool ok = (lc >= 'a' && lc <= 'z') || (lc >= '0' && lc <= '9') || lc == '.' || lc == '_' || lc == '%' ||
                  lc == '+' || lc == '-';
        if (!ok) return false;
    }
    return is_valid_domain(domain);
}

std::vector<std::string> generate_email_candidates(const NameParts& name, std::string_view domain) {
    if (!is_valid_domain(domain)) fail(ErrorCode::InvalidDomain, "invalid domain '" + std::string(domain) + "'");
    std::string first = fold_name(name.first);
    std::string last = fold_name(name.last);
    std::string host = unicode::to_lower(domain);
    std::vector<std::string> out;
    std::unordered_set<std::string> seen;
    for (auto pattern : kEmailPatterns) {
        push_unique(out, seen, substitute(pattern, first, last) + "@" + host);
    }
    return out;
}

std::vector<std::string> generate_username_candidates(const NameParts& name) {
    std::string first = fold_name(name.first);
    std::string last = fold_name(name.last);
    std::vector<std::string> base;
    for (auto sep : kUsernameSeparators) base.push_back(first + std::string(sep) + last);
    for (auto sep : kUsernameSeparators) base.push_back(last + std::string(sep) + first);
    base.push_back(first.substr(0, 1) + last);
    base.push_back(first + last.substr(0, 1));
    base.push_back(first);
    base.push_back(last);

    std::vector<std::string> out;
    std::unordered_set<std::string> seen;
    for (auto& b : base) push_unique(out, seen, b);
    for (const auto& extra : name.extras) {
        std::string suffix = fold_name(extra);
        for (const auto& b : base) push_unique(out, seen, b + suffix);
    }
    return out;
}

}  // namespace idrecon::generators
