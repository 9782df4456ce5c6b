// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 idrecon contributors

// Brute-force reference enumerations, written straight from the rule text and kept
// independent of the library code (ASCII-only inputs, no shared helpers).

#pragma once

#include <algorithm>
#include <cctype>
#include <set>
#include <string>
#include <vector>

namespace idrecon::testing {

inline std::vector<std::string> dedup(const std::vector<std::string>& in) {
    std::vector<std::string> out;
    for (const auto& s : in) {
        if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
    }
    return out;
}

// first/last/extras already folded to [a-z0-9]+.
inline std::vector<std::string> email_oracle(const std::string& first, const std::string& last,
                                             const std::string& domain) {
    std::string f(1, first[0]);
    std::vector<std::string> raw{
        first + "." + last, first + last, f + last,  f + "." + last,
        first + "_" + last, last + "." + first, first, last,
    };
    for (auto& r : raw) r += "@" + domain;
    return dedup(raw);
}

inline std::vector<std::string> username_oracle(const std::string& first, const std::string& last,
                                                const std::vector<std::string>& extras) {
    std::vector<std::string> base;
    const char* seps[] = {"", ".", "_", "-"};
    for (const char* s : seps) base.push_back(first + s + last);
    for (const char* s : seps) base.push_back(last + s + first);
    base.push_back(std::string(1, first[0]) + last);
    base.push_back(first + std::string(1, last[0]));
    base.push_back(first);
    base.push_back(last);
    std::vector<std::string> all = base;
    for (const auto& x : extras) {
        for (const auto& b : base) all.push_back(b + x);
    }
    return dedup(all);
}

enum class OracleCase { Lower, Capitalized, Upper };

inline std::string oracle_case(const std::string& w, OracleCase c) {
    std::string out = w;
    for (std::size_t i = 0; i < out.size(); ++i) {
        unsigned char ch = static_cast<unsigned char>(out[i]);
        bool up = c == OracleCase::Upper || (c == OracleCase::Capitalized && i == 0);
        out[i] = static_cast<char>(up ? std::toupper(ch) : std::tolower(ch));
    }
    return out;
}

inline std::string oracle_leet(std::string w) {
    for (auto& ch : w) {
        switch (std::tolower(static_cast<unsigned char>(ch))) {
            case 'a': ch = '4'; break;
            case 'e': ch = '3'; break;
            case 'i': ch = '1'; break;
            case 'o': ch = '0'; break;
            case 's': ch = '5'; break;
            default: break;
        }
    }
    return w;
}

// tokens: clean ASCII words, already unique case-insensitively.
inline std::vector<std::string> wordlist_oracle(const std::vector<std::string>& tokens,
                                                const std::vector<OracleCase>& cases, bool leet,
                                                const std::vector<std::string>& suffixes, int depth,
                                                std::size_t max) {
    std::vector<std::vector<std::string>> bases;
    for (const auto& t : tokens) bases.push_back({t});
    if (depth == 2) {
        for (std::size_t i = 0; i < tokens.size(); ++i) {
            for (std::size_t j = 0; j < tokens.size(); ++j) {
                if (i != j) bases.push_back({tokens[i], tokens[j]});
            }
        }
    }
    std::vector<std::string> out;
    std::set<std::string> seen;
    for (const auto& b : bases) {
        for (auto c : cases) {
            std::string word;
            for (const auto& p : b) word += oracle_case(p, c);
            std::vector<std::string> forms{word};
            if (leet) forms.push_back(oracle_leet(word));
            for (const auto& form : forms) {
                for (const auto& s : suffixes) {
                    std::string cand = form + s;
                    if (seen.insert(cand).second) out.push_back(cand);
                }
            }
        }
    }
    if (out.size() > max) out.resize(max);
    return out;
}

}  // namespace idrecon::testing
