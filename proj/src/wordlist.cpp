// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 idrecon contributors

#include "idrecon/wordlist.hpp"

#include <ostream>
#include <unordered_set>

#include <json.hpp>

#include "idrecon/codec.hpp"
#include "idrecon/error.hpp"
#include "idrecon/text_analysis.hpp"
#include "idrecon/unicode.hpp"

namespace idrecon::wordlist {
namespace {

struct Base {
    std::vector<std::string> parts;
};

std::vector<std::string> usable_tokens(const std::vector<std::string>& tokens) {
    std::vector<std::string> out;
    for (auto& t : text::clean_tokens(tokens)) {
        if (t.find('#') == std::string::npos && t.find('@') == std::string::npos) out.push_back(std::move(t));
    }
    if (out.empty()) fail(ErrorCode::EmptyTokenSet, "no usable base tokens");
    return out;
}

std::vector<Base> bases(const std::vector<std::string>& tokens, int depth) {
    std::vector<Base> out;
    for (const auto& t : tokens) out.push_back(Base{{t}});
    if (depth == 2) {
        for (std::size_t i = 0; i < tokens.size(); ++i) {
            for (std::size_t j = 0; j < tokens.size(); ++j) {
                if (i != j) out.push_back(Base{{tokens[i], tokens[j]}});
            }
        }
    }
    return out;
}

/// Calls `emit` for every candidate in generation order, after dedup; stops when it returns false.
template <class Emit>
void enumerate(const std::vector<std::string>& base_tokens, const WordlistConfig& config, Emit&& emit) {
    config.validate();
    std::vector<std::string> tokens = usable_tokens(base_tokens);
    std::vector<std::string> suffixes = config.effective_suffixes();
    std::unordered_set<std::string> seen;
    for (const auto& base : bases(tokens, config.combine_depth)) {
        for (CaseVariant variant : config.case_variants) {
            std::string cased;
            for (const auto& part : base.parts) cased += apply_case(part, variant);
            for (int leet = 0; leet <= (config.leet ? 1 : 0); ++leet) {
                std::string word = leet ? apply_leet(cased) : cased;
                for (const auto& suffix : suffixes) {
                    std::string candidate = word + suffix;
                    if (!seen.insert(candidate).second) continue;
                    if (!emit(std::move(candidate))) return;
                }
            }
        }
    }
}

std::string fingerprint(const std::vector<std::string>& tokens, const WordlistConfig& config) {
    nlohmann::ordered_json doc;
    doc["tokens"] = tokens;
    doc["case"] = nlohmann::ordered_json::array();
    for (auto v : config.case_variants) doc["case"].push_back(std::string(to_string(v)));
    doc["leet"] = config.leet;
    doc["suffixes"] = config.effective_suffixes();
    doc["depth"] = config.combine_depth;
    doc["max"] = config.max_candidates;
    return codec::sha256_hex(doc.dump());
}

}  // namespace

std::string_view to_string(CaseVariant v) noexcept {
    switch (v) {
        case CaseVariant::Lower: return "lower";
        case CaseVariant::Capitalized: return "capitalized";
        case CaseVariant::Upper: return "upper";
    }
    return "lower";
}

CaseVariant parse_case_variant(std::string_view text) {
    if (text == "lower") return CaseVariant::Lower;
    if (text == "capitalized" || text == "cap") return CaseVariant::Capitalized;
    if (text == "upper") return CaseVariant::Upper;
    fail(ErrorCode::InvalidConfig, "unknown case variant '" + std::string(text) + "'");
}

void WordlistConfig::validate() const {
    if (case_variants.empty()) fail(ErrorCode::InvalidConfig, "case_variants must not be empty");
    for (std::size_t i = 0; i < case_variants.size(); ++i) {
        for (std::size_t j = i + 1; j < case_variants.size(); ++j) {
            if (case_variants[i] == case_variants[j]) fail(ErrorCode::InvalidConfig, "duplicate case variant");
        }
    }
    if (combine_depth != 1 && combine_depth != 2) fail(ErrorCode::InvalidConfig, "combine_depth must be 1 or 2");
    if (max_candidates < 1) fail(ErrorCode::InvalidConfig, "max_candidates must be at least 1");
    if (year_from.has_value() != year_to.has_value()) {
        fail(ErrorCode::InvalidConfig, "year_from and year_to go together");
    }
    if (year_from && (*year_from > *year_to || *year_from < 0 || *year_to > 9999)) {
        fail(ErrorCode::InvalidConfig, "bad year range");
    }
    for (const auto& s : suffixes) {
        if (s.find('#') != std::string::npos || s.find('@') != std::string::npos || s.find('\n') != std::string::npos) {
            fail(ErrorCode::InvalidConfig, "suffix '" + s + "' contains a forbidden character");
        }
    }
}

std::vector<std::string> WordlistConfig::effective_suffixes() const {
    std::vector<std::string> out;
    std::unordered_set<std::string> seen;
    for (const auto& s : suffixes) {
        if (seen.insert(s).second) out.push_back(s);
    }
    if (year_from && year_to) {
        for (int y = *year_from; y <= *year_to; ++y) {
            auto s = std::to_string(y);
            if (seen.insert(s).second) out.push_back(s);
        }
    }
    return out;
}

std::string apply_case(std::string_view word, CaseVariant variant) {
    switch (variant) {
        case CaseVariant::Lower: return unicode::to_lower(word);
        case CaseVariant::Capitalized: return unicode::capitalize(word);
        case CaseVariant::Upper: return unicode::to_upper(word);
    }
    return std::string(word);
}

std::string apply_leet(std::string_view word) {
    std::string out(word);
    for (char& c : out) {
        switch (c) {
            case 'a': case 'A': c = '4'; break;
            case 'e': case 'E': c = '3'; break;
            case 'i': case 'I': c = '1'; break;
            case 'o': case 'O': c = '0'; break;
            case 's': case 'S': c = '5'; break;
            default: break;
        }
    }
    return out;
}

Wordlist generate_wordlist(const std::vector<std::string>& base_tokens, const WordlistConfig& config) {
    Wordlist out;
    enumerate(base_tokens, config, [&](std::string candidate) {
        out.candidates.push_back(std::move(candidate));
        return out.candidates.size() < config.max_candidates;
    });
    out.config_fingerprint = fingerprint(usable_tokens(base_tokens), config);
    return out;
}

std::size_t estimate_count(const std::vector<std::string>& base_tokens, const WordlistConfig& config) {
    std::size_t n = 0;
    enumerate(base_tokens, config, [&](const std::string&) {
        ++n;
        return true;
    });
    return n;
}

std::size_t write_wordlist(const Wordlist& wordlist, std::ostream& sink) {
    std::size_t written = 0;
    for (const auto& c : wordlist.candidates) {
        sink.write(c.data(), static_cast<std::streamsize>(c.size()));
        sink.put('\n');
        written += c.size() + 1;
    }
    sink.flush();
    if (!sink) fail(ErrorCode::SinkError, "failed to write wordlist");
    return written;
}

std::string render_wordlist(const Wordlist& wordlist) {
    std::string out;
    for (const auto& c : wordlist.candidates) {
        out += c;
        out.push_back('\n');
    }
    return out;
}

std::vector<std::string> read_wordlist(std::string_view content) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start < content.size()) {
        auto nl = content.find('\n', start);
        if (nl == std::string_view::npos) nl = content.size();
        out.emplace_back(content.substr(start, nl - start));
        start = nl + 1;
    }
    return out;
}

std::vector<std::string> split_list(std::string_view text) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        auto comma = text.find(',', start);
        out.emplace_back(unicode::trim(text.substr(start, comma == std::string_view::npos ? text.npos : comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

namespace {

int parse_number(const std::string& key, const std::string& value) {
    std::size_t used = 0;
    int n = 0;
    try {
        n = std::stoi(value, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != value.size()) fail(ErrorCode::InvalidConfig, key + " must be a number, got '" + value + "'");
    return n;
}

}  // namespace

WordlistConfig config_from_options(const std::map<std::string, std::string>& options) {
    WordlistConfig config;
    for (const auto& [key, value] : options) {
        if (key == "case") {
            config.case_variants.clear();
            for (const auto& item : split_list(value)) {
                if (!item.empty()) config.case_variants.push_back(parse_case_variant(unicode::to_lower(item)));
            }
        } else if (key == "leet") {
            if (value == "true" || value == "1" || value == "yes") config.leet = true;
            else if (value == "false" || value == "0" || value == "no" || value.empty()) config.leet = false;
            else fail(ErrorCode::InvalidConfig, "leet must be true or false");
        } else if (key == "suffixes") {
            config.suffixes = split_list(value);
        } else if (key == "depth") {
            config.combine_depth = parse_number(key, value);
        } else if (key == "max") {
            int n = parse_number(key, value);
            if (n < 1) fail(ErrorCode::InvalidConfig, "max must be at least 1");
            config.max_candidates = static_cast<std::size_t>(n);
        } else if (key == "years") {
            if (value.empty()) continue;
            auto dash = value.find('-');
            if (dash == std::string::npos) fail(ErrorCode::InvalidConfig, "years must look like 1950-1960");
            config.year_from = parse_number(key, value.substr(0, dash));
            config.year_to = parse_number(key, value.substr(dash + 1));
        } else {
            fail(ErrorCode::InvalidConfig, "unknown wordlist option '" + key + "'");
        }
    }
    config.validate();
    return config;
}

}  // namespace idrecon::wordlist
