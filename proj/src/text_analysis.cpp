// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 idrecon contributors

#include "idrecon/text_analysis.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

#include "idrecon/codec.hpp"
#include "idrecon/embedded_data.hpp"
#include "idrecon/error.hpp"
#include "idrecon/unicode.hpp"

namespace idrecon::text {
namespace {

struct Token {
    std::size_t start = 0;  // excludes the sigil
    std::size_t end = 0;
    char32_t sigil = 0;
    bool sentence_start = false;
    bool capitalized = false;
    std::string lower;
};

bool word_char(char32_t c) { return unicode::is_letter(c) || unicode::is_digit(c); }

std::vector<Token> tokenize(const std::u32string& s) {
    std::vector<Token> out;
    bool sentence_start = true;
    std::size_t i = 0;
    const std::size_t n = s.size();
    auto emit = [&](std::size_t start, std::size_t end, char32_t sigil) {
        Token t;
        t.start = start;
        t.end = end;
        t.sigil = sigil;
        t.sentence_start = sentence_start;
        t.capitalized = unicode::is_upper(s[start]);
        t.lower = unicode::to_lower(unicode::encode(std::u32string_view(s).substr(start, end - start)));
        out.push_back(std::move(t));
        sentence_start = false;
    };
    while (i < n) {
        char32_t c = s[i];
        if ((c == U'@' || c == U'#') && i + 1 < n && (word_char(s[i + 1]) || s[i + 1] == U'_')) {
            std::size_t j = i + 1;
            while (j < n && (word_char(s[j]) || s[j] == U'_')) ++j;
            emit(i + 1, j, c);
            i = j;
        } else if (word_char(c)) {
            std::size_t j = i + 1;
            while (j < n) {
                if (word_char(s[j])) {
                    ++j;
                } else if ((s[j] == U'-' || s[j] == U'\'') && j + 1 < n && word_char(s[j + 1])) {
                    j += 2;
                } else {
                    break;
                }
            }
            emit(i, j, 0);
            i = j;
        } else {
            if (c == U'.' || c == U'!' || c == U'?') sentence_start = true;
            ++i;
        }
    }
    return out;
}

bool only_spaces_between(const std::u32string& s, std::size_t from, std::size_t to) {
    for (std::size_t i = from; i < to; ++i) {
        if (!unicode::is_space(s[i])) return false;
    }
    return true;
}

std::size_t max_words(const std::set<std::string>& list) {
    std::size_t best = 1;
    for (const auto& e : list) best = std::max<std::size_t>(best, 1 + std::count(e.begin(), e.end(), ' '));
    return best;
}

std::vector<NamedEntity> rule_based(const std::u32string& s, const Gazetteers& gz) {
    std::vector<Token> toks = tokenize(s);
    std::vector<bool> claimed(toks.size(), false);
    std::vector<NamedEntity> out;
    auto add = [&](std::size_t first, std::size_t last, EntityClass klass) {
        NamedEntity e;
        e.span = Span{toks[first].start, toks[last].end};
        e.surface = unicode::encode(std::u32string_view(s).substr(e.span.start, e.span.end - e.span.start));
        e.klass = klass;
        out.push_back(std::move(e));
        for (std::size_t k = first; k <= last; ++k) claimed[k] = true;
    };

    // (a) mentions and hashtags
    for (std::size_t k = 0; k < toks.size(); ++k) {
        if (!toks[k].sigil) continue;
        EntityClass klass = EntityClass::MISC;
        if (gz.given_names.contains(toks[k].lower)) klass = EntityClass::PER;
        else if (gz.cities.contains(toks[k].lower)) klass = EntityClass::LOC;
        add(k, k, klass);
    }

    auto plain = [&](std::size_t k) { return !claimed[k] && !toks[k].sigil; };

    // (b) organisations: suffix plus the capitalised run directly before it
    for (std::size_t k = 0; k < toks.size(); ++k) {
        if (!plain(k) || !gz.org_suffixes.contains(toks[k].lower)) continue;
        std::size_t first = k;
        while (first > 0 && !toks[first].sentence_start && plain(first - 1) && toks[first - 1].capitalized &&
               !gz.org_suffixes.contains(toks[first - 1].lower) &&
               only_spaces_between(s, toks[first - 1].end, toks[first].start)) {
            --first;
        }
        if (first < k) add(first, k, EntityClass::ORG);
    }

    // (b) persons and places, longest match first
    const std::size_t longest = std::max(max_words(gz.given_names), max_words(gz.cities));
    for (std::size_t k = 0; k < toks.size(); ++k) {
        if (!plain(k) || !toks[k].capitalized) continue;
        for (std::size_t len = std::min(longest, toks.size() - k); len >= 1; --len) {
            bool contiguous = true;
            std::string key = toks[k].lower;
            for (std::size_t m = k + 1; m < k + len; ++m) {
                if (!plain(m) || !only_spaces_between(s, toks[m - 1].end, toks[m].start)) {
                    contiguous = false;
                    break;
                }
                key += " " + toks[m].lower;
            }
            if (!contiguous) continue;
            if (gz.given_names.contains(key)) {
                add(k, k + len - 1, EntityClass::PER);
                break;
            }
            if (gz.cities.contains(key)) {
                add(k, k + len - 1, EntityClass::LOC);
                break;
            }
        }
    }

    // (c) other capitalised words that do not open a sentence
    for (std::size_t k = 0; k < toks.size(); ++k) {
        if (!plain(k) || !toks[k].capitalized || toks[k].sentence_start) continue;
        if (gz.ignored.contains(toks[k].lower)) continue;
        add(k, k, EntityClass::MISC);
    }

    std::sort(out.begin(), out.end(), [](const NamedEntity& a, const NamedEntity& b) {
        return a.span.start < b.span.start;
    });
    return out;
}

}  // namespace

std::string_view to_string(EntityClass klass) noexcept {
    switch (klass) {
        case EntityClass::PER: return "PER";
        case EntityClass::LOC: return "LOC";
        case EntityClass::ORG: return "ORG";
        case EntityClass::MISC: return "MISC";
    }
    return "MISC";
}

EntityClass parse_entity_class(std::string_view text) {
    if (text == "PER") return EntityClass::PER;
    if (text == "LOC") return EntityClass::LOC;
    if (text == "ORG") return EntityClass::ORG;
    if (text == "MISC") return EntityClass::MISC;
    fail(ErrorCode::InvalidArgument, "unknown entity class '" + std::string(text) + "'");
}

Gazetteers Gazetteers::builtin() {
    static const Gazetteers shared{parse_list(embedded::given_names()), parse_list(embedded::cities()),
                                   parse_list(embedded::org_suffixes()), parse_list(embedded::ignored_words())};
    return shared;
}

std::set<std::string> Gazetteers::parse_list(std::string_view text) {
    std::set<std::string> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto nl = text.find('\n', start);
        std::string_view line = text.substr(start, nl == std::string_view::npos ? std::string_view::npos : nl - start);
        std::string term = unicode::to_lower(unicode::trim(unicode::nfc(line)));
        if (!term.empty() && term.front() != '#') out.insert(std::move(term));
        if (nl == std::string_view::npos) break;
        start = nl + 1;
    }
    return out;
}

std::set<std::string> Gazetteers::load_list(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorCode::IoError, "cannot read gazetteer " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_list(ss.str());
}

std::shared_ptr<FixtureNerAdapter> FixtureNerAdapter::parse(std::string_view json_text) {
    auto adapter = std::make_shared<FixtureNerAdapter>();
    try {
        auto doc = nlohmann::json::parse(json_text);
        for (const auto& [hash, list] : doc.items()) {
            std::vector<AdapterToken> tokens;
            for (const auto& t : list) {
                tokens.push_back({t.at("token").get<std::string>(), parse_entity_class(t.value("class", "MISC"))});
            }
            adapter->answers_.emplace_back(hash, std::move(tokens));
        }
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::SchemaViolation, std::string("bad NER fixture: ") + e.what());
    }
    return adapter;
}

std::vector<AdapterToken> FixtureNerAdapter::extract(std::string_view source) {
    std::string hash = codec::sha256_hex(source);
    for (const auto& [h, tokens] : answers_) {
        if (h == hash) return tokens;
    }
    fail(ErrorCode::AdapterError, "no recorded NER answer for this text");
}

Span resolve_span(std::string_view token, std::string_view source, std::size_t from_offset) {
    std::u32string needle = unicode::decode(unicode::nfc(token));
    if (needle.empty()) fail(ErrorCode::PreconditionViolation, "token is empty");
    std::u32string hay = unicode::decode(source);
    for (auto& c : needle) c = unicode::lower(c);
    for (std::size_t i = from_offset; i + needle.size() <= hay.size(); ++i) {
        bool match = true;
        for (std::size_t k = 0; k < needle.size(); ++k) {
            if (unicode::lower(hay[i + k]) != needle[k]) {
                match = false;
                break;
            }
        }
        if (!match) continue;
        bool left_ok = i == 0 || !unicode::is_letter(hay[i - 1]);
        bool right_ok = i + needle.size() == hay.size() || !unicode::is_letter(hay[i + needle.size()]);
        if (left_ok && right_ok) return Span{i, i + needle.size()};
    }
    fail(ErrorCode::NotFound, "token '" + std::string(token) + "' does not occur in the source");
}

std::string slice(std::string_view source, Span span) {
    std::u32string s = unicode::decode(source);
    if (span.start > span.end || span.end > s.size()) fail(ErrorCode::InvalidArgument, "span out of range");
    return unicode::encode(std::u32string_view(s).substr(span.start, span.end - span.start));
}

std::vector<NamedEntity> extract_entities(std::string_view source, const NerBackend& backend,
                                          const Gazetteers& gazetteers, std::optional<NodeId> source_node) {
    if (source.empty()) fail(ErrorCode::PreconditionViolation, "text is empty");
    std::vector<NamedEntity> out;
    if (std::holds_alternative<RuleBased>(backend)) {
        out = rule_based(unicode::decode(source), gazetteers);
    } else {
        const auto& ext = std::get<External>(backend);
        if (!ext.adapter) fail(ErrorCode::AdapterUnavailable, "NER adapter '" + ext.name + "' is not registered");
        std::size_t cursor = 0;
        for (const auto& t : ext.adapter->extract(source)) {
            Span span;
            try {
                span = resolve_span(t.token, source, cursor);
            } catch (const Error& e) {
                if (e.code() != ErrorCode::NotFound) throw;
                span = resolve_span(t.token, source, 0);
            }
            cursor = span.end;
            out.push_back(NamedEntity{slice(source, span), t.klass, span, std::nullopt});
        }
        std::stable_sort(out.begin(), out.end(), [](const NamedEntity& a, const NamedEntity& b) {
            return a.span.start < b.span.start;
        });
    }
    for (auto& e : out) e.source_node = source_node;
    return out;
}

std::optional<std::string> clean_token(std::string_view token) {
    std::u32string s = unicode::decode(unicode::nfc(token));
    auto strip = [](char32_t c) { return c == U'#' || c == U'@' || unicode::is_punct(c) || unicode::is_space(c); };
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && strip(s[b])) ++b;
    while (e > b && strip(s[e - 1])) --e;
    if (e - b < 3) return std::nullopt;
    return unicode::encode(std::u32string_view(s).substr(b, e - b));
}

std::vector<std::string> clean_tokens(const std::vector<std::string>& tokens) {
    std::vector<std::string> out;
    std::set<std::string> seen;
    for (const auto& t : tokens) {
        auto cleaned = clean_token(t);
        if (!cleaned) continue;
        if (seen.insert(unicode::to_lower(*cleaned)).second) out.push_back(std::move(*cleaned));
    }
    return out;
}

std::vector<TokenStats> rank_tokens(const std::vector<std::string>& tokens) {
    std::vector<TokenStats> stats;
    std::vector<std::string> keys;
    std::unordered_map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        std::string key = unicode::to_lower(tokens[i]);
        auto [it, inserted] = index.emplace(key, stats.size());
        if (inserted) {
            stats.push_back(TokenStats{tokens[i], 1, i});
            keys.push_back(std::move(key));
        } else {
            ++stats[it->second].count;
        }
    }
    std::vector<std::size_t> order(stats.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (stats[a].count != stats[b].count) return stats[a].count > stats[b].count;
        return keys[a] < keys[b];
    });
    std::vector<TokenStats> out;
    out.reserve(order.size());
    for (auto i : order) out.push_back(stats[i]);
    return out;
}

std::vector<TokenStats> token_pipeline(std::string_view source, const NerBackend& backend,
                                       const Gazetteers& gazetteers) {
    std::vector<std::string> cleaned;
    for (const auto& e : extract_entities(source, backend, gazetteers)) {
        if (auto t = clean_token(e.surface)) cleaned.push_back(std::move(*t));
    }
    return rank_tokens(cleaned);
}

}  // namespace idrecon::text
