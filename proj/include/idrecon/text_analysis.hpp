// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 idrecon contributors

#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "idrecon/ids.hpp"

namespace idrecon::text {

enum class EntityClass { PER, LOC, ORG, MISC };

std::string_view to_string(EntityClass klass) noexcept;
EntityClass parse_entity_class(std::string_view text);

/// Half-open range of Unicode code point offsets.
struct Span {
    std::size_t start = 0;
    std::size_t end = 0;
    friend bool operator==(const Span&, const Span&) = default;
};

struct NamedEntity {
    std::string surface;
    EntityClass klass = EntityClass::MISC;
    Span span;
    std::optional<NodeId> source_node;

    friend bool operator==(const NamedEntity&, const NamedEntity&) = default;
};

struct TokenStats {
    std::string token;
    std::size_t count = 0;
    std::size_t first_seen = 0;

    friend bool operator==(const TokenStats&, const TokenStats&) = default;
};

/// Word lists. Entries are lowercase; multi-word entries ("new york") are matched as token runs.
struct Gazetteers {
    std::set<std::string> given_names;
    std::set<std::string> cities;
    std::set<std::string> org_suffixes;
    std::set<std::string> ignored;

    /// The lists shipped in data/gazetteers.
    static Gazetteers builtin();
    /// One term per line, '#' starts a comment line.
    static std::set<std::string> parse_list(std::string_view text);
    static std::set<std::string> load_list(const std::string& path);
};

struct AdapterToken {
    std::string token;
    EntityClass klass = EntityClass::MISC;
};

/// External NER service boundary; returns bare tokens which get span-resolved here.
class NerAdapter {
  public:
    virtual ~NerAdapter() = default;
    virtual std::vector<AdapterToken> extract(std::string_view text) = 0;
};

/// Recorded answers keyed by SHA-256 of the UTF-8 text:
///   {"<hex>": [{"token": "Britta", "class": "PER"}, ...]}
class FixtureNerAdapter final : public NerAdapter {
  public:
    static std::shared_ptr<FixtureNerAdapter> parse(std::string_view json);
    std::vector<AdapterToken> extract(std::string_view text) override;

  private:
    std::vector<std::pair<std::string, std::vector<AdapterToken>>> answers_;
};

struct RuleBased {};
struct External {
    std::string name;
    std::shared_ptr<NerAdapter> adapter;
};
using NerBackend = std::variant<RuleBased, External>;

/// Rule-based order: (a) @mentions / #hashtags, sigil excluded from the span; (b) gazetteer
/// matches, org suffixes absorbing the capitalised words before them; (c) remaining
/// capitalised words not at sentence start -> MISC. Results are ordered by span start.
/// Throws PreconditionViolation on empty text, AdapterUnavailable, NotFound.
std::vector<NamedEntity> extract_entities(std::string_view source, const NerBackend& backend,
                                          const Gazetteers& gazetteers = Gazetteers::builtin(),
                                          std::optional<NodeId> source_node = std::nullopt);

/// First case-insensitive whole-word occurrence at or after `from_offset` (code points).
/// Throws NotFound or PreconditionViolation.
Span resolve_span(std::string_view token, std::string_view source, std::size_t from_offset);

/// Code-point slice of a UTF-8 string.
std::string slice(std::string_view source, Span span);

/// Per-token cleaning without dedup: NFC, surrounding punctuation (including # and @) removed.
/// Absent when fewer than three characters remain.
std::optional<std::string> clean_token(std::string_view token);
/// clean_token on each, then case-insensitive dedup keeping first casing and order.
std::vector<std::string> clean_tokens(const std::vector<std::string>& tokens);

/// Descending count (case-insensitive aggregation), ties by lowercase lexicographic order.
std::vector<TokenStats> rank_tokens(const std::vector<std::string>& tokens);

/// NER -> per-token cleaning -> frequency ranking.
std::vector<TokenStats> token_pipeline(std::string_view source, const NerBackend& backend,
                                       const Gazetteers& gazetteers = Gazetteers::builtin());

}  // namespace idrecon::text
