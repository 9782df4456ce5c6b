// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 idrecon contributors

#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

// Personalised password-candidate lists built from ranked tokens.
namespace idrecon::wordlist {

enum class CaseVariant { Lower, Capitalized, Upper };

std::string_view to_string(CaseVariant v) noexcept;
CaseVariant parse_case_variant(std::string_view text);

inline constexpr std::size_t kDefaultMaxCandidates = 100000;

struct WordlistConfig {
    std::vector<CaseVariant> case_variants{CaseVariant::Lower, CaseVariant::Capitalized, CaseVariant::Upper};
    /// a->4 e->3 i->1 o->0 s->5 (either case), applied to the whole word at once.
    bool leet = false;
    std::vector<std::string> suffixes{"", "123", "!"};
    std::optional<int> year_from;
    std::optional<int> year_to;
    /// 1: single tokens; 2: also ordered pairs of distinct tokens.
    int combine_depth = 1;
    std::size_t max_candidates = kDefaultMaxCandidates;

    /// Throws InvalidConfig.
    void validate() const;
    /// Configured suffixes followed by the year range, duplicates removed.
    [[nodiscard]] std::vector<std::string> effective_suffixes() const;
};

struct Wordlist {
    std::vector<std::string> candidates;
    std::string config_fingerprint;
};

/// Applies one case variant; pair parts are cased individually ("OlafBritta").
std::string apply_case(std::string_view word, CaseVariant variant);
std::string apply_leet(std::string_view word);

/// For each base (tokens in rank order, then ordered pairs when depth is 2): case variants,
/// then leet off/on, then suffixes. Dedup keeps the first occurrence; the result is cut at
/// max_candidates. Tokens are re-cleaned; ones still containing '#' or '@' are dropped.
/// Throws EmptyTokenSet or InvalidConfig.
Wordlist generate_wordlist(const std::vector<std::string>& base_tokens, const WordlistConfig& config);

/// Length generate_wordlist would have without the max_candidates cut.
std::size_t estimate_count(const std::vector<std::string>& base_tokens, const WordlistConfig& config);

/// One candidate per line, LF-terminated, UTF-8 without BOM. Returns bytes written.
/// Throws SinkError.
std::size_t write_wordlist(const Wordlist& wordlist, std::ostream& sink);
std::string render_wordlist(const Wordlist& wordlist);
std::vector<std::string> read_wordlist(std::string_view content);

/// Splits on ',' keeping empty items ("" , "123" from ",123").
std::vector<std::string> split_list(std::string_view text);

/// Builds a config from string options as used by the CLI, the API and module params:
/// case, leet, suffixes, depth, max, years ("1950-1960"). Missing keys keep defaults.
/// Throws InvalidConfig.
WordlistConfig config_from_options(const std::map<std::string, std::string>& options);

}  // namespace idrecon::wordlist
