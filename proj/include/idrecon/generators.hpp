// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 idrecon contributors

#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

// Deterministic identity-candidate generation from a person's name.
namespace idrecon::generators {

struct NameParts {
    std::string first;
    std::string last;
    std::vector<std::string> extras;
};

/// Address templates, in output order. Placeholders: {first} {last} {f} {l}.
inline constexpr std::array<std::string_view, 8> kEmailPatterns{
    "{first}.{last}", "{first}{last}", "{f}{last}", "{f}.{last}",
    "{first}_{last}", "{last}.{first}", "{first}", "{last}",
};

inline constexpr std::array<std::string_view, 4> kUsernameSeparators{"", ".", "_", "-"};

/// Lower-case, ä->ae ö->oe ü->ue ß->ss, other diacritics stripped, then only [a-z0-9] kept.
/// Throws EmptyAfterFold when nothing is left.
std::string fold_name(std::string_view text);

/// Splits "Olaf Scholz" / "Scholz, Olaf" into first and last; middle names are dropped.
NameParts split_full_name(std::string_view full_name);

/// LDH labels, at least two of them. Case-insensitive.
bool is_valid_domain(std::string_view domain);
bool validate_email_syntax(std::string_view text);

std::vector<std::string> generate_email_candidates(const NameParts& name, std::string_view domain);
std::vector<std::string> generate_username_candidates(const NameParts& name);

}  // namespace idrecon::generators
