// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 idrecon contributors

#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "idrecon/entity_graph.hpp"
#include "idrecon/transport.hpp"

namespace idrecon::probe {

/// All set criteria must hold. An empty status set means "any status".
struct DetectionRule {
    std::set<int> status_in;
    std::optional<std::string> body_contains;
    std::optional<std::string> body_lacks;

    [[nodiscard]] bool has_criteria() const {
        return !status_in.empty() || body_contains.has_value() || body_lacks.has_value();
    }
    [[nodiscard]] bool matches(const HttpResponse& response) const;
};

struct SiteDescriptor {
    std::string name;
    SourceCategory category = SourceCategory::SocialMedia;
    std::string url_template;
    DetectionRule claim_found;
    DetectionRule claim_absent;

    [[nodiscard]] std::string url_for(std::string_view username) const;
};

enum class Verdict { Found, NotFound, Ambiguous, TransportError };

std::string_view to_string(Verdict verdict) noexcept;

struct ProbeResult {
    std::string site;
    std::string username;
    Verdict verdict = Verdict::Ambiguous;
    std::string url;
    std::optional<int> status;
    std::optional<std::string> error;

    friend bool operator==(const ProbeResult&, const ProbeResult&) = default;
};

/// Throws SchemaViolation or BadTemplate.
std::vector<SiteDescriptor> load_site_list(std::string_view json);
std::vector<SiteDescriptor> load_site_list_file(const std::string& path);
/// The five-site pack bundled for tests and demos.
std::vector<SiteDescriptor> bundled_test_pack();

/// Applies both rules to a response.
Verdict classify(const SiteDescriptor& site, const HttpResponse& response);

struct ProbeOptions {
    std::size_t max_concurrency = 4;
};

/// One result per site, in input order. Transport failures become TransportError verdicts.
std::vector<ProbeResult> probe_username(std::string_view username, const std::vector<SiteDescriptor>& sites,
                                        Transport& transport, const ProbeOptions& options = {});

/// Sites whose found and absent rules both match some recorded response.
std::vector<std::string> conflicting_sites(const std::vector<SiteDescriptor>& sites, const Fixture& fixture);

}  // namespace idrecon::probe
