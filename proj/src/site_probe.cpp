// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 idrecon contributors

#include "idrecon/site_probe.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "idrecon/codec.hpp"
#include "idrecon/embedded_data.hpp"
#include "idrecon/error.hpp"

namespace idrecon::probe {

using json = nlohmann::json;

namespace {

constexpr std::string_view kPlaceholder = "{username}";

DetectionRule parse_rule(const json& j, const std::string& site, const char* which) {
    if (!j.is_object()) fail(ErrorCode::SchemaViolation, site + ": '" + which + "' must be an object");
    DetectionRule rule;
    if (auto it = j.find("status_in"); it != j.end() && !it->is_null()) {
        if (!it->is_array()) fail(ErrorCode::SchemaViolation, site + ": status_in must be an array");
        for (const auto& s : *it) {
            if (!s.is_number_integer()) fail(ErrorCode::SchemaViolation, site + ": status codes must be integers");
            rule.status_in.insert(s.get<int>());
        }
    }
    auto text = [&](const char* key) -> std::optional<std::string> {
        auto it = j.find(key);
        if (it == j.end() || it->is_null()) return std::nullopt;
        if (!it->is_string()) fail(ErrorCode::SchemaViolation, site + ": " + key + " must be a string or null");
        return it->get<std::string>();
    };
    rule.body_contains = text("body_contains");
    rule.body_lacks = text("body_lacks");
    if (!rule.has_criteria()) fail(ErrorCode::SchemaViolation, site + ": '" + which + "' rule has no criteria");
    return rule;
}

std::size_t count_placeholders(std::string_view url) {
    std::size_t n = 0;
    for (auto pos = url.find(kPlaceholder); pos != std::string_view::npos; pos = url.find(kPlaceholder, pos + 1)) ++n;
    return n;
}

}  // namespace

bool DetectionRule::matches(const HttpResponse& response) const {
    if (!status_in.empty() && !status_in.contains(response.status)) return false;
    if (body_contains && response.body.find(*body_contains) == std::string::npos) return false;
    if (body_lacks && response.body.find(*body_lacks) != std::string::npos) return false;
    return true;
}

std::string SiteDescriptor::url_for(std::string_view username) const {
    std::string url = url_template;
    auto pos = url.find(kPlaceholder);
    if (pos == std::string::npos) fail(ErrorCode::BadTemplate, name + ": url has no {username}");
    url.replace(pos, kPlaceholder.size(), codec::url_encode(username));
    return url;
}

std::string_view to_string(Verdict verdict) noexcept {
    switch (verdict) {
        case Verdict::Found: return "Found";
        case Verdict::NotFound: return "NotFound";
        case Verdict::Ambiguous: return "Ambiguous";
        case Verdict::TransportError: return "TransportError";
    }
    return "Unknown";
}

std::vector<SiteDescriptor> load_site_list(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        fail(ErrorCode::SchemaViolation, std::string("site list is not JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("sites") || !doc["sites"].is_array()) {
        fail(ErrorCode::SchemaViolation, "site list needs a 'sites' array");
    }
    std::vector<SiteDescriptor> out;
    for (const auto& s : doc["sites"]) {
        if (!s.is_object()) fail(ErrorCode::SchemaViolation, "site entry must be an object");
        auto field = [&](const char* key) {
            auto it = s.find(key);
            if (it == s.end() || !it->is_string()) {
                fail(ErrorCode::SchemaViolation, std::string("site entry needs string '") + key + "'");
            }
            return it->get<std::string>();
        };
        SiteDescriptor site;
        site.name = field("name");
        try {
            site.category = parse_source_category(field("category"));
        } catch (const Error& e) {
            fail(ErrorCode::SchemaViolation, site.name + ": " + e.message());
        }
        site.url_template = field("url");
        if (count_placeholders(site.url_template) != 1) {
            fail(ErrorCode::BadTemplate, site.name + ": url must contain {username} exactly once");
        }
        if (!s.contains("found") || !s.contains("absent")) {
            fail(ErrorCode::SchemaViolation, site.name + ": needs 'found' and 'absent' rules");
        }
        site.claim_found = parse_rule(s["found"], site.name, "found");
        site.claim_absent = parse_rule(s["absent"], site.name, "absent");
        out.push_back(std::move(site));
    }
    return out;
}

std::vector<SiteDescriptor> load_site_list_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorCode::IoError, "cannot read site list " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return load_site_list(ss.str());
}

std::vector<SiteDescriptor> bundled_test_pack() {
    return load_site_list(embedded::site_pack_json());
}

Verdict classify(const SiteDescriptor& site, const HttpResponse& response) {
    bool found = site.claim_found.matches(response);
    bool absent = site.claim_absent.matches(response);
    if (found && !absent) return Verdict::Found;
    if (absent && !found) return Verdict::NotFound;
    return Verdict::Ambiguous;
}

std::vector<ProbeResult> probe_username(std::string_view username, const std::vector<SiteDescriptor>& sites,
                                        Transport& transport, const ProbeOptions& options) {
    if (username.empty()) fail(ErrorCode::PreconditionViolation, "username is empty");
    std::vector<ProbeResult> results(sites.size());
    auto probe_one = [&](std::size_t i) {
        const SiteDescriptor& site = sites[i];
        ProbeResult& r = results[i];
        r.site = site.name;
        r.username = std::string(username);
        r.url = site.url_for(username);
        try {
            HttpResponse response = transport.fetch("GET", r.url);
            r.status = response.status;
            r.verdict = classify(site, response);
        } catch (const Error& e) {
            r.verdict = Verdict::TransportError;
            r.error = e.what();
        }
    };

    std::size_t workers = std::clamp<std::size_t>(options.max_concurrency, 1, std::max<std::size_t>(sites.size(), 1));
    if (workers <= 1) {
        for (std::size_t i = 0; i < sites.size(); ++i) probe_one(i);
        return results;
    }
    std::atomic<std::size_t> next{0};
    {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < sites.size(); i = next++) probe_one(i);
            });
        }
    }
    return results;
}

std::vector<std::string> conflicting_sites(const std::vector<SiteDescriptor>& sites, const Fixture& fixture) {
    std::vector<std::string> out;
    for (const auto& site : sites) {
        for (const auto& i : fixture.interactions()) {
            if (site.claim_found.matches(i.response) && site.claim_absent.matches(i.response)) {
                auto prefix = site.url_template.substr(0, site.url_template.find(kPlaceholder));
                if (i.request.url.rfind(prefix, 0) == 0) {
                    out.push_back(site.name);
                    break;
                }
            }
        }
    }
    return out;
}

}  // namespace idrecon::probe
