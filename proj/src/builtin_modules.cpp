// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 idrecon contributors

#include "idrecon/builtin_modules.hpp"

#include <filesystem>

#include <json.hpp>

#include "idrecon/codec.hpp"
#include "idrecon/embedded_data.hpp"
#include "idrecon/exif.hpp"
#include "idrecon/generators.hpp"
#include "idrecon/list_interpreter.hpp"
#include "idrecon/site_probe.hpp"
#include "idrecon/text_analysis.hpp"
#include "idrecon/vision.hpp"
#include "idrecon/wordlist.hpp"

namespace idrecon {

namespace {

std::string replace_all(std::string text, std::string_view from, std::string_view to) {
    for (auto pos = text.find(from); pos != std::string::npos; pos = text.find(from, pos + to.size())) {
        text.replace(pos, from.size(), to);
    }
    return text;
}

generators::NameParts person_name(const ModuleContext& ctx) {
    return generators::split_full_name(ctx.input().value);
}

class EmailCandidates final : public Module {
  public:
    void run(ModuleContext& ctx) const override {
        const std::string& domain = ctx.params().text("domain");
        for (auto& email : generators::generate_email_candidates(person_name(ctx), domain)) {
            ctx.stage_node(EntityKind::Email, std::move(email), "generated-email");
        }
    }
};

class UsernameCandidates final : public Module {
  public:
    void run(ModuleContext& ctx) const override {
        auto name = person_name(ctx);
        for (auto& extra : wordlist::split_list(ctx.params().text("extras"))) {
            if (!extra.empty()) name.extras.push_back(std::move(extra));
        }
        for (auto& user : generators::generate_username_candidates(name)) {
            ctx.stage_node(EntityKind::Username, std::move(user), "generated-username");
        }
    }
};

class SiteProbe final : public Module {
  public:
    void run(ModuleContext& ctx) const override {
        const std::string& path = ctx.params().text("sites");
        auto sites = path.empty() ? probe::bundled_test_pack() : probe::load_site_list_file(path);
        auto concurrency = ctx.params().integer("concurrency");
        if (concurrency < 1) fail(ErrorCode::ParamInvalid, "concurrency must be at least 1");
        probe::ProbeOptions options{static_cast<std::size_t>(concurrency)};
        for (const auto& r : probe::probe_username(ctx.input().value, sites, ctx.transport(), options)) {
            if (r.verdict == probe::Verdict::Found) ctx.stage_node(EntityKind::SocialProfile, r.url, "profile-found");
        }
    }
};

class MediaCrawler final : public Module {
  public:
    void run(ModuleContext& ctx) const override {
        const std::string& user = ctx.input().value;
        std::string index_url = replace_all(ctx.params().text("index_url"), "{username}", codec::url_encode(user));
        auto limit = ctx.params().integer("limit");
        if (limit < 0) fail(ErrorCode::ParamInvalid, "limit must not be negative");

        HttpResponse index = ctx.transport().fetch("GET", index_url);
        if (index.status != 200) {
            fail(ErrorCode::NetworkFailure, "media index returned status " + std::to_string(index.status));
        }
        auto urls = interpret_list_output(index.body);
        std::string name = user + ".jpg";
        std::int64_t taken = 0;
        for (const auto& url : urls) {
            if (taken >= limit) break;
            HttpResponse image = ctx.transport().fetch("GET", url);
            if (image.status != 200 || image.body.size() < 2 || static_cast<unsigned char>(image.body[0]) != 0xFF ||
                static_cast<unsigned char>(image.body[1]) != 0xD8) {
                continue;
            }
            ctx.stage_file(name, std::move(image.body), EntityKind::ImageFile, "crawled-image");
            ++taken;
        }
    }
};

class ExifMetadata final : public Module {
  public:
    void run(ModuleContext& ctx) const override {
        std::string bytes = ctx.read_input_file();
        if (auto gps = media::extract_exif_gps(bytes)) {
            ctx.stage_node(EntityKind::Attribute, "gps:" + gps->to_string(), "exif-gps");
        }
        if (auto taken = media::extract_exif_timestamp(bytes)) {
            ctx.stage_node(EntityKind::Attribute, "taken:" + taken->to_string(), "exif-taken");
        }
    }
};

class Gad final : public Module {
  public:
    void run(ModuleContext& ctx) const override {
        std::string bytes = ctx.read_input_file();
        auto result = media::analyze_gad(ctx.input(), bytes, ctx.environment().vision.get());
        auto [age, gender] = media::gad_attribute_values(result);
        ctx.stage_node(EntityKind::Attribute, std::move(age), "gad-result");
        ctx.stage_node(EntityKind::Attribute, std::move(gender), "gad-result");
    }
};

text::NerBackend ner_backend(const ModuleContext& ctx) {
    const std::string& name = ctx.params().text("backend");
    if (name.empty() || name == "rule-based") return text::RuleBased{};
    const auto& adapters = ctx.environment().ner_adapters;
    auto it = adapters.find(name);
    if (it == adapters.end()) fail(ErrorCode::AdapterUnavailable, "no NER adapter named '" + name + "'");
    return text::External{name, it->second};
}

class Ner final : public Module {
  public:
    void run(ModuleContext& ctx) const override {
        std::string source = ctx.read_input_file();
        for (const auto& t : text::token_pipeline(source, ner_backend(ctx), ctx.environment().gazetteers)) {
            ctx.stage_node(EntityKind::Token, t.token, "ner-token");
        }
    }
};

class WordlistModule final : public Module {
  public:
    void run(ModuleContext& ctx) const override {
        std::string source = ctx.read_input_file();
        std::vector<std::string> tokens;
        for (const auto& t : text::token_pipeline(source, text::RuleBased{}, ctx.environment().gazetteers)) {
            tokens.push_back(t.token);
        }
        auto params = ctx.params().as_strings();
        auto config = wordlist::config_from_options(params);
        auto list = wordlist::generate_wordlist(tokens, config);
        std::string stem = std::filesystem::path(ctx.input().value).stem().string();
        ctx.stage_file(stem + "-wordlist.txt", wordlist::render_wordlist(list), EntityKind::TextFile, "wordlist");
    }
};

}  // namespace

std::vector<ModuleDescriptor> builtin_descriptors() {
    auto doc = nlohmann::json::parse(embedded::modules_manifest_json());
    std::vector<ModuleDescriptor> out;
    for (const auto& entry : doc.at("modules")) out.push_back(descriptor_from_json(entry));
    return out;
}

std::shared_ptr<const Module> builtin_implementation(std::string_view name) {
    if (name == "email-candidates") return std::make_shared<EmailCandidates>();
    if (name == "username-candidates") return std::make_shared<UsernameCandidates>();
    if (name == "site-probe") return std::make_shared<SiteProbe>();
    if (name == "media-crawler") return std::make_shared<MediaCrawler>();
    if (name == "exif-metadata") return std::make_shared<ExifMetadata>();
    if (name == "gad") return std::make_shared<Gad>();
    if (name == "ner") return std::make_shared<Ner>();
    if (name == "wordlist") return std::make_shared<WordlistModule>();
    return nullptr;
}

void register_builtin_modules(ModuleRegistry& registry) {
    for (auto& d : builtin_descriptors()) {
        auto impl = builtin_implementation(d.name);
        if (!impl) fail(ErrorCode::InvalidDescriptor, "manifest lists '" + d.name + "' but it has no implementation");
        registry.register_module(std::move(d), std::move(impl));
    }
}

std::unique_ptr<ModuleRegistry> default_registry() {
    auto registry = std::make_unique<ModuleRegistry>();
    register_builtin_modules(*registry);
    return registry;
}

}  // namespace idrecon
