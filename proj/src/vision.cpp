// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 idrecon contributors

#include "idrecon/vision.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "idrecon/codec.hpp"
#include "idrecon/error.hpp"

namespace idrecon::media {

using json = nlohmann::json;

FixtureVisionAdapter::FixtureVisionAdapter(std::map<std::string, GadResult> by_hash) : by_hash_(std::move(by_hash)) {}

std::shared_ptr<FixtureVisionAdapter> FixtureVisionAdapter::parse(std::string_view text) {
    std::map<std::string, GadResult> out;
    try {
        json doc = json::parse(text);
        if (!doc.is_object()) fail(ErrorCode::SchemaViolation, "GAD fixture must be an object");
        for (const auto& [hash, v] : doc.items()) {
            GadResult r;
            const auto& age = v.at("age");
            if (!age.is_array() || age.size() != 2) fail(ErrorCode::SchemaViolation, "age must be [low, high]");
            r.age_low = age[0].get<int>();
            r.age_high = age[1].get<int>();
            r.gender_label = v.at("gender").get<std::string>();
            if (auto conf = v.find("conf"); conf != v.end()) {
                r.age_confidence = conf->value("age", 0.0);
                r.gender_confidence = conf->value("gender", 0.0);
            }
            out.emplace(hash, std::move(r));
        }
    } catch (const json::exception& e) {
        fail(ErrorCode::SchemaViolation, std::string("bad GAD fixture: ") + e.what());
    }
    return std::make_shared<FixtureVisionAdapter>(std::move(out));
}

std::shared_ptr<FixtureVisionAdapter> FixtureVisionAdapter::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorCode::IoError, "cannot read GAD fixture " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

GadResult FixtureVisionAdapter::gender_age(std::string_view image_bytes) {
    auto it = by_hash_.find(codec::sha256_hex(image_bytes));
    if (it == by_hash_.end()) fail(ErrorCode::AdapterError, "no recorded GAD result for this image");
    return it->second;
}

GadResult analyze_gad(const EntityNode& image_node, std::string_view image_bytes, VisionAdapter* adapter) {
    if (image_node.kind != EntityKind::ImageFile) {
        fail(ErrorCode::KindMismatch, "GAD needs an ImageFile node, got " + std::string(to_string(image_node.kind)));
    }
    if (!adapter || !adapter->capabilities().contains(VisionCapability::Gad)) {
        fail(ErrorCode::AdapterUnavailable, "no vision adapter with gender/age capability");
    }
    GadResult r;
    try {
        r = adapter->gender_age(image_bytes);
    } catch (const Error& e) {
        if (e.code() == ErrorCode::AdapterError) throw;
        fail(ErrorCode::AdapterError, e.message());
    } catch (const std::exception& e) {
        fail(ErrorCode::AdapterError, e.what());
    }
    auto in_unit = [](double c) { return c >= 0.0 && c <= 1.0; };
    if (r.age_low < 0 || r.age_low > r.age_high || !in_unit(r.age_confidence) || !in_unit(r.gender_confidence) ||
        r.gender_label.empty()) {
        fail(ErrorCode::AdapterError, "adapter returned an invalid GAD result");
    }
    return r;
}

std::pair<std::string, std::string> gad_attribute_values(const GadResult& result) {
    return {"age:" + std::to_string(result.age_low) + "-" + std::to_string(result.age_high),
            "gender:" + result.gender_label};
}

}  // namespace idrecon::media
