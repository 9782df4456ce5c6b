// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 idrecon contributors

#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>

#include "idrecon/entity_graph.hpp"

namespace idrecon::media {

struct GadResult {
    int age_low = 0;
    int age_high = 0;
    std::string gender_label;
    double age_confidence = 0.0;
    double gender_confidence = 0.0;

    friend bool operator==(const GadResult&, const GadResult&) = default;
};

enum class VisionCapability { Gad, Faces, Labels };

/// Image-understanding backend boundary. Implementations must be safe to call concurrently.
class VisionAdapter {
  public:
    virtual ~VisionAdapter() = default;
    [[nodiscard]] virtual std::set<VisionCapability> capabilities() const = 0;
    /// Throws AdapterError on failure.
    virtual GadResult gender_age(std::string_view image_bytes) = 0;
};

/// Answers from a recorded mapping of SHA-256(image) -> result:
///   {"<hex>": {"age": [low, high], "gender": "male", "conf": {"age": 0.7, "gender": 0.9}}}
class FixtureVisionAdapter final : public VisionAdapter {
  public:
    explicit FixtureVisionAdapter(std::map<std::string, GadResult> by_hash);
    static std::shared_ptr<FixtureVisionAdapter> parse(std::string_view json);
    static std::shared_ptr<FixtureVisionAdapter> load(const std::string& path);

    [[nodiscard]] std::set<VisionCapability> capabilities() const override { return {VisionCapability::Gad}; }
    GadResult gender_age(std::string_view image_bytes) override;

  private:
    std::map<std::string, GadResult> by_hash_;
};

/// Checks the node kind and adapter capability, then validates the adapter's answer.
/// Throws KindMismatch, AdapterUnavailable or AdapterError.
GadResult analyze_gad(const EntityNode& image_node, std::string_view image_bytes, VisionAdapter* adapter);

/// The two Attribute values a GAD result commits as: "age:60-70", "gender:male".
std::pair<std::string, std::string> gad_attribute_values(const GadResult& result);

}  // namespace idrecon::media
