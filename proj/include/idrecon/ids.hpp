// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 idrecon contributors

#pragma once

#include <compare>
#include <functional>
#include <string>
#include <utility>

namespace idrecon {

/// Opaque string identifier tagged by what it identifies.
template <class Tag>
class Id {
  public:
    Id() = default;
    explicit Id(std::string value) : value_(std::move(value)) {}

    [[nodiscard]] const std::string& str() const noexcept { return value_; }
    [[nodiscard]] bool empty() const noexcept { return value_.empty(); }

    friend bool operator==(const Id&, const Id&) = default;

    /// Shorter ids sort first, so generated ids ("n2" < "n10") order by creation.
    friend std::strong_ordering operator<=>(const Id& a, const Id& b) {
        if (auto c = a.value_.size() <=> b.value_.size(); c != 0) return c;
        return a.value_.compare(b.value_) <=> 0;
    }

  private:
    std::string value_;
};

struct NodeTag;
struct EdgeTag;
struct JobTag;
using NodeId = Id<NodeTag>;
using EdgeId = Id<EdgeTag>;
using JobId = Id<JobTag>;

}  // namespace idrecon

template <class Tag>
struct std::hash<idrecon::Id<Tag>> {
    std::size_t operator()(const idrecon::Id<Tag>& id) const noexcept { return std::hash<std::string>{}(id.str()); }
};
