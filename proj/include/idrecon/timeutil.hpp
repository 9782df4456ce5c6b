// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 idrecon contributors

#pragma once

#include <chrono>
#include <functional>
#include <string>
#include <string_view>

namespace idrecon {

using Timestamp = std::chrono::sys_time<std::chrono::microseconds>;
using Clock = std::function<Timestamp()>;

Timestamp now_utc();

/// "2026-10-15T08:30:00.000123Z". Always six fractional digits.
std::string format_rfc3339(Timestamp t);

/// Accepts "Z" or "+hh:mm" offsets and 0-9 fractional digits. Throws SchemaViolation.
Timestamp parse_rfc3339(std::string_view text);

/// Deterministic clock for tests and golden files: start, start+step, start+2*step, ...
Clock stepping_clock(Timestamp start, std::chrono::microseconds step = std::chrono::seconds(1));

}  // namespace idrecon
