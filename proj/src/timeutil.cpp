// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 idrecon contributors

#include "idrecon/timeutil.hpp"

#include <atomic>
#include <cctype>
#include <cstdio>
#include <memory>

#include "idrecon/error.hpp"

namespace idrecon {

Timestamp now_utc() {
    return std::chrono::time_point_cast<std::chrono::microseconds>(std::chrono::system_clock::now());
}

std::string format_rfc3339(Timestamp t) {
    using namespace std::chrono;
    auto day = floor<days>(t);
    year_month_day ymd{day};
    hh_mm_ss<microseconds> tod{t - day};
    char buf[40];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02d.%06lldZ", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                  static_cast<int>(tod.hours().count()), static_cast<int>(tod.minutes().count()),
                  static_cast<int>(tod.seconds().count()), static_cast<long long>(tod.subseconds().count()));
    return buf;
}

namespace {

int digits(std::string_view text, std::size_t pos, std::size_t count) {
    if (pos + count > text.size()) {
        fail(ErrorCode::SchemaViolation, "truncated timestamp '" + std::string(text) + "'");
    }
    int value = 0;
    for (std::size_t i = pos; i < pos + count; ++i) {
        if (!std::isdigit(static_cast<unsigned char>(text[i]))) {
            fail(ErrorCode::SchemaViolation, "bad timestamp '" + std::string(text) + "'");
        }
        value = value * 10 + (text[i] - '0');
    }
    return value;
}

void expect(std::string_view text, std::size_t pos, char c) {
    if (pos >= text.size() || (text[pos] != c && !(c == 'T' && text[pos] == 't'))) {
        fail(ErrorCode::SchemaViolation, "bad timestamp '" + std::string(text) + "'");
    }
}

}  // namespace

Timestamp parse_rfc3339(std::string_view text) {
    using namespace std::chrono;
    int y = digits(text, 0, 4);
    expect(text, 4, '-');
    int mo = digits(text, 5, 2);
    expect(text, 7, '-');
    int d = digits(text, 8, 2);
    expect(text, 10, 'T');
    int h = digits(text, 11, 2);
    expect(text, 13, ':');
    int mi = digits(text, 14, 2);
    expect(text, 16, ':');
    int s = digits(text, 17, 2);
    std::size_t pos = 19;
    long long micros = 0;
    if (pos < text.size() && text[pos] == '.') {
        ++pos;
        int n = 0;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            if (n < 6) micros = micros * 10 + (text[pos] - '0');
            ++n;
            ++pos;
        }
        if (n == 0) fail(ErrorCode::SchemaViolation, "bad timestamp fraction '" + std::string(text) + "'");
        for (int i = n; i < 6; ++i) micros *= 10;
    }
    minutes offset{0};
    if (pos < text.size() && (text[pos] == 'Z' || text[pos] == 'z')) {
        ++pos;
    } else if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
        int sign = text[pos] == '-' ? -1 : 1;
        int oh = digits(text, pos + 1, 2);
        expect(text, pos + 3, ':');
        int om = digits(text, pos + 4, 2);
        offset = minutes(sign * (oh * 60 + om));
        pos += 6;
    } else {
        fail(ErrorCode::SchemaViolation, "timestamp without offset '" + std::string(text) + "'");
    }
    if (pos != text.size()) fail(ErrorCode::SchemaViolation, "trailing data in timestamp '" + std::string(text) + "'");

    year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)}, day{static_cast<unsigned>(d)}};
    if (!ymd.ok() || h > 23 || mi > 59 || s > 60) {
        fail(ErrorCode::SchemaViolation, "out-of-range timestamp '" + std::string(text) + "'");
    }
    Timestamp t = sys_days{ymd} + hours{h} + minutes{mi} + seconds{s} + microseconds{micros};
    return t - offset;
}

Clock stepping_clock(Timestamp start, std::chrono::microseconds step) {
    auto counter = std::make_shared<std::atomic<long long>>(0);
    return [start, step, counter] { return start + step * counter->fetch_add(1); };
}

}  // namespace idrecon
