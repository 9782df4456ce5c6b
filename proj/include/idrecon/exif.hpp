// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 idrecon contributors

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

// EXIF metadata from JPEG streams (APP1 "Exif" segment, TIFF structure, both byte orders).
namespace idrecon::media {

struct GeoPoint {
    double latitude = 0.0;
    double longitude = 0.0;

    /// "48.1372222,11.5755556"
    [[nodiscard]] std::string to_string() const;
};

struct Rational {
    std::uint32_t numerator = 0;
    std::uint32_t denominator = 1;
};

struct ExifDateTime {
    int year = 0;
    int month = 0;
    int day = 0;
    int hour = 0;
    int minute = 0;
    int second = 0;

    /// ISO-8601 without zone: "2021-09-26T18:00:00".
    [[nodiscard]] std::string to_string() const;
    friend bool operator==(const ExifDateTime&, const ExifDateTime&) = default;
};

/// deg + min/60 + sec/3600 evaluated exactly, rounded half away from zero to 1e-7.
/// Throws CorruptExif on a zero denominator.
double dms_to_decimal(const std::array<Rational, 3>& dms, bool negative);

/// Absent when the image has no EXIF block, no GPS IFD, or no latitude/longitude.
/// Throws NotJpeg or CorruptExif. Never reads outside the APP1 segment.
std::optional<GeoPoint> extract_exif_gps(std::string_view jpeg);

/// DateTimeOriginal (0x9003). Throws NotJpeg, CorruptExif or MalformedDate.
std::optional<ExifDateTime> extract_exif_timestamp(std::string_view jpeg);

/// Parses "YYYY:MM:DD HH:MM:SS". Throws MalformedDate.
ExifDateTime parse_exif_datetime(std::string_view text);

}  // namespace idrecon::media
