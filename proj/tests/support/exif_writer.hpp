// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 idrecon contributors

// Builds minimal JPEG files with an EXIF APP1 segment, for tests only.

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>

namespace idrecon::testing {

struct ExifSpec {
    bool big_endian = false;
    std::optional<std::array<std::array<std::uint32_t, 2>, 3>> lat;  // (num, den) x 3
    char lat_ref = 'N';
    std::optional<std::array<std::array<std::uint32_t, 2>, 3>> lon;
    char lon_ref = 'E';
    bool omit_refs = false;
    std::optional<std::string> taken;  // "YYYY:MM:DD HH:MM:SS"
};

class TiffBuffer {
  public:
    explicit TiffBuffer(bool big) : big_(big) {}
    void u8(std::uint8_t v) { data_.push_back(static_cast<char>(v)); }
    void u16(std::uint16_t v) {
        if (big_) { u8(v >> 8); u8(v & 0xFF); }
        else { u8(v & 0xFF); u8(v >> 8); }
    }
    void u32(std::uint32_t v) {
        if (big_) { u16(v >> 16); u16(v & 0xFFFF); }
        else { u16(v & 0xFFFF); u16(v >> 16); }
    }
    void put_u32(std::size_t at, std::uint32_t v) {
        std::string saved = std::move(data_);
        data_.clear();
        u32(v);
        saved.replace(at, 4, data_);
        data_ = std::move(saved);
    }
    [[nodiscard]] std::size_t size() const { return data_.size(); }
    std::string& bytes() { return data_; }

  private:
    bool big_;
    std::string data_;
};

inline std::string make_exif_jpeg(const ExifSpec& spec) {
    TiffBuffer t(spec.big_endian);
    if (spec.big_endian) { t.u8('M'); t.u8('M'); } else { t.u8('I'); t.u8('I'); }
    t.u16(42);
    t.u32(8);

    bool gps = spec.lat || spec.lon;
    bool exif = spec.taken.has_value();
    std::uint16_t n0 = static_cast<std::uint16_t>((gps ? 1 : 0) + (exif ? 1 : 0));
    t.u16(n0);
    std::size_t exif_ptr = 0, gps_ptr = 0;
    if (exif) {  // entries sorted by tag
        t.u16(0x8769); t.u16(4); t.u32(1); exif_ptr = t.size(); t.u32(0);
    }
    if (gps) {
        t.u16(0x8825); t.u16(4); t.u32(1); gps_ptr = t.size(); t.u32(0);
    }
    t.u32(0);

    if (exif) {
        t.put_u32(exif_ptr, static_cast<std::uint32_t>(t.size()));
        t.u16(1);
        t.u16(0x9003); t.u16(2); t.u32(static_cast<std::uint32_t>(spec.taken->size() + 1));
        std::size_t str_ptr = t.size();
        t.u32(0);
        t.u32(0);
        t.put_u32(str_ptr, static_cast<std::uint32_t>(t.size()));
        for (char c : *spec.taken) t.u8(static_cast<std::uint8_t>(c));
        t.u8(0);
        if (t.size() % 2) t.u8(0);
    }
    if (gps) {
        t.put_u32(gps_ptr, static_cast<std::uint32_t>(t.size()));
        std::uint16_t count = 0;
        if (spec.lat) count += spec.omit_refs ? 1 : 2;
        if (spec.lon) count += spec.omit_refs ? 1 : 2;
        t.u16(count);
        std::size_t lat_ptr = 0, lon_ptr = 0;
        auto ref = [&](std::uint16_t tag, char c) {
            t.u16(tag); t.u16(2); t.u32(2); t.u8(static_cast<std::uint8_t>(c)); t.u8(0); t.u8(0); t.u8(0);
        };
        if (spec.lat) {
            if (!spec.omit_refs) ref(1, spec.lat_ref);
            t.u16(2); t.u16(5); t.u32(3); lat_ptr = t.size(); t.u32(0);
        }
        if (spec.lon) {
            if (!spec.omit_refs) ref(3, spec.lon_ref);
            t.u16(4); t.u16(5); t.u32(3); lon_ptr = t.size(); t.u32(0);
        }
        t.u32(0);
        auto rationals = [&](std::size_t ptr, const std::array<std::array<std::uint32_t, 2>, 3>& v) {
            t.put_u32(ptr, static_cast<std::uint32_t>(t.size()));
            for (const auto& r : v) { t.u32(r[0]); t.u32(r[1]); }
        };
        if (spec.lat) rationals(lat_ptr, *spec.lat);
        if (spec.lon) rationals(lon_ptr, *spec.lon);
    }

    std::string payload = std::string("Exif\0\0", 6) + t.bytes();
    std::size_t len = payload.size() + 2;
    std::string out;
    out += "\xFF\xD8";
    out += "\xFF\xE1";
    out += static_cast<char>((len >> 8) & 0xFF);
    out += static_cast<char>(len & 0xFF);
    out += payload;
    out += "\xFF\xD9";
    return out;
}

}  // namespace idrecon::testing
