// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 idrecon contributors

#include "idrecon/exif.hpp"

#include <chrono>
#include <cstdio>
#include <set>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "idrecon/error.hpp"

namespace idrecon::media {
namespace {

constexpr std::uint16_t kTagGpsIfd = 0x8825;
constexpr std::uint16_t kTagExifIfd = 0x8769;
constexpr std::uint16_t kTagDateTimeOriginal = 0x9003;
constexpr std::uint16_t kTagGpsLatitudeRef = 1;
constexpr std::uint16_t kTagGpsLatitude = 2;
constexpr std::uint16_t kTagGpsLongitudeRef = 3;
constexpr std::uint16_t kTagGpsLongitude = 4;

constexpr std::uint16_t kTypeAscii = 2;
constexpr std::uint16_t kTypeShort = 3;
constexpr std::uint16_t kTypeLong = 4;
constexpr std::uint16_t kTypeRational = 5;

[[noreturn]] void corrupt(const std::string& why) { fail(ErrorCode::CorruptExif, why); }

struct IfdEntry {
    std::uint16_t tag = 0;
    std::uint16_t type = 0;
    std::uint32_t count = 0;
    std::uint32_t value_offset = 0;  // offset of the 4-byte value field within the TIFF block
};

/// Bounds-checked view over the TIFF block inside one APP1 segment.
class TiffReader {
  public:
    explicit TiffReader(std::string_view tiff) : data_(tiff) {
        if (data_.size() < 8) corrupt("TIFF header truncated");
        if (data_[0] == 'I' && data_[1] == 'I') {
            little_ = true;
        } else if (data_[0] == 'M' && data_[1] == 'M') {
            little_ = false;
        } else {
            corrupt("unknown TIFF byte order");
        }
        if (u16(2) != 42) corrupt("bad TIFF magic");
    }

    [[nodiscard]] std::uint32_t first_ifd() const { return u32(4); }

    [[nodiscard]] std::vector<IfdEntry> read_ifd(std::uint32_t offset) const {
        std::uint16_t count = u16(offset);
        std::vector<IfdEntry> entries;
        entries.reserve(count);
        for (std::uint32_t i = 0; i < count; ++i) {
            std::uint64_t base = std::uint64_t{offset} + 2 + 12ull * i;
            if (base + 12 > data_.size()) corrupt("IFD entry past end of segment");
            auto b = static_cast<std::uint32_t>(base);
            entries.push_back(IfdEntry{u16(b), u16(b + 2), u32(b + 4), b + 8});
        }
        return entries;
    }

    [[nodiscard]] std::uint32_t pointer_value(const IfdEntry& e) const {
        if (e.count != 1) corrupt("IFD pointer with count != 1");
        if (e.type == kTypeLong) return u32(e.value_offset);
        if (e.type == kTypeShort) return u16(e.value_offset);
        corrupt("IFD pointer of unexpected type");
    }

    [[nodiscard]] std::string ascii(const IfdEntry& e) const {
        if (e.type != kTypeAscii) corrupt("expected ASCII field");
        std::uint32_t at = e.count <= 4 ? e.value_offset : u32(e.value_offset);
        check(at, e.count);
        std::string out(data_.substr(at, e.count));
        if (auto nul = out.find('\0'); nul != std::string::npos) out.resize(nul);
        return out;
    }

    [[nodiscard]] std::array<Rational, 3> rationals3(const IfdEntry& e) const {
        if (e.type != kTypeRational || e.count != 3) corrupt("expected three RATIONAL values");
        std::uint32_t at = u32(e.value_offset);
        check(at, 24);
        std::array<Rational, 3> out{};
        for (std::uint32_t i = 0; i < 3; ++i) out[i] = Rational{u32(at + 8 * i), u32(at + 8 * i + 4)};
        return out;
    }

  private:
    void check(std::uint64_t at, std::uint64_t len) const {
        if (at + len > data_.size()) corrupt("offset past end of EXIF segment");
    }
    [[nodiscard]] std::uint8_t byte(std::uint32_t at) const { return static_cast<std::uint8_t>(data_[at]); }
    [[nodiscard]] std::uint16_t u16(std::uint32_t at) const {
        check(at, 2);
        return little_ ? static_cast<std::uint16_t>(byte(at) | (byte(at + 1) << 8))
                       : static_cast<std::uint16_t>((byte(at) << 8) | byte(at + 1));
    }
    [[nodiscard]] std::uint32_t u32(std::uint32_t at) const {
        check(at, 4);
        std::uint32_t b0 = byte(at), b1 = byte(at + 1), b2 = byte(at + 2), b3 = byte(at + 3);
        return little_ ? (b0 | (b1 << 8) | (b2 << 16) | (b3 << 24)) : ((b0 << 24) | (b1 << 16) | (b2 << 8) | b3);
    }

    std::string_view data_;
    bool little_ = true;
};

/// Returns the TIFF block of the first APP1 Exif segment, if any.
std::optional<std::string_view> find_exif_block(std::string_view jpeg) {
    auto at = [&](std::size_t i) { return static_cast<std::uint8_t>(jpeg[i]); };
    if (jpeg.size() < 2 || at(0) != 0xFF || at(1) != 0xD8) fail(ErrorCode::NotJpeg, "missing SOI marker");
    std::size_t pos = 2;
    for (;;) {
        if (pos >= jpeg.size()) return std::nullopt;
        if (at(pos) != 0xFF) return std::nullopt;  // entropy data or garbage: no more headers
        while (pos < jpeg.size() && at(pos) == 0xFF) ++pos;
        if (pos >= jpeg.size()) return std::nullopt;
        std::uint8_t marker = at(pos++);
        if (marker == 0xD9 || marker == 0xDA) return std::nullopt;
        if (marker == 0x01 || (marker >= 0xD0 && marker <= 0xD7)) continue;
        if (pos + 2 > jpeg.size()) {
            if (marker == 0xE1) corrupt("APP1 length truncated");
            return std::nullopt;
        }
        std::size_t length = (std::size_t{at(pos)} << 8) | at(pos + 1);
        if (length < 2) corrupt("segment length below 2");
        if (pos + length > jpeg.size()) {
            if (marker == 0xE1) corrupt("APP1 segment truncated");
            return std::nullopt;
        }
        std::string_view payload = jpeg.substr(pos + 2, length - 2);
        if (marker == 0xE1 && payload.size() >= 6 && payload.substr(0, 6) == std::string_view("Exif\0\0", 6)) {
            return payload.substr(6);
        }
        pos += length;
    }
}

struct ExifIndex {
    std::optional<std::vector<IfdEntry>> gps;
    std::optional<std::vector<IfdEntry>> exif;
};

ExifIndex index_ifds(const TiffReader& tiff) {
    std::set<std::uint32_t> visited;
    auto load = [&](std::uint32_t offset) {
        if (!visited.insert(offset).second) corrupt("IFD loop");
        return tiff.read_ifd(offset);
    };
    ExifIndex index;
    for (const auto& e : load(tiff.first_ifd())) {
        if (e.tag == kTagGpsIfd) index.gps = load(tiff.pointer_value(e));
        if (e.tag == kTagExifIfd) index.exif = load(tiff.pointer_value(e));
    }
    return index;
}

const IfdEntry* find_tag(const std::vector<IfdEntry>& ifd, std::uint16_t tag) {
    for (const auto& e : ifd) {
        if (e.tag == tag) return &e;
    }
    return nullptr;
}

bool negative_ref(const TiffReader& tiff, const IfdEntry* ref, char negative, char positive) {
    if (!ref) return false;
    std::string r = tiff.ascii(*ref);
    if (r.empty() || r[0] == positive) return false;
    if (r[0] == negative) return true;
    corrupt("bad GPS reference '" + r + "'");
}

int field(std::string_view text, std::size_t at, std::size_t len) {
    int v = 0;
    for (std::size_t i = at; i < at + len; ++i) {
        if (text[i] < '0' || text[i] > '9') fail(ErrorCode::MalformedDate, "bad date '" + std::string(text) + "'");
        v = v * 10 + (text[i] - '0');
    }
    return v;
}

}  // namespace

std::string GeoPoint::to_string() const {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.7f,%.7f", latitude, longitude);
    return buf;
}

std::string ExifDateTime::to_string() const {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02d:%02d", year, month, day, hour, minute, second);
    return buf;
}

double dms_to_decimal(const std::array<Rational, 3>& dms, bool negative) {
    using boost::multiprecision::cpp_int;
    for (const auto& r : dms) {
        if (r.denominator == 0) corrupt("zero denominator in GPS coordinate");
    }
    cpp_int d_n = dms[0].numerator, d_d = dms[0].denominator;
    cpp_int m_n = dms[1].numerator, m_d = dms[1].denominator;
    cpp_int s_n = dms[2].numerator, s_d = dms[2].denominator;
    cpp_int den = 3600 * d_d * m_d * s_d;
    cpp_int num = d_n * 3600 * m_d * s_d + m_n * 60 * d_d * s_d + s_n * d_d * m_d;
    cpp_int scaled = num * 10000000;
    cpp_int q = scaled / den;
    cpp_int rem = scaled % den;
    if (2 * rem >= den) ++q;
    if (q > cpp_int(1800000000)) corrupt("GPS coordinate out of range");
    double value = static_cast<double>(q.convert_to<long long>()) / 1e7;
    return negative ? -value : value;
}

std::optional<GeoPoint> extract_exif_gps(std::string_view jpeg) {
    auto block = find_exif_block(jpeg);
    if (!block) return std::nullopt;
    TiffReader tiff(*block);
    ExifIndex index = index_ifds(tiff);
    if (!index.gps) return std::nullopt;
    const IfdEntry* lat = find_tag(*index.gps, kTagGpsLatitude);
    const IfdEntry* lon = find_tag(*index.gps, kTagGpsLongitude);
    if (!lat || !lon) return std::nullopt;
    GeoPoint p;
    p.latitude = dms_to_decimal(tiff.rationals3(*lat), negative_ref(tiff, find_tag(*index.gps, kTagGpsLatitudeRef), 'S', 'N'));
    p.longitude = dms_to_decimal(tiff.rationals3(*lon), negative_ref(tiff, find_tag(*index.gps, kTagGpsLongitudeRef), 'W', 'E'));
    if (p.latitude < -90.0 || p.latitude > 90.0) corrupt("latitude out of range");
    if (p.longitude < -180.0 || p.longitude > 180.0) corrupt("longitude out of range");
    return p;
}

std::optional<ExifDateTime> extract_exif_timestamp(std::string_view jpeg) {
    auto block = find_exif_block(jpeg);
    if (!block) return std::nullopt;
    TiffReader tiff(*block);
    ExifIndex index = index_ifds(tiff);
    if (!index.exif) return std::nullopt;
    const IfdEntry* tag = find_tag(*index.exif, kTagDateTimeOriginal);
    if (!tag) return std::nullopt;
    return parse_exif_datetime(tiff.ascii(*tag));
}

ExifDateTime parse_exif_datetime(std::string_view text) {
    if (text.size() != 19 || text[4] != ':' || text[7] != ':' || text[10] != ' ' || text[13] != ':' ||
        text[16] != ':') {
        fail(ErrorCode::MalformedDate, "bad date '" + std::string(text) + "'");
    }
    ExifDateTime dt{field(text, 0, 4), field(text, 5, 2), field(text, 8, 2),
                    field(text, 11, 2), field(text, 14, 2), field(text, 17, 2)};
    if (dt.month < 1 || dt.month > 12 || dt.day < 1 || dt.day > 31 || dt.hour > 23 || dt.minute > 59 ||
        dt.second > 60) {
        fail(ErrorCode::MalformedDate, "out-of-range date '" + std::string(text) + "'");
    }
    using namespace std::chrono;
    if (!year_month_day{year{dt.year}, month{static_cast<unsigned>(dt.month)}, day{static_cast<unsigned>(dt.day)}}.ok()) {
        fail(ErrorCode::MalformedDate, "no such day '" + std::string(text) + "'");
    }
    return dt;
}

}  // namespace idrecon::media
