// Copyright 2026 the inq authors
// SPDX-License-Identifier: Apache-2.0

#include "inq/fontface.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "inq/build_paths.hpp"
#include "inq/types.hpp"

namespace inq {

namespace {

struct Reader {
    const std::vector<uint8_t>& buf;

    uint16_t u16(size_t off) const {
        if (off + 2 > buf.size()) throw IoError("truncated font file");
        return uint16_t(buf[off]) << 8 | buf[off + 1];
    }
    uint32_t u32(size_t off) const {
        if (off + 4 > buf.size()) throw IoError("truncated font file");
        return uint32_t(buf[off]) << 24 | uint32_t(buf[off + 1]) << 16 |
               uint32_t(buf[off + 2]) << 8 | buf[off + 3];
    }
};

std::vector<uint8_t> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open font file: " + path);
    return std::vector<uint8_t>(std::istreambuf_iterator<char>(in),
                                std::istreambuf_iterator<char>());
}

void coalesce(std::vector<std::pair<uint32_t, uint32_t>>& cps,
              std::vector<std::pair<uint32_t, uint32_t>>& out) {
    std::sort(cps.begin(), cps.end());
    for (const auto& [first, last] : cps) {
        if (!out.empty() && first <= out.back().second + 1) {
            out.back().second = std::max(out.back().second, last);
        } else {
            out.emplace_back(first, last);
        }
    }
}

// Segment mapping to delta values; BMP only.
void parse_format4(const Reader& r, size_t off,
                   std::vector<std::pair<uint32_t, uint32_t>>& ranges) {
    uint16_t seg_count = r.u16(off + 6) / 2;
    size_t end_codes = off + 14;
    size_t start_codes = end_codes + size_t(seg_count) * 2 + 2;
    size_t id_deltas = start_codes + size_t(seg_count) * 2;
    size_t id_range_offsets = id_deltas + size_t(seg_count) * 2;

    std::vector<std::pair<uint32_t, uint32_t>> covered;
    for (uint16_t i = 0; i < seg_count; ++i) {
        uint32_t end = r.u16(end_codes + size_t(i) * 2);
        uint32_t start = r.u16(start_codes + size_t(i) * 2);
        uint16_t delta = r.u16(id_deltas + size_t(i) * 2);
        uint16_t range_off = r.u16(id_range_offsets + size_t(i) * 2);
        if (start == 0xFFFF && end == 0xFFFF) continue;
        if (range_off == 0) {
            // Delta segments map every codepoint; glyph 0 only if cp + delta == 0 mod 64k.
            for (uint32_t cp = start; cp <= end; ++cp) {
                if (uint16_t(cp + delta) != 0) covered.emplace_back(cp, cp);
            }
        } else {
            for (uint32_t cp = start; cp <= end; ++cp) {
                size_t glyph_addr =
                    id_range_offsets + size_t(i) * 2 + range_off + size_t(cp - start) * 2;
                uint16_t glyph = r.u16(glyph_addr);
                if (glyph != 0 && uint16_t(glyph + delta) != 0) covered.emplace_back(cp, cp);
            }
        }
    }
    coalesce(covered, ranges);
}

// Segmented coverage of the full Unicode range.
void parse_format12(const Reader& r, size_t off,
                    std::vector<std::pair<uint32_t, uint32_t>>& ranges) {
    uint32_t num_groups = r.u32(off + 12);
    std::vector<std::pair<uint32_t, uint32_t>> covered;
    for (uint32_t g = 0; g < num_groups; ++g) {
        size_t rec = off + 16 + size_t(g) * 12;
        covered.emplace_back(r.u32(rec), r.u32(rec + 4));
    }
    coalesce(covered, ranges);
}

}  // namespace

FontCoverage::FontCoverage(const std::string& ttf_path) {
    std::vector<uint8_t> buf = read_file(ttf_path);
    Reader r{buf};

    uint16_t num_tables = r.u16(4);
    size_t cmap_off = 0;
    for (uint16_t i = 0; i < num_tables; ++i) {
        size_t rec = 12 + size_t(i) * 16;
        if (r.u32(rec) == 0x636D6170) {  // 'cmap'
            cmap_off = r.u32(rec + 8);
            break;
        }
    }
    if (cmap_off == 0) throw IoError("font has no cmap table: " + ttf_path);

    uint16_t num_encodings = r.u16(cmap_off + 2);
    size_t best_subtable = 0;
    int best_rank = -1;
    for (uint16_t i = 0; i < num_encodings; ++i) {
        size_t rec = cmap_off + 4 + size_t(i) * 8;
        uint16_t platform = r.u16(rec);
        uint16_t encoding = r.u16(rec + 2);
        size_t sub = cmap_off + r.u32(rec + 4);
        uint16_t format = r.u16(sub);
        int rank = -1;
        if (platform == 3 && encoding == 10 && format == 12) rank = 3;
        else if (platform == 0 && format == 12) rank = 2;
        else if (platform == 3 && encoding == 1 && format == 4) rank = 1;
        else if (platform == 0 && format == 4) rank = 0;
        if (rank > best_rank) {
            best_rank = rank;
            best_subtable = sub;
        }
    }
    if (best_rank < 0) throw IoError("no usable cmap subtable (format 4 or 12): " + ttf_path);

    std::vector<std::pair<uint32_t, uint32_t>> ranges;
    if (r.u16(best_subtable) == 12) {
        parse_format12(r, best_subtable, ranges);
    } else {
        parse_format4(r, best_subtable, ranges);
    }
    ranges_.reserve(ranges.size());
    for (const auto& [first, last] : ranges) ranges_.push_back({first, last});
}

bool FontCoverage::has_glyph(char32_t cp) const {
    auto it = std::upper_bound(ranges_.begin(), ranges_.end(), uint32_t(cp),
                               [](uint32_t v, const Range& rg) { return v < rg.first; });
    if (it == ranges_.begin()) return false;
    --it;
    return uint32_t(cp) <= it->last;
}

std::string resolve_font_path(const std::string& override_path) {
    namespace fs = std::filesystem;
    // An explicitly requested font must exist; silently falling back would
    // hide typos in --font or INQ_FONT.
    if (!override_path.empty()) {
        if (!fs::exists(override_path)) throw IoError("font file not found: " + override_path);
        return override_path;
    }
    if (const char* env = std::getenv("INQ_FONT")) {
        if (!fs::exists(env)) throw IoError("font file not found (INQ_FONT): " + std::string(env));
        return env;
    }
    for (const std::string& c : {std::string(INQ_SOURCE_FONT_DIR) + "/DejaVuSans-Bold.ttf",
                                 std::string(INQ_INSTALL_FONT_DIR) + "/DejaVuSans-Bold.ttf",
                                 std::string("/usr/share/fonts/truetype/dejavu/DejaVuSans-Bold.ttf")}) {
        if (fs::exists(c)) return c;
    }
    throw IoError("no font file found; pass --font or set INQ_FONT");
}

}  // namespace inq
