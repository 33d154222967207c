// Copyright 2026 the inq authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace inq {

// Character coverage of a TrueType/OpenType font, read from its cmap table
// (formats 4 and 12). Used to detect codepoints the renderer would draw as
// .notdef boxes so they can be substituted before rasterization.
class FontCoverage {
public:
    explicit FontCoverage(const std::string& ttf_path);

    bool has_glyph(char32_t cp) const;

private:
    struct Range {
        uint32_t first;
        uint32_t last;
    };
    std::vector<Range> ranges_;  // sorted, non-overlapping
};

// Resolves the default font file: explicit override, then INQ_FONT, then the
// bundled DejaVuSans-Bold locations. Throws IoError when nothing resolves.
std::string resolve_font_path(const std::string& override_path = {});

}  // namespace inq
