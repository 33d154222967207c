// Copyright 2026 the inq authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "inq/image.hpp"
#include "inq/types.hpp"

namespace inq {

// Square RGBA raster of wrapped question text.
struct TextTile {
    ImageU8 pixels;  // side_px x side_px x 4, straight alpha
    int side_px = 0;
    std::string text;
    int font_px = 0;
    int line_count = 0;
    // One entry per substituted codepoint missing from the font.
    std::vector<std::string> warnings;
};

// Renders `text` into a side_px square tile: greedy word wrap, binary search
// for the largest font size in [6, side_px] whose wrapped block fits, lines
// centered horizontally and the block centered vertically. A transparent
// `bg` (alpha 0) yields a tile for alpha compositing; an opaque one a
// standalone image. Codepoints the font lacks render as '?' with a warning.
// Throws ValidationError when the text cannot fit at the minimum size.
TextTile render_text_tile(const std::string& text, int side_px, Rgb fg, Rgba bg,
                          const std::string& font_path = {});

}  // namespace inq
