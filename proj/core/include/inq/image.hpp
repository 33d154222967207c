// Copyright 2026 the inq authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

#include "inq/types.hpp"

namespace inq {

// Row-major interleaved 8-bit image, 3 (RGB) or 4 (RGBA, straight alpha)
// channels.
struct ImageU8 {
    int width = 0;
    int height = 0;
    int channels = 3;
    std::vector<uint8_t> data;

    static ImageU8 make(int w, int h, int ch, uint8_t fill = 0);

    uint8_t& at(int x, int y, int c) { return data[(size_t(y) * width + x) * channels + c]; }
    uint8_t at(int x, int y, int c) const { return data[(size_t(y) * width + x) * channels + c]; }
    size_t size_bytes() const { return data.size(); }

    bool operator==(const ImageU8&) const = default;
};

ImageU8 crop(const ImageU8& src, const Bbox& box);

// Copies src into dst at (x, y); channel counts must match and src must fit.
void blit(ImageU8& dst, const ImageU8& src, int x, int y);

// Alpha-composites an RGBA tile over an RGB base at (x, y), in place.
void composite_over(ImageU8& base, const ImageU8& tile, int x, int y);

// True when the region of `img` at `box` equals `patch` byte for byte.
bool region_equals(const ImageU8& img, const Bbox& box, const ImageU8& patch);

}  // namespace inq
