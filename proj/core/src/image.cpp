// Copyright 2026 the inq authors
// SPDX-License-Identifier: Apache-2.0

#include "inq/image.hpp"

#include <cstring>

namespace inq {

ImageU8 ImageU8::make(int w, int h, int ch, uint8_t fill) {
    ImageU8 img;
    img.width = w;
    img.height = h;
    img.channels = ch;
    img.data.assign(size_t(w) * h * ch, fill);
    return img;
}

ImageU8 crop(const ImageU8& src, const Bbox& box) {
    ImageU8 out = ImageU8::make(box.width(), box.height(), src.channels);
    size_t row_bytes = size_t(box.width()) * src.channels;
    for (int y = 0; y < box.height(); ++y) {
        const uint8_t* s = &src.data[(size_t(box.y0 + y) * src.width + box.x0) * src.channels];
        std::memcpy(&out.data[size_t(y) * row_bytes], s, row_bytes);
    }
    return out;
}

void blit(ImageU8& dst, const ImageU8& src, int x, int y) {
    size_t row_bytes = size_t(src.width) * src.channels;
    for (int r = 0; r < src.height; ++r) {
        uint8_t* d = &dst.data[(size_t(y + r) * dst.width + x) * dst.channels];
        std::memcpy(d, &src.data[size_t(r) * row_bytes], row_bytes);
    }
}

void composite_over(ImageU8& base, const ImageU8& tile, int x, int y) {
    for (int r = 0; r < tile.height; ++r) {
        for (int c = 0; c < tile.width; ++c) {
            int a = tile.at(c, r, 3);
            if (a == 0) continue;
            for (int ch = 0; ch < 3; ++ch) {
                int fg = tile.at(c, r, ch);
                int bg = base.at(x + c, y + r, ch);
                base.at(x + c, y + r, ch) = uint8_t((fg * a + bg * (255 - a) + 127) / 255);
            }
        }
    }
}

bool region_equals(const ImageU8& img, const Bbox& box, const ImageU8& patch) {
    if (patch.width != box.width() || patch.height != box.height() ||
        patch.channels != img.channels)
        return false;
    size_t row_bytes = size_t(patch.width) * patch.channels;
    for (int y = 0; y < patch.height; ++y) {
        const uint8_t* a = &img.data[(size_t(box.y0 + y) * img.width + box.x0) * img.channels];
        if (std::memcmp(a, &patch.data[size_t(y) * row_bytes], row_bytes) != 0) return false;
    }
    return true;
}

}  // namespace inq
