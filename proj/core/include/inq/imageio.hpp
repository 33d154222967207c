// Copyright 2026 the inq authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "inq/image.hpp"

namespace inq {

// Reads PNG/JPEG into RGB. Throws IoError on missing or undecodable files.
ImageU8 load_image(const std::string& path);

void save_png(const std::string& path, const ImageU8& img);

// PNG bytes in memory, for HTTP endpoints.
std::vector<uint8_t> encode_png(const ImageU8& img);

// Bilinear resize to exactly (out_w, out_h).
ImageU8 resize_bilinear(const ImageU8& img, int out_w, int out_h);

}  // namespace inq
