// Copyright 2026 the inq authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

#include "inq/image.hpp"
#include "inq/types.hpp"

namespace inq {

// Joins a white question tile to the scene at one of four positions. The
// shared axis is width for top/bottom, height for left/right. Without
// resizing the smaller image is centered and padded with pure white along
// the shared axis (odd padding puts the extra pixel bottom/right); with
// resizing the smaller image is scaled bilinearly to match. question_bbox is
// the tile's own rectangle in output coordinates, excluding padding.
CompositeArtifact compose_concat(const ImageU8& scene, const SampleRecord& record,
                                 ConcatPosition position, bool resize,
                                 int tile_side = 224, const std::string& font_path = {});

}  // namespace inq
