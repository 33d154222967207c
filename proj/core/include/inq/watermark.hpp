// Copyright 2026 the inq authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "inq/color.hpp"
#include "inq/image.hpp"
#include "inq/types.hpp"

namespace inq {

// A candidate watermark placement with its busyness sub-scores. Raw
// gradient/variance/contrast are kept for inspection; `score` is the
// weighted sum of their min-max normalized values across one image's
// candidate set (0.4 gradient, 0.4 variance, 0.2 contrast).
struct RegionCandidate {
    int x0 = 0;
    int y0 = 0;
    int side_px = 0;
    double gradient = 0.0;
    double variance = 0.0;
    double contrast = 0.0;
    double score = 0.0;
};

// Grid of square candidates: side = floor(min(H,W)/4), stride = side, final
// row/column clamped inside the image. Requires min(H,W) >= 64.
std::vector<RegionCandidate> enumerate_candidates(const ImageU8& scene);

// Least-busy candidate: minimal score, ties broken by smallest (y0, x0).
const RegionCandidate& select_region(const std::vector<RegionCandidate>& candidates);

// Complementary-hue color with saturation/value pushed to extremes, kept only
// if its contrast ratio against the region mean exceeds 4.5; otherwise black
// or white, whichever contrasts more (ties go to black).
WatermarkColor pick_color(const Hsv& region_mean_hsv, Rgb region_mean_rgb);

// The candidate color before the contrast check, exposed for rule tests.
Hsv complementary_candidate_hsv(const Hsv& region_mean_hsv);

// Full pipeline: enumerate -> select -> pick color -> render transparent tile
// at the region side -> alpha-composite at the region. Pixels outside the
// returned bbox are untouched scene pixels.
CompositeArtifact compose_watermark(const ImageU8& scene, const SampleRecord& record,
                                    const std::string& font_path = {});

}  // namespace inq
