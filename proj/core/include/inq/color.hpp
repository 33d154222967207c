// Copyright 2026 the inq authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "inq/types.hpp"

namespace inq {

// Hue in degrees [0,360); saturation and value in [0,255].
struct Hsv {
    double h = 0.0;
    double s = 0.0;
    double v = 0.0;
};

Hsv rgb_to_hsv(Rgb c);
Rgb hsv_to_rgb(const Hsv& c);

// Relative luminance per the sRGB linearization used by the WCAG contrast
// formula. Range [0,1].
double relative_luminance(Rgb c);

// (L_max + 0.05) / (L_min + 0.05). Symmetric, range [1,21].
double wcag_contrast(Rgb a, Rgb b);

}  // namespace inq
