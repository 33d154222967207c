// Copyright 2026 the inq authors
// SPDX-License-Identifier: Apache-2.0

#include "inq/color.hpp"

#include <algorithm>
#include <cmath>

namespace inq {

Hsv rgb_to_hsv(Rgb c) {
    double r = c.r, g = c.g, b = c.b;
    double maxc = std::max({r, g, b});
    double minc = std::min({r, g, b});
    double delta = maxc - minc;
    Hsv out;
    out.v = maxc;
    out.s = maxc == 0.0 ? 0.0 : delta / maxc * 255.0;
    if (delta == 0.0) {
        out.h = 0.0;
    } else if (maxc == r) {
        out.h = 60.0 * std::fmod((g - b) / delta, 6.0);
    } else if (maxc == g) {
        out.h = 60.0 * ((b - r) / delta + 2.0);
    } else {
        out.h = 60.0 * ((r - g) / delta + 4.0);
    }
    if (out.h < 0.0) out.h += 360.0;
    return out;
}

Rgb hsv_to_rgb(const Hsv& in) {
    double h = std::fmod(in.h, 360.0);
    if (h < 0.0) h += 360.0;
    double s = std::clamp(in.s, 0.0, 255.0) / 255.0;
    double v = std::clamp(in.v, 0.0, 255.0) / 255.0;
    double c = v * s;
    double x = c * (1.0 - std::fabs(std::fmod(h / 60.0, 2.0) - 1.0));
    double m = v - c;
    double r = 0, g = 0, b = 0;
    if (h < 60)       { r = c; g = x; }
    else if (h < 120) { r = x; g = c; }
    else if (h < 180) { g = c; b = x; }
    else if (h < 240) { g = x; b = c; }
    else if (h < 300) { r = x; b = c; }
    else              { r = c; b = x; }
    auto to8 = [&](double f) { return uint8_t(std::lround((f + m) * 255.0)); };
    return {to8(r), to8(g), to8(b)};
}

namespace {

double linearize(uint8_t v) {
    double c = v / 255.0;
    return c <= 0.03928 ? c / 12.92 : std::pow((c + 0.055) / 1.055, 2.4);
}

}  // namespace

double relative_luminance(Rgb c) {
    return 0.2126 * linearize(c.r) + 0.7152 * linearize(c.g) + 0.0722 * linearize(c.b);
}

double wcag_contrast(Rgb a, Rgb b) {
    double la = relative_luminance(a);
    double lb = relative_luminance(b);
    double hi = std::max(la, lb);
    double lo = std::min(la, lb);
    return (hi + 0.05) / (lo + 0.05);
}

}  // namespace inq
