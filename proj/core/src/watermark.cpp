// Copyright 2026 the inq authors
// SPDX-License-Identifier: Apache-2.0

#include "inq/watermark.hpp"

#include <algorithm>
#include <cmath>

#include "inq/rasterizer.hpp"

namespace inq {

namespace {

constexpr double kMichelsonEps = 1e-6;
constexpr double kWeightGradient = 0.4;
constexpr double kWeightVariance = 0.4;
constexpr double kWeightContrast = 0.2;
constexpr double kContrastThreshold = 4.5;

std::vector<double> gray_region(const ImageU8& img, int x0, int y0, int side) {
    std::vector<double> g(size_t(side) * side);
    for (int y = 0; y < side; ++y) {
        for (int x = 0; x < side; ++x) {
            g[size_t(y) * side + x] = 0.299 * img.at(x0 + x, y0 + y, 0) +
                                      0.587 * img.at(x0 + x, y0 + y, 1) +
                                      0.114 * img.at(x0 + x, y0 + y, 2);
        }
    }
    return g;
}

// Mean Sobel magnitude over interior pixels.
double mean_sobel(const std::vector<double>& g, int side) {
    double sum = 0.0;
    size_t n = 0;
    for (int y = 1; y < side - 1; ++y) {
        for (int x = 1; x < side - 1; ++x) {
            auto at = [&](int dx, int dy) { return g[size_t(y + dy) * side + (x + dx)]; };
            double gx = -at(-1, -1) - 2 * at(-1, 0) - at(-1, 1) + at(1, -1) + 2 * at(1, 0) +
                        at(1, 1);
            double gy = -at(-1, -1) - 2 * at(0, -1) - at(1, -1) + at(-1, 1) + 2 * at(0, 1) +
                        at(1, 1);
            sum += std::sqrt(gx * gx + gy * gy);
            ++n;
        }
    }
    return n == 0 ? 0.0 : sum / double(n);
}

double pixel_variance(const std::vector<double>& g) {
    double mean = 0.0;
    for (double v : g) mean += v;
    mean /= double(g.size());
    double var = 0.0;
    for (double v : g) var += (v - mean) * (v - mean);
    return var / double(g.size());
}

double michelson_contrast(const std::vector<double>& g) {
    auto [mn, mx] = std::minmax_element(g.begin(), g.end());
    return (*mx - *mn) / (*mx + *mn + kMichelsonEps);
}

// Positions along one axis: stride = side, final position clamped inside.
std::vector<int> grid_positions(int extent, int side) {
    std::vector<int> pos;
    for (int p = 0; p + side <= extent; p += side) pos.push_back(p);
    if (pos.empty() || pos.back() + side < extent) pos.push_back(extent - side);
    return pos;
}

// Min-max across candidates; an all-equal column normalizes to 0.
std::vector<double> normalize_column(const std::vector<RegionCandidate>& candidates,
                                     double RegionCandidate::*field) {
    double mn = candidates[0].*field, mx = candidates[0].*field;
    for (const auto& c : candidates) {
        mn = std::min(mn, c.*field);
        mx = std::max(mx, c.*field);
    }
    std::vector<double> out(candidates.size(), 0.0);
    if (mx > mn) {
        for (size_t i = 0; i < candidates.size(); ++i)
            out[i] = (candidates[i].*field - mn) / (mx - mn);
    }
    return out;
}

void normalize_scores(std::vector<RegionCandidate>& candidates) {
    std::vector<double> gn = normalize_column(candidates, &RegionCandidate::gradient);
    std::vector<double> vn = normalize_column(candidates, &RegionCandidate::variance);
    std::vector<double> cn = normalize_column(candidates, &RegionCandidate::contrast);
    for (size_t i = 0; i < candidates.size(); ++i) {
        candidates[i].score =
            kWeightGradient * gn[i] + kWeightVariance * vn[i] + kWeightContrast * cn[i];
    }
}

Rgb region_mean_rgb(const ImageU8& img, int x0, int y0, int side) {
    double r = 0, g = 0, b = 0;
    for (int y = 0; y < side; ++y) {
        for (int x = 0; x < side; ++x) {
            r += img.at(x0 + x, y0 + y, 0);
            g += img.at(x0 + x, y0 + y, 1);
            b += img.at(x0 + x, y0 + y, 2);
        }
    }
    double n = double(side) * side;
    return {uint8_t(std::lround(r / n)), uint8_t(std::lround(g / n)),
            uint8_t(std::lround(b / n))};
}

}  // namespace

std::vector<RegionCandidate> enumerate_candidates(const ImageU8& scene) {
    int min_dim = std::min(scene.width, scene.height);
    if (min_dim < 64)
        throw ValidationError("scene must be at least 64 px on each side, got " +
                              std::to_string(scene.width) + "x" + std::to_string(scene.height));
    int side = min_dim / 4;

    std::vector<RegionCandidate> candidates;
    for (int y : grid_positions(scene.height, side)) {
        for (int x : grid_positions(scene.width, side)) {
            RegionCandidate c;
            c.x0 = x;
            c.y0 = y;
            c.side_px = side;
            std::vector<double> g = gray_region(scene, x, y, side);
            c.gradient = mean_sobel(g, side);
            c.variance = pixel_variance(g);
            c.contrast = michelson_contrast(g);
            candidates.push_back(c);
        }
    }
    normalize_scores(candidates);
    return candidates;
}

const RegionCandidate& select_region(const std::vector<RegionCandidate>& candidates) {
    if (candidates.empty()) throw ValidationError("no region candidates");
    const RegionCandidate* best = &candidates[0];
    for (const auto& c : candidates) {
        if (c.score < best->score ||
            (c.score == best->score &&
             std::pair(c.y0, c.x0) < std::pair(best->y0, best->x0))) {
            best = &c;
        }
    }
    return *best;
}

Hsv complementary_candidate_hsv(const Hsv& mean) {
    Hsv out;
    out.h = std::fmod(mean.h + 180.0, 360.0);
    out.s = mean.s > 200.0 ? std::round(0.8 * mean.s) : 255.0;
    out.v = mean.v > 127.0 ? 0.0 : 255.0;
    return out;
}

WatermarkColor pick_color(const Hsv& region_mean_hsv, Rgb region_mean_rgb) {
    Rgb candidate = hsv_to_rgb(complementary_candidate_hsv(region_mean_hsv));
    WatermarkColor out;
    out.contrast_ratio = wcag_contrast(candidate, region_mean_rgb);
    if (out.contrast_ratio > kContrastThreshold) {
        out.rgb = candidate;
        out.provenance = ColorProvenance::computed;
        return out;
    }
    double black = wcag_contrast({0, 0, 0}, region_mean_rgb);
    double white = wcag_contrast({255, 255, 255}, region_mean_rgb);
    if (black >= white) {
        out.rgb = {0, 0, 0};
        out.provenance = ColorProvenance::black_fallback;
        out.contrast_ratio = black;
    } else {
        out.rgb = {255, 255, 255};
        out.provenance = ColorProvenance::white_fallback;
        out.contrast_ratio = white;
    }
    return out;
}

CompositeArtifact compose_watermark(const ImageU8& scene, const SampleRecord& record,
                                    const std::string& font_path) {
    if (record.excluded)
        throw ValidationError("record \"" + record.id + "\" is excluded from rendering");
    auto candidates = enumerate_candidates(scene);
    const RegionCandidate& region = select_region(candidates);

    Rgb mean_rgb = region_mean_rgb(scene, region.x0, region.y0, region.side_px);
    WatermarkColor color = pick_color(rgb_to_hsv(mean_rgb), mean_rgb);

    TextTile tile =
        render_text_tile(record.question, region.side_px, color.rgb, {0, 0, 0, 0}, font_path);

    ImageU8 base = scene;
    composite_over(base, tile.pixels, region.x0, region.y0);

    CompositeArtifact art;
    art.width = scene.width;
    art.height = scene.height;
    art.pixels = std::move(base.data);
    art.method = RenderMethod::watermark;
    art.color = color;
    art.source_id = record.id;
    art.question_bbox = {region.x0, region.y0, region.x0 + region.side_px,
                         region.y0 + region.side_px};
    return art;
}

}  // namespace inq
