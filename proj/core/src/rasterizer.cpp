// Copyright 2026 the inq authors
// SPDX-License-Identifier: Apache-2.0

#include "inq/rasterizer.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <optional>

#include <opencv2/core.hpp>
#include <opencv2/freetype.hpp>
#include <opencv2/imgproc.hpp>

#include "inq/fontface.hpp"
#include "inq/textutil.hpp"

namespace inq {

namespace {

constexpr int kMargin = 2;
constexpr int kMinFontPx = 6;

struct Face {
    cv::Ptr<cv::freetype::FreeType2> ft;
    std::unique_ptr<FontCoverage> coverage;
    std::mutex mu;  // FreeType faces are not safe for concurrent use
};

Face& get_face(const std::string& path) {
    static std::mutex registry_mu;
    static std::map<std::string, std::unique_ptr<Face>> faces;
    std::lock_guard<std::mutex> lock(registry_mu);
    auto it = faces.find(path);
    if (it == faces.end()) {
        auto face = std::make_unique<Face>();
        face->ft = cv::freetype::createFreeType2();
        face->ft->loadFontData(path, 0);
        face->coverage = std::make_unique<FontCoverage>(path);
        it = faces.emplace(path, std::move(face)).first;
    }
    return *it->second;
}

// Ink bounding box and coverage of one rendered line. Coverage values are the
// anti-aliased glyph intensities in [0,255].
struct LineInk {
    int x0 = 0, y0 = 0, x1 = 0, y1 = 0;  // relative to the baseline origin
    cv::Mat coverage;                    // cropped to the ink box; CV_8UC1
    bool empty = true;
    int width() const { return x1 - x0 + 1; }
    int height() const { return y1 - y0 + 1; }
};

// Renders white-on-black and scans for the true ink box; glyph ink routinely
// escapes the box that getTextSize predicts, so placement trusts pixels only.
LineInk scan_line(Face& face, const std::string& line, int font_px, int max_width) {
    int pad = 2 * font_px + 8;
    int w = max_width + 2 * pad;
    int h = 4 * font_px + 16;
    cv::Mat scratch = cv::Mat::zeros(h, w, CV_8UC3);
    cv::Point org(pad, h / 2);
    face.ft->putText(scratch, line, org, font_px, cv::Scalar(255, 255, 255), -1, cv::LINE_AA,
                     true);

    LineInk ink;
    int min_x = w, max_x = -1, min_y = h, max_y = -1;
    for (int y = 0; y < h; ++y) {
        const uint8_t* row = scratch.ptr(y);
        for (int x = 0; x < w; ++x) {
            if (row[x * 3] != 0) {
                min_x = std::min(min_x, x);
                max_x = std::max(max_x, x);
                min_y = std::min(min_y, y);
                max_y = std::max(max_y, y);
            }
        }
    }
    if (max_x < 0) return ink;
    ink.empty = false;
    ink.x0 = min_x - org.x;
    ink.x1 = max_x - org.x;
    ink.y0 = min_y - org.y;
    ink.y1 = max_y - org.y;
    cv::Mat box = scratch(cv::Rect(min_x, min_y, max_x - min_x + 1, max_y - min_y + 1));
    cv::extractChannel(box, ink.coverage, 0);
    return ink;
}

int text_width(Face& face, const std::string& s, int font_px) {
    int baseline = 0;
    return face.ft->getTextSize(s, font_px, -1, &baseline).width;
}

// Greedy wrap at word boundaries; words wider than the line are hard-broken
// at character boundaries. Returns nothing when even one character is too
// wide at this size.
std::optional<std::vector<std::string>> wrap_words(Face& face,
                                                   const std::vector<std::string>& words,
                                                   int font_px, int avail) {
    std::vector<std::string> lines;
    std::string current;
    auto flush = [&]() {
        if (!current.empty()) {
            lines.push_back(current);
            current.clear();
        }
    };
    for (size_t wi = 0; wi < words.size(); ++wi) {
        std::string word = words[wi];
        std::string joined = current.empty() ? word : current + " " + word;
        if (text_width(face, joined, font_px) <= avail) {
            current = joined;
            continue;
        }
        flush();
        while (text_width(face, word, font_px) > avail) {
            std::vector<char32_t> cps = utf8_decode(word);
            size_t keep = cps.size() - 1;
            while (keep > 0 &&
                   text_width(face, utf8_encode({cps.begin(), cps.begin() + keep}), font_px) >
                       avail)
                --keep;
            if (keep == 0) return std::nullopt;
            lines.push_back(utf8_encode({cps.begin(), cps.begin() + keep}));
            word = utf8_encode({cps.begin() + keep, cps.end()});
        }
        current = word;
    }
    flush();
    return lines;
}

struct Layout {
    std::vector<std::string> lines;
    std::vector<LineInk> inks;
    int block_top = 0;     // min over lines of baseline_y + ink.y0
    int block_bottom = 0;  // max over lines of baseline_y + ink.y1
    int advance = 0;
};

std::optional<Layout> layout_text(Face& face, const std::vector<std::string>& words, int font_px,
                                  int avail) {
    auto lines = wrap_words(face, words, font_px, avail);
    if (!lines) return std::nullopt;

    Layout layout;
    layout.lines = std::move(*lines);
    layout.advance = std::max(1, int(std::lround(font_px * 1.2)));
    layout.block_top = 1 << 30;
    layout.block_bottom = -(1 << 30);
    for (size_t i = 0; i < layout.lines.size(); ++i) {
        LineInk ink = scan_line(face, layout.lines[i], font_px, avail);
        if (!ink.empty) {
            if (ink.width() > avail) return std::nullopt;
            int base_y = int(i) * layout.advance;
            layout.block_top = std::min(layout.block_top, base_y + ink.y0);
            layout.block_bottom = std::max(layout.block_bottom, base_y + ink.y1);
        }
        layout.inks.push_back(std::move(ink));
    }
    if (layout.block_bottom < layout.block_top) return std::nullopt;  // no ink at all
    if (layout.block_bottom - layout.block_top + 1 > avail) return std::nullopt;
    return layout;
}

uint8_t blend_channel(int fg, int bg, int cov, int bg_a, int out_a) {
    if (out_a == 0) return 0;
    double top = fg * (cov / 255.0) + bg * (bg_a / 255.0) * (1.0 - cov / 255.0);
    return uint8_t(std::lround(top * 255.0 / out_a));
}

}  // namespace

TextTile render_text_tile(const std::string& text, int side_px, Rgb fg, Rgba bg,
                          const std::string& font_path) {
    if (trim(text).empty()) throw ValidationError("cannot render empty text");
    if (side_px < 32) throw ValidationError("tile side must be at least 32 px");

    std::string resolved = resolve_font_path(font_path);
    Face& face = get_face(resolved);
    std::lock_guard<std::mutex> lock(face.mu);

    TextTile tile;
    tile.side_px = side_px;
    tile.text = text;

    // Substitute codepoints the font cannot draw before any measurement.
    std::vector<char32_t> cps = utf8_decode(text);
    for (char32_t& cp : cps) {
        if (cp == U'\t' || cp == U'\n' || cp == U'\r') cp = U' ';
        if (cp != U' ' && !face.coverage->has_glyph(cp)) {
            char buf[16];
            std::snprintf(buf, sizeof(buf), "U+%04X", uint32_t(cp));
            tile.warnings.push_back(std::string("missing glyph ") + buf + ", substituted '?'");
            cp = U'?';
        }
    }
    std::vector<std::string> words = split_words(utf8_encode(cps));

    int avail = side_px - 2 * kMargin;
    auto fits = [&](int px) { return layout_text(face, words, px, avail); };

    std::optional<Layout> best = fits(kMinFontPx);
    if (!best)
        throw ValidationError("text of " + std::to_string(cps.size()) +
                              " characters does not fit a " + std::to_string(side_px) +
                              " px tile at the minimum font size");
    int lo = kMinFontPx, hi = side_px;
    while (lo < hi) {
        int mid = lo + (hi - lo + 1) / 2;
        if (auto layout = fits(mid)) {
            best = std::move(layout);
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    tile.font_px = lo;
    tile.line_count = int(best->lines.size());

    tile.pixels = ImageU8::make(side_px, side_px, 4, 0);
    for (int y = 0; y < side_px; ++y) {
        for (int x = 0; x < side_px; ++x) {
            tile.pixels.at(x, y, 0) = bg.r;
            tile.pixels.at(x, y, 1) = bg.g;
            tile.pixels.at(x, y, 2) = bg.b;
            tile.pixels.at(x, y, 3) = bg.a;
        }
    }

    int block_h = best->block_bottom - best->block_top + 1;
    int y_shift = (side_px - block_h) / 2 - best->block_top;
    for (size_t i = 0; i < best->inks.size(); ++i) {
        const LineInk& ink = best->inks[i];
        if (ink.empty) continue;
        int base_y = int(i) * best->advance + y_shift;
        int x_shift = (side_px - ink.width()) / 2 - ink.x0;
        for (int r = 0; r < ink.height(); ++r) {
            const uint8_t* cov_row = ink.coverage.ptr(r);
            int py = base_y + ink.y0 + r;
            for (int c = 0; c < ink.width(); ++c) {
                int cov = cov_row[c];
                if (cov == 0) continue;
                int px = x_shift + ink.x0 + c;
                int out_a = cov + bg.a * (255 - cov) / 255;
                tile.pixels.at(px, py, 0) = blend_channel(fg.r, bg.r, cov, bg.a, out_a);
                tile.pixels.at(px, py, 1) = blend_channel(fg.g, bg.g, cov, bg.a, out_a);
                tile.pixels.at(px, py, 2) = blend_channel(fg.b, bg.b, cov, bg.a, out_a);
                tile.pixels.at(px, py, 3) = uint8_t(out_a);
            }
        }
    }
    return tile;
}

}  // namespace inq
