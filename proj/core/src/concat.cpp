// Copyright 2026 the inq authors
// SPDX-License-Identifier: Apache-2.0

#include "inq/concat.hpp"

#include <cmath>

#include "inq/imageio.hpp"
#include "inq/rasterizer.hpp"

namespace inq {

namespace {

ImageU8 rgba_to_rgb(const ImageU8& rgba) {
    ImageU8 out = ImageU8::make(rgba.width, rgba.height, 3);
    for (int y = 0; y < rgba.height; ++y) {
        for (int x = 0; x < rgba.width; ++x) {
            out.at(x, y, 0) = rgba.at(x, y, 0);
            out.at(x, y, 1) = rgba.at(x, y, 1);
            out.at(x, y, 2) = rgba.at(x, y, 2);
        }
    }
    return out;
}

// Centers `img` on a pure white canvas widened (or heightened) to `target`
// along one axis. The extra pixel of an odd split goes bottom/right. Returns
// the image offset within the canvas.
ImageU8 pad_axis(const ImageU8& img, int target, bool shared_is_width, int& offset) {
    offset = shared_is_width ? (target - img.width) / 2 : (target - img.height) / 2;
    int w = shared_is_width ? target : img.width;
    int h = shared_is_width ? img.height : target;
    ImageU8 canvas = ImageU8::make(w, h, 3, 255);
    blit(canvas, img, shared_is_width ? offset : 0, shared_is_width ? 0 : offset);
    return canvas;
}

// Uniform bilinear scale so the shared-axis length becomes `target`.
ImageU8 scale_axis(const ImageU8& img, int target, bool shared_is_width) {
    double factor = shared_is_width ? double(target) / img.width : double(target) / img.height;
    int w = shared_is_width ? target : std::max(1, int(std::lround(img.width * factor)));
    int h = shared_is_width ? std::max(1, int(std::lround(img.height * factor))) : target;
    return resize_bilinear(img, w, h);
}

ImageU8 join(const ImageU8& first, const ImageU8& second, bool vertical) {
    ImageU8 out = vertical ? ImageU8::make(first.width, first.height + second.height, 3)
                           : ImageU8::make(first.width + second.width, first.height, 3);
    blit(out, first, 0, 0);
    blit(out, second, vertical ? 0 : first.width, vertical ? first.height : 0);
    return out;
}

}  // namespace

CompositeArtifact compose_concat(const ImageU8& scene, const SampleRecord& record,
                                 ConcatPosition position, bool resize, int tile_side,
                                 const std::string& font_path) {
    if (record.excluded)
        throw ValidationError("record \"" + record.id + "\" is excluded from rendering");

    TextTile raw_tile = render_text_tile(record.question, tile_side, {0, 0, 0},
                                         {255, 255, 255, 255}, font_path);
    ImageU8 tile = rgba_to_rgb(raw_tile.pixels);

    bool vertical = position == ConcatPosition::top || position == ConcatPosition::bottom;
    bool tile_first = position == ConcatPosition::top || position == ConcatPosition::left;
    int scene_shared = vertical ? scene.width : scene.height;
    int tile_shared = vertical ? tile.width : tile.height;
    int shared = std::max(scene_shared, tile_shared);

    ImageU8 scene_part = scene;
    ImageU8 tile_part = std::move(tile);
    int scene_off = 0, tile_off = 0;
    bool tile_scaled = false;
    if (scene_shared < shared) {
        if (resize)
            scene_part = scale_axis(scene_part, shared, vertical);
        else
            scene_part = pad_axis(scene_part, shared, vertical, scene_off);
    } else if (tile_shared < shared) {
        if (resize) {
            tile_part = scale_axis(tile_part, shared, vertical);
            tile_scaled = true;
        } else {
            tile_part = pad_axis(tile_part, shared, vertical, tile_off);
        }
    }
    (void)scene_off;

    ImageU8 joined = tile_first ? join(tile_part, scene_part, vertical)
                                : join(scene_part, tile_part, vertical);

    // bbox covers the tile's own pixels, excluding any white padding: the
    // square tile (scaled or not) offset by its padding inside its strip plus
    // the strip's position in the output.
    int strip_x = vertical ? 0 : (tile_first ? 0 : scene_part.width);
    int strip_y = vertical ? (tile_first ? 0 : scene_part.height) : 0;
    int inner_w = tile_scaled ? tile_part.width : tile_side;
    int inner_h = tile_scaled ? tile_part.height : tile_side;
    int inner_x = strip_x + (vertical ? tile_off : 0);
    int inner_y = strip_y + (vertical ? 0 : tile_off);

    CompositeArtifact art;
    art.method = resize ? RenderMethod::concat_resize : RenderMethod::concat_pad;
    art.position = position;
    art.source_id = record.id;
    art.question_bbox = {inner_x, inner_y, inner_x + inner_w, inner_y + inner_h};
    art.width = joined.width;
    art.height = joined.height;
    art.pixels = std::move(joined.data);
    return art;
}

}  // namespace inq
