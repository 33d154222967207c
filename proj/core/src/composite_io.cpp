// Copyright 2026 the inq authors
// SPDX-License-Identifier: Apache-2.0

#include "inq/composite_io.hpp"

#include <filesystem>

#include "inq/imageio.hpp"
#include "jsonl.hpp"

namespace inq {

namespace {

RenderMethod method_from_string(const std::string& s) {
    if (s == "watermark") return RenderMethod::watermark;
    if (s == "concat_pad") return RenderMethod::concat_pad;
    if (s == "concat_resize") return RenderMethod::concat_resize;
    throw ValidationError("unknown render method: " + s);
}

ConcatPosition position_from_string(const std::string& s) {
    if (s == "top") return ConcatPosition::top;
    if (s == "bottom") return ConcatPosition::bottom;
    if (s == "left") return ConcatPosition::left;
    if (s == "right") return ConcatPosition::right;
    throw ValidationError("unknown concat position: " + s);
}

ColorProvenance provenance_from_string(const std::string& s) {
    if (s == "computed") return ColorProvenance::computed;
    if (s == "black_fallback") return ColorProvenance::black_fallback;
    if (s == "white_fallback") return ColorProvenance::white_fallback;
    throw ValidationError("unknown color provenance: " + s);
}

}  // namespace

SidecarEntry save_composite(CompositeArtifact& artifact, const std::string& out_dir) {
    std::filesystem::create_directories(out_dir);
    std::string path = out_dir + "/" + artifact.source_id + ".png";

    ImageU8 img;
    img.width = artifact.width;
    img.height = artifact.height;
    img.channels = 3;
    img.data = artifact.pixels;
    save_png(path, img);
    artifact.image_path = path;

    SidecarEntry entry;
    entry.id = artifact.source_id;
    entry.bbox = artifact.question_bbox;
    entry.method = artifact.method;
    entry.position = artifact.position;
    if (artifact.color) {
        entry.color = artifact.color->rgb;
        entry.provenance = artifact.color->provenance;
    }
    return entry;
}

void save_sidecar(const std::string& path, const std::vector<SidecarEntry>& entries) {
    JsonlWriter out(path);
    for (const auto& e : entries) {
        nlohmann::json obj;
        obj["id"] = e.id;
        obj["bbox"] = {e.bbox.x0, e.bbox.y0, e.bbox.x1, e.bbox.y1};
        obj["method"] = to_string(e.method);
        if (e.position) obj["position"] = to_string(*e.position);
        if (e.color) obj["color"] = {e.color->r, e.color->g, e.color->b};
        if (e.provenance) obj["provenance"] = to_string(*e.provenance);
        out.write(obj);
    }
}

std::vector<SidecarEntry> load_sidecar(const std::string& path) {
    std::vector<SidecarEntry> entries;
    for_each_jsonl(path, [&](size_t lineno, const nlohmann::json& obj) {
        std::string where = path + ":" + std::to_string(lineno);
        SidecarEntry e;
        e.id = obj.at("id").get<std::string>();
        const auto& b = obj.at("bbox");
        if (!b.is_array() || b.size() != 4)
            throw ValidationError(where + ": bbox must be [x0,y0,x1,y1]");
        e.bbox = {b[0].get<int>(), b[1].get<int>(), b[2].get<int>(), b[3].get<int>()};
        e.method = method_from_string(obj.at("method").get<std::string>());
        if (obj.contains("position"))
            e.position = position_from_string(obj.at("position").get<std::string>());
        if (obj.contains("color")) {
            const auto& c = obj.at("color");
            e.color = Rgb{c[0].get<uint8_t>(), c[1].get<uint8_t>(), c[2].get<uint8_t>()};
        }
        if (obj.contains("provenance"))
            e.provenance = provenance_from_string(obj.at("provenance").get<std::string>());
        entries.push_back(std::move(e));
    });
    return entries;
}

std::vector<CompositeArtifact> load_artifacts(const std::string& dir,
                                              const std::string& sidecar_path) {
    std::vector<CompositeArtifact> artifacts;
    for (const auto& entry : load_sidecar(sidecar_path)) {
        CompositeArtifact art;
        art.source_id = entry.id;
        art.question_bbox = entry.bbox;
        art.method = entry.method;
        art.position = entry.position;
        if (entry.color) {
            WatermarkColor color;
            color.rgb = *entry.color;
            if (entry.provenance) color.provenance = *entry.provenance;
            art.color = color;
        }
        art.image_path = dir + "/" + entry.id + ".png";
        ImageU8 img = load_image(art.image_path);
        art.width = img.width;
        art.height = img.height;
        artifacts.push_back(std::move(art));
    }
    return artifacts;
}

}  // namespace inq
