// Copyright 2026 the inq authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "inq/types.hpp"

namespace inq {

// One sidecar line describing a saved composite.
struct SidecarEntry {
    std::string id;
    Bbox bbox;
    RenderMethod method = RenderMethod::watermark;
    std::optional<ConcatPosition> position;
    std::optional<Rgb> color;
    std::optional<ColorProvenance> provenance;
};

// Writes "<id>.png" under out_dir and returns the sidecar entry; the
// artifact's image_path is filled in.
SidecarEntry save_composite(CompositeArtifact& artifact, const std::string& out_dir);

void save_sidecar(const std::string& path, const std::vector<SidecarEntry>& entries);
std::vector<SidecarEntry> load_sidecar(const std::string& path);

// Rebuilds artifact metadata (not pixels) from a sidecar for harness runs:
// image_path = "<dir>/<id>.png", bbox and method from the entry. Image
// dimensions are read from the PNG header.
std::vector<CompositeArtifact> load_artifacts(const std::string& dir,
                                              const std::string& sidecar_path);

}  // namespace inq
