// Copyright 2026 the inq authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace inq {

// Raised when input data violates a documented contract (bad manifest field,
// out-of-range parameter, malformed request). Maps to CLI exit code 1.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// Raised on filesystem / network / subprocess failures. Maps to CLI exit code 2.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

enum class DatasetKind { vqav2, gqa, pope, textvqa, sqa, custom };
enum class QuestionType { open_ended, binary, multiple_choice };

const char* to_string(DatasetKind k);
const char* to_string(QuestionType t);
DatasetKind dataset_kind_from_string(const std::string& s);
QuestionType question_type_from_string(const std::string& s);

// One (scene image, question, answer set) unit flowing through the pipeline.
struct SampleRecord {
    std::string id;
    std::string scene_path;
    std::string question;
    std::vector<std::string> answers;
    DatasetKind dataset_kind = DatasetKind::custom;
    QuestionType question_type = QuestionType::open_ended;
    // (label, text) pairs, multiple_choice only. Labels are single letters A..E.
    std::vector<std::pair<std::string, std::string>> choices;
    std::string ocr_text;
    // Set by question preparation when a record should be skipped downstream
    // (it is never deleted from the manifest).
    bool excluded = false;

    bool operator==(const SampleRecord&) const = default;
};

struct DialogueTurn {
    std::string question;
    std::string answer;
};

struct Dialogue {
    std::string id;
    std::string scene_path;
    std::vector<DialogueTurn> turns;
};

enum class RenderMethod { watermark, concat_pad, concat_resize };
enum class ConcatPosition { top, bottom, left, right };

const char* to_string(RenderMethod m);
const char* to_string(ConcatPosition p);

struct Rgb {
    uint8_t r = 0, g = 0, b = 0;
    bool operator==(const Rgb&) const = default;
};

struct Rgba {
    uint8_t r = 0, g = 0, b = 0, a = 255;
    bool operator==(const Rgba&) const = default;
};

enum class ColorProvenance { computed, black_fallback, white_fallback };

const char* to_string(ColorProvenance p);

// Text color chosen for a watermark, with the contrast ratio against the
// region mean color that justified it.
struct WatermarkColor {
    Rgb rgb;
    ColorProvenance provenance = ColorProvenance::computed;
    double contrast_ratio = 1.0;
};

// Pixel rectangle, half-open: x in [x0,x1), y in [y0,y1).
struct Bbox {
    int x0 = 0, y0 = 0, x1 = 0, y1 = 0;
    int width() const { return x1 - x0; }
    int height() const { return y1 - y0; }
    bool operator==(const Bbox&) const = default;
};

struct ImageU8;

// A rendered composite image plus the question bounding box and render
// metadata. Produced by the watermark and concatenation composers.
struct CompositeArtifact {
    int width = 0;
    int height = 0;
    std::vector<uint8_t> pixels;  // H*W*3, row-major RGB
    Bbox question_bbox;
    RenderMethod method = RenderMethod::watermark;
    std::optional<ConcatPosition> position;
    std::optional<WatermarkColor> color;
    std::string source_id;
    // Path on disk once saved; run_eval uses it for subprocess endpoints.
    std::string image_path;
};

}  // namespace inq
