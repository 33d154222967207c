// Copyright 2026 the inq authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "inq/types.hpp"

namespace inq {

enum class PromptKind { none, light, short_workflow, long_workflow, ocr_assisted };

const char* to_string(PromptKind k);
PromptKind prompt_kind_from_string(const std::string& s);

// Raw template texts. Workflow templates contain the placeholders <bbox>,
// <top-left-location>, <bottom-right-location>, <picture-width> and
// <picture-height>.
const std::string& light_prompt_variant(size_t index);  // 0 = adopted default
size_t light_prompt_variant_count();
const std::string& short_workflow_template();
const std::string& long_workflow_template();
const std::string& few_shot_header();

// none -> ""; light -> the adopted variant verbatim; workflow kinds -> the
// template with placeholders filled from the artifact's bbox and dimensions
// ("[x0,y0,x1,y1]", "(x0,y0)", "(x1,y1)", width, height).
std::string build_prompt(PromptKind kind, const CompositeArtifact& artifact);

// Fixed wrapper presenting OCR text as auxiliary input; independent of the
// artifact's geometry. Throws ValidationError on empty ocr_text.
std::string build_ocr_assisted_prompt(const std::string& ocr_text);

struct DemoExample {
    std::string image_path;
    std::string question;
    std::string answer;
    DatasetKind dataset_kind = DatasetKind::custom;
};

struct FewShotPrompt {
    std::string text;
    // k example images followed by the target image, in prompt order.
    std::vector<std::string> image_slots;
    std::vector<size_t> chosen_indices;  // into the pool
};

// Deterministic seeded sampling of k in {1,2,4,8} demonstrations without
// replacement, stratified by dataset kind proportionally to the pool; the
// selection depends only on (seed, target id). Examples are serialized with
// their ground-truth question and answer in the JSON-style output line.
FewShotPrompt assemble_few_shot(const std::vector<DemoExample>& pool, int k, uint64_t seed,
                                const CompositeArtifact& target);

}  // namespace inq
