// Copyright 2026 the inq authors
// SPDX-License-Identifier: Apache-2.0

#include "inq/prompts.hpp"

#include <algorithm>
#include <array>

#include "inq/rng.hpp"
#include "inq/textutil.hpp"

namespace inq {

namespace {

const std::array<std::string, 7> kLightVariants = {
    "There is a question in this image, you need to find the question and answer the question "
    "based on the visual information of the entire image.",

    "There is a question in this image. You need to find the question and answer the question "
    "based on the visual information of the entire image. Please do not repeat the question and "
    "answer it directly.",

    "Please answer the question in the image directly, and do not repeat the question. You need "
    "to find the answer based on the visual information of the entire image.",

    "Please answer the question in the image directly, and do not repeat the question.",

    "Please find the question in the image, and answer it directly based on the whole image.",

    "Please find the question in the image, and answer it directly based on the whole image. Do "
    "not repeat the question.",

    "Please find the question in the image and answer it based on the image. Do not repeat the "
    "question you find in your answers.",
};

const std::string kShortWorkflow =
    "Task Definition:\n"
    "You will receive an image with a watermark question. Your task is to:\n"
    "1. Detect and extract the full question text.\n"
    "2. Locate the question bounding box <bbox> (top-left <top-left-location>, bottom-right "
    "<bottom-right-location>) in the <picture-width>x<picture-height> image.\n"
    "3. Understand the question type.\n"
    "4. Answer accurately based only on the visual content.\n"
    "\n"
    "Output Format (strict JSON):\n"
    "{\n"
    "    \"Detected Question\": \"<recognized question text>\",\n"
    "    \"Answer\": \"<concise answer based on the image>\",\n"
    "    \"Reasoning\": \"<brief explanation of how the answer was derived>\"\n"
    "}\n"
    "\n"
    "Important:\n"
    "- Ensure full and coherent question extraction.\n"
    "- Base the answer strictly on visual evidence.\n"
    "- If uncertain or unclear, output \"Unknown\".\n"
    "- Do not add commentary outside the JSON.\n"
    "\n"
    "Now, analyze the image, detect the question and its location, and output the result in the "
    "required JSON format.";

const std::string kLongWorkflow =
    "(1) Task Definition:\n"
    "You will receive an image containing a watermark-embedded question. Your task is to:\n"
    "1. Detect the full question text embedded as a watermark in the image.\n"
    "2. Understand the meaning of the question.\n"
    "3. Answer the question based solely on the visual content of the image.\n"
    "4. Provide an accurate and relevant answer.\n"
    "\n"
    "(2) Workflow Steps:\n"
    "Step 1: Watermark Question Detection\n"
    "- Scan the image for textual content, including semi-transparent overlays and repeated "
    "patterns.\n"
    "- Extract the complete question sentence.\n"
    "- Tip: The question is located at bounding box <bbox>, from top-left <top-left-location> to "
    "bottom-right <bottom-right-location> in a <picture-width>x<picture-height> image.\n"
    "\n"
    "Step 2: Visual Information Extraction\n"
    "- Analyze the image to find information relevant to the question.\n"
    "- Focus on object recognition, counting, attribute description, spatial relations, scene "
    "understanding, text recognition, or reasoning as needed.\n"
    "\n"
    "Step 3: Answer Generation\n"
    "- Provide an accurate, concise answer based solely on visual evidence.\n"
    "- Give a brief explanation of how the answer was derived.\n"
    "- If the answer cannot be determined, state it honestly.\n"
    "\n"
    "(3) Output Format (JSON):\n"
    "Strictly return a valid JSON object as shown below:\n"
    "{\n"
    "    \"Detected Question\": \"<recognized question text>\",\n"
    "    \"Answer\": \"<concise answer based on the image>\",\n"
    "    \"Reasoning\": \"<brief explanation of how the answer was derived>\"\n"
    "}\n"
    "\n"
    "Example:\n"
    "{\n"
    "    \"Detected Question\": \"What is the brand of this camera?\",\n"
    "    \"Answer\": \"Canon\",\n"
    "    \"Reasoning\": \"The text 'Canon' is clearly visible on the camera body.\"\n"
    "}\n"
    "\n"
    "(4) Important Notes:\n"
    "1. Ensure question detection and answer are grounded in the image.\n"
    "2. Provide the full, coherent question text.\n"
    "3. Base the answer strictly on visual evidence.\n"
    "4. Be concise and clear.\n"
    "5. State uncertainty clearly if the image lacks information.\n"
    "\n"
    "Now, process the input image and execute the VoQA task following the above workflow.";

const std::string kFewShotHeader =
    "Each image contains a question written inside it. Your task is to extract the question from "
    "the image and answer it accurately.";

const std::string kOcrWrapperPrefix =
    "Auxiliary OCR output read from the image:\n";
const std::string kOcrWrapperSuffix =
    "\nThe OCR text contains a question. Answer that question based on the visual information of "
    "the entire image.";

void replace_all(std::string& s, const std::string& from, const std::string& to) {
    size_t pos = 0;
    while ((pos = s.find(from, pos)) != std::string::npos) {
        s.replace(pos, from.size(), to);
        pos += to.size();
    }
}

std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    return out;
}

}  // namespace

const char* to_string(PromptKind k) {
    switch (k) {
        case PromptKind::none: return "none";
        case PromptKind::light: return "light";
        case PromptKind::short_workflow: return "short-workflow";
        case PromptKind::long_workflow: return "long-workflow";
        case PromptKind::ocr_assisted: return "ocr-assisted";
    }
    return "none";
}

PromptKind prompt_kind_from_string(const std::string& s) {
    if (s == "none") return PromptKind::none;
    if (s == "light") return PromptKind::light;
    if (s == "short-workflow" || s == "short_workflow") return PromptKind::short_workflow;
    if (s == "long-workflow" || s == "long_workflow") return PromptKind::long_workflow;
    if (s == "ocr-assisted" || s == "ocr_assisted") return PromptKind::ocr_assisted;
    throw ValidationError("unknown prompt kind: " + s);
}

const std::string& light_prompt_variant(size_t index) {
    if (index >= kLightVariants.size())
        throw ValidationError("light prompt variant index out of range");
    return kLightVariants[index];
}

size_t light_prompt_variant_count() { return kLightVariants.size(); }

const std::string& short_workflow_template() { return kShortWorkflow; }
const std::string& long_workflow_template() { return kLongWorkflow; }
const std::string& few_shot_header() { return kFewShotHeader; }

std::string build_prompt(PromptKind kind, const CompositeArtifact& artifact) {
    switch (kind) {
        case PromptKind::none:
            return "";
        case PromptKind::light:
            return kLightVariants[0];
        case PromptKind::ocr_assisted:
            throw ValidationError("ocr-assisted prompts need OCR text, use "
                                  "build_ocr_assisted_prompt");
        case PromptKind::short_workflow:
        case PromptKind::long_workflow:
            break;
    }

    const Bbox& b = artifact.question_bbox;
    if (b.width() <= 0 || b.height() <= 0)
        throw ValidationError("workflow prompts need a question bounding box");

    std::string out =
        kind == PromptKind::short_workflow ? kShortWorkflow : kLongWorkflow;
    auto num = [](int v) { return std::to_string(v); };
    replace_all(out, "<bbox>",
                "[" + num(b.x0) + "," + num(b.y0) + "," + num(b.x1) + "," + num(b.y1) + "]");
    replace_all(out, "<top-left-location>", "(" + num(b.x0) + "," + num(b.y0) + ")");
    replace_all(out, "<bottom-right-location>", "(" + num(b.x1) + "," + num(b.y1) + ")");
    replace_all(out, "<picture-width>", num(artifact.width));
    replace_all(out, "<picture-height>", num(artifact.height));
    return out;
}

std::string build_ocr_assisted_prompt(const std::string& ocr_text) {
    std::string t = trim(ocr_text);
    if (t.empty()) throw ValidationError("OCR text is empty");
    return kOcrWrapperPrefix + t + kOcrWrapperSuffix;
}

FewShotPrompt assemble_few_shot(const std::vector<DemoExample>& pool, int k, uint64_t seed,
                                const CompositeArtifact& target) {
    if (k != 1 && k != 2 && k != 4 && k != 8)
        throw ValidationError("shot count must be 1, 2, 4 or 8, got " + std::to_string(k));
    if (pool.size() < size_t(k))
        throw ValidationError("demonstration pool has " + std::to_string(pool.size()) +
                              " entries, need at least " + std::to_string(k));

    // Proportional allocation per dataset kind (largest remainder), then a
    // seeded draw without replacement inside each group. The draw depends
    // only on (seed, target id).
    std::mt19937_64 rng = make_rng(seed, target.source_id);

    constexpr int kKinds = 6;
    std::array<std::vector<size_t>, kKinds> groups;
    for (size_t i = 0; i < pool.size(); ++i)
        groups[size_t(pool[i].dataset_kind)].push_back(i);

    std::array<int, kKinds> quota{};
    std::array<double, kKinds> remainder{};
    int assigned = 0;
    for (int g = 0; g < kKinds; ++g) {
        double exact = double(k) * double(groups[g].size()) / double(pool.size());
        quota[g] = int(exact);
        remainder[g] = exact - quota[g];
        assigned += quota[g];
    }
    while (assigned < k) {
        int best = -1;
        for (int g = 0; g < kKinds; ++g) {
            if (quota[g] >= int(groups[g].size())) continue;
            if (best < 0 || remainder[g] > remainder[best]) best = g;
        }
        ++quota[best];
        remainder[best] = -1.0;
        ++assigned;
    }

    FewShotPrompt out;
    for (int g = 0; g < kKinds; ++g) {
        std::vector<size_t> bucket = groups[g];
        for (int take = 0; take < quota[g]; ++take) {
            size_t pick = std::uniform_int_distribution<size_t>(0, bucket.size() - 1)(rng);
            out.chosen_indices.push_back(bucket[pick]);
            bucket.erase(bucket.begin() + ptrdiff_t(pick));
        }
    }

    std::string text = kFewShotHeader + "\n\n";
    for (size_t i = 0; i < out.chosen_indices.size(); ++i) {
        const DemoExample& ex = pool[out.chosen_indices[i]];
        text += "Example " + std::to_string(i + 1) + ":\n";
        text += "Input: <image>\n";
        text += "Output: {\"The question in the image\": \"" + json_escape(ex.question) +
                "\", \"Answer\": \"" + json_escape(ex.answer) + "\"}\n\n";
        out.image_slots.push_back(ex.image_path);
    }
    text += "Now answer the next one:\nInput: <image>\nOutput:";
    out.text = std::move(text);
    out.image_slots.push_back(target.image_path);
    return out;
}

}  // namespace inq
