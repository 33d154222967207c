// Copyright 2026 the inq authors
// SPDX-License-Identifier: Apache-2.0

#include "inq/types.hpp"

namespace inq {

const char* to_string(DatasetKind k) {
    switch (k) {
        case DatasetKind::vqav2: return "vqav2";
        case DatasetKind::gqa: return "gqa";
        case DatasetKind::pope: return "pope";
        case DatasetKind::textvqa: return "textvqa";
        case DatasetKind::sqa: return "sqa";
        case DatasetKind::custom: return "custom";
    }
    return "custom";
}

const char* to_string(QuestionType t) {
    switch (t) {
        case QuestionType::open_ended: return "open_ended";
        case QuestionType::binary: return "binary";
        case QuestionType::multiple_choice: return "multiple_choice";
    }
    return "open_ended";
}

DatasetKind dataset_kind_from_string(const std::string& s) {
    if (s == "vqav2") return DatasetKind::vqav2;
    if (s == "gqa") return DatasetKind::gqa;
    if (s == "pope") return DatasetKind::pope;
    if (s == "textvqa") return DatasetKind::textvqa;
    if (s == "sqa") return DatasetKind::sqa;
    if (s == "custom") return DatasetKind::custom;
    throw ValidationError("unknown dataset kind: " + s);
}

QuestionType question_type_from_string(const std::string& s) {
    if (s == "open_ended") return QuestionType::open_ended;
    if (s == "binary") return QuestionType::binary;
    if (s == "multiple_choice") return QuestionType::multiple_choice;
    throw ValidationError("unknown question type: " + s);
}

const char* to_string(RenderMethod m) {
    switch (m) {
        case RenderMethod::watermark: return "watermark";
        case RenderMethod::concat_pad: return "concat_pad";
        case RenderMethod::concat_resize: return "concat_resize";
    }
    return "watermark";
}

const char* to_string(ConcatPosition p) {
    switch (p) {
        case ConcatPosition::top: return "top";
        case ConcatPosition::bottom: return "bottom";
        case ConcatPosition::left: return "left";
        case ConcatPosition::right: return "right";
    }
    return "top";
}

const char* to_string(ColorProvenance p) {
    switch (p) {
        case ColorProvenance::computed: return "computed";
        case ColorProvenance::black_fallback: return "black_fallback";
        case ColorProvenance::white_fallback: return "white_fallback";
    }
    return "computed";
}

}  // namespace inq
