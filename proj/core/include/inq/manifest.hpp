// Copyright 2026 the inq authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "inq/types.hpp"

namespace inq {

struct PrepConfig {
    // Records whose prepared question exceeds this are marked excluded
    // (sqa only).
    size_t max_question_chars = 300;
    // Literal substrings stripped from textvqa questions before rendering.
    std::vector<std::string> ocr_strip_tokens;
    std::string mc_option_separator = "\n";
};

// One validated record per line, file order preserved. Duplicate ids and
// invariant violations are reported with the offending line number.
std::vector<SampleRecord> load_manifest(const std::string& path);
void save_manifest(const std::string& path, const std::vector<SampleRecord>& records);

std::vector<Dialogue> load_dialogues(const std::string& path);

// One record per turn; id = "<dialogue id>#<0-based turn index>".
std::vector<SampleRecord> split_dialogues(const std::vector<Dialogue>& dialogues);

// Applies per-dataset question preparation: textvqa token stripping, sqa
// length exclusion, multiple-choice option folding. Idempotent.
SampleRecord prepare_question(const SampleRecord& record, const PrepConfig& config);

// Throws ValidationError naming the field; `where` prefixes the message.
void validate_record(const SampleRecord& record, const std::string& where = {});

}  // namespace inq
