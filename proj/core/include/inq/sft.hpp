// Copyright 2026 the inq authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>

#include "inq/types.hpp"

namespace inq {

enum class SftStrategy { vqa, baseline, qa, qra, r_qra, qa_only, rqa, rqra };

const char* to_string(SftStrategy s);
SftStrategy sft_strategy_from_string(const std::string& s);

// One (input sequence, target sequence) training pair.
struct SftExample {
    std::string id;
    std::string image_ref;  // composite for VoQA strategies, scene for vqa
    std::string input_text;
    std::string target_text;
    SftStrategy strategy = SftStrategy::baseline;
    std::string role_token;
    std::string answer;  // first ground-truth answer, kept for round-trip checks
};

// Builds the strategy's (input, target) shape from Q = question, A = first
// answer, R = role token, joined by single spaces:
//   vqa:      input Q R   target A          (scene image)
//   baseline: input R     target A
//   qa:       input R     target Q A
//   qra:      input ""    target Q R A
//   r_qra:    input R     target Q R A
//   qa_only:  input ""    target Q A
//   rqa:      input ""    target R Q A
//   rqra:     input ""    target R Q R A
// VoQA strategies require the rendered artifact; every strategy except
// qa_only requires a non-empty role token.
SftExample build_sft_example(const SampleRecord& record,
                             const std::optional<CompositeArtifact>& artifact,
                             SftStrategy strategy, const std::string& role_token);

// Feeds target_text through the response filter in the strategy's matching
// mode (role split, last sentence, or verbatim) and reports whether the
// ground-truth answer is recovered exactly.
bool round_trip_check(const SftExample& example);

}  // namespace inq
