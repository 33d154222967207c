// Copyright 2026 the inq authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>

#include "inq/types.hpp"

namespace inq {

enum class FilterMode { auto_detect, json, qra, qa, verbatim };
enum class FilterStrategy { json_field, answer_pattern, role_split, last_sentence, verbatim };
enum class Behavior { unaware_caption, aware_caption, repeat_question, wrong_answer, correct_answer };

const char* to_string(FilterMode m);
const char* to_string(FilterStrategy s);
const char* to_string(Behavior b);
FilterMode filter_mode_from_string(const std::string& s);

struct FilterOutcome {
    std::string answer;
    std::optional<std::string> detected_question;
    FilterStrategy strategy = FilterStrategy::verbatim;
    std::optional<Behavior> behavior;
    // Set when a requested mode could not apply (e.g. role token absent) and
    // the outcome fell back to verbatim.
    bool flagged = false;
};

struct BehaviorThresholds {
    double repeat_similarity = 0.8;  // normalized edit similarity answer vs question
    size_t aware_ngram = 5;          // consecutive question words for awareness
    size_t short_answer_words = 6;   // at most this many words counts as an answer attempt
};

// Extracts the answer (and detected question when present) from raw model
// output. auto mode precedence: JSON object with an "Answer" field (possibly
// embedded in prose), then "The answer is X" / "Answer: X" patterns, then
// full text for pope, then verbatim. qra splits at the last role-token
// occurrence; qa takes the last sentence. Total on arbitrary input.
FilterOutcome filter_response(const std::string& raw, FilterMode mode,
                              const std::string& role_token = "ASSISTANT:",
                              DatasetKind dataset_kind = DatasetKind::custom);

// Five-way response taxonomy, highest priority first: correct answer, question
// repetition, question-aware caption, short wrong answer, unaware caption.
Behavior classify_behavior(const FilterOutcome& outcome, const SampleRecord& record,
                           bool scored_correct, const BehaviorThresholds& thresholds = {});

}  // namespace inq
