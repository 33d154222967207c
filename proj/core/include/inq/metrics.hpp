// Copyright 2026 the inq authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "inq/types.hpp"

namespace inq {

struct NormPolicy {
    bool trim = true;
    bool collapse_whitespace = true;
    bool case_fold = true;

    static NormPolicy none() { return {false, false, false}; }
};

enum class MatchPolicy { exact, vqa_soft };

struct QaaResult {
    double qaa = 0.0;           // max(0, 1 - edit_distance / ref_len)
    size_t edit_distance = 0;   // minimum over candidates
    size_t ref_len = 0;         // in Unicode scalar values, after normalization
    std::string candidate_used;
};

// Levenshtein distance over Unicode scalar values.
size_t edit_distance(const std::string& a, const std::string& b);

// Question alignment: 1 - min over candidates of distance/ref_len, clamped to
// [0,1]. An empty candidate list is treated as one empty candidate. Throws
// ValidationError on an empty reference.
QaaResult qaa(const std::vector<std::string>& pred_candidates, const std::string& reference,
              const NormPolicy& normalize = {});

// Scores an extracted answer against the record's ground truth. open_ended:
// exact match against any answer; binary: maps to "no" iff the text contains
// the word "no" or "not", else "yes"; multiple_choice: first standalone
// letter A..E against the ground-truth label. All comparisons lowercase,
// trimmed, whitespace-collapsed, terminal period stripped. vqa_soft scores
// min(matches/3, 1) >= 0.5 over the full answer list. `flagged` (optional)
// reports a multiple_choice response with no extractable letter.
bool score_answer(const std::string& extracted, const SampleRecord& record,
                  MatchPolicy policy = MatchPolicy::exact, bool* flagged = nullptr);

}  // namespace inq
