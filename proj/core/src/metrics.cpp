// Copyright 2026 the inq authors
// SPDX-License-Identifier: Apache-2.0

#include "inq/metrics.hpp"

#include <algorithm>

#include "inq/textutil.hpp"

namespace inq {

namespace {

std::string apply_norm(const std::string& s, const NormPolicy& p) {
    std::string out = s;
    if (p.collapse_whitespace)
        out = collapse_whitespace(out);  // also trims
    else if (p.trim)
        out = trim(out);
    if (p.case_fold) out = ascii_lower(out);
    return out;
}

std::string score_norm(const std::string& s) {
    std::string out = normalize_text(s);
    if (!out.empty() && out.back() == '.') out.pop_back();
    return out;
}

// First standalone A-E letter, scanning word tokens.
std::string extract_choice_letter(const std::string& s) {
    std::string token;
    auto check = [&]() -> std::string {
        if (token.size() == 1 && token[0] >= 'a' && token[0] <= 'e') return token;
        return {};
    };
    for (char c : score_norm(s)) {
        if (std::isalnum(static_cast<unsigned char>(c))) {
            token.push_back(c);
        } else {
            if (auto hit = check(); !hit.empty()) return hit;
            token.clear();
        }
    }
    return check();
}

}  // namespace

size_t edit_distance(const std::string& a, const std::string& b) {
    std::vector<char32_t> ua = utf8_decode(a);
    std::vector<char32_t> ub = utf8_decode(b);
    if (ua.size() < ub.size()) std::swap(ua, ub);

    std::vector<size_t> prev(ub.size() + 1), curr(ub.size() + 1);
    for (size_t j = 0; j <= ub.size(); ++j) prev[j] = j;
    for (size_t i = 1; i <= ua.size(); ++i) {
        curr[0] = i;
        for (size_t j = 1; j <= ub.size(); ++j) {
            size_t sub = prev[j - 1] + (ua[i - 1] == ub[j - 1] ? 0 : 1);
            curr[j] = std::min({prev[j] + 1, curr[j - 1] + 1, sub});
        }
        std::swap(prev, curr);
    }
    return prev[ub.size()];
}

QaaResult qaa(const std::vector<std::string>& pred_candidates, const std::string& reference,
              const NormPolicy& normalize) {
    std::string ref = apply_norm(reference, normalize);
    if (ref.empty()) throw ValidationError("QAA reference question is empty");

    std::vector<std::string> candidates = pred_candidates;
    if (candidates.empty()) candidates.push_back("");

    QaaResult result;
    result.ref_len = utf8_decode(ref).size();
    result.edit_distance = size_t(-1);
    for (const auto& cand : candidates) {
        std::string c = apply_norm(cand, normalize);
        size_t d = edit_distance(c, ref);
        if (d < result.edit_distance) {
            result.edit_distance = d;
            result.candidate_used = cand;
        }
    }
    double raw = 1.0 - double(result.edit_distance) / double(result.ref_len);
    result.qaa = std::max(0.0, raw);
    return result;
}

bool score_answer(const std::string& extracted, const SampleRecord& record, MatchPolicy policy,
                  bool* flagged) {
    if (flagged) *flagged = false;
    if (record.answers.empty()) throw ValidationError("record \"" + record.id + "\" has no answers");
    std::string ext = score_norm(extracted);

    switch (record.question_type) {
        case QuestionType::binary: {
            bool is_no = contains_word(ext, "no") || contains_word(ext, "not");
            std::string mapped = is_no ? "no" : "yes";
            return mapped == score_norm(record.answers[0]);
        }
        case QuestionType::multiple_choice: {
            std::string letter = extract_choice_letter(extracted);
            if (letter.empty()) {
                if (flagged) *flagged = true;
                return false;
            }
            return letter == score_norm(record.answers[0]);
        }
        case QuestionType::open_ended: {
            if (policy == MatchPolicy::vqa_soft) {
                size_t matches = 0;
                for (const auto& a : record.answers)
                    if (score_norm(a) == ext) ++matches;
                return std::min(double(matches) / 3.0, 1.0) >= 0.5;
            }
            for (const auto& a : record.answers)
                if (score_norm(a) == ext) return true;
            return false;
        }
    }
    return false;
}

}  // namespace inq
