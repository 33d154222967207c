// Copyright 2026 the inq authors
// SPDX-License-Identifier: Apache-2.0

#include "inq/respfilter.hpp"

#include <algorithm>
#include <optional>

#include <json.hpp>

#include "inq/metrics.hpp"
#include "inq/textutil.hpp"

namespace inq {

const char* to_string(FilterMode m) {
    switch (m) {
        case FilterMode::auto_detect: return "auto";
        case FilterMode::json: return "json";
        case FilterMode::qra: return "qra";
        case FilterMode::qa: return "qa";
        case FilterMode::verbatim: return "verbatim";
    }
    return "auto";
}

const char* to_string(FilterStrategy s) {
    switch (s) {
        case FilterStrategy::json_field: return "json_field";
        case FilterStrategy::answer_pattern: return "answer_pattern";
        case FilterStrategy::role_split: return "role_split";
        case FilterStrategy::last_sentence: return "last_sentence";
        case FilterStrategy::verbatim: return "verbatim";
    }
    return "verbatim";
}

const char* to_string(Behavior b) {
    switch (b) {
        case Behavior::unaware_caption: return "unaware_caption";
        case Behavior::aware_caption: return "aware_caption";
        case Behavior::repeat_question: return "repeat_question";
        case Behavior::wrong_answer: return "wrong_answer";
        case Behavior::correct_answer: return "correct_answer";
    }
    return "unaware_caption";
}

FilterMode filter_mode_from_string(const std::string& s) {
    if (s == "auto") return FilterMode::auto_detect;
    if (s == "json") return FilterMode::json;
    if (s == "qra") return FilterMode::qra;
    if (s == "qa") return FilterMode::qa;
    if (s == "verbatim") return FilterMode::verbatim;
    throw ValidationError("unknown filter mode: " + s);
}

namespace {

std::string json_value_to_text(const nlohmann::json& v) {
    return v.is_string() ? v.get<std::string>() : v.dump();
}

// Candidate JSON object: the whole text, or the outermost balanced {...}
// embedded in prose (models habitually wrap JSON in commentary).
std::optional<nlohmann::json> parse_embedded_object(const std::string& raw) {
    std::string t = trim(raw);
    nlohmann::json whole = nlohmann::json::parse(t, nullptr, false);
    if (!whole.is_discarded() && whole.is_object()) return whole;

    for (size_t start = raw.find('{'); start != std::string::npos;
         start = raw.find('{', start + 1)) {
        int depth = 0;
        bool in_string = false;
        bool escaped = false;
        for (size_t i = start; i < raw.size(); ++i) {
            char c = raw[i];
            if (escaped) {
                escaped = false;
                continue;
            }
            if (c == '\\') {
                escaped = in_string;
                continue;
            }
            if (c == '"') {
                in_string = !in_string;
                continue;
            }
            if (in_string) continue;
            if (c == '{') ++depth;
            if (c == '}' && --depth == 0) {
                nlohmann::json obj =
                    nlohmann::json::parse(raw.substr(start, i - start + 1), nullptr, false);
                if (!obj.is_discarded() && obj.is_object()) return obj;
                break;
            }
        }
    }
    return std::nullopt;
}

std::optional<FilterOutcome> try_json(const std::string& raw) {
    auto obj = parse_embedded_object(raw);
    if (!obj) return std::nullopt;

    FilterOutcome out;
    out.strategy = FilterStrategy::json_field;
    bool have_answer = false;
    for (const auto& [key, value] : obj->items()) {
        std::string k = ascii_lower(key);
        if (k == "answer" && !have_answer) {
            out.answer = trim(json_value_to_text(value));
            have_answer = true;
        } else if (k == "detected question" || k == "the question in the image") {
            out.detected_question = trim(json_value_to_text(value));
        }
    }
    if (!have_answer) return std::nullopt;
    return out;
}

std::optional<FilterOutcome> try_patterns(const std::string& raw) {
    size_t best_pos = std::string::npos;
    size_t best_skip = 0;
    for (const std::string_view pat : {"the answer is", "answer:"}) {
        size_t pos = find_icase(raw, pat);
        if (pos != std::string::npos && pos < best_pos) {
            best_pos = pos;
            best_skip = pat.size();
        }
    }
    if (best_pos == std::string::npos) return std::nullopt;

    size_t start = best_pos + best_skip;
    size_t end = raw.find_first_of(".?!\n", start);
    std::string answer = trim(raw.substr(start, end == std::string::npos ? end : end - start));
    if (answer.empty()) return std::nullopt;

    FilterOutcome out;
    out.strategy = FilterStrategy::answer_pattern;
    out.answer = answer;
    return out;
}

FilterOutcome verbatim_outcome(const std::string& raw, bool flagged = false) {
    FilterOutcome out;
    out.strategy = FilterStrategy::verbatim;
    out.answer = trim(raw);
    out.flagged = flagged;
    return out;
}

FilterOutcome auto_pipeline(const std::string& raw, DatasetKind dataset_kind) {
    if (auto j = try_json(raw)) return *j;
    if (auto p = try_patterns(raw)) return *p;
    // With no structure to latch onto, the full trimmed text is the answer.
    // That is also the right call for pope, whose scoring only looks for
    // "no"/"not" and benefits from the surrounding context.
    (void)dataset_kind;
    return verbatim_outcome(raw, false);
}

FilterOutcome role_split(const std::string& raw, const std::string& role_token) {
    size_t pos = role_token.empty() ? std::string::npos : raw.rfind(role_token);
    if (pos == std::string::npos) return verbatim_outcome(raw, true);
    FilterOutcome out;
    out.strategy = FilterStrategy::role_split;
    out.answer = trim(raw.substr(pos + role_token.size()));
    std::string before = trim(raw.substr(0, pos));
    if (!before.empty()) out.detected_question = before;
    return out;
}

FilterOutcome last_sentence(const std::string& raw) {
    std::vector<std::pair<size_t, size_t>> sentences;  // [begin, end)
    size_t begin = 0;
    for (size_t i = 0; i < raw.size(); ++i) {
        if (raw[i] == '.' || raw[i] == '?' || raw[i] == '!') {
            sentences.emplace_back(begin, i + 1);
            begin = i + 1;
        }
    }
    if (begin < raw.size()) sentences.emplace_back(begin, raw.size());

    FilterOutcome out;
    out.strategy = FilterStrategy::last_sentence;
    while (!sentences.empty()) {
        auto [b, e] = sentences.back();
        std::string s = trim(raw.substr(b, e - b));
        if (!s.empty()) {
            out.answer = s;
            std::string before = trim(raw.substr(0, b));
            if (!before.empty()) out.detected_question = before;
            return out;
        }
        sentences.pop_back();
    }
    out.answer = "";
    return out;
}

}  // namespace

FilterOutcome filter_response(const std::string& raw, FilterMode mode,
                              const std::string& role_token, DatasetKind dataset_kind) {
    if (trim(raw).empty()) return verbatim_outcome("");
    switch (mode) {
        case FilterMode::auto_detect:
        case FilterMode::json:
            return auto_pipeline(raw, dataset_kind);
        case FilterMode::qra:
            return role_split(raw, role_token);
        case FilterMode::qa:
            return last_sentence(raw);
        case FilterMode::verbatim:
            return verbatim_outcome(raw);
    }
    return verbatim_outcome(raw);
}

Behavior classify_behavior(const FilterOutcome& outcome, const SampleRecord& record,
                           bool scored_correct, const BehaviorThresholds& thresholds) {
    if (scored_correct) return Behavior::correct_answer;

    std::string answer = normalize_text(outcome.answer);
    std::string question = normalize_text(record.question);
    size_t len = std::max(utf8_decode(answer).size(), utf8_decode(question).size());
    if (len > 0) {
        double similarity = 1.0 - double(edit_distance(answer, question)) / double(len);
        if (similarity >= thresholds.repeat_similarity) return Behavior::repeat_question;
    }

    std::vector<std::string> aw = split_words(answer);
    std::vector<std::string> qw = split_words(question);
    if (thresholds.aware_ngram > 0 && qw.size() >= thresholds.aware_ngram &&
        aw.size() >= thresholds.aware_ngram) {
        size_t n = thresholds.aware_ngram;
        for (size_t qi = 0; qi + n <= qw.size(); ++qi) {
            for (size_t ai = 0; ai + n <= aw.size(); ++ai) {
                if (std::equal(qw.begin() + qi, qw.begin() + qi + n, aw.begin() + ai))
                    return Behavior::aware_caption;
            }
        }
    }

    if (aw.size() <= thresholds.short_answer_words) return Behavior::wrong_answer;
    return Behavior::unaware_caption;
}

}  // namespace inq
