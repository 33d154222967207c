// Copyright 2026 the inq authors
// SPDX-License-Identifier: Apache-2.0

#include "inq/manifest.hpp"

#include <algorithm>
#include <unordered_set>

#include "inq/textutil.hpp"
#include "jsonl.hpp"

namespace inq {

namespace {

std::string norm_answer(const std::string& a) {
    std::string s = normalize_text(a);
    if (!s.empty() && s.back() == '.') s.pop_back();
    return s;
}

SampleRecord record_from_json(const nlohmann::json& obj, const std::string& where) {
    for (const char* key : {"id", "image", "question", "answers", "dataset", "type"}) {
        if (!obj.contains(key)) throw ValidationError(where + ": missing field \"" + key + "\"");
    }
    SampleRecord rec;
    rec.id = obj.at("id").get<std::string>();
    rec.scene_path = obj.at("image").get<std::string>();
    rec.question = obj.at("question").get<std::string>();
    for (const auto& a : obj.at("answers")) rec.answers.push_back(a.get<std::string>());
    rec.dataset_kind = dataset_kind_from_string(obj.at("dataset").get<std::string>());
    rec.question_type = question_type_from_string(obj.at("type").get<std::string>());
    if (obj.contains("choices")) {
        for (const auto& c : obj.at("choices")) {
            if (c.is_array() && c.size() == 2) {
                rec.choices.emplace_back(c[0].get<std::string>(), c[1].get<std::string>());
            } else if (c.is_object()) {
                rec.choices.emplace_back(c.at("label").get<std::string>(),
                                         c.at("text").get<std::string>());
            } else {
                throw ValidationError(where + ": choice entries must be [label, text] pairs");
            }
        }
    }
    if (obj.contains("ocr")) rec.ocr_text = obj.at("ocr").get<std::string>();
    return rec;
}

nlohmann::json record_to_json(const SampleRecord& rec) {
    nlohmann::json obj;
    obj["id"] = rec.id;
    obj["image"] = rec.scene_path;
    obj["question"] = rec.question;
    obj["answers"] = rec.answers;
    obj["dataset"] = to_string(rec.dataset_kind);
    obj["type"] = to_string(rec.question_type);
    if (!rec.choices.empty()) {
        nlohmann::json choices = nlohmann::json::array();
        for (const auto& [label, text] : rec.choices) choices.push_back({label, text});
        obj["choices"] = choices;
    }
    if (!rec.ocr_text.empty()) obj["ocr"] = rec.ocr_text;
    return obj;
}

// Removes every occurrence of each token, repeating until stable so that the
// operation is idempotent even when removal exposes new occurrences.
std::string strip_tokens(std::string text, const std::vector<std::string>& tokens) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& tok : tokens) {
            if (tok.empty()) continue;
            size_t pos;
            while ((pos = text.find(tok)) != std::string::npos) {
                text.erase(pos, tok.size());
                changed = true;
            }
        }
    }
    return text;
}

}  // namespace

void validate_record(const SampleRecord& rec, const std::string& where) {
    auto fail = [&](const std::string& msg) {
        std::string prefix = where.empty() ? "" : where + ": ";
        throw ValidationError(prefix + msg + " (id \"" + rec.id + "\")");
    };
    if (rec.id.empty()) fail("empty id");
    if (rec.scene_path.empty()) fail("empty image path");
    if (trim(rec.question).empty()) fail("empty question");
    if (rec.answers.empty()) fail("empty answer list");
    if (rec.question_type == QuestionType::binary) {
        for (const auto& a : rec.answers) {
            std::string n = norm_answer(a);
            if (n != "yes" && n != "no") fail("binary answer \"" + a + "\" is not yes/no");
        }
    }
    bool has_choices = !rec.choices.empty();
    bool is_mc = rec.question_type == QuestionType::multiple_choice;
    if (is_mc != has_choices) fail("choices present iff type is multiple_choice");
    if (is_mc) {
        if (rec.choices.size() < 2 || rec.choices.size() > 5)
            fail("multiple_choice needs 2-5 choices");
        std::unordered_set<std::string> seen;
        for (const auto& [label, text] : rec.choices) {
            if (label.size() != 1 || label[0] < 'A' || label[0] > 'E')
                fail("choice label \"" + label + "\" is not one of A-E");
            if (!seen.insert(label).second) fail("duplicate choice label " + label);
            (void)text;
        }
    }
}

std::vector<SampleRecord> load_manifest(const std::string& path) {
    std::vector<SampleRecord> records;
    std::unordered_set<std::string> ids;
    for_each_jsonl(path, [&](size_t lineno, const nlohmann::json& obj) {
        std::string where = path + ":" + std::to_string(lineno);
        SampleRecord rec = record_from_json(obj, where);
        validate_record(rec, where);
        if (!ids.insert(rec.id).second)
            throw ValidationError(where + ": duplicate id \"" + rec.id + "\"");
        records.push_back(std::move(rec));
    });
    return records;
}

void save_manifest(const std::string& path, const std::vector<SampleRecord>& records) {
    JsonlWriter out(path);
    for (const auto& rec : records) out.write(record_to_json(rec));
}

std::vector<Dialogue> load_dialogues(const std::string& path) {
    std::vector<Dialogue> dialogues;
    for_each_jsonl(path, [&](size_t lineno, const nlohmann::json& obj) {
        std::string where = path + ":" + std::to_string(lineno);
        Dialogue d;
        d.id = obj.at("id").get<std::string>();
        d.scene_path = obj.at("image").get<std::string>();
        if (!obj.contains("turns") || !obj.at("turns").is_array())
            throw ValidationError(where + ": missing turns array");
        for (const auto& t : obj.at("turns"))
            d.turns.push_back({t.at("q").get<std::string>(), t.at("a").get<std::string>()});
        dialogues.push_back(std::move(d));
    });
    return dialogues;
}

std::vector<SampleRecord> split_dialogues(const std::vector<Dialogue>& dialogues) {
    std::vector<SampleRecord> records;
    for (const auto& d : dialogues) {
        if (d.turns.empty())
            throw ValidationError("dialogue \"" + d.id + "\" has no turns");
        for (size_t i = 0; i < d.turns.size(); ++i) {
            const auto& turn = d.turns[i];
            if (trim(turn.question).empty() || trim(turn.answer).empty())
                throw ValidationError("dialogue \"" + d.id + "\" turn " + std::to_string(i) +
                                      " has an empty question or answer");
            SampleRecord rec;
            rec.id = d.id + "#" + std::to_string(i);
            rec.scene_path = d.scene_path;
            rec.question = turn.question;
            rec.answers = {turn.answer};
            records.push_back(std::move(rec));
        }
    }
    return records;
}

SampleRecord prepare_question(const SampleRecord& record, const PrepConfig& config) {
    SampleRecord rec = record;
    if (rec.dataset_kind == DatasetKind::textvqa && !config.ocr_strip_tokens.empty()) {
        rec.question = collapse_whitespace(strip_tokens(rec.question, config.ocr_strip_tokens));
    }
    if (rec.question_type == QuestionType::multiple_choice && !rec.choices.empty()) {
        auto choices = rec.choices;
        std::sort(choices.begin(), choices.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        for (const auto& [label, text] : choices)
            rec.question += config.mc_option_separator + label + ". " + text;
        // Options now live in the question text; clearing them keeps a second
        // application from folding twice.
        rec.choices.clear();
    }
    if (rec.dataset_kind == DatasetKind::sqa &&
        utf8_decode(rec.question).size() > config.max_question_chars) {
        rec.excluded = true;
    }
    return rec;
}

}  // namespace inq
