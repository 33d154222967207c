// Copyright 2026 the inq authors
// SPDX-License-Identifier: Apache-2.0

#include "inq/sft.hpp"

#include "inq/respfilter.hpp"
#include "inq/textutil.hpp"

namespace inq {

const char* to_string(SftStrategy s) {
    switch (s) {
        case SftStrategy::vqa: return "vqa";
        case SftStrategy::baseline: return "baseline";
        case SftStrategy::qa: return "qa";
        case SftStrategy::qra: return "qra";
        case SftStrategy::r_qra: return "r_qra";
        case SftStrategy::qa_only: return "qa_only";
        case SftStrategy::rqa: return "rqa";
        case SftStrategy::rqra: return "rqra";
    }
    return "baseline";
}

SftStrategy sft_strategy_from_string(const std::string& s) {
    if (s == "vqa") return SftStrategy::vqa;
    if (s == "baseline") return SftStrategy::baseline;
    if (s == "qa") return SftStrategy::qa;
    if (s == "qra") return SftStrategy::qra;
    if (s == "r_qra" || s == "r-qra") return SftStrategy::r_qra;
    if (s == "qa_only" || s == "qa-only") return SftStrategy::qa_only;
    if (s == "rqa") return SftStrategy::rqa;
    if (s == "rqra") return SftStrategy::rqra;
    throw ValidationError("unknown SFT strategy: " + s);
}

namespace {

std::string join(std::initializer_list<std::string> parts) {
    std::string out;
    for (const auto& p : parts) {
        if (p.empty()) continue;
        if (!out.empty()) out += " ";
        out += p;
    }
    return out;
}

}  // namespace

SftExample build_sft_example(const SampleRecord& record,
                             const std::optional<CompositeArtifact>& artifact,
                             SftStrategy strategy, const std::string& role_token) {
    if (record.answers.empty())
        throw ValidationError("record \"" + record.id + "\" has no answers");
    if (strategy != SftStrategy::qa_only && role_token.empty())
        throw ValidationError(std::string("strategy ") + to_string(strategy) +
                              " needs a role token");
    bool needs_artifact = strategy != SftStrategy::vqa;
    if (needs_artifact && (!artifact || artifact->image_path.empty()))
        throw ValidationError(std::string("strategy ") + to_string(strategy) +
                              " needs a rendered composite image");

    const std::string& Q = record.question;
    const std::string& A = record.answers[0];
    const std::string& R = role_token;

    SftExample ex;
    ex.id = record.id;
    ex.strategy = strategy;
    ex.role_token = role_token;
    ex.answer = A;
    ex.image_ref = needs_artifact ? artifact->image_path : record.scene_path;

    switch (strategy) {
        case SftStrategy::vqa:
            ex.input_text = join({Q, R});
            ex.target_text = A;
            break;
        case SftStrategy::baseline:
            ex.input_text = R;
            ex.target_text = A;
            break;
        case SftStrategy::qa:
            ex.input_text = R;
            ex.target_text = join({Q, A});
            break;
        case SftStrategy::qra:
            ex.input_text = "";
            ex.target_text = join({Q, R, A});
            break;
        case SftStrategy::r_qra:
            ex.input_text = R;
            ex.target_text = join({Q, R, A});
            break;
        case SftStrategy::qa_only:
            ex.input_text = "";
            ex.target_text = join({Q, A});
            break;
        case SftStrategy::rqa:
            ex.input_text = "";
            ex.target_text = join({R, Q, A});
            break;
        case SftStrategy::rqra:
            ex.input_text = "";
            ex.target_text = join({R, Q, R, A});
            break;
    }
    if (ex.target_text.empty())
        throw ValidationError("empty target sequence for record \"" + record.id + "\"");
    return ex;
}

bool round_trip_check(const SftExample& example) {
    FilterMode mode;
    switch (example.strategy) {
        case SftStrategy::qra:
        case SftStrategy::r_qra:
        case SftStrategy::rqra:
            mode = FilterMode::qra;
            break;
        case SftStrategy::qa:
        case SftStrategy::qa_only:
        case SftStrategy::rqa:
            mode = FilterMode::qa;
            break;
        case SftStrategy::baseline:
        case SftStrategy::vqa:
            mode = FilterMode::verbatim;
            break;
        default:
            mode = FilterMode::verbatim;
            break;
    }
    FilterOutcome outcome = filter_response(example.target_text, mode, example.role_token);
    return outcome.answer == trim(example.answer);
}

}  // namespace inq
