// Copyright 2026 the inq authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "inq/endpoint.hpp"
#include "inq/metrics.hpp"
#include "inq/prompts.hpp"
#include "inq/respfilter.hpp"
#include "inq/types.hpp"

namespace inq {

struct DatasetStats {
    size_t n = 0;
    double accuracy = 0.0;
};

struct SampleResult {
    std::string id;
    std::string raw_response;
    FilterOutcome outcome;
    bool correct = false;
    std::optional<double> qaa;  // present when a question was detected
    std::optional<std::string> error;
};

struct EvalReport {
    std::map<std::string, DatasetStats> per_dataset;
    double overall_accuracy = 0.0;
    std::optional<double> qaa_correct;
    std::optional<double> qaa_incorrect;
    std::map<std::string, size_t> behavior_histogram;
    std::vector<std::string> errored_ids;
    std::vector<SampleResult> samples;
    std::string run_config_json;  // full settings snapshot
};

struct RunOptions {
    PromptKind prompt_kind = PromptKind::none;
    FilterMode filter_mode = FilterMode::auto_detect;
    std::string role_token = "ASSISTANT:";
    MatchPolicy match_policy = MatchPolicy::exact;
    BehaviorThresholds thresholds;
    int concurrency = 1;
    int max_retries = 3;
    int backoff_base_ms = 100;  // doubles per retry
    // Append-only response cache; empty disables resume.
    std::string cache_path;
};

// Append-only JSONL response cache keyed by (endpoint id, sample id, prompt
// hash). Safe under one writer; readers tolerate a truncated final line.
class ResponseCache {
public:
    explicit ResponseCache(const std::string& path);  // empty path -> disabled
    std::optional<std::string> lookup(const std::string& endpoint_id,
                                      const std::string& sample_id,
                                      const std::string& prompt) const;
    void store(const std::string& endpoint_id, const std::string& sample_id,
               const std::string& prompt, const std::string& response);

private:
    std::string path_;
    std::map<std::string, std::string> entries_;
};

// Drives the endpoint over every (artifact, record) pair joined by id,
// bounded by options.concurrency, with per-sample retries; filters, scores
// and classifies each response; aggregates in manifest order so the report
// is independent of completion order. Excluded records are skipped. Throws
// IoError when every sample errors.
EvalReport run_eval(const std::vector<CompositeArtifact>& artifacts,
                    const std::vector<SampleRecord>& records, Endpoint& endpoint,
                    const RunOptions& options);

std::string report_to_json(const EvalReport& report);
std::string report_to_table(const EvalReport& report);

}  // namespace inq
