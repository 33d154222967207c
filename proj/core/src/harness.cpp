// Copyright 2026 the inq authors
// SPDX-License-Identifier: Apache-2.0

#include "inq/harness.hpp"

#include <atomic>
#include <chrono>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>
#include <unordered_map>

#include <json.hpp>

#include "inq/textutil.hpp"

namespace inq {

namespace {

std::string cache_key(const std::string& endpoint_id, const std::string& sample_id,
                      const std::string& prompt) {
    char hash[32];
    std::snprintf(hash, sizeof(hash), "%016llx",
                  static_cast<unsigned long long>(fnv1a64(prompt)));
    return endpoint_id + "\x1f" + sample_id + "\x1f" + hash;
}

}  // namespace

ResponseCache::ResponseCache(const std::string& path) : path_(path) {
    if (path_.empty()) return;
    std::ifstream in(path_);
    if (!in) return;
    std::string line;
    while (std::getline(in, line)) {
        nlohmann::json obj = nlohmann::json::parse(line, nullptr, false);
        // A truncated final line from an interrupted run parses as garbage;
        // skipping it simply re-fetches that sample.
        if (obj.is_discarded() || !obj.contains("key") || !obj.contains("response")) continue;
        entries_[obj.at("key").get<std::string>()] = obj.at("response").get<std::string>();
    }
}

std::optional<std::string> ResponseCache::lookup(const std::string& endpoint_id,
                                                 const std::string& sample_id,
                                                 const std::string& prompt) const {
    if (path_.empty()) return std::nullopt;
    auto it = entries_.find(cache_key(endpoint_id, sample_id, prompt));
    if (it == entries_.end()) return std::nullopt;
    return it->second;
}

void ResponseCache::store(const std::string& endpoint_id, const std::string& sample_id,
                          const std::string& prompt, const std::string& response) {
    if (path_.empty()) return;
    std::string key = cache_key(endpoint_id, sample_id, prompt);
    entries_[key] = response;
    std::ofstream out(path_, std::ios::app);
    if (!out) throw IoError("cannot append to response cache: " + path_);
    nlohmann::json obj;
    obj["key"] = key;
    obj["response"] = response;
    out << obj.dump() << '\n';
}

namespace {

struct Task {
    const CompositeArtifact* artifact;
    const SampleRecord* record;
    std::string prompt;
    std::string response;
    std::optional<std::string> error;
};

std::string make_prompt(PromptKind kind, const CompositeArtifact& artifact,
                        const SampleRecord& record) {
    if (kind == PromptKind::ocr_assisted) return build_ocr_assisted_prompt(record.ocr_text);
    return build_prompt(kind, artifact);
}

std::string run_config_snapshot(const RunOptions& options, const std::string& endpoint_id,
                                size_t sample_count) {
    nlohmann::json cfg;
    cfg["endpoint_id"] = endpoint_id;
    cfg["prompt_kind"] = to_string(options.prompt_kind);
    cfg["filter_mode"] = to_string(options.filter_mode);
    cfg["role_token"] = options.role_token;
    cfg["match_policy"] = options.match_policy == MatchPolicy::exact ? "exact" : "vqa_soft";
    cfg["concurrency"] = options.concurrency;
    cfg["max_retries"] = options.max_retries;
    cfg["backoff_base_ms"] = options.backoff_base_ms;
    cfg["cache_path"] = options.cache_path;
    cfg["repeat_similarity"] = options.thresholds.repeat_similarity;
    cfg["aware_ngram"] = options.thresholds.aware_ngram;
    cfg["short_answer_words"] = options.thresholds.short_answer_words;
    cfg["samples"] = sample_count;
    return cfg.dump(2);
}

}  // namespace

EvalReport run_eval(const std::vector<CompositeArtifact>& artifacts,
                    const std::vector<SampleRecord>& records, Endpoint& endpoint,
                    const RunOptions& options) {
    if (options.concurrency < 1) throw ValidationError("concurrency must be at least 1");

    std::unordered_map<std::string, const SampleRecord*> by_id;
    for (const auto& r : records) by_id[r.id] = &r;

    std::vector<Task> tasks;
    for (const auto& art : artifacts) {
        auto it = by_id.find(art.source_id);
        if (it == by_id.end())
            throw ValidationError("no manifest record for composite \"" + art.source_id + "\"");
        if (it->second->excluded) continue;
        Task t;
        t.artifact = &art;
        t.record = it->second;
        tasks.push_back(std::move(t));
    }

    ResponseCache cache(options.cache_path);
    std::mutex cache_mu;
    std::atomic<size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            size_t i = next.fetch_add(1);
            if (i >= tasks.size()) return;
            Task& t = tasks[i];
            try {
                t.prompt = make_prompt(options.prompt_kind, *t.artifact, *t.record);
            } catch (const std::exception& e) {
                t.error = e.what();
                continue;
            }
            {
                std::lock_guard<std::mutex> lock(cache_mu);
                if (auto hit = cache.lookup(endpoint.id(), t.record->id, t.prompt)) {
                    t.response = *hit;
                    continue;
                }
            }
            EndpointRequest request{t.record->id, t.artifact->image_path, t.prompt};
            std::string last_error;
            bool done = false;
            for (int attempt = 0; attempt <= options.max_retries && !done; ++attempt) {
                if (attempt > 0) {
                    std::this_thread::sleep_for(std::chrono::milliseconds(
                        (long long)options.backoff_base_ms << (attempt - 1)));
                }
                try {
                    t.response = endpoint.complete(request);
                    done = true;
                } catch (const std::exception& e) {
                    last_error = e.what();
                }
            }
            if (!done) {
                t.error = last_error.empty() ? "request failed" : last_error;
                continue;
            }
            std::lock_guard<std::mutex> lock(cache_mu);
            cache.store(endpoint.id(), t.record->id, t.prompt, t.response);
        }
    };

    std::vector<std::thread> threads;
    size_t n_threads =
        std::min(size_t(options.concurrency), std::max<size_t>(tasks.size(), 1));
    for (size_t i = 0; i < n_threads; ++i) threads.emplace_back(worker);
    for (auto& th : threads) th.join();

    // Aggregation runs over tasks in join order, so the report never depends
    // on which request finished first.
    EvalReport report;
    report.run_config_json = run_config_snapshot(options, endpoint.id(), tasks.size());
    size_t n_correct = 0, n_evaluated = 0;
    double qaa_correct_sum = 0.0, qaa_incorrect_sum = 0.0;
    size_t qaa_correct_n = 0, qaa_incorrect_n = 0;
    std::map<std::string, std::pair<size_t, size_t>> dataset_counts;  // kind -> (n, correct)

    for (Task& t : tasks) {
        SampleResult sample;
        sample.id = t.record->id;
        if (t.error) {
            sample.error = t.error;
            report.errored_ids.push_back(sample.id);
            report.samples.push_back(std::move(sample));
            continue;
        }
        sample.raw_response = t.response;
        sample.outcome = filter_response(t.response, options.filter_mode, options.role_token,
                                         t.record->dataset_kind);
        sample.correct = score_answer(sample.outcome.answer, *t.record, options.match_policy);
        sample.outcome.behavior =
            classify_behavior(sample.outcome, *t.record, sample.correct, options.thresholds);
        if (sample.outcome.detected_question && !trim(t.record->question).empty()) {
            sample.qaa = qaa({*sample.outcome.detected_question}, t.record->question).qaa;
        }

        ++n_evaluated;
        if (sample.correct) ++n_correct;
        auto& [dn, dc] = dataset_counts[to_string(t.record->dataset_kind)];
        ++dn;
        if (sample.correct) ++dc;
        ++report.behavior_histogram[to_string(*sample.outcome.behavior)];
        if (sample.qaa) {
            if (sample.correct) {
                qaa_correct_sum += *sample.qaa;
                ++qaa_correct_n;
            } else {
                qaa_incorrect_sum += *sample.qaa;
                ++qaa_incorrect_n;
            }
        }
        report.samples.push_back(std::move(sample));
    }

    if (!tasks.empty() && n_evaluated == 0)
        throw IoError("endpoint failed for all " + std::to_string(tasks.size()) +
                      " samples; first error: " + *tasks.front().error);

    report.overall_accuracy = n_evaluated == 0 ? 0.0 : double(n_correct) / double(n_evaluated);
    for (const auto& [kind, counts] : dataset_counts) {
        report.per_dataset[kind] = {counts.first,
                                    counts.first == 0
                                        ? 0.0
                                        : double(counts.second) / double(counts.first)};
    }
    if (qaa_correct_n > 0) report.qaa_correct = qaa_correct_sum / double(qaa_correct_n);
    if (qaa_incorrect_n > 0) report.qaa_incorrect = qaa_incorrect_sum / double(qaa_incorrect_n);
    return report;
}

std::string report_to_json(const EvalReport& report) {
    nlohmann::json obj;
    obj["overall_accuracy"] = report.overall_accuracy;
    nlohmann::json per_dataset = nlohmann::json::object();
    for (const auto& [kind, stats] : report.per_dataset)
        per_dataset[kind] = {{"n", stats.n}, {"accuracy", stats.accuracy}};
    obj["per_dataset"] = per_dataset;
    if (report.qaa_correct) obj["qaa_correct"] = *report.qaa_correct;
    if (report.qaa_incorrect) obj["qaa_incorrect"] = *report.qaa_incorrect;
    obj["behavior_histogram"] = report.behavior_histogram;
    obj["errored_ids"] = report.errored_ids;
    obj["run_config"] = nlohmann::json::parse(report.run_config_json);
    nlohmann::json samples = nlohmann::json::array();
    for (const auto& s : report.samples) {
        nlohmann::json row;
        row["id"] = s.id;
        if (s.error) {
            row["error"] = *s.error;
        } else {
            row["answer"] = s.outcome.answer;
            if (s.outcome.detected_question)
                row["detected_question"] = *s.outcome.detected_question;
            row["strategy"] = to_string(s.outcome.strategy);
            if (s.outcome.behavior) row["behavior"] = to_string(*s.outcome.behavior);
            row["correct"] = s.correct;
            if (s.qaa) row["qaa"] = *s.qaa;
        }
        samples.push_back(std::move(row));
    }
    obj["samples"] = samples;
    return obj.dump(2);
}

std::string report_to_table(const EvalReport& report) {
    std::ostringstream out;
    out << "dataset        n      accuracy\n";
    for (const auto& [kind, stats] : report.per_dataset) {
        out << kind;
        for (size_t i = kind.size(); i < 15; ++i) out << ' ';
        std::string n = std::to_string(stats.n);
        out << n;
        for (size_t i = n.size(); i < 7; ++i) out << ' ';
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.4f", stats.accuracy);
        out << buf << "\n";
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "overall accuracy: %.4f", report.overall_accuracy);
    out << buf << "\n";
    if (report.qaa_correct) {
        std::snprintf(buf, sizeof(buf), "QAA (correct answers): %.4f", *report.qaa_correct);
        out << buf << "\n";
    }
    if (report.qaa_incorrect) {
        std::snprintf(buf, sizeof(buf), "QAA (incorrect answers): %.4f", *report.qaa_incorrect);
        out << buf << "\n";
    }
    if (!report.behavior_histogram.empty()) {
        out << "behaviors:";
        for (const auto& [b, n] : report.behavior_histogram) out << " " << b << "=" << n;
        out << "\n";
    }
    if (!report.errored_ids.empty())
        out << "errored samples: " << report.errored_ids.size() << "\n";
    return out.str();
}

}  // namespace inq
