// Copyright 2026 the inq authors
// SPDX-License-Identifier: Apache-2.0

#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "inq/composite_io.hpp"
#include "inq/concat.hpp"
#include "inq/harness.hpp"
#include "inq/imageio.hpp"
#include "inq/manifest.hpp"
#include "inq/metrics.hpp"
#include "inq/prompts.hpp"
#include "inq/respfilter.hpp"
#include "inq/rng.hpp"
#include "inq/sft.hpp"
#include "inq/watermark.hpp"

namespace {

using nlohmann::json;

void write_snapshot(const std::string& path, const json& config) {
    std::ofstream out(path);
    if (!out) throw inq::IoError("cannot write config snapshot: " + path);
    out << config.dump(2) << "\n";
}

void for_each_jsonl_line(const std::string& path,
                         const std::function<void(const json&)>& fn) {
    std::ifstream in(path);
    if (!in) throw inq::IoError("cannot open " + path);
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        json obj = json::parse(line, nullptr, false);
        if (obj.is_discarded())
            throw inq::ValidationError(path + ":" + std::to_string(lineno) + ": invalid JSON");
        fn(obj);
    }
}

struct RenderArgs {
    std::string manifest;
    std::string out_dir;
    std::string method = "watermark";
    std::string position = "random";
    std::string font;
    uint64_t seed = 0;
    int jobs = 1;
    int tile_side = 224;
    size_t max_question_chars = 300;
    std::vector<std::string> strip_tokens;
};

inq::ConcatPosition pick_position(const RenderArgs& args, const std::string& record_id) {
    if (args.position == "top") return inq::ConcatPosition::top;
    if (args.position == "bottom") return inq::ConcatPosition::bottom;
    if (args.position == "left") return inq::ConcatPosition::left;
    if (args.position == "right") return inq::ConcatPosition::right;
    if (args.position == "random") {
        auto rng = inq::make_rng(args.seed, record_id);
        switch (std::uniform_int_distribution<int>(0, 3)(rng)) {
            case 0: return inq::ConcatPosition::top;
            case 1: return inq::ConcatPosition::bottom;
            case 2: return inq::ConcatPosition::left;
            default: return inq::ConcatPosition::right;
        }
    }
    throw inq::ValidationError("unknown position: " + args.position);
}

int cmd_render(const RenderArgs& args) {
    inq::PrepConfig prep;
    prep.max_question_chars = args.max_question_chars;
    prep.ocr_strip_tokens = args.strip_tokens;

    std::vector<inq::SampleRecord> records;
    for (const auto& rec : inq::load_manifest(args.manifest))
        records.push_back(inq::prepare_question(rec, prep));

    std::filesystem::create_directories(args.out_dir);
    std::vector<std::optional<inq::SidecarEntry>> entries(records.size());

    std::atomic<size_t> next{0};
    std::mutex err_mu;
    std::exception_ptr first_error;
    auto worker = [&]() {
        for (;;) {
            size_t i = next.fetch_add(1);
            if (i >= records.size()) return;
            const auto& rec = records[i];
            if (rec.excluded) continue;
            try {
                inq::ImageU8 scene = inq::load_image(rec.scene_path);
                inq::CompositeArtifact art;
                if (args.method == "watermark") {
                    art = inq::compose_watermark(scene, rec, args.font);
                } else if (args.method == "concat-pad" || args.method == "concat-resize") {
                    art = inq::compose_concat(scene, rec, pick_position(args, rec.id),
                                              args.method == "concat-resize", args.tile_side,
                                              args.font);
                } else {
                    throw inq::ValidationError("unknown method: " + args.method);
                }
                entries[i] = inq::save_composite(art, args.out_dir);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mu);
                if (!first_error) first_error = std::current_exception();
                next.store(records.size());
                return;
            }
        }
    };
    size_t n_threads = std::max(1, std::min<int>(args.jobs, int(records.size())));
    std::vector<std::thread> threads;
    for (size_t t = 0; t < n_threads; ++t) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
    if (first_error) std::rethrow_exception(first_error);

    std::vector<inq::SidecarEntry> sidecar;
    for (auto& e : entries)
        if (e) sidecar.push_back(std::move(*e));
    inq::save_sidecar(args.out_dir + "/sidecar.jsonl", sidecar);

    write_snapshot(args.out_dir + "/render_config.json",
                   {{"manifest", args.manifest},
                    {"out", args.out_dir},
                    {"method", args.method},
                    {"position", args.position},
                    {"seed", args.seed},
                    {"jobs", args.jobs},
                    {"tile_side", args.tile_side},
                    {"max_question_chars", args.max_question_chars},
                    {"strip_tokens", args.strip_tokens},
                    {"font", args.font}});
    std::cout << "rendered " << sidecar.size() << " composites to " << args.out_dir << "\n";
    return 0;
}

struct PromptArgs {
    std::string kind = "light";
    size_t variant = 0;
    std::string bbox;        // "x0,y0,x1,y1"
    std::string image_size;  // "WxH"
    int few_shot = 0;
    std::string pool;
    std::string target_id = "target";
    std::string target_image = "<image>";
    uint64_t seed = 0;
};

inq::Bbox parse_bbox(const std::string& s) {
    inq::Bbox b;
    if (std::sscanf(s.c_str(), "%d,%d,%d,%d", &b.x0, &b.y0, &b.x1, &b.y1) != 4)
        throw inq::ValidationError("bbox must be x0,y0,x1,y1");
    return b;
}

int cmd_prompt(const PromptArgs& args) {
    if (args.few_shot > 0) {
        std::vector<inq::DemoExample> pool;
        for_each_jsonl_line(args.pool, [&](const json& obj) {
            inq::DemoExample ex;
            ex.image_path = obj.at("image").get<std::string>();
            ex.question = obj.at("question").get<std::string>();
            ex.answer = obj.at("answer").get<std::string>();
            if (obj.contains("dataset"))
                ex.dataset_kind = inq::dataset_kind_from_string(obj.at("dataset"));
            pool.push_back(std::move(ex));
        });
        inq::CompositeArtifact target;
        target.source_id = args.target_id;
        target.image_path = args.target_image;
        inq::FewShotPrompt prompt =
            inq::assemble_few_shot(pool, args.few_shot, args.seed, target);
        std::cout << prompt.text << "\n";
        for (const auto& slot : prompt.image_slots) std::cerr << "image: " << slot << "\n";
        return 0;
    }

    inq::PromptKind kind = inq::prompt_kind_from_string(args.kind);
    if (kind == inq::PromptKind::light && args.variant > 0) {
        std::cout << inq::light_prompt_variant(args.variant) << "\n";
        return 0;
    }
    bool substitute = !args.bbox.empty();
    if (!substitute) {
        // No geometry given: dump the template verbatim.
        switch (kind) {
            case inq::PromptKind::none: std::cout << "\n"; return 0;
            case inq::PromptKind::light: std::cout << inq::light_prompt_variant(0) << "\n"; return 0;
            case inq::PromptKind::short_workflow:
                std::cout << inq::short_workflow_template() << "\n";
                return 0;
            case inq::PromptKind::long_workflow:
                std::cout << inq::long_workflow_template() << "\n";
                return 0;
            case inq::PromptKind::ocr_assisted:
                throw inq::ValidationError("ocr-assisted has no stored template, pass OCR text "
                                           "via the run subcommand");
        }
    }
    inq::CompositeArtifact art;
    art.question_bbox = parse_bbox(args.bbox);
    if (std::sscanf(args.image_size.c_str(), "%dx%d", &art.width, &art.height) != 2)
        throw inq::ValidationError("image size must be WxH");
    std::cout << inq::build_prompt(kind, art) << "\n";
    return 0;
}

struct FilterArgs {
    std::string responses;
    std::string out;
    std::string mode = "auto";
    std::string role_token = "ASSISTANT:";
    std::string manifest;
};

int cmd_filter(const FilterArgs& args) {
    std::map<std::string, inq::DatasetKind> kinds;
    if (!args.manifest.empty()) {
        for (const auto& rec : inq::load_manifest(args.manifest))
            kinds[rec.id] = rec.dataset_kind;
    }
    inq::FilterMode mode = inq::filter_mode_from_string(args.mode);

    std::ofstream out(args.out);
    if (!out) throw inq::IoError("cannot write " + args.out);
    size_t n = 0;
    for_each_jsonl_line(args.responses, [&](const json& obj) {
        std::string id = obj.at("id").get<std::string>();
        std::string raw = obj.at("response").get<std::string>();
        auto it = kinds.find(id);
        inq::FilterOutcome outcome = inq::filter_response(
            raw, mode, args.role_token,
            it == kinds.end() ? inq::DatasetKind::custom : it->second);
        json row;
        row["id"] = id;
        row["answer"] = outcome.answer;
        if (outcome.detected_question) row["detected_question"] = *outcome.detected_question;
        row["strategy"] = inq::to_string(outcome.strategy);
        if (outcome.flagged) row["flagged"] = true;
        out << row.dump() << "\n";
        ++n;
    });
    write_snapshot(args.out + ".config.json",
                   {{"responses", args.responses},
                    {"out", args.out},
                    {"mode", args.mode},
                    {"role_token", args.role_token},
                    {"manifest", args.manifest}});
    std::cout << "filtered " << n << " responses to " << args.out << "\n";
    return 0;
}

struct ScoreArgs {
    std::string outcomes;
    std::string manifest;
    std::string policy = "exact";
    std::string out;
};

int cmd_score(const ScoreArgs& args) {
    // Prepare questions exactly as the renderer does, so behavior
    // classification compares responses against the text that was in the
    // image.
    std::map<std::string, inq::SampleRecord> records;
    for (const auto& rec : inq::load_manifest(args.manifest)) {
        inq::SampleRecord prepared = inq::prepare_question(rec, {});
        records[prepared.id] = std::move(prepared);
    }
    inq::MatchPolicy policy =
        args.policy == "vqa-soft" ? inq::MatchPolicy::vqa_soft : inq::MatchPolicy::exact;

    std::map<std::string, std::pair<size_t, size_t>> per_dataset;
    std::map<std::string, size_t> behaviors;
    size_t n = 0, correct = 0;
    for_each_jsonl_line(args.outcomes, [&](const json& obj) {
        std::string id = obj.at("id").get<std::string>();
        auto it = records.find(id);
        if (it == records.end())
            throw inq::ValidationError("outcome id \"" + id + "\" is not in the manifest");
        if (it->second.excluded) return;  // never rendered, never evaluated
        inq::FilterOutcome outcome;
        outcome.answer = obj.at("answer").get<std::string>();
        if (obj.contains("detected_question"))
            outcome.detected_question = obj.at("detected_question").get<std::string>();
        bool ok = inq::score_answer(outcome.answer, it->second, policy);
        inq::Behavior b = inq::classify_behavior(outcome, it->second, ok);
        ++n;
        if (ok) ++correct;
        auto& [dn, dc] = per_dataset[inq::to_string(it->second.dataset_kind)];
        ++dn;
        if (ok) ++dc;
        ++behaviors[inq::to_string(b)];
    });

    json report;
    report["n"] = n;
    report["overall_accuracy"] = n == 0 ? 0.0 : double(correct) / double(n);
    json per = json::object();
    for (const auto& [kind, counts] : per_dataset)
        per[kind] = {{"n", counts.first},
                     {"accuracy", double(counts.second) / double(counts.first)}};
    report["per_dataset"] = per;
    report["behavior_histogram"] = behaviors;
    std::cout << report.dump(2) << "\n";
    if (!args.out.empty()) {
        std::ofstream out(args.out);
        if (!out) throw inq::IoError("cannot write " + args.out);
        out << report.dump(2) << "\n";
        write_snapshot(args.out + ".config.json",
                       {{"outcomes", args.outcomes},
                        {"manifest", args.manifest},
                        {"policy", args.policy}});
    }
    return 0;
}

struct QaaArgs {
    std::string pred;
    std::string ref;
};

int cmd_qaa(const QaaArgs& args) {
    // References are the prepared questions — the text actually rendered.
    std::map<std::string, std::string> questions;
    for (const auto& rec : inq::load_manifest(args.ref))
        questions[rec.id] = inq::prepare_question(rec, {}).question;

    double sum = 0.0;
    size_t n = 0;
    for_each_jsonl_line(args.pred, [&](const json& obj) {
        std::string id = obj.at("id").get<std::string>();
        std::string predicted;
        if (obj.contains("question"))
            predicted = obj.at("question").get<std::string>();
        else if (obj.contains("detected_question"))
            predicted = obj.at("detected_question").get<std::string>();
        else
            throw inq::ValidationError("prediction for \"" + id +
                                       "\" has no question/detected_question field");
        auto it = questions.find(id);
        if (it == questions.end())
            throw inq::ValidationError("prediction id \"" + id + "\" is not in the manifest");
        inq::QaaResult r = inq::qaa({predicted}, it->second);
        std::cout << id << "\t" << r.qaa << "\n";
        sum += r.qaa;
        ++n;
    });
    if (n == 0) throw inq::ValidationError("no predictions found in " + args.pred);
    std::cout << "mean\t" << sum / double(n) << "\n";
    return 0;
}

struct SftArgs {
    std::string manifest;
    std::string strategy = "qra";
    std::string role_token = "ASSISTANT:";
    std::string composites;
    std::string out;
    size_t max_question_chars = 300;
};

int cmd_sft(const SftArgs& args) {
    inq::SftStrategy strategy = inq::sft_strategy_from_string(args.strategy);
    inq::PrepConfig prep;
    prep.max_question_chars = args.max_question_chars;

    std::map<std::string, inq::CompositeArtifact> composites;
    if (!args.composites.empty()) {
        for (auto& art :
             inq::load_artifacts(args.composites, args.composites + "/sidecar.jsonl"))
            composites[art.source_id] = std::move(art);
    }

    std::ofstream out(args.out);
    if (!out) throw inq::IoError("cannot write " + args.out);
    size_t n = 0;
    for (const auto& raw : inq::load_manifest(args.manifest)) {
        inq::SampleRecord rec = inq::prepare_question(raw, prep);
        if (rec.excluded) continue;
        std::optional<inq::CompositeArtifact> artifact;
        if (auto it = composites.find(rec.id); it != composites.end()) artifact = it->second;
        if (strategy != inq::SftStrategy::vqa && !artifact)
            throw inq::ValidationError(
                "strategy " + args.strategy + " needs rendered composites; pass --composites "
                "(record \"" + rec.id + "\" has none)");
        inq::SftExample ex = inq::build_sft_example(rec, artifact, strategy, args.role_token);
        json row;
        row["id"] = ex.id;
        row["image"] = ex.image_ref;
        row["input"] = ex.input_text;
        row["target"] = ex.target_text;
        row["strategy"] = inq::to_string(ex.strategy);
        row["role_token"] = ex.role_token;
        out << row.dump() << "\n";
        ++n;
    }
    write_snapshot(args.out + ".config.json",
                   {{"manifest", args.manifest},
                    {"strategy", args.strategy},
                    {"role_token", args.role_token},
                    {"composites", args.composites},
                    {"out", args.out}});
    std::cout << "wrote " << n << " training pairs to " << args.out << "\n";
    return 0;
}

struct RunArgs {
    std::string manifest;
    std::string composites;
    std::string endpoint;
    std::string prompt_kind = "none";
    std::string filter_mode = "auto";
    std::string role_token = "ASSISTANT:";
    std::string policy = "exact";
    std::string out = "report.json";
    int concurrency = 4;
    bool resume = false;
    size_t max_question_chars = 300;
};

int cmd_run(const RunArgs& args) {
    inq::PrepConfig prep;
    prep.max_question_chars = args.max_question_chars;
    std::vector<inq::SampleRecord> records;
    for (const auto& rec : inq::load_manifest(args.manifest))
        records.push_back(inq::prepare_question(rec, prep));

    std::vector<inq::CompositeArtifact> artifacts =
        inq::load_artifacts(args.composites, args.composites + "/sidecar.jsonl");

    inq::EndpointConfig config = inq::load_endpoint_config(args.endpoint);
    std::unique_ptr<inq::Endpoint> endpoint = inq::make_endpoint(config);

    inq::RunOptions options;
    options.prompt_kind = inq::prompt_kind_from_string(args.prompt_kind);
    options.filter_mode = inq::filter_mode_from_string(args.filter_mode);
    options.role_token = args.role_token;
    options.match_policy =
        args.policy == "vqa-soft" ? inq::MatchPolicy::vqa_soft : inq::MatchPolicy::exact;
    options.concurrency = args.concurrency;
    options.max_retries = config.max_retries;
    options.backoff_base_ms = config.backoff_base_ms;
    options.cache_path =
        (std::filesystem::path(args.out).parent_path() / "responses_cache.jsonl").string();
    if (!args.resume) std::filesystem::remove(options.cache_path);

    inq::EvalReport report = inq::run_eval(artifacts, records, *endpoint, options);

    std::ofstream out(args.out);
    if (!out) throw inq::IoError("cannot write " + args.out);
    out << inq::report_to_json(report) << "\n";
    write_snapshot(args.out + ".config.json",
                   {{"manifest", args.manifest},
                    {"composites", args.composites},
                    {"endpoint", args.endpoint},
                    {"prompt_kind", args.prompt_kind},
                    {"filter_mode", args.filter_mode},
                    {"role_token", args.role_token},
                    {"policy", args.policy},
                    {"concurrency", args.concurrency},
                    {"resume", args.resume},
                    {"out", args.out}});
    std::cout << inq::report_to_table(report);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Visual-only QA benchmark toolkit: renders questions into scene images and "
                 "evaluates model responses"};
    app.require_subcommand(1);

    RenderArgs render;
    auto* render_cmd = app.add_subcommand("render", "Render composite images from a manifest");
    render_cmd->add_option("--manifest", render.manifest, "input manifest JSONL")->required();
    render_cmd->add_option("--out", render.out_dir, "output directory")->required();
    render_cmd->add_option("--method", render.method, "watermark|concat-pad|concat-resize");
    render_cmd->add_option("--position", render.position, "top|bottom|left|right|random");
    render_cmd->add_option("--seed", render.seed, "RNG seed (default 0)");
    render_cmd->add_option("--jobs", render.jobs, "worker threads");
    render_cmd->add_option("--tile-side", render.tile_side, "concat tile side in px");
    render_cmd->add_option("--font", render.font, "font file override");
    render_cmd->add_option("--max-question-chars", render.max_question_chars,
                           "length cutoff for sqa records");
    render_cmd->add_option("--strip-token", render.strip_tokens,
                           "literal token stripped from textvqa questions (repeatable)");

    PromptArgs prompt;
    auto* prompt_cmd = app.add_subcommand("prompt", "Print prompt templates or built prompts");
    prompt_cmd->add_option("--kind", prompt.kind, "none|light|short-workflow|long-workflow");
    prompt_cmd->add_option("--variant", prompt.variant, "light prompt variant index (0-6)");
    prompt_cmd->add_option("--bbox", prompt.bbox, "question bbox x0,y0,x1,y1");
    prompt_cmd->add_option("--image-size", prompt.image_size, "composite size WxH");
    prompt_cmd->add_option("--k", prompt.few_shot, "few-shot example count (1,2,4,8)");
    prompt_cmd->add_option("--pool", prompt.pool, "demonstration pool JSONL");
    prompt_cmd->add_option("--target-id", prompt.target_id, "target sample id (seeds the draw)");
    prompt_cmd->add_option("--target-image", prompt.target_image, "target image path");
    prompt_cmd->add_option("--seed", prompt.seed, "RNG seed (default 0)");

    FilterArgs filter;
    auto* filter_cmd = app.add_subcommand("filter", "Extract answers from raw responses");
    filter_cmd->add_option("--responses", filter.responses, "responses JSONL")->required();
    filter_cmd->add_option("--out", filter.out, "outcomes JSONL")->required();
    filter_cmd->add_option("--mode", filter.mode, "auto|json|qra|qa|verbatim");
    filter_cmd->add_option("--role-token", filter.role_token, "role token for qra mode");
    filter_cmd->add_option("--manifest", filter.manifest, "manifest for dataset kinds");

    ScoreArgs score;
    auto* score_cmd = app.add_subcommand("score", "Score filtered outcomes against ground truth");
    score_cmd->add_option("--outcomes", score.outcomes, "outcomes JSONL")->required();
    score_cmd->add_option("--manifest", score.manifest, "manifest JSONL")->required();
    score_cmd->add_option("--policy", score.policy, "exact|vqa-soft");
    score_cmd->add_option("--out", score.out, "report JSON path");

    QaaArgs qaa_args;
    auto* qaa_cmd = app.add_subcommand("qaa", "Question alignment accuracy per sample");
    qaa_cmd->add_option("--pred", qaa_args.pred, "predictions JSONL")->required();
    qaa_cmd->add_option("--ref", qaa_args.ref, "reference manifest JSONL")->required();

    SftArgs sft;
    auto* sft_cmd = app.add_subcommand("sft", "Emit fine-tuning sequence pairs");
    sft_cmd->add_option("--manifest", sft.manifest, "manifest JSONL")->required();
    sft_cmd->add_option("--strategy", sft.strategy,
                        "vqa|baseline|qa|qra|r_qra|qa_only|rqa|rqra");
    sft_cmd->add_option("--role-token", sft.role_token, "role token");
    sft_cmd->add_option("--composites", sft.composites, "rendered composites directory");
    sft_cmd->add_option("--out", sft.out, "output JSONL")->required();
    sft_cmd->add_option("--max-question-chars", sft.max_question_chars,
                        "length cutoff for sqa records");

    RunArgs run;
    auto* run_cmd = app.add_subcommand("run", "Evaluate an endpoint over rendered composites");
    run_cmd->add_option("--manifest", run.manifest, "manifest JSONL")->required();
    run_cmd->add_option("--composites", run.composites, "rendered composites directory")
        ->required();
    run_cmd->add_option("--endpoint", run.endpoint, "endpoint config JSON")->required();
    run_cmd->add_option("--prompt-kind", run.prompt_kind,
                        "none|light|short-workflow|long-workflow|ocr-assisted");
    run_cmd->add_option("--filter-mode", run.filter_mode, "auto|json|qra|qa|verbatim");
    run_cmd->add_option("--role-token", run.role_token, "role token for qra filtering");
    run_cmd->add_option("--policy", run.policy, "exact|vqa-soft");
    run_cmd->add_option("--concurrency", run.concurrency, "max in-flight requests");
    run_cmd->add_option("--out", run.out, "report JSON path");
    run_cmd->add_flag("--resume", run.resume, "reuse the response cache from a previous run");

    try {
        app.parse(argc, argv);
        if (render_cmd->parsed()) return cmd_render(render);
        if (prompt_cmd->parsed()) return cmd_prompt(prompt);
        if (filter_cmd->parsed()) return cmd_filter(filter);
        if (score_cmd->parsed()) return cmd_score(score);
        if (qaa_cmd->parsed()) return cmd_qaa(qaa_args);
        if (sft_cmd->parsed()) return cmd_sft(sft);
        if (run_cmd->parsed()) return cmd_run(run);
    } catch (const CLI::CallForHelp& e) {
        std::cout << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n" << app.help();
        return 1;
    } catch (const inq::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const inq::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
