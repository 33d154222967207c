// Copyright 2026 the inq authors
// SPDX-License-Identifier: Apache-2.0
//
// End-to-end acceptance checks, one [PASS]/[FAIL] line each. Every numeric
// claim is verified against an oracle computed independently in this file.
// argv[1] must be the path to the command line binary (used by the
// determinism check).

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "inq/color.hpp"
#include "inq/composite_io.hpp"
#include "inq/concat.hpp"
#include "inq/endpoint.hpp"
#include "inq/harness.hpp"
#include "inq/imageio.hpp"
#include "inq/manifest.hpp"
#include "inq/metrics.hpp"
#include "inq/prompts.hpp"
#include "inq/respfilter.hpp"
#include "inq/sft.hpp"
#include "inq/watermark.hpp"

#ifndef INQ_TEST_GOLDEN_DIR
#define INQ_TEST_GOLDEN_DIR "goldens"
#endif
#ifndef INQ_MOCK_MODEL
#define INQ_MOCK_MODEL "mock_model"
#endif

using namespace inq;

namespace {

std::string g_cli_path;

struct Failure {
    std::string detail;
};

void expect(bool ok, const std::string& detail) {
    if (!ok) throw Failure{detail};
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        std::string tmpl =
            (std::filesystem::temp_directory_path() / "inq_accept_XXXXXX").string();
        if (!mkdtemp(tmpl.data())) throw Failure{"mkdtemp failed"};
        path = tmpl;
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path, ec);
    }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

ImageU8 random_scene(int w, int h, std::mt19937_64& rng) {
    ImageU8 img = ImageU8::make(w, h, 3, 0);
    for (auto& b : img.data) b = uint8_t(rng() & 0xFF);
    return img;
}

std::string file_bytes(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    expect(bool(in), "cannot read " + path);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// Independent WCAG relative luminance / contrast, written from the published
// formula rather than shared with the library.
double oracle_luminance(Rgb c) {
    auto lin = [](double v) {
        v /= 255.0;
        return v <= 0.03928 ? v / 12.92 : std::pow((v + 0.055) / 1.055, 2.4);
    };
    return 0.2126 * lin(c.r) + 0.7152 * lin(c.g) + 0.0722 * lin(c.b);
}

double oracle_contrast(Rgb a, Rgb b) {
    double la = oracle_luminance(a), lb = oracle_luminance(b);
    if (la < lb) std::swap(la, lb);
    return (la + 0.05) / (lb + 0.05);
}

// Independent full-matrix edit distance over bytes (inputs are ASCII here).
size_t oracle_edit_distance(const std::string& a, const std::string& b) {
    std::vector<std::vector<size_t>> d(a.size() + 1, std::vector<size_t>(b.size() + 1));
    for (size_t i = 0; i <= a.size(); ++i) d[i][0] = i;
    for (size_t j = 0; j <= b.size(); ++j) d[0][j] = j;
    for (size_t i = 1; i <= a.size(); ++i) {
        for (size_t j = 1; j <= b.size(); ++j) {
            size_t best = std::min(d[i - 1][j], d[i][j - 1]) + 1;
            size_t sub = d[i - 1][j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
            d[i][j] = std::min(best, sub);
        }
    }
    return d[a.size()][b.size()];
}

int run_cli(const std::string& args) {
    std::string cmd = g_cli_path + " " + args + " >/dev/null 2>&1";
    int status = std::system(cmd.c_str());
    if (status == -1 || !WIFEXITED(status)) return -1;
    return WEXITSTATUS(status);
}

// --------------------------------------------------------------- criteria

// Composite square side is floor(min(H,W)/4) and sits inside the image.
void c01_watermark_geometry() {
    std::mt19937_64 rng(101);
    std::uniform_int_distribution<int> dim(64, 2048);
    for (int i = 0; i < 200; ++i) {
        int w = dim(rng), h = dim(rng);
        ImageU8 scene = ImageU8::make(w, h, 3, uint8_t((i * 37 + w) & 0xFF));
        auto candidates = enumerate_candidates(scene);
        int want = std::min(w, h) / 4;
        for (const auto& c : candidates) {
            expect(c.side_px == want, "side " + std::to_string(c.side_px) + " != floor(min(" +
                                          std::to_string(w) + "," + std::to_string(h) + ")/4)");
            expect(c.x0 >= 0 && c.y0 >= 0 && c.x0 + c.side_px <= w && c.y0 + c.side_px <= h,
                   "candidate outside the image");
        }
        const RegionCandidate& best = select_region(candidates);
        expect(best.x0 + best.side_px <= w && best.y0 + best.side_px <= h,
               "selected region outside the image");
    }
}

// Every composite's color either clears 4.5:1 or is the better of black/white.
void c02_color_contract() {
    std::mt19937_64 rng(202);
    std::uniform_int_distribution<int> dim(128, 256);
    for (int i = 0; i < 500; ++i) {
        ImageU8 scene = random_scene(dim(rng), dim(rng), rng);
        SampleRecord rec;
        rec.id = "c" + std::to_string(i);
        rec.scene_path = rec.id + ".png";
        rec.question = "Hi?";
        rec.answers = {"x"};
        CompositeArtifact art = compose_watermark(scene, rec);
        expect(art.color.has_value(), "composite carries no color");

        // Region mean recomputed from the untouched scene.
        const Bbox& b = art.question_bbox;
        double r = 0, g = 0, bl = 0;
        for (int y = b.y0; y < b.y1; ++y) {
            for (int x = b.x0; x < b.x1; ++x) {
                r += scene.at(x, y, 0);
                g += scene.at(x, y, 1);
                bl += scene.at(x, y, 2);
            }
        }
        double n = double(b.width()) * b.height();
        Rgb mean{uint8_t(std::lround(r / n)), uint8_t(std::lround(g / n)),
                 uint8_t(std::lround(bl / n))};

        Rgb c = art.color->rgb;
        double ratio = oracle_contrast(c, mean);
        if (art.color->provenance == ColorProvenance::computed) {
            expect(ratio > 4.5, "computed color at ratio " + fmt(ratio));
        } else {
            bool is_black = c == Rgb{0, 0, 0};
            bool is_white = c == Rgb{255, 255, 255};
            expect(is_black || is_white, "fallback color is neither black nor white");
            double other = oracle_contrast(is_black ? Rgb{255, 255, 255} : Rgb{0, 0, 0}, mean);
            expect(ratio >= other - 1e-9,
                   "fallback " + fmt(ratio) + " loses to the alternative " + fmt(other));
        }
    }
}

void c03_hsv_fixtures() {
    Hsv a = complementary_candidate_hsv({40.0, 220.0, 200.0});
    expect(a.h == 220.0 && a.s == 176.0 && a.v == 0.0,
           "(40,220,200) gave (" + fmt(a.h) + "," + fmt(a.s) + "," + fmt(a.v) + ")");
    Hsv b = complementary_candidate_hsv({300.0, 100.0, 50.0});
    expect(b.h == 120.0 && b.s == 255.0 && b.v == 255.0,
           "(300,100,50) gave (" + fmt(b.h) + "," + fmt(b.s) + "," + fmt(b.v) + ")");
}

void c04_wcag_formula() {
    double bw = wcag_contrast({0, 0, 0}, {255, 255, 255});
    expect(std::abs(bw - 21.0) <= 1e-9, "black/white ratio " + fmt(bw));

    std::mt19937_64 rng(404);
    for (int i = 0; i < 100; ++i) {
        Rgb c{uint8_t(rng()), uint8_t(rng()), uint8_t(rng())};
        double self = wcag_contrast(c, c);
        expect(self == 1.0, "self contrast " + fmt(self));
    }

    double lib = wcag_contrast({119, 119, 119}, {255, 255, 255});
    double ind = oracle_contrast({119, 119, 119}, {255, 255, 255});
    expect(std::abs(lib - ind) <= 1e-6,
           "#777777 vs white: " + fmt(lib) + " vs oracle " + fmt(ind));
}

// select_region against an exhaustive (score, y0, x0) argmin.
void c05_region_selection() {
    std::mt19937_64 rng(505);
    std::uniform_int_distribution<int> count(1, 50), pos(0, 500), quant(0, 7);
    for (int trial = 0; trial < 1000; ++trial) {
        std::vector<RegionCandidate> candidates(size_t(count(rng)));
        for (auto& c : candidates) {
            c.x0 = pos(rng);
            c.y0 = pos(rng);
            c.side_px = 32;
            c.score = quant(rng) / 8.0;  // coarse grid forces frequent ties
        }
        const RegionCandidate* oracle = &candidates[0];
        for (const auto& c : candidates) {
            auto key = std::tuple(c.score, c.y0, c.x0);
            if (key < std::tuple(oracle->score, oracle->y0, oracle->x0)) oracle = &c;
        }
        const RegionCandidate& got = select_region(candidates);
        expect(got.score == oracle->score && got.x0 == oracle->x0 && got.y0 == oracle->y0,
               "trial " + std::to_string(trial) + ": picked (" + std::to_string(got.x0) + "," +
                   std::to_string(got.y0) + ") oracle (" + std::to_string(oracle->x0) + "," +
                   std::to_string(oracle->y0) + ")");
    }
}

void c06_edit_distance() {
    std::mt19937_64 rng(606);
    std::uniform_int_distribution<int> len(0, 8), ch(0, 2);
    auto random_string = [&]() {
        std::string s;
        int n = len(rng);
        for (int i = 0; i < n; ++i) s.push_back(char('a' + ch(rng)));
        return s;
    };
    for (int i = 0; i < 100000; ++i) {
        std::string a = random_string(), b = random_string();
        size_t got = edit_distance(a, b);
        size_t want = oracle_edit_distance(a, b);
        expect(got == want, "d(\"" + a + "\",\"" + b + "\") = " + std::to_string(got) +
                                ", oracle " + std::to_string(want));
    }
}

void c07_qaa_properties() {
    std::mt19937_64 rng(707);
    std::uniform_int_distribution<int> len(1, 40), ch(0, 25);
    auto random_string = [&](int min_len) {
        std::string s;
        int n = std::max(min_len, len(rng));
        for (int i = 0; i < n; ++i) s.push_back(char('a' + ch(rng)));
        return s;
    };

    for (int i = 0; i < 10000; ++i) {
        std::string ref = random_string(1);
        std::string pred = random_string(0);
        double self = qaa({ref}, ref).qaa;
        expect(self == 1.0, "qaa(q,q) = " + fmt(self));
        double empty = qaa({""}, ref).qaa;
        expect(empty == 0.0, "qaa(\"\",q) = " + fmt(empty));
        double v = qaa({pred}, ref).qaa;
        expect(v >= 0.0 && v <= 1.0, "qaa out of range: " + fmt(v));
    }

    for (int i = 0; i < 1000; ++i) {
        std::string ref = random_string(1);
        std::vector<std::string> candidates;
        int k = 1 + int(rng() % 4);
        for (int j = 0; j < k; ++j) candidates.push_back(random_string(0));
        double base = qaa(candidates, ref).qaa;
        candidates.push_back(random_string(0));
        double more = qaa(candidates, ref).qaa;
        expect(more >= base - 1e-12,
               "adding a candidate lowered qaa: " + fmt(base) + " -> " + fmt(more));
        candidates.push_back(ref);
        double with_ref = qaa(candidates, ref).qaa;
        expect(with_ref == 1.0, "exact candidate did not reach 1");
    }
}

void c08_concat_geometry() {
    std::mt19937_64 rng(808);

    ImageU8 wide = random_scene(640, 480, rng);
    SampleRecord rec;
    rec.id = "g";
    rec.scene_path = "g.png";
    rec.question = "What color is the hat?";
    rec.answers = {"x"};

    CompositeArtifact a = compose_concat(wide, rec, ConcatPosition::bottom, false);
    expect(a.width == 640 && a.height == 704,
           "bottom/no-resize gave " + std::to_string(a.width) + "x" + std::to_string(a.height));
    expect(a.question_bbox == Bbox{208, 480, 432, 704}, "bottom/no-resize bbox off");

    CompositeArtifact b = compose_concat(wide, rec, ConcatPosition::left, true);
    expect(b.width == 1120 && b.height == 480,
           "left/resize gave " + std::to_string(b.width) + "x" + std::to_string(b.height));
    expect(b.question_bbox == Bbox{0, 0, 480, 480}, "left/resize bbox off");

    // No-resize mode must embed the scene bytes untouched.
    std::uniform_int_distribution<int> dim(40, 400), pick(0, 3);
    const int tile = 224;
    for (int i = 0; i < 100; ++i) {
        int w = dim(rng), h = dim(rng);
        ImageU8 scene = random_scene(w, h, rng);
        ConcatPosition position = ConcatPosition(pick(rng));
        CompositeArtifact art = compose_concat(scene, rec, position, false, tile);

        bool vertical = position == ConcatPosition::top || position == ConcatPosition::bottom;
        bool tile_first = position == ConcatPosition::top || position == ConcatPosition::left;
        int scene_shared = vertical ? w : h;
        int shared = std::max(scene_shared, tile);
        int center = (shared - scene_shared) / 2;

        int sx = vertical ? center : (tile_first ? tile : 0);
        int sy = vertical ? (tile_first ? tile : 0) : center;

        ImageU8 out;
        out.width = art.width;
        out.height = art.height;
        out.channels = 3;
        out.data = art.pixels;
        expect(region_equals(out, {sx, sy, sx + w, sy + h}, scene),
               "case " + std::to_string(i) + ": scene bytes not preserved");
    }
}

void c09_filter_fixtures() {
    std::string workflow_reply =
        "{\n"
        "    \"Detected Question\": \"What is the brand of this camera?\",\n"
        "    \"Answer\": \"Canon\",\n"
        "    \"Reasoning\": \"The text 'Canon' is clearly visible on the camera body.\"\n"
        "}";
    FilterOutcome json_out = filter_response(workflow_reply, FilterMode::auto_detect);
    expect(json_out.answer == "Canon", "workflow JSON gave \"" + json_out.answer + "\"");
    expect(json_out.detected_question == "What is the brand of this camera?",
           "workflow JSON lost the question");

    FilterOutcome qra_out =
        filter_response("What color is the hat? ASSISTANT: red", FilterMode::qra);
    expect(qra_out.answer == "red", "role split gave \"" + qra_out.answer + "\"");
    expect(qra_out.detected_question.has_value(), "role split lost the question");

    SampleRecord rec;
    rec.id = "b";
    rec.scene_path = "b.png";
    rec.question = "Is there a dog?";
    rec.answers = {"yes"};
    rec.question_type = QuestionType::binary;
    expect(!score_answer("No dog here", rec), "\"No dog here\" scored true against yes");
}

void c10_prompt_goldens() {
    std::string dir = INQ_TEST_GOLDEN_DIR;
    expect(file_bytes(dir + "/light_prompt.txt") == light_prompt_variant(0) + "\n",
           "light prompt differs from the golden");
    expect(file_bytes(dir + "/short_workflow_prompt.txt") == short_workflow_template() + "\n",
           "short workflow prompt differs from the golden");
    expect(file_bytes(dir + "/long_workflow_prompt.txt") == long_workflow_template() + "\n",
           "long workflow prompt differs from the golden");

    std::mt19937_64 rng(1010);
    std::uniform_int_distribution<int> coord(0, 2000), extent(1, 500);
    const char* placeholders[] = {"<bbox>", "<top-left-location>", "<bottom-right-location>",
                                  "<picture-width>", "<picture-height>"};
    for (int i = 0; i < 100; ++i) {
        CompositeArtifact art;
        art.question_bbox.x0 = coord(rng);
        art.question_bbox.y0 = coord(rng);
        art.question_bbox.x1 = art.question_bbox.x0 + extent(rng);
        art.question_bbox.y1 = art.question_bbox.y0 + extent(rng);
        art.width = art.question_bbox.x1 + extent(rng);
        art.height = art.question_bbox.y1 + extent(rng);
        for (PromptKind kind : {PromptKind::short_workflow, PromptKind::long_workflow}) {
            std::string p = build_prompt(kind, art);
            for (const char* ph : placeholders)
                expect(p.find(ph) == std::string::npos,
                       std::string("residual placeholder ") + ph);
        }
    }
}

void c11_sft_round_trips() {
    std::mt19937_64 rng(1111);
    const SftStrategy strategies[] = {SftStrategy::vqa,     SftStrategy::baseline,
                                      SftStrategy::qa,      SftStrategy::qra,
                                      SftStrategy::r_qra,   SftStrategy::qa_only,
                                      SftStrategy::rqa,     SftStrategy::rqra};
    const char* role_tokens[] = {"ASSISTANT:", "\nassistant\n", "HELPER:", "CAT:"};

    for (int i = 0; i < 100; ++i) {
        SampleRecord rec;
        rec.id = "s" + std::to_string(i);
        rec.scene_path = rec.id + ".png";
        rec.question = "What is the color of object " + std::to_string(rng() % 97) +
                       " in scene " + std::to_string(rng() % 89) + "?";
        rec.answers = {"shade" + std::to_string(rng() % 1000)};
        CompositeArtifact art;
        art.source_id = rec.id;
        art.image_path = rec.id + "_composite.png";

        for (SftStrategy strategy : strategies) {
            for (const char* token : role_tokens) {
                SftExample ex = build_sft_example(rec, art, strategy, token);
                expect(round_trip_check(ex),
                       std::string("round trip failed for ") + to_string(strategy) +
                           " with token \"" + token + "\" on " + rec.id);
            }
        }
    }
}

void c12_oracle_harness() {
    TempDir tmp;
    std::mt19937_64 rng(1212);

    std::vector<SampleRecord> records;
    std::vector<SidecarEntry> entries;
    for (int i = 0; i < 50; ++i) {
        SampleRecord rec;
        rec.id = "s" + std::to_string(i);
        rec.question = "Code word " + std::to_string(i) + "?";
        rec.answers = {"zebra" + std::to_string(i)};
        rec.dataset_kind = i % 2 == 0 ? DatasetKind::vqav2 : DatasetKind::gqa;
        rec.scene_path = tmp.file(rec.id + "_scene.png");

        ImageU8 scene = random_scene(160, 160, rng);
        save_png(rec.scene_path, scene);
        CompositeArtifact art = compose_watermark(scene, rec);
        entries.push_back(save_composite(art, tmp.path.string()));
        records.push_back(std::move(rec));
    }
    std::string manifest_path = tmp.file("manifest.jsonl");
    std::string sidecar_path = tmp.file("sidecar.jsonl");
    save_manifest(manifest_path, records);
    save_sidecar(sidecar_path, entries);
    auto artifacts = load_artifacts(tmp.path.string(), sidecar_path);

    RunOptions options;
    options.filter_mode = FilterMode::auto_detect;
    options.concurrency = 4;

    EndpointConfig truth;
    truth.kind = EndpointKind::subprocess;
    truth.id = "truth";
    truth.command = std::string(INQ_MOCK_MODEL) + " --truth " + manifest_path + " --sidecar " +
                    sidecar_path;
    auto truth_endpoint = make_endpoint(truth);
    EvalReport good = run_eval(artifacts, records, *truth_endpoint, options);
    expect(good.errored_ids.empty(), "ground-truth endpoint errored");
    expect(good.overall_accuracy == 1.0,
           "ground-truth accuracy " + fmt(good.overall_accuracy));

    EndpointConfig echo;
    echo.kind = EndpointKind::subprocess;
    echo.id = "echo";
    echo.command = std::string(INQ_MOCK_MODEL) + " --echo-question " + manifest_path;
    auto echo_endpoint = make_endpoint(echo);
    EvalReport bad = run_eval(artifacts, records, *echo_endpoint, options);
    expect(bad.errored_ids.empty(), "echo endpoint errored");
    expect(bad.overall_accuracy == 0.0, "echo accuracy " + fmt(bad.overall_accuracy));
    double repeats = double(bad.behavior_histogram["repeat_question"]);
    expect(repeats / 50.0 >= 0.9,
           "only " + fmt(repeats) + "/50 classified as question repetition");
}

void c13_cli_determinism() {
    expect(!g_cli_path.empty(), "no CLI path on the command line");
    TempDir tmp;
    std::mt19937_64 rng(1313);

    std::vector<std::string> lines;
    for (int i = 0; i < 6; ++i) {
        std::string id = "d" + std::to_string(i);
        std::string scene_path = tmp.file(id + ".png");
        save_png(scene_path, random_scene(128 + 17 * i, 128 + 11 * i, rng));
        lines.push_back("{\"id\":\"" + id + "\",\"image\":\"" + scene_path +
                        "\",\"question\":\"What is the code word " + std::to_string(i) +
                        "?\",\"answers\":[\"w" + std::to_string(i) +
                        "\"],\"dataset\":\"vqav2\",\"type\":\"open_ended\"}");
    }
    std::string manifest_path = tmp.file("manifest.jsonl");
    std::ofstream manifest(manifest_path);
    for (const auto& l : lines) manifest << l << "\n";
    manifest.close();

    auto render = [&](const std::string& out, const std::string& method) {
        int rc = run_cli("render --manifest " + manifest_path + " --out " + tmp.file(out) +
                         " --method " + method + " --position random --seed 0");
        expect(rc == 0, "render into " + out + " exited with " + std::to_string(rc));
    };
    render("w1", "watermark");
    render("w2", "watermark");
    render("c1", "concat-resize");
    render("c2", "concat-resize");

    auto compare_dirs = [&](const std::string& lhs, const std::string& rhs) {
        // The config snapshot records the output path itself, so it is the
        // one file allowed to differ between the two runs.
        size_t n = 0;
        for (const auto& entry : std::filesystem::directory_iterator(tmp.file(lhs))) {
            std::string name = entry.path().filename().string();
            if (name == "render_config.json") continue;
            expect(file_bytes(entry.path().string()) == file_bytes(tmp.file(rhs) + "/" + name),
                   lhs + "/" + name + " differs from " + rhs + "/" + name);
            ++n;
        }
        expect(n == 7, lhs + " holds " + std::to_string(n) + " artifacts, expected 7");
    };
    compare_dirs("w1", "w2");  // 6 PNGs + sidecar
    compare_dirs("c1", "c2");
}

struct Criterion {
    const char* name;
    double budget_seconds;
    std::function<void()> run;
};

}  // namespace

int main(int argc, char** argv) {
    if (argc > 1) g_cli_path = argv[1];

    const std::vector<Criterion> criteria = {
        {"watermark bbox side and bounds over 200 random sizes", 5.0, c01_watermark_geometry},
        {"watermark color contrast contract over 500 scenes", 30.0, c02_color_contract},
        {"complementary color rule fixtures", 0.0, c03_hsv_fixtures},
        {"contrast ratio formula fixtures and properties", 0.0, c04_wcag_formula},
        {"region selection equals the exhaustive argmin oracle", 0.0, c05_region_selection},
        {"edit distance equals the reference DP on 100k pairs", 60.0, c06_edit_distance},
        {"question alignment score properties", 0.0, c07_qaa_properties},
        {"concatenation worked examples and byte preservation", 0.0, c08_concat_geometry},
        {"response filter fixtures", 0.0, c09_filter_fixtures},
        {"prompt goldens and placeholder substitution", 0.0, c10_prompt_goldens},
        {"training sequence round trips for all strategies", 0.0, c11_sft_round_trips},
        {"oracle and echo endpoints through the full harness", 60.0, c12_oracle_harness},
        {"byte-identical renders for a fixed seed", 0.0, c13_cli_determinism},
    };

    int failures = 0;
    for (size_t i = 0; i < criteria.size(); ++i) {
        const Criterion& c = criteria[i];
        auto start = std::chrono::steady_clock::now();
        std::string detail;
        bool ok = true;
        try {
            c.run();
        } catch (const Failure& f) {
            ok = false;
            detail = f.detail;
        } catch (const std::exception& e) {
            ok = false;
            detail = e.what();
        }
        double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (ok && c.budget_seconds > 0.0 && seconds > c.budget_seconds) {
            ok = false;
            detail = "took " + fmt(seconds) + "s, budget " + fmt(c.budget_seconds) + "s";
        }
        std::printf("[%s] %2zu. %s (%.2fs)%s%s\n", ok ? "PASS" : "FAIL", i + 1, c.name,
                    seconds, detail.empty() ? "" : ": ", detail.c_str());
        std::fflush(stdout);
        if (!ok) ++failures;
    }
    if (failures > 0) std::printf("%d of %zu criteria failed\n", failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
