// Copyright 2026 the inq authors
// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include <random>
#include <string>

#include "inq/image.hpp"
#include "inq/metrics.hpp"
#include "inq/rasterizer.hpp"
#include "inq/types.hpp"
#include "inq/watermark.hpp"

namespace {

inq::ImageU8 noise_image(int w, int h, uint64_t seed) {
    inq::ImageU8 img = inq::ImageU8::make(w, h, 3, 0);
    std::mt19937_64 rng(seed);
    for (auto& b : img.data) b = uint8_t(rng() & 0xFF);
    return img;
}

std::string random_words(size_t n, uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::string out;
    for (size_t i = 0; i < n; ++i) {
        if (i) out.push_back(' ');
        size_t len = 3 + rng() % 6;
        for (size_t j = 0; j < len; ++j) out.push_back(char('a' + rng() % 26));
    }
    return out;
}

void BM_EditDistance(benchmark::State& state) {
    std::string a = random_words(size_t(state.range(0)), 1);
    std::string b = random_words(size_t(state.range(0)), 2);
    for (auto _ : state) benchmark::DoNotOptimize(inq::edit_distance(a, b));
}
BENCHMARK(BM_EditDistance)->Arg(4)->Arg(16)->Arg(64);

void BM_QuestionAlignment(benchmark::State& state) {
    std::string ref = random_words(12, 3);
    std::vector<std::string> candidates;
    for (uint64_t i = 0; i < 4; ++i) candidates.push_back(random_words(12, 10 + i));
    for (auto _ : state) benchmark::DoNotOptimize(inq::qaa(candidates, ref));
}
BENCHMARK(BM_QuestionAlignment);

void BM_EnumerateCandidates(benchmark::State& state) {
    int side = int(state.range(0));
    inq::ImageU8 scene = noise_image(side, side * 3 / 4, 7);
    for (auto _ : state) benchmark::DoNotOptimize(inq::enumerate_candidates(scene));
}
BENCHMARK(BM_EnumerateCandidates)->Arg(640)->Arg(1280)->Unit(benchmark::kMillisecond);

void BM_RenderTextTile(benchmark::State& state) {
    std::string question = "What color is the hat of the person on the left?";
    for (auto _ : state)
        benchmark::DoNotOptimize(
            inq::render_text_tile(question, int(state.range(0)), {0, 0, 0}, {0, 0, 0, 0}));
}
BENCHMARK(BM_RenderTextTile)->Arg(112)->Arg(224)->Unit(benchmark::kMillisecond);

void BM_ComposeWatermark(benchmark::State& state) {
    inq::ImageU8 scene = noise_image(640, 480, 11);
    inq::SampleRecord rec;
    rec.id = "bench";
    rec.scene_path = "bench.png";
    rec.question = "What color is the hat?";
    rec.answers = {"red"};
    for (auto _ : state) benchmark::DoNotOptimize(inq::compose_watermark(scene, rec));
}
BENCHMARK(BM_ComposeWatermark)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
