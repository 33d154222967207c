// Copyright 2026 the inq authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "inq/textutil.hpp"

namespace inq {

// Mixes a run seed with a stable per-item key (std::hash is not stable across
// implementations, FNV-1a is). Every per-record RNG in the pipeline derives
// from the single run seed through this.
inline uint64_t derive_seed(uint64_t run_seed, std::string_view key) {
    uint64_t h = fnv1a64(key);
    h ^= run_seed + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
}

inline std::mt19937_64 make_rng(uint64_t run_seed, std::string_view key) {
    return std::mt19937_64(derive_seed(run_seed, key));
}

}  // namespace inq
