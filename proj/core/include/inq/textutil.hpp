// Copyright 2026 the inq authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace inq {

// Decodes UTF-8 into Unicode scalar values. Invalid bytes decode to U+FFFD
// one byte at a time so the function is total.
std::vector<char32_t> utf8_decode(std::string_view s);
std::string utf8_encode(const std::vector<char32_t>& cps);

std::string trim(std::string_view s);
std::string collapse_whitespace(std::string_view s);
std::string ascii_lower(std::string_view s);

// trim + collapse + lower in one pass; the default normalization used by
// metrics and filters.
std::string normalize_text(std::string_view s);

// Splits on runs of whitespace; no empty tokens.
std::vector<std::string> split_words(std::string_view s);

// True when `hay` contains `needle` as a whole word (ASCII alnum boundaries).
bool contains_word(std::string_view hay, std::string_view needle);

bool starts_with_icase(std::string_view s, std::string_view prefix);
size_t find_icase(std::string_view hay, std::string_view needle, size_t from = 0);

uint64_t fnv1a64(std::string_view s);

}  // namespace inq
