// Copyright 2026 the inq authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <fstream>
#include <functional>
#include <string>

#include <json.hpp>

#include "inq/types.hpp"

namespace inq {

// Calls fn(line_number, parsed) for every non-empty line. Line numbers are
// 1-based. Throws ValidationError with the line number on parse failures and
// IoError when the file cannot be opened.
void for_each_jsonl(const std::string& path,
                    const std::function<void(size_t, const nlohmann::json&)>& fn);

class JsonlWriter {
public:
    explicit JsonlWriter(const std::string& path);

    void write(const nlohmann::json& obj);
    void flush() { out_.flush(); }

private:
    std::ofstream out_;
    std::string path_;
};

}  // namespace inq
