// Copyright 2026 the inq authors
// SPDX-License-Identifier: Apache-2.0

#include "jsonl.hpp"

namespace inq {

void for_each_jsonl(const std::string& path,
                    const std::function<void(size_t, const nlohmann::json&)>& fn) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        nlohmann::json obj = nlohmann::json::parse(line, nullptr, false);
        if (obj.is_discarded())
            throw ValidationError(path + ":" + std::to_string(lineno) + ": invalid JSON");
        fn(lineno, obj);
    }
}

JsonlWriter::JsonlWriter(const std::string& path) : out_(path), path_(path) {
    if (!out_) throw IoError("cannot write " + path);
}

void JsonlWriter::write(const nlohmann::json& obj) {
    out_ << obj.dump() << '\n';
    if (!out_) throw IoError("write failed: " + path_);
}

}  // namespace inq
