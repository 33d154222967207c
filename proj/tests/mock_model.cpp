// Copyright 2026 the inq authors
// SPDX-License-Identifier: Apache-2.0
//
// Scriptable stand-in for a model server, speaking one JSON object per line:
// {"id","image_path","prompt"} in, {"id","response"} out. Modes:
//   --answer TEXT        reply "The answer is TEXT."
//   --echo-prompt        reply with the prompt verbatim
//   --truth FILE         reply "The answer is X." with X from the manifest
//   --echo-question FILE reply with the manifest question verbatim
//   --sidecar FILE       additionally require image_path to match "<id>.png"
//   --fail-first N       exit before answering the first N requests (the
//                        harness restarts are observable as retries)

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include <json.hpp>

using nlohmann::json;

namespace {

std::map<std::string, json> load_by_id(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        std::cerr << "mock model: cannot open " << path << "\n";
        std::exit(2);
    }
    std::map<std::string, json> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        json obj = json::parse(line);
        rows[obj.at("id").get<std::string>()] = obj;
    }
    return rows;
}

}  // namespace

int main(int argc, char** argv) {
    std::string answer_text;
    std::string truth_path;
    std::string question_path;
    std::string sidecar_path;
    bool echo_prompt = false;
    long fail_first = 0;

    for (int i = 1; i < argc; ++i) {
        std::string arg = argv[i];
        auto next = [&]() -> std::string {
            if (i + 1 >= argc) {
                std::cerr << "mock model: " << arg << " needs a value\n";
                std::exit(2);
            }
            return argv[++i];
        };
        if (arg == "--answer")
            answer_text = next();
        else if (arg == "--echo-prompt")
            echo_prompt = true;
        else if (arg == "--truth")
            truth_path = next();
        else if (arg == "--echo-question")
            question_path = next();
        else if (arg == "--sidecar")
            sidecar_path = next();
        else if (arg == "--fail-first")
            fail_first = std::stol(next());
        else {
            std::cerr << "mock model: unknown flag " << arg << "\n";
            return 2;
        }
    }

    std::map<std::string, json> truth, questions, sidecar;
    if (!truth_path.empty()) truth = load_by_id(truth_path);
    if (!question_path.empty()) questions = load_by_id(question_path);
    if (!sidecar_path.empty()) sidecar = load_by_id(sidecar_path);

    std::string line;
    long seen = 0;
    while (std::getline(std::cin, line)) {
        if (line.empty()) continue;
        if (++seen <= fail_first) return 3;

        json req = json::parse(line);
        std::string id = req.at("id").get<std::string>();

        if (!sidecar.empty()) {
            auto it = sidecar.find(id);
            std::string image = req.at("image_path").get<std::string>();
            std::string want = id + ".png";
            bool tail_matches = image.size() >= want.size() &&
                                image.compare(image.size() - want.size(), want.size(), want) == 0;
            if (it == sidecar.end() || !tail_matches) {
                std::cerr << "mock model: request " << id << " does not match the sidecar\n";
                return 3;
            }
        }

        std::string response;
        if (echo_prompt) {
            response = req.at("prompt").get<std::string>();
        } else if (!question_path.empty()) {
            response = questions.at(id).at("question").get<std::string>();
        } else if (!truth_path.empty()) {
            response = "The answer is " +
                       truth.at(id).at("answers").at(0).get<std::string>() + ".";
        } else {
            response = "The answer is " + answer_text + ".";
        }

        json reply;
        reply["id"] = id;
        reply["response"] = response;
        std::cout << reply.dump() << "\n" << std::flush;
    }
    return 0;
}
