// Copyright 2026 the inq authors
// SPDX-License-Identifier: Apache-2.0

#include "inq/endpoint.hpp"

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <mutex>

#include <httplib.h>
#include <json.hpp>

#include "inq/types.hpp"

namespace inq {

namespace {

std::string base64(const std::string& bytes) {
    static const char* alphabet =
        "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";
    std::string out;
    out.reserve((bytes.size() + 2) / 3 * 4);
    size_t i = 0;
    while (i + 3 <= bytes.size()) {
        uint32_t v = uint32_t(uint8_t(bytes[i])) << 16 | uint32_t(uint8_t(bytes[i + 1])) << 8 |
                     uint8_t(bytes[i + 2]);
        out.push_back(alphabet[v >> 18]);
        out.push_back(alphabet[(v >> 12) & 63]);
        out.push_back(alphabet[(v >> 6) & 63]);
        out.push_back(alphabet[v & 63]);
        i += 3;
    }
    if (i + 1 == bytes.size()) {
        uint32_t v = uint32_t(uint8_t(bytes[i])) << 16;
        out.push_back(alphabet[v >> 18]);
        out.push_back(alphabet[(v >> 12) & 63]);
        out += "==";
    } else if (i + 2 == bytes.size()) {
        uint32_t v = uint32_t(uint8_t(bytes[i])) << 16 | uint32_t(uint8_t(bytes[i + 1])) << 8;
        out.push_back(alphabet[v >> 18]);
        out.push_back(alphabet[(v >> 12) & 63]);
        out.push_back(alphabet[(v >> 6) & 63]);
        out.push_back('=');
    }
    return out;
}

std::string read_file_bytes(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

class HttpEndpoint final : public Endpoint {
public:
    explicit HttpEndpoint(const EndpointConfig& config) : config_(config) {
        size_t scheme_end = config.url.find("://");
        if (scheme_end == std::string::npos)
            throw ValidationError("endpoint url must look like http://host:port/path");
        size_t path_start = config.url.find('/', scheme_end + 3);
        base_ = path_start == std::string::npos ? config.url : config.url.substr(0, path_start);
        path_ = path_start == std::string::npos ? "/" : config.url.substr(path_start);
    }

    std::string id() const override { return config_.id; }

    std::string complete(const EndpointRequest& request) override {
        nlohmann::json body;
        body["model"] = config_.model;
        body["messages"] = {{
            {"role", "user"},
            {"content",
             {{{"type", "image"}, {"data", base64(read_file_bytes(request.image_path))}},
              {{"type", "text"}, {"text", request.prompt}}}},
        }};

        httplib::Client client(base_);
        client.set_connection_timeout(config_.timeout_ms / 1000,
                                      (config_.timeout_ms % 1000) * 1000);
        client.set_read_timeout(config_.timeout_ms / 1000, (config_.timeout_ms % 1000) * 1000);
        httplib::Headers headers;
        if (!config_.bearer_token_env.empty()) {
            if (const char* token = std::getenv(config_.bearer_token_env.c_str()))
                headers.emplace("Authorization", std::string("Bearer ") + token);
        }
        auto res = client.Post(path_, headers, body.dump(), "application/json");
        if (!res)
            throw IoError("request to " + base_ + " failed: " + httplib::to_string(res.error()));
        if (res->status != 200)
            throw IoError("endpoint returned HTTP " + std::to_string(res->status));
        nlohmann::json parsed = nlohmann::json::parse(res->body, nullptr, false);
        if (parsed.is_discarded() || !parsed.contains("content"))
            throw IoError("endpoint response is not {\"content\": ...}");
        return parsed.at("content").get<std::string>();
    }

private:
    EndpointConfig config_;
    std::string base_;
    std::string path_;
};

// Long-running child process speaking one JSON object per line on its
// stdin/stdout. Requests are serialized; the child is the unit of batching.
class SubprocessEndpoint final : public Endpoint {
public:
    explicit SubprocessEndpoint(const EndpointConfig& config) : config_(config) {
        int to_child[2], from_child[2];
        if (pipe(to_child) != 0 || pipe(from_child) != 0)
            throw IoError("cannot create pipes for subprocess endpoint");
        pid_ = fork();
        if (pid_ < 0) throw IoError("fork failed");
        if (pid_ == 0) {
            dup2(to_child[0], STDIN_FILENO);
            dup2(from_child[1], STDOUT_FILENO);
            close(to_child[0]);
            close(to_child[1]);
            close(from_child[0]);
            close(from_child[1]);
            execl("/bin/sh", "sh", "-c", config.command.c_str(), (char*)nullptr);
            _exit(127);
        }
        close(to_child[0]);
        close(from_child[1]);
        in_ = fdopen(to_child[1], "w");
        out_ = fdopen(from_child[0], "r");
        if (!in_ || !out_) throw IoError("cannot open subprocess pipes");
    }

    ~SubprocessEndpoint() override {
        if (in_) fclose(in_);
        if (out_) fclose(out_);
        if (pid_ > 0) waitpid(pid_, nullptr, 0);
    }

    std::string id() const override { return config_.id; }

    std::string complete(const EndpointRequest& request) override {
        std::lock_guard<std::mutex> lock(mu_);
        nlohmann::json req;
        req["id"] = request.sample_id;
        req["image_path"] = request.image_path;
        req["prompt"] = request.prompt;
        std::string line = req.dump() + "\n";
        if (fputs(line.c_str(), in_) == EOF || fflush(in_) != 0)
            throw IoError("subprocess endpoint stdin closed");

        std::string reply;
        int c;
        while ((c = fgetc(out_)) != EOF && c != '\n') reply.push_back(char(c));
        if (reply.empty() && c == EOF) throw IoError("subprocess endpoint exited");

        nlohmann::json parsed = nlohmann::json::parse(reply, nullptr, false);
        if (parsed.is_discarded() || !parsed.contains("response"))
            throw IoError("subprocess reply is not {\"id\",\"response\"}");
        if (parsed.contains("id") && parsed.at("id").get<std::string>() != request.sample_id)
            throw IoError("subprocess reply id mismatch");
        return parsed.at("response").get<std::string>();
    }

private:
    EndpointConfig config_;
    pid_t pid_ = -1;
    FILE* in_ = nullptr;
    FILE* out_ = nullptr;
    std::mutex mu_;
};

}  // namespace

EndpointConfig load_endpoint_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open endpoint config: " + path);
    nlohmann::json obj = nlohmann::json::parse(in, nullptr, false);
    if (obj.is_discarded()) throw ValidationError("endpoint config is not valid JSON: " + path);

    EndpointConfig config;
    std::string kind = obj.value("kind", "http");
    if (kind == "http")
        config.kind = EndpointKind::http;
    else if (kind == "subprocess")
        config.kind = EndpointKind::subprocess;
    else
        throw ValidationError("endpoint kind must be http or subprocess");
    config.id = obj.value("id", kind);
    config.url = obj.value("url", "");
    config.model = obj.value("model", "");
    config.bearer_token_env = obj.value("bearer_token_env", "");
    config.timeout_ms = obj.value("timeout_ms", 60000);
    config.command = obj.value("command", "");
    config.max_retries = obj.value("max_retries", 3);
    config.backoff_base_ms = obj.value("backoff_base_ms", 100);
    if (config.kind == EndpointKind::http && config.url.empty())
        throw ValidationError("http endpoint config needs a url");
    if (config.kind == EndpointKind::subprocess && config.command.empty())
        throw ValidationError("subprocess endpoint config needs a command");
    return config;
}

std::unique_ptr<Endpoint> make_endpoint(const EndpointConfig& config) {
    if (config.kind == EndpointKind::http) return std::make_unique<HttpEndpoint>(config);
    return std::make_unique<SubprocessEndpoint>(config);
}

}  // namespace inq
