// Copyright 2026 the inq authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <memory>
#include <string>

namespace inq {

enum class EndpointKind { http, subprocess };

struct EndpointConfig {
    EndpointKind kind = EndpointKind::http;
    std::string id;  // cache key component
    // http
    std::string url;  // scheme://host[:port]/path
    std::string model;
    std::string bearer_token_env;  // env var holding the token, never the token itself
    int timeout_ms = 60000;
    // subprocess
    std::string command;  // run via /bin/sh -c, JSONL on stdin/stdout
    // retry policy
    int max_retries = 3;
    int backoff_base_ms = 100;
};

EndpointConfig load_endpoint_config(const std::string& path);

struct EndpointRequest {
    std::string sample_id;
    std::string image_path;
    std::string prompt;
};

// One model serving adapter. complete() either returns the raw response text
// or throws IoError; retries live in the harness.
class Endpoint {
public:
    virtual ~Endpoint() = default;
    virtual std::string complete(const EndpointRequest& request) = 0;
    virtual std::string id() const = 0;
};

// http: POST {"model","messages":[{"role":"user","content":[{"type":"image",
// "data":<base64 PNG>},{"type":"text","text":<prompt>}]}]} -> {"content":...}.
// subprocess: {"id","image_path","prompt"} per line -> {"id","response"}.
std::unique_ptr<Endpoint> make_endpoint(const EndpointConfig& config);

}  // namespace inq
