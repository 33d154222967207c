// Copyright 2026 the inq authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <atomic>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "inq/harness.hpp"
#include "inq/imageio.hpp"
#include "testutil.hpp"

using namespace inq;
using inqtest::make_record;
using inqtest::noise_image;
using inqtest::read_text;
using inqtest::TempDir;
using inqtest::write_text;

#ifndef INQ_MOCK_MODEL
#define INQ_MOCK_MODEL "mock_model"
#endif

// ------------------------------------------------------------------- cache

TEST_CASE("response cache stores, persists and tolerates truncation") {
    TempDir tmp;
    std::string path = tmp.file("cache.jsonl");
    {
        ResponseCache cache(path);
        CHECK_FALSE(cache.lookup("ep", "s1", "prompt").has_value());
        cache.store("ep", "s1", "prompt", "hello");
        cache.store("ep", "s2", "prompt", "world");
        CHECK(cache.lookup("ep", "s1", "prompt") == "hello");
        CHECK_FALSE(cache.lookup("ep", "s1", "other prompt").has_value());
        CHECK_FALSE(cache.lookup("other", "s1", "prompt").has_value());
    }
    {
        ResponseCache cache(path);  // reload from disk
        CHECK(cache.lookup("ep", "s1", "prompt") == "hello");
        CHECK(cache.lookup("ep", "s2", "prompt") == "world");
    }
    // An interrupted final write must not poison the cache.
    {
        std::ofstream out(path, std::ios::app);
        out << "{\"key\":\"trunc";
    }
    {
        ResponseCache cache(path);
        CHECK(cache.lookup("ep", "s1", "prompt") == "hello");
    }

    ResponseCache disabled("");
    disabled.store("ep", "s1", "p", "r");
    CHECK_FALSE(disabled.lookup("ep", "s1", "p").has_value());
}

// ----------------------------------------------------------------- config

TEST_CASE("endpoint config defaults and validation") {
    TempDir tmp;
    std::string path = tmp.file("ep.json");

    write_text(path, "{\"kind\":\"http\",\"url\":\"http://h:1/p\",\"model\":\"m\"}");
    EndpointConfig config = load_endpoint_config(path);
    CHECK(config.kind == EndpointKind::http);
    CHECK(config.id == "http");
    CHECK(config.timeout_ms == 60000);
    CHECK(config.max_retries == 3);
    CHECK(config.backoff_base_ms == 100);

    write_text(path, "{\"kind\":\"subprocess\",\"command\":\"cat\",\"id\":\"c\"}");
    CHECK(load_endpoint_config(path).kind == EndpointKind::subprocess);
    CHECK(load_endpoint_config(path).id == "c");

    write_text(path, "{\"kind\":\"http\"}");
    CHECK_THROWS_AS(load_endpoint_config(path), ValidationError);
    write_text(path, "{\"kind\":\"subprocess\"}");
    CHECK_THROWS_AS(load_endpoint_config(path), ValidationError);
    write_text(path, "{\"kind\":\"smoke\"}");
    CHECK_THROWS_AS(load_endpoint_config(path), ValidationError);
    write_text(path, "nonsense");
    CHECK_THROWS_AS(load_endpoint_config(path), ValidationError);
    CHECK_THROWS_AS(load_endpoint_config(tmp.file("absent.json")), IoError);
}

// ------------------------------------------------------------------- http

namespace {

struct TestServer {
    httplib::Server server;
    int port = 0;
    std::thread thread;

    TestServer() {
        port = server.bind_to_any_port("127.0.0.1");
        thread = std::thread([this] { server.listen_after_bind(); });
        server.wait_until_ready();
    }
    ~TestServer() {
        server.stop();
        thread.join();
    }
    std::string url(const std::string& path) {
        return "http://127.0.0.1:" + std::to_string(port) + path;
    }
};

}  // namespace

TEST_CASE("http endpoint posts the request contract and reads content") {
    TempDir tmp;
    ImageU8 img = noise_image(16, 16, 1);
    std::string image_path = tmp.file("s.png");
    save_png(image_path, img);

    TestServer ts;
    nlohmann::json seen;
    std::string seen_auth;
    ts.server.Post("/v1/answer", [&](const httplib::Request& req, httplib::Response& res) {
        seen = nlohmann::json::parse(req.body);
        if (req.has_header("Authorization")) seen_auth = req.get_header_value("Authorization");
        res.set_content("{\"content\": \"The answer is red.\"}", "application/json");
    });

    setenv("INQ_TEST_TOKEN", "sekrit", 1);
    EndpointConfig config;
    config.kind = EndpointKind::http;
    config.id = "test-http";
    config.url = ts.url("/v1/answer");
    config.model = "toy-model";
    config.bearer_token_env = "INQ_TEST_TOKEN";
    auto endpoint = make_endpoint(config);

    std::string out = endpoint->complete({"s1", image_path, "Look closely."});
    CHECK(out == "The answer is red.");
    CHECK(endpoint->id() == "test-http");

    CHECK(seen.at("model") == "toy-model");
    auto content = seen.at("messages").at(0).at("content");
    CHECK(seen.at("messages").at(0).at("role") == "user");
    CHECK(content.at(0).at("type") == "image");
    CHECK(content.at(1).at("type") == "text");
    CHECK(content.at(1).at("text") == "Look closely.");
    CHECK(seen_auth == "Bearer sekrit");

    // The image travels base64-encoded; spot check round-trippable length.
    std::string data = content.at(0).at("data").get<std::string>();
    CHECK(data.size() % 4 == 0);
    CHECK(data.size() >= 4);

    CHECK_THROWS_AS(endpoint->complete({"s1", tmp.file("absent.png"), "p"}), IoError);
}

TEST_CASE("http endpoint surfaces server failures as io errors") {
    TempDir tmp;
    std::string image_path = tmp.file("s.png");
    save_png(image_path, noise_image(8, 8, 2));

    TestServer ts;
    ts.server.Post("/boom", [](const httplib::Request&, httplib::Response& res) {
        res.status = 500;
        res.set_content("sad", "text/plain");
    });
    ts.server.Post("/weird", [](const httplib::Request&, httplib::Response& res) {
        res.set_content("{\"unexpected\": true}", "application/json");
    });

    EndpointConfig config;
    config.kind = EndpointKind::http;
    config.id = "t";
    config.model = "m";

    config.url = ts.url("/boom");
    CHECK_THROWS_AS(make_endpoint(config)->complete({"s", image_path, "p"}), IoError);
    config.url = ts.url("/weird");
    CHECK_THROWS_AS(make_endpoint(config)->complete({"s", image_path, "p"}), IoError);
    config.url = "http://127.0.0.1:1/gone";
    config.timeout_ms = 2000;
    CHECK_THROWS_AS(make_endpoint(config)->complete({"s", image_path, "p"}), IoError);
    config.url = "not a url";
    CHECK_THROWS_AS(make_endpoint(config), ValidationError);
}

// -------------------------------------------------------------- subprocess

TEST_CASE("subprocess endpoint speaks line-delimited json") {
    EndpointConfig config;
    config.kind = EndpointKind::subprocess;
    config.id = "subp";
    config.command = std::string(INQ_MOCK_MODEL) + " --answer blue";
    auto endpoint = make_endpoint(config);

    CHECK(endpoint->complete({"s1", "x.png", "prompt"}) == "The answer is blue.");
    CHECK(endpoint->complete({"s2", "y.png", "other"}) == "The answer is blue.");

    EndpointConfig echo = config;
    echo.command = std::string(INQ_MOCK_MODEL) + " --echo-prompt";
    auto echo_endpoint = make_endpoint(echo);
    CHECK(echo_endpoint->complete({"s1", "x.png", "say this back"}) == "say this back");
}

TEST_CASE("subprocess endpoint failures are io errors") {
    EndpointConfig config;
    config.kind = EndpointKind::subprocess;
    config.id = "dead";
    config.command = "true";  // exits immediately, answers nothing
    auto endpoint = make_endpoint(config);
    CHECK_THROWS_AS(endpoint->complete({"s1", "x.png", "p"}), IoError);

    EndpointConfig garbled = config;
    garbled.command = "echo not-json";
    CHECK_THROWS_AS(make_endpoint(garbled)->complete({"s1", "x.png", "p"}), IoError);
}

// ---------------------------------------------------------------- run_eval

namespace {

// In-process endpoint scripted by sample id.
class ScriptedEndpoint : public Endpoint {
public:
    std::map<std::string, std::string> responses;
    std::map<std::string, int> fail_times;  // id -> failures before success
    std::atomic<int> calls{0};

    std::string complete(const EndpointRequest& request) override {
        ++calls;
        auto f = fail_times.find(request.sample_id);
        if (f != fail_times.end() && f->second > 0) {
            --f->second;
            throw IoError("scripted failure for " + request.sample_id);
        }
        auto it = responses.find(request.sample_id);
        if (it == responses.end()) throw IoError("no script for " + request.sample_id);
        return it->second;
    }
    std::string id() const override { return "scripted"; }
};

CompositeArtifact fake_artifact(const std::string& id) {
    CompositeArtifact art;
    art.source_id = id;
    art.image_path = id + ".png";
    art.width = 320;
    art.height = 240;
    art.question_bbox = {10, 10, 70, 70};
    return art;
}

}  // namespace

TEST_CASE("run_eval aggregates per dataset in manifest order") {
    std::vector<SampleRecord> records = {
        make_record("a1", "What color is the hat?", {"red"}, DatasetKind::vqav2),
        make_record("a2", "What is on the table?", {"cup"}, DatasetKind::vqav2),
        make_record("p1", "Is there a dog?", {"yes"}, DatasetKind::pope, QuestionType::binary),
    };
    std::vector<CompositeArtifact> artifacts = {fake_artifact("a1"), fake_artifact("a2"),
                                                fake_artifact("p1")};

    ScriptedEndpoint endpoint;
    endpoint.responses["a1"] = "What color is the hat? ASSISTANT: red";
    endpoint.responses["a2"] = "What is on the table? ASSISTANT: plate";
    endpoint.responses["p1"] = "Yes, there is one.";

    RunOptions options;
    options.filter_mode = FilterMode::qra;
    options.concurrency = 3;

    EvalReport report = run_eval(artifacts, records, endpoint, options);
    CHECK(endpoint.calls == 3);
    CHECK(report.overall_accuracy == doctest::Approx(2.0 / 3.0));
    REQUIRE(report.per_dataset.count("vqav2") == 1);
    REQUIRE(report.per_dataset.count("pope") == 1);
    CHECK(report.per_dataset["vqav2"].n == 2);
    CHECK(report.per_dataset["vqav2"].accuracy == doctest::Approx(0.5));
    CHECK(report.per_dataset["pope"].accuracy == doctest::Approx(1.0));

    REQUIRE(report.samples.size() == 3);
    CHECK(report.samples[0].id == "a1");
    CHECK(report.samples[1].id == "a2");
    CHECK(report.samples[2].id == "p1");
    CHECK(report.samples[0].correct);
    CHECK_FALSE(report.samples[1].correct);

    // a1/a2 carried a detected question; the binary response did not.
    REQUIRE(report.samples[0].qaa.has_value());
    CHECK(*report.samples[0].qaa == doctest::Approx(1.0));
    REQUIRE(report.qaa_correct.has_value());
    REQUIRE(report.qaa_incorrect.has_value());
    CHECK(*report.qaa_correct == doctest::Approx(1.0));
    CHECK(*report.qaa_incorrect == doctest::Approx(1.0));
    CHECK_FALSE(report.samples[2].qaa.has_value());

    CHECK(report.behavior_histogram["correct_answer"] == 2);
    CHECK(report.behavior_histogram["wrong_answer"] == 1);

    nlohmann::json parsed = nlohmann::json::parse(report_to_json(report));
    CHECK(parsed.at("overall_accuracy").get<double>() == doctest::Approx(2.0 / 3.0));
    CHECK(parsed.at("samples").size() == 3);
    CHECK(parsed.at("run_config").at("filter_mode") == "qra");
    std::string table = report_to_table(report);
    CHECK(table.find("overall accuracy: 0.6667") != std::string::npos);
    CHECK(table.find("vqav2") != std::string::npos);
}

TEST_CASE("run_eval skips excluded records and validates the join") {
    std::vector<SampleRecord> records = {make_record("a", "Q?", {"x"}),
                                         make_record("b", "Q?", {"x"})};
    records[1].excluded = true;
    std::vector<CompositeArtifact> artifacts = {fake_artifact("a"), fake_artifact("b")};

    ScriptedEndpoint endpoint;
    endpoint.responses["a"] = "The answer is x.";
    RunOptions options;
    EvalReport report = run_eval(artifacts, records, endpoint, options);
    CHECK(endpoint.calls == 1);
    CHECK(report.samples.size() == 1);
    CHECK(report.overall_accuracy == doctest::Approx(1.0));

    artifacts.push_back(fake_artifact("ghost"));
    CHECK_THROWS_AS(run_eval(artifacts, records, endpoint, options), ValidationError);
}

TEST_CASE("run_eval retries transient failures with backoff") {
    std::vector<SampleRecord> records = {make_record("a", "Q?", {"x"})};
    std::vector<CompositeArtifact> artifacts = {fake_artifact("a")};

    ScriptedEndpoint endpoint;
    endpoint.responses["a"] = "The answer is x.";
    endpoint.fail_times["a"] = 2;

    RunOptions options;
    options.max_retries = 3;
    options.backoff_base_ms = 1;
    EvalReport report = run_eval(artifacts, records, endpoint, options);
    CHECK(endpoint.calls == 3);  // two failures, then success
    CHECK(report.errored_ids.empty());
    CHECK(report.overall_accuracy == doctest::Approx(1.0));
}

TEST_CASE("run_eval records exhausted samples and fails when all error") {
    std::vector<SampleRecord> records = {make_record("a", "Q?", {"x"}),
                                         make_record("b", "Q?", {"y"})};
    std::vector<CompositeArtifact> artifacts = {fake_artifact("a"), fake_artifact("b")};

    ScriptedEndpoint endpoint;
    endpoint.responses["a"] = "The answer is x.";
    endpoint.fail_times["b"] = 100;

    RunOptions options;
    options.max_retries = 1;
    options.backoff_base_ms = 1;
    EvalReport report = run_eval(artifacts, records, endpoint, options);
    CHECK(endpoint.calls == 3);  // one for a, two for b
    CHECK(report.errored_ids == std::vector<std::string>{"b"});
    CHECK(report.overall_accuracy == doctest::Approx(1.0));  // over evaluated samples
    CHECK(report.per_dataset["custom"].n == 1);
    REQUIRE(report.samples.size() == 2);
    CHECK(report.samples[1].error.has_value());

    endpoint.fail_times["a"] = 100;
    endpoint.fail_times["b"] = 100;
    CHECK_THROWS_AS(run_eval(artifacts, records, endpoint, options), IoError);
}

TEST_CASE("run_eval reuses the response cache across runs") {
    TempDir tmp;
    std::vector<SampleRecord> records = {make_record("a", "Q?", {"x"}),
                                         make_record("b", "Q?", {"y"})};
    std::vector<CompositeArtifact> artifacts = {fake_artifact("a"), fake_artifact("b")};

    ScriptedEndpoint endpoint;
    endpoint.responses["a"] = "The answer is x.";
    endpoint.responses["b"] = "The answer is y.";

    RunOptions options;
    options.cache_path = tmp.file("cache.jsonl");

    EvalReport first = run_eval(artifacts, records, endpoint, options);
    CHECK(endpoint.calls == 2);
    EvalReport second = run_eval(artifacts, records, endpoint, options);
    CHECK(endpoint.calls == 2);  // everything served from cache
    CHECK(second.overall_accuracy == first.overall_accuracy);
    CHECK(second.samples.size() == first.samples.size());
}

TEST_CASE("run_eval builds prompts per kind and records prompt errors") {
    std::vector<SampleRecord> records = {make_record("a", "Q?", {"x"}),
                                         make_record("b", "Q?", {"y"})};
    records[0].ocr_text = "What is this?";
    // record b has no OCR text: ocr_assisted prompting fails for it only.
    std::vector<CompositeArtifact> artifacts = {fake_artifact("a"), fake_artifact("b")};

    ScriptedEndpoint endpoint;
    endpoint.responses["a"] = "The answer is x.";
    endpoint.responses["b"] = "The answer is y.";

    RunOptions options;
    options.prompt_kind = PromptKind::ocr_assisted;
    EvalReport report = run_eval(artifacts, records, endpoint, options);
    CHECK(endpoint.calls == 1);
    CHECK(report.errored_ids == std::vector<std::string>{"b"});
    CHECK(report.per_dataset["custom"].n == 1);
}

// ---------------------------------------------------------- CLI score path

#ifdef INQ_CLI
// The standalone score command must compare behaviors against the prepared
// question (options folded into the text, as rendered), not the raw one:
// echoing the rendered question back is question repetition.
TEST_CASE("score command classifies a folded-question echo as repetition") {
    TempDir tmp;
    write_text(tmp.file("manifest.jsonl"),
               "{\"id\":\"m1\",\"image\":\"m1.png\",\"question\":\"Which fruit is shown?\","
               "\"answers\":[\"B\"],\"dataset\":\"sqa\",\"type\":\"multiple_choice\","
               "\"choices\":[{\"label\":\"A\",\"text\":\"apple\"},"
               "{\"label\":\"B\",\"text\":\"banana\"}]}\n");
    write_text(tmp.file("outcomes.jsonl"),
               "{\"id\":\"m1\",\"answer\":\"Which fruit is shown? A. apple B. banana\","
               "\"strategy\":\"verbatim\"}\n");

    std::string cmd = std::string(INQ_CLI) + " score --outcomes " + tmp.file("outcomes.jsonl") +
                      " --manifest " + tmp.file("manifest.jsonl") + " --out " +
                      tmp.file("report.json") + " >/dev/null 2>&1";
    REQUIRE(std::system(cmd.c_str()) == 0);

    auto report = nlohmann::json::parse(read_text(tmp.file("report.json")));
    CHECK(report["behavior_histogram"]["repeat_question"] == 1);
    CHECK(report["overall_accuracy"] == 0.0);
}
#endif
