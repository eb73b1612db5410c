// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>
#include <nlohmann/json.hpp>

#include <atomic>
#include <filesystem>
#include <thread>

#include "nlplan/llm.hpp"

using namespace nlplan;
using nlohmann::json;

namespace {

ChatRequest sample(const std::string& text, LlmPurpose purpose = LlmPurpose::kTranslation) {
  return ChatRequest::make(purpose, {{ChatRole::kSystem, "sys"}, {ChatRole::kUser, text}});
}

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "nlplan-test-llm";
  std::filesystem::create_directories(dir);
  auto p = dir / name;
  std::filesystem::remove(p);
  return p;
}

// Deterministic stand-in for a model: the reply is a function of the request.
class EchoBackend final : public LlmBackend {
 public:
  std::string complete(const ChatRequest& req) override {
    ++calls;
    return "echo:" + req.messages.back().content;
  }
  std::string id() const override { return "echo"; }
  int calls = 0;
};

}  // namespace

TEST_SUITE("llm") {
  TEST_CASE("sha256 test vectors") {
    CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  }

  TEST_CASE("token budgets per purpose") {
    CHECK(max_tokens_for(LlmPurpose::kTemplateGeneration) == 50);
    CHECK(max_tokens_for(LlmPurpose::kTranslation) == 256);
    CHECK(max_tokens_for(LlmPurpose::kThoughtGeneration) == 300);
    CHECK_FALSE(max_tokens_for(LlmPurpose::kPlanning));
    const auto req = sample("x", LlmPurpose::kPlanning);
    CHECK(req.temperature == 0.0);
    CHECK_FALSE(req.max_tokens);
  }

  TEST_CASE("request digest is stable and discriminating") {
    const ChatRequest a = sample("hello");
    ChatRequest b = sample("hello");
    CHECK(request_digest(a) == request_digest(b));
    CHECK(request_digest(a) == sha256_hex(canonical_json(a)));
    CHECK(request_digest(a).size() == 64);
    b.messages.back().content = "hello!";
    CHECK(request_digest(a) != request_digest(b));
    ChatRequest c = a;
    c.max_tokens = 50;
    CHECK(request_digest(a) != request_digest(c));
    ChatRequest d = a;
    d.stop = {"\nObservation:"};
    CHECK(request_digest(a) != request_digest(d));
    ChatRequest e = a;
    e.messages.front().role = ChatRole::kUser;
    CHECK(request_digest(a) != request_digest(e));
    // Canonical form has sorted keys and no whitespace.
    const std::string canon = canonical_json(a);
    CHECK(canon.find(' ') == std::string::npos);
    CHECK(canon == json::parse(canon).dump());
  }

  TEST_CASE("chat request JSON round trip") {
    ChatRequest r = sample("text", LlmPurpose::kTemplateGeneration);
    r.stop = {"a", "b"};
    const json j = r;
    CHECK(j.get<ChatRequest>() == r);
    CHECK(chat_role_from_string(to_string(ChatRole::kAssistant)) == ChatRole::kAssistant);
    CHECK_THROWS_AS((void)chat_role_from_string("narrator"), Error);
  }

  TEST_CASE("mock backend serves its script then the responder") {
    MockBackend m(std::vector<std::string>{"one", "two"}, [](const ChatRequest&) { return std::string("fallback"); });
    CHECK(m.remaining() == 2);
    CHECK(m.complete(sample("a")) == "one");
    CHECK(m.complete(sample("b")) == "two");
    CHECK(m.complete(sample("c")) == "fallback");
    CHECK(m.requests().size() == 3);
    CHECK(m.requests()[1].messages.back().content == "b");
    MockBackend empty;
    CHECK_THROWS_AS((void)empty.complete(sample("a")), LlmError);
  }

  TEST_CASE("replay serves recorded responses and rejects unknown requests") {
    const ChatRequest a = sample("a");
    ReplayBackend r({RecordedExchange{request_digest(a), a, "answer"}});
    CHECK(r.complete(a) == "answer");
    CHECK_THROWS_AS((void)r.complete(sample("b")), ReplayMissError);
    ReplayBackend none({});
    CHECK_THROWS_AS((void)none.complete(a), ReplayMissError);
  }

  TEST_CASE("recordings save and load without loss") {
    EchoBackend echo;
    RecordingBackend rec(echo);
    for (const std::string s : {"x", "y", "z"}) (void)rec.complete(sample(s));
    const auto path = scratch("rec.jsonl");
    rec.save(path);
    const auto loaded = load_recording(path);
    const auto original = rec.exchanges();
    REQUIRE(loaded.size() == original.size());
    for (std::size_t i = 0; i < loaded.size(); ++i) {
      CHECK(loaded[i].digest == original[i].digest);
      CHECK(loaded[i].request == original[i].request);
      CHECK(loaded[i].response == original[i].response);
    }
    ReplayBackend replay = ReplayBackend::load(path);
    CHECK(replay.complete(sample("y")) == "echo:y");
  }

  TEST_CASE("cache returns what the uncached backend would") {
    const auto path = scratch("cache.jsonl");
    EchoBackend echo;
    EchoBackend reference;
    {
      CachedBackend cached(echo, path);
      for (int round = 0; round < 3; ++round) {
        for (const std::string s : {"p", "q", "r", "p"}) CHECK(cached.complete(sample(s)) == reference.complete(sample(s)));
      }
      CHECK(cached.misses() == 3);
      CHECK(cached.hits() == 9);
      CHECK(cached.size() == 3);
    }
    CHECK(echo.calls == 3);
    // A fresh instance reads the persisted entries.
    CachedBackend again(echo, path);
    CHECK(again.size() == 3);
    CHECK(again.complete(sample("q")) == "echo:q");
    CHECK(again.hits() == 1);
    CHECK(echo.calls == 3);
    // Cache files can be replayed.
    CHECK(ReplayBackend::load(path).size() == 3);
  }

  TEST_CASE("remote wire format") {
    ChatRequest r = sample("hi", LlmPurpose::kTemplateGeneration);
    r.stop = {"\nObservation:"};
    const json body = json::parse(RemoteBackend::request_body(r, "some-model"));
    CHECK(body.at("model") == "some-model");
    CHECK(body.at("max_tokens") == 50);
    CHECK(body.at("temperature") == 0.0);
    CHECK(body.at("stop") == json::array({"\nObservation:"}));
    CHECK(body.at("messages").size() == 2);
    CHECK(body.at("messages")[0].at("role") == "system");
    CHECK_FALSE(json::parse(RemoteBackend::request_body(sample("x", LlmPurpose::kPlanning), "m")).contains("max_tokens"));

    CHECK(RemoteBackend::parse_response_body(R"({"choices":[{"message":{"role":"assistant","content":"ok"}}]})") ==
          "ok");
    CHECK_THROWS_AS((void)RemoteBackend::parse_response_body("not json"), MalformedResponseError);
    CHECK_THROWS_AS((void)RemoteBackend::parse_response_body(R"({"choices":[]})"), MalformedResponseError);
    CHECK_THROWS_AS((void)RemoteBackend::parse_response_body(R"({"choices":[{"message":{"content":null}}]})"),
                    MalformedResponseError);
    CHECK_THROWS_AS(RemoteBackend(RemoteConfig{}), LlmError);
  }

  TEST_CASE("remote backend retries server errors and reports rate limits") {
    httplib::Server server;
    std::atomic<int> flaky_calls{0};
    std::atomic<int> limited_calls{0};
    server.Post("/flaky", [&](const httplib::Request& req, httplib::Response& res) {
      if (flaky_calls++ < 2) {
        res.status = 503;
        return;
      }
      const json body = json::parse(req.body);
      const json reply{{"choices", {{{"message", {{"content", "got " + body.at("model").get<std::string>()}}}}}}};
      res.set_content(reply.dump(), "application/json");
    });
    server.Post("/limited", [&](const httplib::Request&, httplib::Response& res) {
      ++limited_calls;
      res.status = 429;
    });
    server.Post("/denied", [&](const httplib::Request&, httplib::Response& res) { res.status = 401; });
    const int port = server.bind_to_any_port("127.0.0.1");
    REQUIRE(port > 0);
    std::thread thread([&] { server.listen_after_bind(); });
    server.wait_until_ready();

    RemoteConfig config;
    config.model = "test-model";
    config.max_attempts = 3;
    config.initial_backoff = std::chrono::milliseconds(1);
    config.timeout = std::chrono::seconds(5);
    const std::string base = "http://127.0.0.1:" + std::to_string(port);

    config.endpoint = base + "/flaky";
    CHECK(RemoteBackend(config).complete(sample("x")) == "got test-model");
    CHECK(flaky_calls == 3);

    config.endpoint = base + "/limited";
    CHECK_THROWS_AS((void)RemoteBackend(config).complete(sample("x")), RateLimitError);
    CHECK(limited_calls == 3);

    config.endpoint = base + "/denied";
    CHECK_THROWS_AS((void)RemoteBackend(config).complete(sample("x")), TransportError);

    server.stop();
    thread.join();
  }
}
