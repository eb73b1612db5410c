// SPDX-License-Identifier: Apache-2.0
#include "nlplan/llm.hpp"

#include <openssl/sha.h>

#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>

namespace nlplan {

using nlohmann::json;

std::string_view to_string(ChatRole role) {
  switch (role) {
    case ChatRole::kSystem:
      return "system";
    case ChatRole::kUser:
      return "user";
    case ChatRole::kAssistant:
      return "assistant";
  }
  return "user";
}

ChatRole chat_role_from_string(std::string_view s) {
  if (s == "system") return ChatRole::kSystem;
  if (s == "user") return ChatRole::kUser;
  if (s == "assistant") return ChatRole::kAssistant;
  throw LlmError("unknown chat role '" + std::string(s) + "'");
}

std::optional<int> max_tokens_for(LlmPurpose purpose) {
  switch (purpose) {
    case LlmPurpose::kTemplateGeneration:
      return 50;
    case LlmPurpose::kTranslation:
      return 256;
    case LlmPurpose::kThoughtGeneration:
      return 300;
    case LlmPurpose::kPlanning:
      return std::nullopt;
  }
  return std::nullopt;
}

ChatRequest ChatRequest::make(LlmPurpose purpose, std::vector<ChatMessage> messages,
                              std::vector<std::string> stop) {
  ChatRequest req;
  req.messages = std::move(messages);
  req.max_tokens = max_tokens_for(purpose);
  req.temperature = 0.0;
  req.stop = std::move(stop);
  return req;
}

void to_json(json& j, const ChatRequest& req) {
  json messages = json::array();
  for (const auto& m : req.messages) {
    messages.push_back({{"role", to_string(m.role)}, {"content", m.content}});
  }
  j = json{{"messages", std::move(messages)},
           {"temperature", req.temperature},
           {"stop", req.stop},
           {"model", req.model}};
  j["max_tokens"] = req.max_tokens ? json(*req.max_tokens) : json(nullptr);
}

void from_json(const json& j, ChatRequest& req) {
  req = ChatRequest{};
  for (const auto& m : j.at("messages")) {
    req.messages.push_back(
        {chat_role_from_string(m.at("role").get<std::string>()), m.at("content").get<std::string>()});
  }
  if (j.contains("max_tokens") && !j["max_tokens"].is_null()) req.max_tokens = j["max_tokens"].get<int>();
  req.temperature = j.value("temperature", 0.0);
  req.stop = j.value("stop", std::vector<std::string>{});
  req.model = j.value("model", std::string{});
}

std::string canonical_json(const ChatRequest& req) { return json(req).dump(); }

std::string request_digest(const ChatRequest& req) { return sha256_hex(canonical_json(req)); }

std::string sha256_hex(std::string_view text) {
  unsigned char hash[SHA256_DIGEST_LENGTH];
  SHA256(reinterpret_cast<const unsigned char*>(text.data()), text.size(), hash);
  std::ostringstream os;
  for (unsigned char b : hash) os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(b);
  return os.str();
}

// ---------------------------------------------------------------------------
// MockBackend

MockBackend::MockBackend(std::vector<std::string> script, Responder responder)
    : script_(script.begin(), script.end()), responder_(std::move(responder)) {}

MockBackend::MockBackend(Responder responder) : responder_(std::move(responder)) {}

void MockBackend::push(std::string response) {
  std::lock_guard lock(mutex_);
  script_.push_back(std::move(response));
}

std::string MockBackend::complete(const ChatRequest& req) {
  std::lock_guard lock(mutex_);
  requests_.push_back(req);
  if (!script_.empty()) {
    std::string r = std::move(script_.front());
    script_.pop_front();
    return r;
  }
  if (responder_) return responder_(req);
  throw LlmError("mock backend script exhausted");
}

std::vector<ChatRequest> MockBackend::requests() const {
  std::lock_guard lock(mutex_);
  return requests_;
}

std::size_t MockBackend::remaining() const {
  std::lock_guard lock(mutex_);
  return script_.size();
}

// ---------------------------------------------------------------------------
// Recordings

void save_recording(const std::filesystem::path& path, const std::vector<RecordedExchange>& exchanges) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  for (const auto& e : exchanges) {
    json line{{"digest", e.digest}, {"response", e.response}};
    if (e.request) line["request"] = *e.request;
    out << line.dump() << "\n";
  }
}

std::vector<RecordedExchange> load_recording(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open recording '" + path.string() + "'");
  std::vector<RecordedExchange> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      json j = json::parse(line);
      RecordedExchange e;
      e.response = j.at("response").get<std::string>();
      if (j.contains("request")) e.request = j["request"].get<ChatRequest>();
      e.digest = j.contains("digest") ? j["digest"].get<std::string>() : request_digest(*e.request);
      out.push_back(std::move(e));
    } catch (const json::exception& ex) {
      throw Error(path.string() + ":" + std::to_string(lineno) + ": bad recording entry: " + ex.what());
    }
  }
  return out;
}

ReplayBackend::ReplayBackend(std::vector<RecordedExchange> exchanges) {
  for (auto& e : exchanges) responses_[e.digest] = std::move(e.response);
}

ReplayBackend ReplayBackend::load(const std::filesystem::path& path) {
  return ReplayBackend(load_recording(path));
}

std::string ReplayBackend::complete(const ChatRequest& req) {
  const std::string digest = request_digest(req);
  auto it = responses_.find(digest);
  if (it == responses_.end()) {
    throw ReplayMissError("no recorded response for request " + digest + ": " + canonical_json(req));
  }
  return it->second;
}

std::string RecordingBackend::complete(const ChatRequest& req) {
  std::string response = inner_.complete(req);
  std::lock_guard lock(mutex_);
  exchanges_.push_back({request_digest(req), req, response});
  return response;
}

std::vector<RecordedExchange> RecordingBackend::exchanges() const {
  std::lock_guard lock(mutex_);
  return exchanges_;
}

void RecordingBackend::save(const std::filesystem::path& path) const { save_recording(path, exchanges()); }

// ---------------------------------------------------------------------------
// CachedBackend

namespace {

std::string utc_timestamp() {
  std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

CachedBackend::CachedBackend(LlmBackend& inner, std::filesystem::path cache_file)
    : inner_(inner), path_(std::move(cache_file)) {
  if (std::filesystem::exists(path_)) {
    for (auto& e : load_recording(path_)) entries_[e.digest] = std::move(e.response);
  } else if (path_.has_parent_path()) {
    std::filesystem::create_directories(path_.parent_path());
  }
}

std::string CachedBackend::complete(const ChatRequest& req) {
  const std::string digest = request_digest(req);
  {
    std::shared_lock lock(mutex_);
    auto it = entries_.find(digest);
    if (it != entries_.end()) {
      ++hits_;
      return it->second;
    }
  }
  std::string response = inner_.complete(req);
  std::unique_lock lock(mutex_);
  ++misses_;
  if (entries_.emplace(digest, response).second) {
    std::ofstream out(path_, std::ios::binary | std::ios::app);
    if (!out) throw Error("cannot append to cache '" + path_.string() + "'");
    json line{{"digest", digest},
              {"response", response},
              {"timestamp", utc_timestamp()},
              {"backend", inner_.id()}};
    out << line.dump() << "\n";
  }
  return response;
}

std::size_t CachedBackend::hits() const noexcept { return hits_; }
std::size_t CachedBackend::misses() const noexcept { return misses_; }

std::size_t CachedBackend::size() const {
  std::shared_lock lock(mutex_);
  return entries_.size();
}

// ---------------------------------------------------------------------------
// RemoteBackend

RemoteConfig RemoteConfig::from_env() {
  auto env = [](const char* name) -> std::string {
    const char* v = std::getenv(name);
    return v ? v : "";
  };
  RemoteConfig c;
  c.endpoint = env("NLPLAN_LLM_ENDPOINT");
  if (c.endpoint.empty()) c.endpoint = "https://api.openai.com/v1/chat/completions";
  c.model = env("NLPLAN_LLM_MODEL");
  c.api_key = env("NLPLAN_LLM_API_KEY");
  return c;
}

RemoteBackend::RemoteBackend(RemoteConfig config) : config_(std::move(config)) {
  if (config_.model.empty()) throw LlmError("no model configured for the remote backend (NLPLAN_LLM_MODEL)");
  if (config_.max_attempts < 1) config_.max_attempts = 1;
}

std::string RemoteBackend::request_body(const ChatRequest& req, const std::string& model) {
  json messages = json::array();
  for (const auto& m : req.messages) {
    messages.push_back({{"role", to_string(m.role)}, {"content", m.content}});
  }
  json body{{"model", req.model.empty() ? model : req.model},
            {"messages", std::move(messages)},
            {"temperature", req.temperature}};
  if (req.max_tokens) body["max_tokens"] = *req.max_tokens;
  if (!req.stop.empty()) body["stop"] = req.stop;
  return body.dump();
}

std::string RemoteBackend::parse_response_body(std::string_view body) {
  json j = json::parse(body, nullptr, false);
  if (j.is_discarded()) throw MalformedResponseError("response is not JSON");
  try {
    const json& content = j.at("choices").at(0).at("message").at("content");
    if (!content.is_string()) throw MalformedResponseError("message content is not a string");
    return content.get<std::string>();
  } catch (const json::exception& ex) {
    throw MalformedResponseError(std::string("unexpected response shape: ") + ex.what());
  }
}

std::string RemoteBackend::complete(const ChatRequest& req) {
  // Split "scheme://host[:port]/path".
  const auto scheme_end = config_.endpoint.find("://");
  if (scheme_end == std::string::npos) throw TransportError("endpoint must be a full URL");
  const auto path_begin = config_.endpoint.find('/', scheme_end + 3);
  const std::string base = config_.endpoint.substr(0, path_begin);
  const std::string path = path_begin == std::string::npos ? "/" : config_.endpoint.substr(path_begin);

  httplib::Client client(base);
  client.set_connection_timeout(config_.timeout);
  client.set_read_timeout(config_.timeout);
  httplib::Headers headers;
  if (!config_.api_key.empty()) headers.emplace("Authorization", "Bearer " + config_.api_key);
  const std::string body = request_body(req, config_.model);

  auto backoff = config_.initial_backoff;
  std::string last_error;
  bool rate_limited = false;
  for (int attempt = 1; attempt <= config_.max_attempts; ++attempt) {
    auto res = client.Post(path, headers, body, "application/json");
    if (!res) {
      last_error = "transport failure: " + httplib::to_string(res.error());
      rate_limited = false;
    } else if (res->status == 429) {
      last_error = "rate limited (HTTP 429)";
      rate_limited = true;
    } else if (res->status >= 500) {
      last_error = "server error (HTTP " + std::to_string(res->status) + ")";
      rate_limited = false;
    } else if (res->status != 200) {
      throw TransportError("HTTP " + std::to_string(res->status) + ": " + res->body);
    } else {
      return parse_response_body(res->body);
    }
    if (attempt < config_.max_attempts) {
      std::this_thread::sleep_for(backoff);
      backoff *= 2;
    }
  }
  if (rate_limited) throw RateLimitError(last_error);
  throw TransportError(last_error);
}

}  // namespace nlplan
