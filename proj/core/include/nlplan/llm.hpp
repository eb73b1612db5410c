// SPDX-License-Identifier: Apache-2.0
//
// Chat-completion backends. Every backend is called with a fully specified
// ChatRequest; its SHA-256 digest over the canonical JSON form (messages,
// limits, temperature, stop sequences, model) keys both the persistent cache
// and replay recordings.
#pragma once

#include <atomic>
#include <chrono>
#include <cstddef>
#include <deque>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "nlplan/error.hpp"

namespace nlplan {

enum class ChatRole { kSystem, kUser, kAssistant };

std::string_view to_string(ChatRole role);
ChatRole chat_role_from_string(std::string_view s);

struct ChatMessage {
  ChatRole role = ChatRole::kUser;
  std::string content;

  friend bool operator==(const ChatMessage&, const ChatMessage&) = default;
};

// Pipeline roles. Each has a fixed output-token budget.
enum class LlmPurpose { kTemplateGeneration, kTranslation, kThoughtGeneration, kPlanning };

// 50, 256, 300 and unlimited respectively.
std::optional<int> max_tokens_for(LlmPurpose purpose);

struct ChatRequest {
  std::vector<ChatMessage> messages;
  std::optional<int> max_tokens;
  double temperature = 0.0;
  std::vector<std::string> stop;
  std::string model;

  static ChatRequest make(LlmPurpose purpose, std::vector<ChatMessage> messages,
                          std::vector<std::string> stop = {});

  friend bool operator==(const ChatRequest&, const ChatRequest&) = default;
};

void to_json(nlohmann::json& j, const ChatRequest& req);
void from_json(const nlohmann::json& j, ChatRequest& req);

// Compact JSON with sorted keys; stable across runs and platforms.
std::string canonical_json(const ChatRequest& req);
// Lowercase hex SHA-256 of canonical_json(req).
std::string request_digest(const ChatRequest& req);
// Lowercase hex SHA-256 of arbitrary text.
std::string sha256_hex(std::string_view text);

class LlmError : public Error {
 public:
  using Error::Error;
};
class TransportError : public LlmError {
 public:
  using LlmError::LlmError;
};
class RateLimitError : public LlmError {
 public:
  using LlmError::LlmError;
};
class MalformedResponseError : public LlmError {
 public:
  using LlmError::LlmError;
};
class ReplayMissError : public LlmError {
 public:
  using LlmError::LlmError;
};

class LlmBackend {
 public:
  virtual ~LlmBackend() = default;
  virtual std::string complete(const ChatRequest& req) = 0;
  virtual std::string id() const = 0;
};

// Test double. Serves scripted responses in order; once the script runs dry
// the responder (if any) is consulted. Records every request it sees.
class MockBackend final : public LlmBackend {
 public:
  using Responder = std::function<std::string(const ChatRequest&)>;

  MockBackend() = default;
  explicit MockBackend(std::vector<std::string> script, Responder responder = nullptr);
  explicit MockBackend(Responder responder);

  void push(std::string response);
  std::string complete(const ChatRequest& req) override;
  std::string id() const override { return "mock"; }

  std::vector<ChatRequest> requests() const;
  std::size_t remaining() const;

 private:
  mutable std::mutex mutex_;
  std::deque<std::string> script_;
  Responder responder_;
  std::vector<ChatRequest> requests_;
};

struct RecordedExchange {
  std::string digest;
  std::optional<ChatRequest> request;
  std::string response;
};

// Serves recorded (digest -> response) pairs. Accepts both recordings and
// cache files. An unknown digest is a hard error naming the request.
class ReplayBackend final : public LlmBackend {
 public:
  explicit ReplayBackend(std::vector<RecordedExchange> exchanges);
  static ReplayBackend load(const std::filesystem::path& path);

  std::string complete(const ChatRequest& req) override;
  std::string id() const override { return "replay"; }
  std::size_t size() const noexcept { return responses_.size(); }

 private:
  std::map<std::string, std::string> responses_;
};

// Forwards to `inner` and keeps every exchange for later saving.
class RecordingBackend final : public LlmBackend {
 public:
  explicit RecordingBackend(LlmBackend& inner) : inner_(inner) {}

  std::string complete(const ChatRequest& req) override;
  std::string id() const override { return inner_.id(); }

  std::vector<RecordedExchange> exchanges() const;
  // JSONL, one {digest, request, response} object per line.
  void save(const std::filesystem::path& path) const;

 private:
  LlmBackend& inner_;
  mutable std::mutex mutex_;
  std::vector<RecordedExchange> exchanges_;
};

void save_recording(const std::filesystem::path& path, const std::vector<RecordedExchange>& exchanges);
std::vector<RecordedExchange> load_recording(const std::filesystem::path& path);

struct CacheEntry {
  std::string digest;
  std::string response;
  std::string timestamp;
  std::string backend;
};

// Persistent response cache in front of another backend. The cache file is
// append-only JSONL; entries from earlier runs are loaded on construction.
class CachedBackend final : public LlmBackend {
 public:
  CachedBackend(LlmBackend& inner, std::filesystem::path cache_file);

  std::string complete(const ChatRequest& req) override;
  std::string id() const override { return inner_.id(); }

  std::size_t hits() const noexcept;
  std::size_t misses() const noexcept;
  std::size_t size() const;

 private:
  LlmBackend& inner_;
  std::filesystem::path path_;
  mutable std::shared_mutex mutex_;
  std::map<std::string, std::string> entries_;
  std::atomic<std::size_t> hits_{0};
  std::atomic<std::size_t> misses_{0};
};

struct RemoteConfig {
  // Full URL of the chat-completions endpoint, e.g.
  // https://api.openai.com/v1/chat/completions
  std::string endpoint;
  std::string model;
  std::string api_key;
  int max_attempts = 5;
  std::chrono::milliseconds initial_backoff{1000};
  std::chrono::seconds timeout{120};

  // NLPLAN_LLM_ENDPOINT, NLPLAN_LLM_MODEL, NLPLAN_LLM_API_KEY.
  static RemoteConfig from_env();
};

// OpenAI-style chat-completions client. Transport failures and 5xx replies are
// retried with exponential backoff; HTTP 429 raises RateLimitError once the
// attempts are used up.
class RemoteBackend final : public LlmBackend {
 public:
  explicit RemoteBackend(RemoteConfig config);

  std::string complete(const ChatRequest& req) override;
  std::string id() const override { return "remote:" + config_.model; }

  // Wire format, exposed for tests.
  static std::string request_body(const ChatRequest& req, const std::string& model);
  static std::string parse_response_body(std::string_view body);

 private:
  RemoteConfig config_;
};

}  // namespace nlplan
