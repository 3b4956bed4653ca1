#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace semfl {

struct ChatMessage {
  std::string role;  // "system" | "user" | "assistant"
  std::string content;
};

struct RetryPolicy {
  int max_attempts = 3;
  int backoff_ms = 250;  // doubled after every failed attempt
};

class ChatBackend {
 public:
  virtual ~ChatBackend() = default;
  virtual std::string complete(const std::vector<ChatMessage>& messages) = 0;
  virtual std::string name() const = 0;
};

// Retries transient backend failures per the policy. `retries_out`, when
// given, receives the number of retried attempts (0 on first-try success).
std::string chat_with_retries(ChatBackend& backend, const std::vector<ChatMessage>& messages,
                              const RetryPolicy& policy, int* retries_out = nullptr);

struct RemoteChatConfig {
  std::string base_url;  // e.g. "http://localhost:8080/v1"
  std::string model;
  double temperature = 1.0;
  std::string api_key_env = "CHAT_API_KEY";
  int timeout_s = 120;
};

// JSON chat-completion client: POST {model, temperature, messages:[...]} to
// <base_url>/chat/completions; reads choices[0].message.content (or a bare
// "content" field). The API key is read from the environment and never logged.
std::unique_ptr<ChatBackend> make_remote_chat_backend(const RemoteChatConfig& config);

struct MockChatConfig {
  // Number of module-detail requests the query loop makes before answering.
  int request_rounds = 0;
};

// Deterministic template backend: a pure function of the prompt text, so runs
// are byte-reproducible without network access. Recognizes the module-report,
// method-report, query and explanation prompts produced by prompts.hpp.
std::unique_ptr<ChatBackend> make_mock_chat_backend(const MockChatConfig& config = {});

}  // namespace semfl
