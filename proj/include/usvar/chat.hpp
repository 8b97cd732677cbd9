#pragma once

#include <chrono>
#include <cstdlib>
#include <memory>
#include <string>
#include <thread>
#include <vector>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "usvar/errors.hpp"
#include "usvar/strings.hpp"
#include "usvar/transcript.hpp"

namespace usvar {

struct ChatMessage {
  std::string role;  // "user" | "assistant"
  std::string content;
};

// Transport behind one conversation. complete() receives the whole message
// history and returns the assistant's next answer.
class ChatTransport {
 public:
  virtual ~ChatTransport() = default;
  virtual std::string complete(const std::vector<ChatMessage>& messages) = 0;
  virtual std::string name() const = 0;
};

// Appends the prompt, obtains the answer through the transport, appends it to
// the history and returns it.
inline std::string chat_round(ChatTransport& transport, std::vector<ChatMessage>& messages,
                              const std::string& prompt) {
  messages.push_back({"user", prompt});
  std::string answer = transport.complete(messages);
  messages.push_back({"assistant", answer});
  return answer;
}

struct HttpEndpoint {
  std::string url;   // base URL, e.g. "https://api.openai.com/v1"
  std::string model;
  std::string api_key;  // empty = no Authorization header
  std::optional<double> temperature;
  int max_retries = 2;
  int timeout_seconds = 120;
};

// Minimal OpenAI-compatible chat-completions client.
class HttpChatTransport : public ChatTransport {
 public:
  explicit HttpChatTransport(HttpEndpoint endpoint) : endpoint_(std::move(endpoint)) {
    auto scheme_end = endpoint_.url.find("://");
    if (scheme_end == std::string::npos)
      throw ConfigError("endpoint URL must include a scheme: " + endpoint_.url);
    auto path_start = endpoint_.url.find('/', scheme_end + 3);
    if (path_start == std::string::npos) {
      base_ = endpoint_.url;
      path_ = "";
    } else {
      base_ = endpoint_.url.substr(0, path_start);
      path_ = endpoint_.url.substr(path_start);
    }
    while (!path_.empty() && path_.back() == '/') path_.pop_back();
    const std::string suffix = "/chat/completions";
    if (path_.size() < suffix.size() ||
        path_.compare(path_.size() - suffix.size(), suffix.size(), suffix) != 0)
      path_ += suffix;
  }

  std::string complete(const std::vector<ChatMessage>& messages) override {
    nlohmann::json body;
    body["model"] = endpoint_.model;
    body["messages"] = nlohmann::json::array();
    for (const auto& m : messages)
      body["messages"].push_back({{"role", m.role}, {"content", m.content}});
    if (endpoint_.temperature) body["temperature"] = *endpoint_.temperature;
    const std::string payload = body.dump();

    std::string last_error;
    for (int attempt = 0; attempt <= endpoint_.max_retries; ++attempt) {
      if (attempt > 0) std::this_thread::sleep_for(std::chrono::milliseconds(200 * attempt));
      httplib::Client client(base_);
      client.set_read_timeout(endpoint_.timeout_seconds, 0);
      client.set_connection_timeout(10, 0);
      httplib::Headers headers;
      if (!endpoint_.api_key.empty())
        headers.emplace("Authorization", "Bearer " + endpoint_.api_key);
      auto res = client.Post(path_, headers, payload, "application/json");
      if (!res) {
        last_error = "connection to " + base_ + " failed: " + httplib::to_string(res.error());
        continue;  // retriable
      }
      if (res->status == 200) return extract_content(res->body);
      bool retriable = res->status == 429 || res->status >= 500;
      std::string msg = "chat endpoint returned HTTP " + std::to_string(res->status) + ": " +
                        res->body.substr(0, 300);
      if (!retriable) throw TransportError(msg, false);
      last_error = msg;
    }
    throw TransportError(last_error + " (after " + std::to_string(endpoint_.max_retries + 1) +
                             " attempts)",
                         true);
  }

  std::string name() const override { return base_ + path_ + " model=" + endpoint_.model; }

 private:
  static std::string extract_content(const std::string& body) {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(body);
    } catch (const nlohmann::json::exception& e) {
      throw TransportError(std::string("malformed chat response: ") + e.what(), false);
    }
    if (!j.contains("choices") || j["choices"].empty() ||
        !j["choices"][0].contains("message") ||
        !j["choices"][0]["message"].contains("content"))
      throw TransportError("chat response has no choices[0].message.content", false);
    return j["choices"][0]["message"]["content"].get<std::string>();
  }

  HttpEndpoint endpoint_;
  std::string base_;
  std::string path_;
};

// Reads a named environment variable; unset or empty is a configuration error.
inline std::string credential_from_env(const std::string& variable) {
  const char* value = std::getenv(variable.c_str());
  if (value == nullptr || *value == '\0')
    throw ConfigError("credential environment variable '" + variable + "' is not set");
  return value;
}

namespace detail {

inline std::string first_diff(std::string_view recorded, std::string_view rendered) {
  auto rec_lines = split_lines(recorded);
  auto ren_lines = split_lines(rendered);
  std::size_t n = std::max(rec_lines.size(), ren_lines.size());
  for (std::size_t i = 0; i < n; ++i) {
    std::string_view rec = i < rec_lines.size() ? rec_lines[i] : std::string_view("<missing>");
    std::string_view ren = i < ren_lines.size() ? ren_lines[i] : std::string_view("<missing>");
    if (rec != ren)
      return "first differing line " + std::to_string(i + 1) + ":\n  recorded: " +
             std::string(rec) + "\n  rendered: " + std::string(ren);
  }
  return "texts differ only in line endings or trailing whitespace";
}

}  // namespace detail

// Replays a recorded conversation: answers come back verbatim and each
// rendered prompt must match the recorded prompt byte-for-byte.
class ReplayTransport : public ChatTransport {
 public:
  explicit ReplayTransport(ConversationTranscript source) : source_(std::move(source)) {}

  std::string complete(const std::vector<ChatMessage>& messages) override {
    if (messages.empty() || messages.back().role != "user")
      throw ReplayDivergenceError("replay expected a user prompt");
    if (next_ >= source_.exchanges.size())
      throw ReplayDivergenceError("replay exhausted after " +
                                  std::to_string(source_.exchanges.size()) + " exchanges");
    const auto& recorded = source_.exchanges[next_];
    if (messages.back().content != recorded.prompt)
      throw ReplayDivergenceError("prompt for step " + std::to_string(recorded.step) +
                                  " differs from the recording; " +
                                  detail::first_diff(recorded.prompt, messages.back().content));
    ++next_;
    return recorded.answer;
  }

  std::string name() const override { return "replay of " + source_.id; }

  const ConversationTranscript& source() const { return source_; }

 private:
  ConversationTranscript source_;
  std::size_t next_ = 0;
};

}  // namespace usvar
