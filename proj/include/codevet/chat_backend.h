// Copyright 2026 The CodeVet Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CODEVET_CHAT_BACKEND_H
#define CODEVET_CHAT_BACKEND_H

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <semaphore>
#include <stdexcept>
#include <string>
#include <string_view>

namespace codevet {

class BackendError : public std::runtime_error {
 public:
  enum class Kind { kUnreachable, kMalformedReply };

  BackendError(Kind kind, const std::string& message, std::string raw = "")
      : std::runtime_error(message), kind_(kind), raw_(std::move(raw)) {}

  Kind kind() const { return kind_; }
  // The reply body for kMalformedReply.
  const std::string& raw() const { return raw_; }

 private:
  Kind kind_;
  std::string raw_;
};

std::string_view BackendErrorKindName(BackendError::Kind kind);

// A chat-completion style model service: one user message in, the first
// choice's message content out. Implementations must be thread-safe.
class ChatBackend {
 public:
  virtual ~ChatBackend() = default;
  // Throws BackendError.
  virtual std::string Complete(const std::string& prompt) = 0;
};

struct HttpBackendOptions {
  std::string url;  // http://host[:port]/path
  std::string api_key;
  std::string model;
  std::chrono::duration<double> timeout{60.0};
  std::ptrdiff_t max_in_flight = 4;

  // CODEVET_MODEL_URL, CODEVET_MODEL_KEY and CODEVET_MODEL_NAME.
  static HttpBackendOptions FromEnvironment();
};

// Request body for HttpChatBackend:
//   {"model": <model>, "messages": [{"role": "user", "content": <prompt>}]}
std::string ChatRequestBody(std::string_view model, std::string_view prompt);

// Extracts choices[0].message.content. Throws BackendError(kMalformedReply).
std::string ParseChatReply(std::string_view body);

class HttpChatBackend : public ChatBackend {
 public:
  // Throws std::invalid_argument for unsupported or malformed URLs.
  explicit HttpChatBackend(HttpBackendOptions options);

  std::string Complete(const std::string& prompt) override;

 private:
  HttpBackendOptions options_;
  std::string scheme_host_port_;
  std::string path_;
  std::counting_semaphore<1024> in_flight_;
};

// 64-bit FNV-1a, rendered as 16 lowercase hex digits.
std::string Fnv1aHex(std::string_view data);

// Answers prompts from a recorded JSON-lines file of {"key", "reply"}
// objects, where key is Fnv1aHex(prompt). Unknown prompts raise
// kUnreachable.
class ReplayBackend : public ChatBackend {
 public:
  static ReplayBackend FromFile(const std::filesystem::path& path);

  void Add(const std::string& prompt, std::string reply);
  std::string Complete(const std::string& prompt) override;
  std::size_t size() const { return replies_.size(); }

 private:
  std::map<std::string, std::string> replies_;
};

}  // namespace codevet

#endif  // CODEVET_CHAT_BACKEND_H
