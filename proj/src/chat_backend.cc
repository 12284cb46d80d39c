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

#include "codevet/chat_backend.h"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>

#include "httplib.h"
#include "json.hpp"

namespace codevet {

using nlohmann::json;

namespace {

std::string EnvOr(const char* name, std::string fallback) {
  const char* value = std::getenv(name);
  return value != nullptr ? std::string(value) : fallback;
}

// RAII slot in the in-flight limit.
class SemaphoreSlot {
 public:
  explicit SemaphoreSlot(std::counting_semaphore<1024>& sem) : sem_(sem) {
    sem_.acquire();
  }
  ~SemaphoreSlot() { sem_.release(); }
  SemaphoreSlot(const SemaphoreSlot&) = delete;
  SemaphoreSlot& operator=(const SemaphoreSlot&) = delete;

 private:
  std::counting_semaphore<1024>& sem_;
};

}  // namespace

std::string_view BackendErrorKindName(BackendError::Kind kind) {
  switch (kind) {
    case BackendError::Kind::kUnreachable:
      return "BackendUnreachable";
    case BackendError::Kind::kMalformedReply:
      return "BackendMalformedReply";
  }
  return "BackendUnreachable";
}

HttpBackendOptions HttpBackendOptions::FromEnvironment() {
  HttpBackendOptions options;
  options.url = EnvOr("CODEVET_MODEL_URL", "");
  options.api_key = EnvOr("CODEVET_MODEL_KEY", "");
  options.model = EnvOr("CODEVET_MODEL_NAME", "");
  return options;
}

std::string ChatRequestBody(std::string_view model, std::string_view prompt) {
  json body;
  body["model"] = std::string(model);
  body["messages"] = json::array(
      {json{{"role", "user"}, {"content", std::string(prompt)}}});
  return body.dump();
}

std::string ParseChatReply(std::string_view body) {
  json reply;
  try {
    reply = json::parse(body);
  } catch (const json::parse_error&) {
    throw BackendError(BackendError::Kind::kMalformedReply,
                       "reply is not JSON", std::string(body));
  }
  try {
    const auto& content = reply.at("choices").at(0).at("message").at("content");
    if (!content.is_string()) throw std::out_of_range("content");
    return content.get<std::string>();
  } catch (const std::exception&) {
    throw BackendError(BackendError::Kind::kMalformedReply,
                       "reply has no choices[0].message.content",
                       std::string(body));
  }
}

HttpChatBackend::HttpChatBackend(HttpBackendOptions options)
    : options_(std::move(options)),
      in_flight_(std::clamp<std::ptrdiff_t>(options_.max_in_flight, 1, 1024)) {
  const std::string& url = options_.url;
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) {
    throw std::invalid_argument("model URL must look like http://host/path: '" +
                                url + "'");
  }
  const std::string scheme = url.substr(0, scheme_end);
  if (scheme != "http") {
    throw std::invalid_argument("unsupported model URL scheme '" + scheme +
                                "' (only http is built in)");
  }
  const auto path_start = url.find('/', scheme_end + 3);
  scheme_host_port_ = url.substr(0, path_start);
  path_ = path_start == std::string::npos ? "/" : url.substr(path_start);
  if (scheme_host_port_.size() <= scheme_end + 3) {
    throw std::invalid_argument("model URL has no host: '" + url + "'");
  }
}

std::string HttpChatBackend::Complete(const std::string& prompt) {
  SemaphoreSlot slot(in_flight_);
  httplib::Client client(scheme_host_port_);
  const auto seconds = std::chrono::duration_cast<std::chrono::seconds>(
      options_.timeout);
  const auto micros = std::chrono::duration_cast<std::chrono::microseconds>(
                          options_.timeout - seconds);
  client.set_connection_timeout(seconds.count(), micros.count());
  client.set_read_timeout(seconds.count(), micros.count());
  client.set_write_timeout(seconds.count(), micros.count());

  httplib::Headers headers;
  if (!options_.api_key.empty()) {
    headers.emplace("Authorization", "Bearer " + options_.api_key);
  }
  auto response = client.Post(path_, headers,
                              ChatRequestBody(options_.model, prompt),
                              "application/json");
  if (!response) {
    throw BackendError(BackendError::Kind::kUnreachable,
                       "model backend unreachable: " +
                           httplib::to_string(response.error()));
  }
  if (response->status < 200 || response->status >= 300) {
    throw BackendError(BackendError::Kind::kUnreachable,
                       "model backend returned HTTP " +
                           std::to_string(response->status),
                       response->body);
  }
  return ParseChatReply(response->body);
}

std::string Fnv1aHex(std::string_view data) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  char buffer[17];
  std::snprintf(buffer, sizeof(buffer), "%016llx",
                static_cast<unsigned long long>(hash));
  return buffer;
}

ReplayBackend ReplayBackend::FromFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::invalid_argument("cannot open replay file: " + path.string());
  }
  ReplayBackend backend;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      auto record = json::parse(line);
      backend.replies_[record.at("key").get<std::string>()] =
          record.at("reply").get<std::string>();
    } catch (const std::exception& e) {
      throw std::invalid_argument("replay file " + path.string() + ":" +
                                  std::to_string(line_number) + ": " +
                                  e.what());
    }
  }
  return backend;
}

void ReplayBackend::Add(const std::string& prompt, std::string reply) {
  replies_[Fnv1aHex(prompt)] = std::move(reply);
}

std::string ReplayBackend::Complete(const std::string& prompt) {
  auto it = replies_.find(Fnv1aHex(prompt));
  if (it == replies_.end()) {
    throw BackendError(BackendError::Kind::kUnreachable,
                       "no recorded reply for prompt " + Fnv1aHex(prompt));
  }
  return it->second;
}

}  // namespace codevet
