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

#ifndef CODEVET_FIXERS_H
#define CODEVET_FIXERS_H

#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>

#include "codevet/chat_backend.h"
#include "codevet/repair.h"

namespace codevet {

enum class RuleKind {
  kMissingSemicolon,      // insert ';' where the compiler expected one
  kMissingHeader,         // #include the header that declares a std symbol
  kUndeclaredIdentifier,  // file-scope declaration with an inferred type
  kUnbalancedDelimiter,   // insert a missing ( ) ] }, or drop a stray closer
};

inline constexpr std::array<RuleKind, 4> kAllRuleKinds = {
    RuleKind::kMissingSemicolon, RuleKind::kMissingHeader,
    RuleKind::kUndeclaredIdentifier, RuleKind::kUnbalancedDelimiter};

// "semicolon", "header", "undeclared", "delimiter".
std::string_view RuleKindName(RuleKind kind);
std::optional<RuleKind> RuleKindFromName(std::string_view name);

// The header declaring `symbol` for `lang`, if the table knows it.
std::optional<std::string_view> HeaderFor(std::string_view symbol,
                                          LangLabel lang);

// Deterministic pattern rules driven by GCC/Clang diagnostic wording. Each
// rule checks that the diagnosed location still shows what the message
// describes and declines otherwise.
class RuleFixer : public FixerBackend {
 public:
  RuleFixer() : enabled_(kAllRuleKinds.begin(), kAllRuleKinds.end()) {}
  explicit RuleFixer(std::set<RuleKind> enabled) : enabled_(std::move(enabled)) {}

  // The rule whose message pattern matches, ignoring whether it is enabled
  // or whether the edit would apply.
  static std::optional<RuleKind> MatchRule(const Diagnostic& error,
                                           LangLabel lang);

  std::string_view name() const override { return "rules"; }
  FixResult Fix(const FixRequest& request) override;

 private:
  std::set<RuleKind> enabled_;
};

// Returns the known-good source registered for a snippet id. Only useful
// for validating the harness.
class OracleFixer : public FixerBackend {
 public:
  OracleFixer() = default;
  explicit OracleFixer(std::map<std::string, std::string> references)
      : references_(std::move(references)) {}

  void Add(std::string snippet_id, std::string reference) {
    references_[std::move(snippet_id)] = std::move(reference);
  }
  std::size_t size() const { return references_.size(); }

  std::string_view name() const override { return "oracle"; }
  FixResult Fix(const FixRequest& request) override;

 private:
  std::map<std::string, std::string> references_;
};

// Sends the prompt to a chat backend and extracts the code from the reply.
class ModelFixer : public FixerBackend {
 public:
  explicit ModelFixer(ChatBackend& backend) : backend_(backend) {}

  std::string_view name() const override { return "model"; }
  FixResult Fix(const FixRequest& request) override;

 private:
  ChatBackend& backend_;
};

// Fails every call.
class NullFixer : public FixerBackend {
 public:
  std::string_view name() const override { return "null"; }
  FixResult Fix(const FixRequest&) override {
    return FixResult::Failure("null fixer");
  }
};

}  // namespace codevet

#endif  // CODEVET_FIXERS_H
