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

// The compiler-guided repair loop: one fixer call per diagnostic, then a
// recompile, for at most K outer iterations.

#ifndef CODEVET_REPAIR_H
#define CODEVET_REPAIR_H

#include <cstddef>
#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "codevet/compiler.h"
#include "codevet/corpus.h"
#include "codevet/diagnostics.h"
#include "codevet/lang.h"

namespace codevet {

// Memoizes compile results by (language, source) for one CompilerConfig.
// Deterministic fixers revisit the same sources across K values; the cache
// makes a K sweep cost one sweep. Thread-safe.
class CompileCache {
 public:
  explicit CompileCache(const CompilerConfig& config) : config_(config) {}

  CompileOutcome Check(std::string_view source, LangLabel lang);
  const CompilerConfig& config() const { return config_; }
  std::size_t size() const;

 private:
  const CompilerConfig& config_;
  mutable std::mutex mutex_;
  std::unordered_map<std::string, CompileOutcome> entries_;
};

struct FixRequest {
  std::string_view snippet_id;
  LangLabel lang = LangLabel::kC;
  std::string_view prompt;
  std::string_view code;            // current working code
  std::string_view diagnosed_code;  // the code the diagnostic was produced for
  const Diagnostic* error = nullptr;
};

enum class FixStatus {
  kCandidate,    // a full replacement source
  kNoCandidate,  // declined; the loop keeps the working code
  kFailed,       // backend failure; the loop aborts
};

struct FixResult {
  FixStatus status = FixStatus::kNoCandidate;
  std::string candidate;
  std::string note;  // rule name, decline reason or failure message

  static FixResult Candidate(std::string code, std::string note = "") {
    return {FixStatus::kCandidate, std::move(code), std::move(note)};
  }
  static FixResult Decline(std::string note) {
    return {FixStatus::kNoCandidate, "", std::move(note)};
  }
  static FixResult Failure(std::string note) {
    return {FixStatus::kFailed, "", std::move(note)};
  }
};

// The pluggable agent that proposes a corrected source for one diagnostic.
// Implementations must be thread-safe and must return within their own
// configured timeout.
class FixerBackend {
 public:
  virtual ~FixerBackend() = default;
  virtual std::string_view name() const = 0;
  virtual FixResult Fix(const FixRequest& request) = 0;
};

struct RepairStep {
  int iteration = 0;
  Diagnostic target_error;
  std::string prompt;
  std::string candidate;
  bool accepted = false;
  std::string note;
};

enum class RepairStatus {
  kAlreadyCompilable,
  kRepaired,
  kExhaustedIterations,
  kFixerFailed,
};

std::string_view RepairStatusName(RepairStatus status);
std::optional<RepairStatus> RepairStatusFromName(std::string_view name);

struct RepairTrace {
  std::string snippet_id;
  LangLabel lang = LangLabel::kC;
  std::string input_source;
  CompileOutcome initial_outcome;
  std::vector<RepairStep> steps;
  std::string final_source;
  CompileOutcome final_outcome;
  RepairStatus status = RepairStatus::kExhaustedIterations;
  int iterations_used = 0;
  int max_iterations = 0;
  std::string fixer;
  std::string error;  // FixerFailed reason or a per-snippet failure
};

inline constexpr int kDefaultMaxIterations = 3;
inline constexpr std::size_t kMaxErrorsPerIteration = 10;

struct RepairOptions {
  int max_iterations = kDefaultMaxIterations;
  std::size_t max_errors_per_iteration = kMaxErrorsPerIteration;
  CompileCache* cache = nullptr;  // optional
};

class NoCodeFound : public std::runtime_error {
 public:
  NoCodeFound() : std::runtime_error("no code found in fixer reply") {}
};

// The per-diagnostic prompt:
//
//   Given the following <lang> code:
//   ```<tag>
//   <code>
//   ```
//   Please rectify the following error identified in the compiler output:
//   <error.raw>
//   Return the complete corrected code.
std::string BuildPrompt(std::string_view code, const Diagnostic& error,
                        LangLabel lang);

// Contents of the first fenced code block. Without a fence, the whole reply
// when its brackets balance and it contains ';' or '}'. Throws NoCodeFound.
std::string ExtractCandidate(std::string_view reply);

// Throws std::invalid_argument when lang is not C/C++ or K < 1;
// CompilerNotFound propagates.
RepairTrace Repair(const CodeSnippet& snippet, LangLabel lang,
                   const CompilerConfig& config, FixerBackend& fixer,
                   const RepairOptions& options = {});

struct LanguageRepairSummary {
  std::size_t n = 0;
  std::size_t compilable = 0;  // already compilable or repaired
  std::size_t repaired = 0;
  double rate() const {
    return n == 0 ? 0.0 : static_cast<double>(compilable) / static_cast<double>(n);
  }
};

struct RepairSummary {
  std::size_t n = 0;
  std::size_t already_compilable = 0;
  std::size_t repaired_count = 0;
  std::size_t exhausted = 0;
  std::size_t fixer_failed = 0;
  std::map<LangLabel, LanguageRepairSummary> by_language;
};

RepairSummary SummarizeTraces(const std::vector<RepairTrace>& traces);

struct BatchRepairResult {
  std::vector<RepairTrace> traces;
  RepairSummary summary;
};

// Repairs each snippet as its claimed language. A snippet that cannot be
// repaired for a reason other than a missing compiler gets a FixerFailed
// trace carrying the reason; the batch continues.
BatchRepairResult BatchRepair(const std::vector<CodeSnippet>& corpus,
                              const CompilerConfig& config, FixerBackend& fixer,
                              const RepairOptions& options = {},
                              std::size_t jobs = 1);

}  // namespace codevet

#endif  // CODEVET_REPAIR_H
