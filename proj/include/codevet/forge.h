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

// Instruction records pairing broken code and its compiler error with the
// original compilable code.

#ifndef CODEVET_FORGE_H
#define CODEVET_FORGE_H

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "codevet/compiler.h"
#include "codevet/corpus.h"
#include "codevet/inject.h"

namespace codevet {

struct InstructionRecord {
  std::string instruction;
  std::string input;     // broken code
  std::string response;  // original code
  std::string snippet_id;
  LangLabel lang = LangLabel::kC;
  MutationRecord mutation;
  std::vector<Diagnostic> diagnostics;  // compile of input

  bool operator==(const InstructionRecord&) const = default;
};

class NoErrorDiagnostic : public std::runtime_error {
 public:
  NoErrorDiagnostic()
      : std::runtime_error("compile outcome carries no error diagnostic") {}
};

// "Fix the compiler error of the given <PL> code: <error>".
std::string InstructionText(LangLabel lang, std::string_view error_raw);

// Throws NoErrorDiagnostic when `outcome` has no Error-severity diagnostic.
InstructionRecord MakeRecord(const CodeSnippet& original, LangLabel lang,
                             std::string mutated, const MutationRecord& record,
                             const CompileOutcome& outcome);

struct ForgeOptions {
  std::vector<MutationKind> kinds{kAllMutationKinds.begin(),
                                  kAllMutationKinds.end()};
  std::uint64_t seed = 0;
  std::size_t max_tokens = kDefaultMaxTokens;
  std::size_t jobs = 1;
};

struct ForgeFailure {
  std::string snippet_id;
  std::string stage;  // "compile", "parse", "inject", "record"
  std::string kind;   // mutation kind wire name, when per kind
  std::string reason;

  bool operator==(const ForgeFailure&) const = default;
};

// Stage counts. Along the pipeline collected >= compilable >= length_kept,
// and each injected[kind] <= length_kept; emitted sums over kinds.
struct ForgeManifest {
  std::size_t collected = 0;
  std::size_t compilable = 0;
  std::size_t length_kept = 0;
  std::map<MutationKind, std::size_t> injected;
  std::size_t emitted = 0;
  std::vector<ForgeFailure> failures;
  ForgeOptions options;
  std::string compiler_identity;
  std::vector<std::string> compiler_flags_c;
  std::vector<std::string> compiler_flags_cpp;
};

struct ForgeResult {
  std::vector<InstructionRecord> records;  // input order, then kind order
  ForgeManifest manifest;
};

// Snippets are taken as their claimed language; anything other than C or
// C++ fails the compile stage.
ForgeResult ForgeDataset(const std::vector<CodeSnippet>& corpus,
                         const CompilerConfig& config,
                         const ForgeOptions& options);

}  // namespace codevet

#endif  // CODEVET_FORGE_H
