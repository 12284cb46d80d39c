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

// Single-error injection by seeded span deletion.

#ifndef CODEVET_INJECT_H
#define CODEVET_INJECT_H

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "codevet/compiler.h"
#include "codevet/lang.h"
#include "codevet/syntax.h"

namespace codevet {

enum class MutationKind { kDropVarInit, kDropTypeDef, kDropOperator, kDropParen };

inline constexpr std::array<MutationKind, 4> kAllMutationKinds = {
    MutationKind::kDropVarInit, MutationKind::kDropTypeDef,
    MutationKind::kDropOperator, MutationKind::kDropParen};

// "init", "typedef", "op", "paren".
std::string_view MutationKindWire(MutationKind kind);
std::optional<MutationKind> MutationKindFromWire(std::string_view wire);
// Comma-separated wire names. Throws std::invalid_argument on unknown or
// repeated names, or an empty list.
std::vector<MutationKind> ParseMutationKinds(std::string_view list);

struct MutationRecord {
  MutationKind kind = MutationKind::kDropVarInit;
  Span span;            // in the original source
  std::string removed;  // original[span]
  std::uint64_t seed = 0;
  std::string snippet_id;
  std::string original_hash;  // Fnv1aHex of the original source

  bool operator==(const MutationRecord&) const = default;
};

class SpanMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kMaxInjectAttempts = 20;

// Byte spans that `kind` may delete, in source order.
std::vector<Span> EligibleSpans(const SyntaxTree& tree, MutationKind kind);

// The candidate order for a seed: a Fisher-Yates permutation of
// [0, count) driven by mt19937_64. Portable across standard libraries.
std::vector<std::size_t> SeededOrder(std::size_t count, std::uint64_t seed);

// Deletes `span` from `source` and builds the record.
MutationRecord MakeMutation(std::string_view source, MutationKind kind,
                            Span span, std::uint64_t seed,
                            std::string snippet_id);
std::string ApplyMutation(std::string_view source, const MutationRecord& record);

struct InjectResult {
  bool applied = false;
  std::string mutated;
  MutationRecord record;
  CompileOutcome outcome;      // compile of `mutated` when applied
  int attempts = 0;            // candidates compiled
  std::string not_applicable;  // why nothing was emitted
};

// Parses `source` (throws ParseFailure), orders the eligible spans by seed
// and keeps the first deletion that stops the source from compiling, trying
// at most kMaxInjectAttempts candidates.
InjectResult InjectError(std::string_view source, LangLabel lang,
                         MutationKind kind, std::uint64_t seed,
                         const CompilerConfig& config,
                         std::string snippet_id = "");

bool VerifySingleError(std::string_view original, std::string_view mutated,
                       LangLabel lang, const CompilerConfig& config);

// Reinserts the removed bytes. Throws SpanMismatch when the record does not
// belong to `mutated`.
std::string Revert(std::string_view mutated, const MutationRecord& record);

}  // namespace codevet

#endif  // CODEVET_INJECT_H
