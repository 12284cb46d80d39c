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

#include "codevet/inject.h"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "codevet/chat_backend.h"

namespace codevet {

namespace {

// Uniform draw in [0, bound) by rejection, independent of the standard
// library's distribution implementation.
std::uint64_t BoundedDraw(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t threshold = (0 - bound) % bound;
  while (true) {
    const std::uint64_t r = rng();
    if (r >= threshold) return r % bound;
  }
}

bool IsInside(Span inner, Span outer) {
  return inner.begin >= outer.begin && inner.end <= outer.end;
}

// A type definition is eligible only if something outside it uses a name it
// introduces; otherwise deleting it may just leave dead code behind.
bool DefinitionIsReferenced(const SyntaxTree& tree, const SyntaxNode& def) {
  if (def.defined_names.empty()) return false;
  const std::set<std::string> names(def.defined_names.begin(),
                                    def.defined_names.end());
  for (const auto& node : tree.nodes()) {
    if (node.kind != NodeKind::kIdentifier) continue;
    if (IsInside(node.span, def.span)) continue;
    if (names.count(node.name)) return true;
  }
  return false;
}

}  // namespace

std::string_view MutationKindWire(MutationKind kind) {
  switch (kind) {
    case MutationKind::kDropVarInit:
      return "init";
    case MutationKind::kDropTypeDef:
      return "typedef";
    case MutationKind::kDropOperator:
      return "op";
    case MutationKind::kDropParen:
      return "paren";
  }
  return "init";
}

std::optional<MutationKind> MutationKindFromWire(std::string_view wire) {
  for (MutationKind kind : kAllMutationKinds) {
    if (MutationKindWire(kind) == wire) return kind;
  }
  return std::nullopt;
}

std::vector<MutationKind> ParseMutationKinds(std::string_view list) {
  std::vector<MutationKind> kinds;
  std::size_t pos = 0;
  while (pos <= list.size()) {
    std::size_t comma = list.find(',', pos);
    if (comma == std::string_view::npos) comma = list.size();
    std::string_view item = list.substr(pos, comma - pos);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    auto kind = MutationKindFromWire(item);
    if (!kind) {
      throw std::invalid_argument("unknown mutation kind '" + std::string(item) +
                                  "' (expected init, typedef, op or paren)");
    }
    if (std::find(kinds.begin(), kinds.end(), *kind) != kinds.end()) {
      throw std::invalid_argument("mutation kind listed twice: " +
                                  std::string(item));
    }
    kinds.push_back(*kind);
    pos = comma + 1;
  }
  return kinds;
}

std::vector<Span> EligibleSpans(const SyntaxTree& tree, MutationKind kind) {
  std::vector<Span> spans;
  switch (kind) {
    case MutationKind::kDropVarInit:
      for (int i : tree.NodesOf(NodeKind::kInitializer)) {
        spans.push_back(tree.node(i).span);
      }
      break;
    case MutationKind::kDropTypeDef:
      for (int i : tree.NodesOf(NodeKind::kTypeDefinition)) {
        const auto& node = tree.node(i);
        if (DefinitionIsReferenced(tree, node)) spans.push_back(node.span);
      }
      break;
    case MutationKind::kDropOperator:
      for (int i : tree.NodesOf(NodeKind::kBinaryOperator)) {
        spans.push_back(tree.node(i).span);
      }
      break;
    case MutationKind::kDropParen:
      for (int i : tree.NodesOf(NodeKind::kParenthesis)) {
        spans.push_back(tree.node(i).span);
      }
      break;
  }
  spans.erase(std::remove_if(spans.begin(), spans.end(),
                             [](Span s) { return s.size() == 0; }),
              spans.end());
  return spans;
}

std::vector<std::size_t> SeededOrder(std::size_t count, std::uint64_t seed) {
  std::vector<std::size_t> order(count);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::mt19937_64 rng(seed);
  for (std::size_t i = count; i > 1; --i) {
    const auto j = static_cast<std::size_t>(BoundedDraw(rng, i));
    std::swap(order[i - 1], order[j]);
  }
  return order;
}

MutationRecord MakeMutation(std::string_view source, MutationKind kind,
                            Span span, std::uint64_t seed,
                            std::string snippet_id) {
  if (span.begin > span.end || span.end > source.size()) {
    throw std::out_of_range("mutation span outside the source");
  }
  MutationRecord record;
  record.kind = kind;
  record.span = span;
  record.removed = std::string(source.substr(span.begin, span.size()));
  record.seed = seed;
  record.snippet_id = std::move(snippet_id);
  record.original_hash = Fnv1aHex(source);
  return record;
}

std::string ApplyMutation(std::string_view source,
                          const MutationRecord& record) {
  std::string mutated(source.substr(0, record.span.begin));
  mutated.append(source.substr(record.span.end));
  return mutated;
}

InjectResult InjectError(std::string_view source, LangLabel lang,
                         MutationKind kind, std::uint64_t seed,
                         const CompilerConfig& config, std::string snippet_id) {
  const SyntaxTree tree = BuildAst(std::string(source), lang);
  const std::vector<Span> spans = EligibleSpans(tree, kind);
  InjectResult result;
  if (spans.empty()) {
    result.not_applicable =
        "no eligible " + std::string(MutationKindWire(kind)) + " node";
    return result;
  }
  for (std::size_t index : SeededOrder(spans.size(), seed)) {
    if (result.attempts >= kMaxInjectAttempts) break;
    ++result.attempts;
    MutationRecord record =
        MakeMutation(source, kind, spans[index], seed, snippet_id);
    std::string mutated = ApplyMutation(source, record);
    CompileOutcome outcome = CompileCheck(mutated, lang, config);
    if (!outcome.compilable) {
      result.applied = true;
      result.mutated = std::move(mutated);
      result.record = std::move(record);
      result.outcome = std::move(outcome);
      return result;
    }
  }
  result.not_applicable = "every tried deletion still compiles (" +
                          std::to_string(result.attempts) + " tried)";
  return result;
}

bool VerifySingleError(std::string_view original, std::string_view mutated,
                       LangLabel lang, const CompilerConfig& config) {
  if (original == mutated) return false;
  return !CompileCheck(mutated, lang, config).compilable;
}

std::string Revert(std::string_view mutated, const MutationRecord& record) {
  if (record.span.end < record.span.begin ||
      record.span.size() != record.removed.size()) {
    throw SpanMismatch("mutation record span and removed text disagree");
  }
  if (record.span.begin > mutated.size()) {
    throw SpanMismatch("mutation span starts past the end of the source");
  }
  std::string original(mutated.substr(0, record.span.begin));
  original += record.removed;
  original.append(mutated.substr(record.span.begin));
  if (!record.original_hash.empty() &&
      Fnv1aHex(original) != record.original_hash) {
    throw SpanMismatch("reverted source does not match the original hash");
  }
  return original;
}

}  // namespace codevet
