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

#include "codevet/forge.h"

#include <optional>

#include "codevet/worker_pool.h"

namespace codevet {

namespace {

struct SnippetOutcome {
  bool compilable = false;
  bool length_kept = false;
  std::vector<std::optional<InstructionRecord>> per_kind;
  std::vector<ForgeFailure> failures;
};

std::vector<std::string> FlagsFor(const CompilerConfig& config, LangLabel lang) {
  std::vector<std::string> argv = config.CommandLine(lang, SnippetFileName(lang));
  // Drop the executable path and the file name.
  if (argv.size() >= 2) return {argv.begin() + 1, argv.end() - 1};
  return {};
}

}  // namespace

std::string InstructionText(LangLabel lang, std::string_view error_raw) {
  std::string text = "Fix the compiler error of the given ";
  text += DisplayName(lang);
  text += " code: ";
  text += error_raw;
  return text;
}

InstructionRecord MakeRecord(const CodeSnippet& original, LangLabel lang,
                             std::string mutated, const MutationRecord& record,
                             const CompileOutcome& outcome) {
  const auto errors = outcome.errors();
  if (errors.empty()) throw NoErrorDiagnostic();
  InstructionRecord out;
  out.instruction = InstructionText(lang, errors.front().raw);
  out.input = std::move(mutated);
  out.response = original.source;
  out.snippet_id = original.id;
  out.lang = lang;
  out.mutation = record;
  out.diagnostics = outcome.diagnostics;
  return out;
}

ForgeResult ForgeDataset(const std::vector<CodeSnippet>& corpus,
                         const CompilerConfig& config,
                         const ForgeOptions& options) {
  if (options.max_tokens == 0) {
    throw std::invalid_argument("max tokens must be positive");
  }
  ForgeResult result;
  ForgeManifest& manifest = result.manifest;
  manifest.options = options;
  manifest.compiler_identity = config.Identity();
  manifest.compiler_flags_c = FlagsFor(config, LangLabel::kC);
  manifest.compiler_flags_cpp = FlagsFor(config, LangLabel::kCpp);
  manifest.collected = corpus.size();
  for (MutationKind kind : options.kinds) manifest.injected[kind] = 0;

  auto outcomes = ParallelMap(corpus.size(), options.jobs, [&](std::size_t i) {
    const CodeSnippet& snippet = corpus[i];
    const LangLabel lang = snippet.claimed_lang;
    SnippetOutcome out;
    out.per_kind.resize(options.kinds.size());
    if (!IsCFamilyCompilable(lang)) {
      out.failures.push_back({snippet.id, "compile", "",
                              "language is not C or C++: " +
                                  std::string(LabelToWire(lang))});
      return out;
    }
    if (!CompileCheck(snippet.source, lang, config).compilable) return out;
    out.compilable = true;
    if (snippet.approx_tokens() > options.max_tokens) return out;
    out.length_kept = true;
    for (std::size_t k = 0; k < options.kinds.size(); ++k) {
      const MutationKind kind = options.kinds[k];
      const std::string wire(MutationKindWire(kind));
      InjectResult injected;
      try {
        injected = InjectError(snippet.source, lang, kind, options.seed, config,
                               snippet.id);
      } catch (const ParseFailure& e) {
        // One parse serves every kind; report it once.
        out.failures.push_back({snippet.id, "parse", "", e.what()});
        break;
      }
      if (!injected.applied) {
        out.failures.push_back(
            {snippet.id, "inject", wire, injected.not_applicable});
        continue;
      }
      try {
        out.per_kind[k] = MakeRecord(snippet, lang, std::move(injected.mutated),
                                     injected.record, injected.outcome);
      } catch (const NoErrorDiagnostic& e) {
        out.failures.push_back({snippet.id, "record", wire, e.what()});
      }
    }
    return out;
  });

  for (auto& out : outcomes) {
    if (out.compilable) ++manifest.compilable;
    if (out.length_kept) ++manifest.length_kept;
    for (std::size_t k = 0; k < out.per_kind.size(); ++k) {
      if (!out.per_kind[k]) continue;
      ++manifest.injected[options.kinds[k]];
      result.records.push_back(std::move(*out.per_kind[k]));
    }
    for (auto& failure : out.failures) {
      manifest.failures.push_back(std::move(failure));
    }
  }
  manifest.emitted = result.records.size();
  return result;
}

}  // namespace codevet
