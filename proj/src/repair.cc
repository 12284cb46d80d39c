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

#include "codevet/repair.h"

#include <algorithm>

#include "codevet/worker_pool.h"

namespace codevet {

namespace {

CompileOutcome Compile(std::string_view source, LangLabel lang,
                       const CompilerConfig& config,
                       const RepairOptions& options) {
  if (options.cache != nullptr) return options.cache->Check(source, lang);
  return CompileCheck(source, lang, config);
}

// Lines starting with ``` open or close a fence.
bool IsFenceLine(std::string_view line) {
  std::size_t i = 0;
  while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
  return line.substr(i, 3) == "```";
}

bool BracketsBalance(std::string_view text) {
  std::vector<char> stack;
  for (char c : text) {
    if (c == '(' || c == '[' || c == '{') {
      stack.push_back(c);
    } else if (c == ')' || c == ']' || c == '}') {
      const char open = c == ')' ? '(' : c == ']' ? '[' : '{';
      if (stack.empty() || stack.back() != open) return false;
      stack.pop_back();
    }
  }
  return stack.empty();
}

}  // namespace

CompileOutcome CompileCache::Check(std::string_view source, LangLabel lang) {
  std::string key(LabelToWire(lang));
  key.push_back('\0');
  key.append(source);
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = entries_.find(key);
    if (it != entries_.end()) return it->second;
  }
  CompileOutcome outcome = CompileCheck(source, lang, config_);
  std::lock_guard<std::mutex> lock(mutex_);
  return entries_.emplace(std::move(key), std::move(outcome)).first->second;
}

std::size_t CompileCache::size() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return entries_.size();
}

std::string_view RepairStatusName(RepairStatus status) {
  switch (status) {
    case RepairStatus::kAlreadyCompilable:
      return "AlreadyCompilable";
    case RepairStatus::kRepaired:
      return "Repaired";
    case RepairStatus::kExhaustedIterations:
      return "ExhaustedIterations";
    case RepairStatus::kFixerFailed:
      return "FixerFailed";
  }
  return "FixerFailed";
}

std::optional<RepairStatus> RepairStatusFromName(std::string_view name) {
  for (auto status :
       {RepairStatus::kAlreadyCompilable, RepairStatus::kRepaired,
        RepairStatus::kExhaustedIterations, RepairStatus::kFixerFailed}) {
    if (RepairStatusName(status) == name) return status;
  }
  return std::nullopt;
}

std::string BuildPrompt(std::string_view code, const Diagnostic& error,
                        LangLabel lang) {
  std::string prompt = "Given the following ";
  prompt += DisplayName(lang);
  prompt += " code:\n```";
  prompt += lang == LangLabel::kCpp ? "cpp" : "c";
  prompt += "\n";
  prompt += code;
  if (code.empty() || code.back() != '\n') prompt += "\n";
  prompt += "```\n";
  prompt +=
      "Please rectify the following error identified in the compiler output:\n";
  prompt += error.raw;
  prompt += "\nReturn the complete corrected code.\n";
  return prompt;
}

std::string ExtractCandidate(std::string_view reply) {
  std::size_t pos = 0;
  bool in_block = false;
  std::string block;
  while (pos < reply.size()) {
    std::size_t end = reply.find('\n', pos);
    const bool last = end == std::string_view::npos;
    if (last) end = reply.size();
    const std::string_view line = reply.substr(pos, end - pos);
    if (IsFenceLine(line)) {
      if (in_block) return block;
      in_block = true;
    } else if (in_block) {
      block.append(line);
      if (!last) block.push_back('\n');
    }
    pos = end + 1;
  }
  if (in_block) return block;  // unterminated fence: take the rest

  const bool looks_like_code =
      reply.find(';') != std::string_view::npos ||
      reply.find('}') != std::string_view::npos;
  if (looks_like_code && BracketsBalance(reply) &&
      reply.find_first_not_of(" \t\r\n") != std::string_view::npos) {
    return std::string(reply);
  }
  throw NoCodeFound();
}

RepairTrace Repair(const CodeSnippet& snippet, LangLabel lang,
                   const CompilerConfig& config, FixerBackend& fixer,
                   const RepairOptions& options) {
  if (!IsCFamilyCompilable(lang)) {
    throw std::invalid_argument("repair handles C and C++ only");
  }
  if (options.max_iterations < 1) {
    throw std::invalid_argument("max iterations must be at least 1");
  }
  RepairTrace trace;
  trace.snippet_id = snippet.id;
  trace.lang = lang;
  trace.input_source = snippet.source;
  trace.max_iterations = options.max_iterations;
  trace.fixer = std::string(fixer.name());
  trace.initial_outcome = Compile(snippet.source, lang, config, options);
  trace.final_source = snippet.source;
  trace.final_outcome = trace.initial_outcome;
  if (trace.initial_outcome.compilable) {
    trace.status = RepairStatus::kAlreadyCompilable;
    return trace;
  }

  std::string working = snippet.source;
  CompileOutcome latest = trace.initial_outcome;
  for (int k = 0; k < options.max_iterations; ++k) {
    trace.iterations_used = k + 1;
    std::vector<Diagnostic> errors = latest.errors();
    if (errors.size() > options.max_errors_per_iteration) {
      errors.resize(options.max_errors_per_iteration);
    }
    const std::string diagnosed = working;
    for (const Diagnostic& error : errors) {
      RepairStep step;
      step.iteration = k;
      step.target_error = error;
      step.prompt = BuildPrompt(working, error, lang);
      FixRequest request{snippet.id, lang, step.prompt, working, diagnosed,
                         &error};
      FixResult result = fixer.Fix(request);
      step.note = result.note;
      if (result.status == FixStatus::kFailed) {
        trace.steps.push_back(std::move(step));
        trace.status = RepairStatus::kFixerFailed;
        trace.error = result.note;
        trace.final_source = working;
        trace.final_outcome = Compile(working, lang, config, options);
        return trace;
      }
      if (result.status == FixStatus::kCandidate && !result.candidate.empty()) {
        step.candidate = result.candidate;
        step.accepted = true;
        working = std::move(result.candidate);
      }
      trace.steps.push_back(std::move(step));
    }
    latest = Compile(working, lang, config, options);
    trace.final_source = working;
    trace.final_outcome = latest;
    if (latest.compilable) {
      trace.status = RepairStatus::kRepaired;
      return trace;
    }
  }
  trace.status = RepairStatus::kExhaustedIterations;
  return trace;
}

RepairSummary SummarizeTraces(const std::vector<RepairTrace>& traces) {
  RepairSummary summary;
  summary.n = traces.size();
  for (const auto& trace : traces) {
    auto& lang = summary.by_language[trace.lang];
    ++lang.n;
    switch (trace.status) {
      case RepairStatus::kAlreadyCompilable:
        ++summary.already_compilable;
        ++lang.compilable;
        break;
      case RepairStatus::kRepaired:
        ++summary.repaired_count;
        ++lang.compilable;
        ++lang.repaired;
        break;
      case RepairStatus::kExhaustedIterations:
        ++summary.exhausted;
        break;
      case RepairStatus::kFixerFailed:
        ++summary.fixer_failed;
        break;
    }
  }
  return summary;
}

BatchRepairResult BatchRepair(const std::vector<CodeSnippet>& corpus,
                              const CompilerConfig& config, FixerBackend& fixer,
                              const RepairOptions& options, std::size_t jobs) {
  BatchRepairResult result;
  result.traces = ParallelMap(corpus.size(), jobs, [&](std::size_t i) {
    const CodeSnippet& snippet = corpus[i];
    try {
      return Repair(snippet, snippet.claimed_lang, config, fixer, options);
    } catch (const CompilerNotFound&) {
      throw;
    } catch (const std::exception& e) {
      RepairTrace trace;
      trace.snippet_id = snippet.id;
      trace.lang = snippet.claimed_lang;
      trace.input_source = snippet.source;
      trace.final_source = snippet.source;
      trace.max_iterations = options.max_iterations;
      trace.fixer = std::string(fixer.name());
      trace.status = RepairStatus::kFixerFailed;
      trace.error = e.what();
      return trace;
    }
  });
  result.summary = SummarizeTraces(result.traces);
  return result;
}

}  // namespace codevet
