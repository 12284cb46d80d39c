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

#include "codevet/serialize.h"

#include <stdexcept>

namespace codevet {

namespace {

template <typename Fn>
auto Guard(const char* what, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const Json::exception& e) {
    throw std::invalid_argument(std::string("malformed ") + what + ": " + e.what());
  }
}

LangLabel LangFromJson(const Json& j) {
  const auto wire = j.get<std::string>();
  auto label = LabelFromWire(wire);
  if (!label) throw std::invalid_argument("unknown language '" + wire + "'");
  return *label;
}

Json OptionalInt(const std::optional<int>& v) {
  return v ? Json(*v) : Json(nullptr);
}

std::optional<int> OptionalIntFromJson(const Json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<int>();
}

Json SummaryJson(const LanguageRepairSummary& s) {
  Json j;
  j["n"] = s.n;
  j["compilable"] = s.compilable;
  j["repaired"] = s.repaired;
  j["rate"] = s.rate();
  return j;
}

Json TallyJson(const CompileTally& t) {
  Json j;
  j["n"] = t.n;
  j["compilable"] = t.compilable;
  j["rate"] = t.rate() ? Json(*t.rate()) : Json(nullptr);
  j["error_diagnostics"] = t.error_diagnostics;
  Json hist = Json::object();
  for (Category c : {Category::kSyntax, Category::kSemantic, Category::kScope,
                     Category::kOther}) {
    auto it = t.category_histogram.find(c);
    hist[std::string(CategoryName(c))] =
        it == t.category_histogram.end() ? 0 : it->second;
  }
  j["category_histogram"] = hist;
  return j;
}

}  // namespace

Json ToJson(const Diagnostic& d) {
  Json j;
  j["line"] = OptionalInt(d.line);
  j["column"] = OptionalInt(d.column);
  j["severity"] = std::string(SeverityName(d.severity));
  j["category"] = std::string(CategoryName(d.category));
  j["message"] = d.message;
  j["raw"] = d.raw;
  j["context"] = d.context;
  return j;
}

Diagnostic DiagnosticFromJson(const Json& j) {
  return Guard("diagnostic", [&] {
    Diagnostic d;
    d.line = OptionalIntFromJson(j.at("line"));
    d.column = OptionalIntFromJson(j.at("column"));
    const auto severity = SeverityFromName(j.at("severity").get<std::string>());
    const auto category = CategoryFromName(j.at("category").get<std::string>());
    if (!severity || !category) {
      throw std::invalid_argument("diagnostic has unknown severity or category");
    }
    d.severity = *severity;
    d.category = *category;
    d.message = j.at("message").get<std::string>();
    d.raw = j.at("raw").get<std::string>();
    d.context = j.value("context", std::vector<std::string>{});
    return d;
  });
}

Json ToJson(const CompileOutcome& outcome, bool with_timing) {
  Json j;
  j["compilable"] = outcome.compilable;
  j["exit_code"] = outcome.exit_code;
  j["timed_out"] = outcome.timed_out;
  j["compiler_identity"] = outcome.compiler_identity;
  if (with_timing) j["elapsed_seconds"] = outcome.elapsed.count();
  Json diags = Json::array();
  for (const auto& d : outcome.diagnostics) diags.push_back(ToJson(d));
  j["diagnostics"] = diags;
  return j;
}

CompileOutcome CompileOutcomeFromJson(const Json& j) {
  return Guard("compile outcome", [&] {
    CompileOutcome o;
    o.compilable = j.at("compilable").get<bool>();
    o.exit_code = j.at("exit_code").get<int>();
    o.timed_out = j.value("timed_out", false);
    o.compiler_identity = j.value("compiler_identity", std::string());
    o.elapsed = std::chrono::duration<double>(j.value("elapsed_seconds", 0.0));
    for (const auto& d : j.at("diagnostics")) {
      o.diagnostics.push_back(DiagnosticFromJson(d));
    }
    return o;
  });
}

Json ToJson(const MutationRecord& record) {
  Json j;
  j["kind"] = std::string(MutationKindWire(record.kind));
  j["span"] = Json::array({record.span.begin, record.span.end});
  j["removed"] = record.removed;
  j["seed"] = record.seed;
  j["snippet_id"] = record.snippet_id;
  j["original_hash"] = record.original_hash;
  return j;
}

MutationRecord MutationRecordFromJson(const Json& j) {
  return Guard("mutation record", [&] {
    MutationRecord r;
    const auto wire = j.at("kind").get<std::string>();
    auto kind = MutationKindFromWire(wire);
    if (!kind) throw std::invalid_argument("unknown mutation kind '" + wire + "'");
    r.kind = *kind;
    const auto& span = j.at("span");
    r.span.begin = span.at(0).get<std::size_t>();
    r.span.end = span.at(1).get<std::size_t>();
    r.removed = j.at("removed").get<std::string>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.snippet_id = j.at("snippet_id").get<std::string>();
    r.original_hash = j.value("original_hash", std::string());
    return r;
  });
}

Json ToJson(const InstructionRecord& record) {
  Json j;
  j["instruction"] = record.instruction;
  j["input"] = record.input;
  j["response"] = record.response;
  Json meta;
  meta["snippet_id"] = record.snippet_id;
  meta["lang"] = std::string(LabelToWire(record.lang));
  meta["mutation"] = ToJson(record.mutation);
  Json diags = Json::array();
  for (const auto& d : record.diagnostics) diags.push_back(ToJson(d));
  meta["diagnostics"] = diags;
  j["meta"] = meta;
  return j;
}

InstructionRecord InstructionRecordFromJson(const Json& j) {
  return Guard("instruction record", [&] {
    InstructionRecord r;
    r.instruction = j.at("instruction").get<std::string>();
    r.input = j.at("input").get<std::string>();
    r.response = j.at("response").get<std::string>();
    const auto& meta = j.at("meta");
    r.snippet_id = meta.at("snippet_id").get<std::string>();
    r.lang = LangFromJson(meta.at("lang"));
    r.mutation = MutationRecordFromJson(meta.at("mutation"));
    for (const auto& d : meta.at("diagnostics")) {
      r.diagnostics.push_back(DiagnosticFromJson(d));
    }
    return r;
  });
}

Json ToJson(const RepairTrace& trace, bool with_timing) {
  Json j;
  j["snippet_id"] = trace.snippet_id;
  j["lang"] = std::string(LabelToWire(trace.lang));
  j["fixer"] = trace.fixer;
  j["status"] = std::string(RepairStatusName(trace.status));
  j["iterations_used"] = trace.iterations_used;
  j["max_iterations"] = trace.max_iterations;
  j["error"] = trace.error;
  j["input_source"] = trace.input_source;
  j["initial_outcome"] = ToJson(trace.initial_outcome, with_timing);
  Json steps = Json::array();
  for (const auto& s : trace.steps) {
    Json step;
    step["iteration"] = s.iteration;
    step["target_error"] = ToJson(s.target_error);
    step["prompt"] = s.prompt;
    step["candidate"] = s.candidate;
    step["accepted"] = s.accepted;
    step["note"] = s.note;
    steps.push_back(step);
  }
  j["steps"] = steps;
  j["final_source"] = trace.final_source;
  j["final_outcome"] = ToJson(trace.final_outcome, with_timing);
  return j;
}

RepairTrace RepairTraceFromJson(const Json& j) {
  return Guard("repair trace", [&] {
    RepairTrace t;
    t.snippet_id = j.at("snippet_id").get<std::string>();
    t.lang = LangFromJson(j.at("lang"));
    t.fixer = j.value("fixer", std::string());
    const auto status = RepairStatusFromName(j.at("status").get<std::string>());
    if (!status) throw std::invalid_argument("unknown repair status");
    t.status = *status;
    t.iterations_used = j.at("iterations_used").get<int>();
    t.max_iterations = j.at("max_iterations").get<int>();
    t.error = j.value("error", std::string());
    t.input_source = j.value("input_source", std::string());
    t.initial_outcome = CompileOutcomeFromJson(j.at("initial_outcome"));
    for (const auto& s : j.at("steps")) {
      RepairStep step;
      step.iteration = s.at("iteration").get<int>();
      step.target_error = DiagnosticFromJson(s.at("target_error"));
      step.prompt = s.at("prompt").get<std::string>();
      step.candidate = s.at("candidate").get<std::string>();
      step.accepted = s.at("accepted").get<bool>();
      step.note = s.value("note", std::string());
      t.steps.push_back(std::move(step));
    }
    t.final_source = j.at("final_source").get<std::string>();
    t.final_outcome = CompileOutcomeFromJson(j.at("final_outcome"));
    return t;
  });
}

Json ToJson(const ForgeManifest& m) {
  Json j;
  Json stages;
  stages["collected"] = m.collected;
  stages["compilable"] = m.compilable;
  stages["length_kept"] = m.length_kept;
  Json injected = Json::object();
  for (MutationKind kind : m.options.kinds) {
    auto it = m.injected.find(kind);
    injected[std::string(MutationKindWire(kind))] =
        it == m.injected.end() ? 0 : it->second;
  }
  stages["injected"] = injected;
  stages["emitted"] = m.emitted;
  j["stages"] = stages;

  Json config;
  Json kinds = Json::array();
  for (MutationKind kind : m.options.kinds) {
    kinds.push_back(std::string(MutationKindWire(kind)));
  }
  config["kinds"] = kinds;
  config["seed"] = m.options.seed;
  config["max_tokens"] = m.options.max_tokens;
  config["jobs"] = m.options.jobs;
  config["compiler_identity"] = m.compiler_identity;
  config["compiler_flags_c"] = m.compiler_flags_c;
  config["compiler_flags_cpp"] = m.compiler_flags_cpp;
  j["config"] = config;

  Json failures = Json::array();
  for (const auto& f : m.failures) {
    failures.push_back(Json{{"snippet_id", f.snippet_id},
                            {"stage", f.stage},
                            {"kind", f.kind},
                            {"reason", f.reason}});
  }
  j["failures"] = failures;
  return j;
}

Json ToJson(const CorpusReport& report) {
  Json j;
  j["compiler_identity"] = report.compiler_identity;
  j["total"] = TallyJson(report.total);
  Json by = Json::object();
  for (const auto& [lang, tally] : report.by_language) {
    by[std::string(LabelToWire(lang))] = TallyJson(tally);
  }
  j["by_language"] = by;
  return j;
}

Json ToJson(const ClassReport& report) {
  Json j;
  j["n"] = report.n;
  Json labels = Json::array();
  for (LangLabel l : report.labels) labels.push_back(std::string(LabelToWire(l)));
  j["labels"] = labels;
  j["confusion"] = report.confusion;
  Json per = Json::object();
  for (const auto& [label, m] : report.per_label) {
    per[std::string(LabelToWire(label))] = Json{{"precision", m.precision},
                                                {"recall", m.recall},
                                                {"f1", m.f1},
                                                {"support", m.support},
                                                {"predicted", m.predicted}};
  }
  j["per_label"] = per;
  j["macro"] = Json{{"precision", report.macro_precision},
                    {"recall", report.macro_recall},
                    {"f1", report.macro_f1}};
  j["accuracy"] = report.accuracy;
  return j;
}

Json ToJson(const RepairSummary& summary) {
  Json j;
  j["n"] = summary.n;
  j["already_compilable"] = summary.already_compilable;
  j["repaired_count"] = summary.repaired_count;
  j["exhausted"] = summary.exhausted;
  j["fixer_failed"] = summary.fixer_failed;
  Json by = Json::object();
  for (const auto& [lang, s] : summary.by_language) {
    by[std::string(LabelToWire(lang))] = SummaryJson(s);
  }
  j["by_language"] = by;
  return j;
}

Json ToJson(const KSweepReport& report) {
  Json rows = Json::array();
  for (const auto& row : report.rows) {
    Json r;
    r["k"] = row.k;
    for (const auto& [lang, cell] : row.by_language) {
      Json c = cell.valid ? SummaryJson(cell.summary) : Json::object();
      c["valid"] = cell.valid;
      if (!cell.valid) c["error"] = cell.error;
      r[std::string(LabelToWire(lang))] = c;
    }
    rows.push_back(r);
  }
  return Json{{"rows", rows}};
}

Json ToJson(const LangScore& score) {
  Json j;
  j["predicted"] = std::string(LabelToWire(score.predicted));
  j["confidence"] = score.confidence;
  Json scores = Json::object();
  for (LangLabel label : kKnownLabels) {
    scores[std::string(LabelToWire(label))] = score.score(label);
  }
  j["scores"] = scores;
  return j;
}

Json ToJson(const MislabelReport& report) {
  Json j;
  Json findings = Json::array();
  for (const auto& f : report.findings) {
    findings.push_back(Json{{"snippet_id", f.snippet_id},
                            {"claimed", std::string(LabelToWire(f.claimed))},
                            {"predicted", std::string(LabelToWire(f.predicted))},
                            {"confidence", f.confidence}});
  }
  j["findings"] = findings;
  Json by = Json::object();
  for (const auto& [label, s] : report.by_claimed_label) {
    by[std::string(LabelToWire(label))] =
        Json{{"claimed", s.claimed}, {"mislabeled", s.mislabeled}, {"rate", s.rate()}};
  }
  j["by_claimed_label"] = by;
  return j;
}

}  // namespace codevet
