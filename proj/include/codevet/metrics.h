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

// Aggregate reports: compilability, classification quality, repair rates
// and the iteration sweep. Counts are exact; rounding happens only when
// rendering (two decimals).

#ifndef CODEVET_METRICS_H
#define CODEVET_METRICS_H

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "codevet/compiler.h"
#include "codevet/diagnostics.h"
#include "codevet/fixers.h"
#include "codevet/lang.h"
#include "codevet/repair.h"

namespace codevet {

struct CompileRecord {
  std::string snippet_id;
  LangLabel lang = LangLabel::kC;
  CompileOutcome outcome;
};

struct CompileTally {
  std::size_t n = 0;
  std::size_t compilable = 0;
  std::size_t error_diagnostics = 0;
  std::map<Category, std::size_t> category_histogram;  // Error diagnostics only

  std::optional<double> rate() const {
    if (n == 0) return std::nullopt;
    return static_cast<double>(compilable) / static_cast<double>(n);
  }
};

struct CorpusReport {
  CompileTally total;
  std::map<LangLabel, CompileTally> by_language;
  std::string compiler_identity;  // of the first outcome, if any
};

CorpusReport SummarizeCompile(const std::vector<CompileRecord>& outcomes);

class EmptyInput : public std::invalid_argument {
 public:
  EmptyInput() : std::invalid_argument("no (truth, predicted) pairs") {}
};

struct LabelMetrics {
  std::size_t support = 0;    // ground-truth count
  std::size_t predicted = 0;  // predicted count
  std::size_t true_positive = 0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

struct ClassReport {
  // Rows are truth, columns predicted, both indexed like `labels`.
  std::vector<LangLabel> labels;
  std::vector<std::vector<std::size_t>> confusion;
  std::map<LangLabel, LabelMetrics> per_label;  // labels with support > 0
  double macro_precision = 0.0;
  double macro_recall = 0.0;
  double macro_f1 = 0.0;
  double accuracy = 0.0;  // equals micro P/R/F1 for single-label data
  std::size_t n = 0;
};

// Throws EmptyInput for no pairs and std::invalid_argument when a truth
// label is Unknown.
ClassReport SummarizeClassification(
    const std::vector<std::pair<LangLabel, LangLabel>>& pairs);

struct KSweepCell {
  bool valid = true;
  std::string error;
  LanguageRepairSummary summary;
};

struct KSweepRow {
  int k = 0;
  std::map<LangLabel, KSweepCell> by_language;  // C and C++
};

struct KSweepReport {
  std::vector<KSweepRow> rows;
};

// Runs BatchRepair once per K with otherwise identical settings. Ks must be
// strictly increasing and positive (std::invalid_argument otherwise). A
// failed batch marks that row's cells invalid.
KSweepReport KSweep(const std::vector<CodeSnippet>& corpus,
                    const CompilerConfig& config, FixerBackend& fixer,
                    const std::vector<int>& ks, RepairOptions options = {},
                    std::size_t jobs = 1);

// The same report read off traces produced with a deterministic fixer: a
// trace repaired after i iterations would have been repaired under any
// K >= i. Rows for K beyond the traces' own cap are invalid.
KSweepReport KSweepFromTraces(const std::vector<RepairTrace>& traces,
                              const std::vector<int>& ks);

// Traces that did not end compilable, with the first error each was left
// with.
struct UnrepairedItem {
  std::string snippet_id;
  RepairStatus status = RepairStatus::kExhaustedIterations;
  std::string first_error;
};
std::vector<UnrepairedItem> Unrepaired(const std::vector<RepairTrace>& traces);

std::string FormatRate(std::optional<double> rate);  // "0.75" or "n/a"

std::string RenderCompileReport(const CorpusReport& report);
std::string RenderClassReport(const ClassReport& report);
std::string RenderRepairSummary(const RepairSummary& summary);
std::string RenderKSweep(const KSweepReport& report);

}  // namespace codevet

#endif  // CODEVET_METRICS_H
