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

#include "codevet/metrics.h"

#include <gtest/gtest.h>

#include <filesystem>
#include <random>

#include "codevet/serialize.h"
#include "support.h"

namespace codevet {
namespace {

const CompilerConfig& Config() {
  static const CompilerConfig config;
  return config;
}

using Pairs = std::vector<std::pair<LangLabel, LangLabel>>;

// Truth rows C, C++, Python against predicted columns in the same order.
Pairs ThreeByThree() {
  const LangLabel l[] = {LangLabel::kC, LangLabel::kCpp, LangLabel::kPython};
  const int m[3][3] = {{5, 2, 1}, {1, 3, 0}, {0, 1, 4}};
  Pairs pairs;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c)
      for (int k = 0; k < m[r][c]; ++k) pairs.emplace_back(l[r], l[c]);
  return pairs;
}

Diagnostic Error(Category c) {
  Diagnostic d;
  d.severity = Severity::kError;
  d.category = c;
  return d;
}

TEST(SummarizeCompile, Empty) {
  const auto r = SummarizeCompile({});
  EXPECT_EQ(r.total.n, 0u);
  EXPECT_FALSE(r.total.rate().has_value());
  EXPECT_TRUE(r.by_language.empty());
}

TEST(SummarizeCompile, ThreeOfFour) {
  std::vector<CompileRecord> records(4);
  for (int i = 0; i < 4; ++i) {
    records[i].snippet_id = std::to_string(i);
    records[i].outcome.compilable = i != 2;
  }
  records[2].outcome.diagnostics = {Error(Category::kSyntax), Error(Category::kSyntax),
                                    Error(Category::kScope)};
  Diagnostic warning;
  warning.severity = Severity::kWarning;
  records[0].outcome.diagnostics = {warning};
  const auto r = SummarizeCompile(records);
  EXPECT_EQ(r.total.n, 4u);
  EXPECT_DOUBLE_EQ(*r.total.rate(), 0.75);
  EXPECT_EQ(FormatRate(r.total.rate()), "0.75");
  // The histogram counts Error diagnostics, not snippets.
  EXPECT_EQ(r.total.error_diagnostics, 3u);
  std::size_t sum = 0;
  for (const auto& [c, n] : r.total.category_histogram) sum += n;
  EXPECT_EQ(sum, 3u);
  EXPECT_EQ(r.total.category_histogram.at(Category::kSyntax), 2u);
}

TEST(SummarizeCompile, HistogramOverGoldenDiagnostics) {
  // Every golden output is one non-compilable record.
  std::vector<CompileRecord> records;
  std::size_t errors = 0;
  for (const char* sub : {"syntax", "semantic", "scope"}) {
    for (const auto& entry : std::filesystem::directory_iterator(
             testing::FixtureDir() / "diagnostics" / sub)) {
      if (entry.path().extension() != ".txt") continue;
      CompileRecord rec;
      rec.snippet_id = entry.path().stem().string();
      rec.outcome.diagnostics = ParseDiagnostics(testing::ReadText(entry.path()));
      errors += ErrorsOnly(rec.outcome.diagnostics).size();
      records.push_back(rec);
    }
  }
  ASSERT_EQ(records.size(), 30u);
  const auto r = SummarizeCompile(records);
  EXPECT_EQ(r.total.error_diagnostics, errors);
  EXPECT_EQ(*r.total.rate(), 0.0);
}

TEST(SummarizeClassification, AllCorrect) {
  const auto r = SummarizeClassification(
      {{LangLabel::kGo, LangLabel::kGo}, {LangLabel::kR, LangLabel::kR}});
  for (const auto& [label, m] : r.per_label) {
    EXPECT_EQ(m.precision, 1.0);
    EXPECT_EQ(m.recall, 1.0);
    EXPECT_EQ(m.f1, 1.0);
  }
  EXPECT_EQ(r.accuracy, 1.0);
}

TEST(SummarizeClassification, HandComputedThreeByThree) {
  const auto r = SummarizeClassification(ThreeByThree());
  ASSERT_EQ(r.labels, (std::vector<LangLabel>{LangLabel::kC, LangLabel::kCpp, LangLabel::kPython}));
  EXPECT_EQ(r.confusion,
            (std::vector<std::vector<std::size_t>>{{5, 2, 1}, {1, 3, 0}, {0, 1, 4}}));
  const auto& c = r.per_label.at(LangLabel::kC);
  EXPECT_NEAR(c.precision, 5.0 / 6.0, 1e-12);
  EXPECT_NEAR(c.recall, 5.0 / 8.0, 1e-12);
  EXPECT_NEAR(c.f1, 5.0 / 7.0, 1e-12);
  EXPECT_EQ(c.support, 8u);
  const auto& cpp = r.per_label.at(LangLabel::kCpp);
  EXPECT_NEAR(cpp.precision, 0.5, 1e-12);
  EXPECT_NEAR(cpp.recall, 0.75, 1e-12);
  EXPECT_NEAR(cpp.f1, 0.6, 1e-12);
  const auto& py = r.per_label.at(LangLabel::kPython);
  EXPECT_NEAR(py.precision, 0.8, 1e-12);
  EXPECT_NEAR(py.recall, 0.8, 1e-12);
  EXPECT_NEAR(py.f1, 0.8, 1e-12);
  EXPECT_NEAR(r.macro_precision, (5.0 / 6.0 + 0.5 + 0.8) / 3, 1e-12);
  EXPECT_NEAR(r.macro_recall, (5.0 / 8.0 + 0.75 + 0.8) / 3, 1e-12);
  EXPECT_NEAR(r.macro_f1, (5.0 / 7.0 + 0.6 + 0.8) / 3, 1e-12);
  EXPECT_NEAR(r.accuracy, 12.0 / 17.0, 1e-12);
}

TEST(SummarizeClassification, RowSumsAreSupportAndF1IsHarmonicMean) {
  const auto r = SummarizeClassification(ThreeByThree());
  for (std::size_t i = 0; i < r.labels.size(); ++i) {
    std::size_t row = 0;
    for (auto v : r.confusion[i]) row += v;
    const auto& m = r.per_label.at(r.labels[i]);
    EXPECT_EQ(row, m.support);
    const double pr = m.precision + m.recall;
    EXPECT_NEAR(m.f1, pr > 0 ? 2 * m.precision * m.recall / pr : 0.0, 1e-12);
  }
}

TEST(SummarizeClassification, PredictedOnlyLabelHasNoRow) {
  const auto r = SummarizeClassification({{LangLabel::kC, LangLabel::kUnknown}});
  EXPECT_EQ(r.per_label.size(), 1u);
  EXPECT_EQ(r.per_label.at(LangLabel::kC).recall, 0.0);
  EXPECT_EQ(r.per_label.at(LangLabel::kC).f1, 0.0);
}

TEST(SummarizeClassification, Errors) {
  EXPECT_THROW(SummarizeClassification({}), EmptyInput);
  EXPECT_THROW(SummarizeClassification({{LangLabel::kUnknown, LangLabel::kC}}),
               std::invalid_argument);
}

TEST(RenderClassReport, TableLayoutGolden) {
  EXPECT_EQ(RenderClassReport(SummarizeClassification(ThreeByThree())),
            testing::ReadText(testing::FixtureDir() / "golden" / "class_report.txt"));
}

TEST(Reports, ArePureFunctionsOfInput) {
  const auto a = SummarizeClassification(ThreeByThree());
  const auto b = SummarizeClassification(ThreeByThree());
  EXPECT_EQ(ToJson(a).dump(), ToJson(b).dump());
  EXPECT_EQ(RenderClassReport(a), RenderClassReport(b));
}

RepairTrace Trace(LangLabel lang, RepairStatus status, int used, int cap = 5) {
  RepairTrace t;
  t.lang = lang;
  t.status = status;
  t.iterations_used = used;
  t.max_iterations = cap;
  return t;
}

TEST(KSweep, SingleK) {
  std::vector<CodeSnippet> corpus = {
      {"a", "int main(void) { return 0 }\n", LangLabel::kC, ""}};
  RuleFixer fixer;
  const auto r = KSweep(corpus, Config(), fixer, {1});
  ASSERT_EQ(r.rows.size(), 1u);
  EXPECT_EQ(r.rows[0].k, 1);
  EXPECT_EQ(r.rows[0].by_language.at(LangLabel::kC).summary.n, 1u);
  EXPECT_EQ(r.rows[0].by_language.at(LangLabel::kC).summary.compilable, 1u);
}

TEST(KSweep, RejectsBadKs) {
  NullFixer fixer;
  EXPECT_THROW(KSweep({}, Config(), fixer, {2, 2}), std::invalid_argument);
  EXPECT_THROW(KSweep({}, Config(), fixer, {0}), std::invalid_argument);
  EXPECT_THROW(KSweepFromTraces({}, {3, 1}), std::invalid_argument);
}

TEST(KSweep, OracleReachesPlateauAtFirstK) {
  auto fixtures = testing::CompilableFixtures();
  fixtures.resize(10);
  const auto injected = testing::InjectAll(fixtures, Config(), 4, 2);
  OracleFixer oracle;
  std::vector<CodeSnippet> corpus;
  for (const auto& item : injected) {
    oracle.Add(item.mutated.id, item.original.source);
    corpus.push_back(item.mutated);
  }
  const auto r = KSweep(corpus, Config(), oracle, {1, 3});
  for (LangLabel lang : {LangLabel::kC}) {
    const auto& k1 = r.rows[0].by_language.at(lang).summary;
    const auto& k3 = r.rows[1].by_language.at(lang).summary;
    EXPECT_EQ(k1.rate(), 1.0);
    EXPECT_EQ(k1.compilable, k3.compilable);
  }
}

TEST(KSweepFromTraces, CountsByIterationsUsed) {
  const std::vector<RepairTrace> traces = {
      Trace(LangLabel::kC, RepairStatus::kAlreadyCompilable, 0),
      Trace(LangLabel::kC, RepairStatus::kRepaired, 1),
      Trace(LangLabel::kC, RepairStatus::kRepaired, 3),
      Trace(LangLabel::kC, RepairStatus::kExhaustedIterations, 5),
      Trace(LangLabel::kCpp, RepairStatus::kRepaired, 2),
      Trace(LangLabel::kCpp, RepairStatus::kFixerFailed, 1),
  };
  const auto r = KSweepFromTraces(traces, {1, 2, 3, 5, 6});
  const std::size_t c[] = {2, 2, 3, 3};
  const std::size_t cpp[] = {0, 1, 1, 1};
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_EQ(r.rows[i].by_language.at(LangLabel::kC).summary.compilable, c[i]);
    EXPECT_EQ(r.rows[i].by_language.at(LangLabel::kCpp).summary.compilable, cpp[i]);
  }
  EXPECT_FALSE(r.rows[4].by_language.at(LangLabel::kC).valid);
  EXPECT_EQ(RenderKSweep(r),
            "K          C     C++\n"
            "1       0.50    0.00\n"
            "2       0.50    0.50\n"
            "3       0.75    0.50\n"
            "5       0.75    0.50\n"
            "6    invalid invalid\n");
}

TEST(KSweepProperty, RatesNeverDecreaseInK) {
  std::mt19937 rng(9);
  for (int round = 0; round < 100; ++round) {
    std::vector<RepairTrace> traces;
    const int n = 1 + static_cast<int>(rng() % 20);
    for (int i = 0; i < n; ++i) {
      const auto lang = rng() % 2 ? LangLabel::kC : LangLabel::kCpp;
      const auto status = static_cast<RepairStatus>(rng() % 4);
      traces.push_back(Trace(lang, status, 1 + static_cast<int>(rng() % 5)));
    }
    const auto r = KSweepFromTraces(traces, {1, 2, 3, 4, 5});
    for (LangLabel lang : {LangLabel::kC, LangLabel::kCpp}) {
      for (std::size_t i = 1; i < r.rows.size(); ++i) {
        EXPECT_LE(r.rows[i - 1].by_language.at(lang).summary.rate(),
                  r.rows[i].by_language.at(lang).summary.rate());
      }
    }
  }
}

TEST(Unrepaired, ListsOnlyFailures) {
  auto failed = Trace(LangLabel::kC, RepairStatus::kFixerFailed, 1);
  failed.snippet_id = "f";
  failed.error = "backend down";
  auto ok = Trace(LangLabel::kC, RepairStatus::kRepaired, 1);
  const auto items = Unrepaired({ok, failed});
  ASSERT_EQ(items.size(), 1u);
  EXPECT_EQ(items[0].snippet_id, "f");
  EXPECT_EQ(items[0].first_error, "backend down");
}

TEST(FormatRate, TwoDecimalsOrNa) {
  EXPECT_EQ(FormatRate(std::nullopt), "n/a");
  EXPECT_EQ(FormatRate(1.0), "1.00");
  EXPECT_EQ(FormatRate(1.0 / 3.0), "0.33");
}

}  // namespace
}  // namespace codevet
