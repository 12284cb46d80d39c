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

#include <gtest/gtest.h>

#include "codevet/serialize.h"
#include "support.h"

namespace codevet {
namespace {

const CompilerConfig& Config() {
  static const CompilerConfig config;
  return config;
}

// Four compilable snippets whose only initializer is required, six broken.
std::vector<CodeSnippet> TenSnippetCorpus() {
  std::vector<CodeSnippet> corpus;
  for (int i = 0; i < 10; ++i) {
    const std::string n = std::to_string(i);
    std::string src;
    if (i % 3 == 0) {
      src = "int main(void) {\n  int v" + n + "[] = {" + n + ", 2};\n  return v" + n +
            "[0];\n}\n";
    } else {
      src = "int main(void) {\n  return " + n + "\n}\n";
    }
    corpus.push_back({"s" + n, src, LangLabel::kC, ""});
  }
  return corpus;
}

ForgeOptions InitOnly() {
  ForgeOptions options;
  options.kinds = {MutationKind::kDropVarInit};
  options.seed = 11;
  return options;
}

TEST(InstructionText, Template) {
  EXPECT_EQ(InstructionText(LangLabel::kC, "snippet.c:1:2: error: oops"),
            "Fix the compiler error of the given C code: snippet.c:1:2: error: oops");
  EXPECT_EQ(InstructionText(LangLabel::kCpp, "e"), "Fix the compiler error of the given C++ code: e");
}

TEST(MakeRecord, NoErrorDiagnosticThrows) {
  CompileOutcome clean;
  clean.compilable = true;
  EXPECT_THROW(MakeRecord({"a", "int a;", LangLabel::kC, ""}, LangLabel::kC, "int a;", {}, clean),
               NoErrorDiagnostic);
}

TEST(MakeRecord, DropTypeDefInstructionCarriesUnknownTypeName) {
  const std::string src = "typedef int word;\nword twice(word w) { return w * 2; }\n";
  const CodeSnippet sn{"t", src, LangLabel::kC, ""};
  const auto r = InjectError(src, LangLabel::kC, MutationKind::kDropTypeDef, 0, Config(), "t");
  ASSERT_TRUE(r.applied);
  const auto rec = MakeRecord(sn, LangLabel::kC, r.mutated, r.record, r.outcome);
  EXPECT_NE(rec.instruction.find("error: unknown type name 'word'"), std::string::npos);
  EXPECT_EQ(rec.instruction.rfind("Fix the compiler error of the given C code: snippet.c:", 0), 0u);
  EXPECT_EQ(rec.response, src);
  EXPECT_EQ(Revert(rec.input, rec.mutation), rec.response);
  EXPECT_EQ(rec.diagnostics, r.outcome.diagnostics);
}

TEST(ForgeDataset, StageCountsOnTenSnippets) {
  const auto result = ForgeDataset(TenSnippetCorpus(), Config(), InitOnly());
  const auto& m = result.manifest;
  EXPECT_EQ(m.collected, 10u);
  EXPECT_EQ(m.compilable, 4u);
  EXPECT_EQ(m.length_kept, 4u);
  EXPECT_EQ(m.injected.at(MutationKind::kDropVarInit), 4u);
  EXPECT_EQ(m.emitted, 4u);
  EXPECT_TRUE(m.failures.empty());
  ASSERT_EQ(result.records.size(), 4u);
  const char* ids[] = {"s0", "s3", "s6", "s9"};
  for (std::size_t i = 0; i < 4; ++i) {
    const auto& rec = result.records[i];
    EXPECT_EQ(rec.snippet_id, ids[i]);
    EXPECT_FALSE(CompileCheck(rec.input, rec.lang, Config()).compilable);
    EXPECT_TRUE(CompileCheck(rec.response, rec.lang, Config()).compilable);
    EXPECT_EQ(Revert(rec.input, rec.mutation), rec.response);
  }
}

TEST(ForgeDataset, LengthFilterApplies) {
  auto options = InitOnly();
  options.max_tokens = 10;
  const auto result = ForgeDataset(TenSnippetCorpus(), Config(), options);
  EXPECT_EQ(result.manifest.compilable, 4u);
  EXPECT_EQ(result.manifest.length_kept, 0u);
  EXPECT_TRUE(result.records.empty());
}

TEST(ForgeDataset, EmptyCorpus) {
  const auto result = ForgeDataset({}, Config(), ForgeOptions{});
  EXPECT_TRUE(result.records.empty());
  EXPECT_EQ(result.manifest.collected, 0u);
  EXPECT_EQ(result.manifest.compilable, 0u);
  EXPECT_EQ(result.manifest.length_kept, 0u);
  EXPECT_EQ(result.manifest.emitted, 0u);
  for (const auto& [kind, n] : result.manifest.injected) EXPECT_EQ(n, 0u);
}

TEST(ForgeDataset, NonCFamilyIsAFailureNotAnAbort) {
  const auto result = ForgeDataset(
      {{"py", "print(1)", LangLabel::kPython, ""}, TenSnippetCorpus()[0]}, Config(), InitOnly());
  ASSERT_EQ(result.manifest.failures.size(), 1u);
  EXPECT_EQ(result.manifest.failures[0].snippet_id, "py");
  EXPECT_EQ(result.manifest.failures[0].stage, "compile");
  EXPECT_EQ(result.records.size(), 1u);
}

TEST(ForgeDataset, MonotoneStagesAndDeterministicBytes) {
  auto fixtures = testing::CompilableFixtures();
  fixtures.resize(12);
  ForgeOptions options;
  options.seed = 3;
  options.jobs = 3;
  const auto a = ForgeDataset(fixtures, Config(), options);
  options.jobs = 1;
  const auto b = ForgeDataset(fixtures, Config(), options);
  const auto& m = a.manifest;
  EXPECT_GE(m.collected, m.compilable);
  EXPECT_GE(m.compilable, m.length_kept);
  std::size_t sum = 0;
  for (const auto& [kind, n] : m.injected) {
    EXPECT_LE(n, m.length_kept);
    sum += n;
  }
  EXPECT_EQ(sum, m.emitted);
  EXPECT_EQ(a.records.size(), m.emitted);
  ASSERT_EQ(a.records.size(), b.records.size());
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    EXPECT_EQ(ToJson(a.records[i]).dump(), ToJson(b.records[i]).dump());
  }
  // The manifest echoes the job count; the stages must not depend on it.
  EXPECT_EQ(ToJson(a.manifest)["stages"].dump(), ToJson(b.manifest)["stages"].dump());
  EXPECT_EQ(ToJson(a.manifest)["failures"].dump(), ToJson(b.manifest)["failures"].dump());
}

TEST(ForgeDataset, RejectsZeroMaxTokens) {
  ForgeOptions options;
  options.max_tokens = 0;
  EXPECT_THROW(ForgeDataset({}, Config(), options), std::invalid_argument);
}

}  // namespace
}  // namespace codevet
