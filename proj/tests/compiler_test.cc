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

#include "codevet/compiler.h"

#include <gtest/gtest.h>

#include <filesystem>

#include "codevet/subprocess.h"
#include "support.h"

namespace codevet {
namespace {

const CompilerConfig& Config() {
  static const CompilerConfig config;
  return config;
}

TEST(CompilerConfig, RejectsMissingCompiler) {
  EXPECT_THROW(CompilerConfig("definitely-not-a-compiler-xyz"), CompilerNotFound);
}

TEST(CompilerConfig, RejectsNonPositiveTimeout) {
  EXPECT_THROW(CompilerConfig("gcc", "gnu11", "gnu++14", {}, std::chrono::duration<double>(0)),
               std::invalid_argument);
}

TEST(CompilerConfig, CommandLineUsesPinnedFlags) {
  const auto c = Config().CommandLine(LangLabel::kC, "snippet.c");
  ASSERT_GE(c.size(), 4u);
  EXPECT_EQ(c[1], "-fsyntax-only");
  EXPECT_EQ(c[2], "-std=gnu11");
  EXPECT_EQ(c.back(), "snippet.c");
  const auto cpp = Config().CommandLine(LangLabel::kCpp, "snippet.cpp");
  EXPECT_EQ(cpp[2], "-std=gnu++14");
  EXPECT_EQ(SnippetFileName(LangLabel::kC), "snippet.c");
  EXPECT_EQ(SnippetFileName(LangLabel::kCpp), "snippet.cpp");
}

TEST(CompileCheck, MinimalProgramCompiles) {
  const auto o = CompileCheck("int main(void){return 0;}", LangLabel::kC, Config());
  EXPECT_TRUE(o.compilable);
  EXPECT_EQ(o.exit_code, 0);
  EXPECT_TRUE(o.errors().empty());
  EXPECT_FALSE(o.compiler_identity.empty());
}

TEST(CompileCheck, BrokenCommCleanFailsWithSyntaxError) {
  const auto src = testing::ReadText(testing::FixtureDir() / "comm_clean" / "broken.c");
  const auto o = CompileCheck(src, LangLabel::kC, Config());
  EXPECT_FALSE(o.compilable);
  bool syntax = false;
  for (const auto& d : o.errors()) syntax |= d.category == Category::kSyntax;
  EXPECT_TRUE(syntax);
}

TEST(CompileCheck, FixedCommCleanCompilesUnderPinnedStandard) {
  const auto src = testing::ReadText(testing::FixtureDir() / "comm_clean" / "fixed.c");
  const auto o = CompileCheck(src, LangLabel::kC, Config());
  EXPECT_TRUE(o.compilable);
  // The implicit declaration of comm_close is only a warning.
  EXPECT_FALSE(o.diagnostics.empty());
}

TEST(CompileCheck, LinkErrorsAreNotChecked) {
  EXPECT_TRUE(CompileCheck("void missing(void);\nint main(void){missing();return 0;}\n",
                           LangLabel::kC, Config())
                  .compilable);
}

TEST(CompileCheck, CppExtensionIsUsed) {
  const char* src = "#include <vector>\nint main(){std::vector<int> v{1};return v[0];}\n";
  EXPECT_TRUE(CompileCheck(src, LangLabel::kCpp, Config()).compilable);
  EXPECT_FALSE(CompileCheck(src, LangLabel::kC, Config()).compilable);
}

TEST(CompileCheck, RejectsNonCFamilyAndEmpty) {
  EXPECT_THROW(CompileCheck("print(1)", LangLabel::kPython, Config()), std::invalid_argument);
  EXPECT_THROW(CompileCheck("", LangLabel::kC, Config()), std::invalid_argument);
}

TEST(CompileCheck, TimeoutIsNonCompilableWithSyntheticDiagnostic) {
  const CompilerConfig slow("gcc", "gnu11", "gnu++14", {},
                            std::chrono::duration<double>(0.05));
  // Deep template recursion keeps the compiler busy well past the limit.
  const char* src =
      "template<int N> struct F { static const long v = F<N-1>::v + F<N-2>::v; };\n"
      "template<> struct F<0> { static const long v = 0; };\n"
      "template<> struct F<1> { static const long v = 1; };\n"
      "long x = F<800>::v;\n";
  const auto o = CompileCheck(src, LangLabel::kCpp, slow);
  if (!o.timed_out) GTEST_SKIP() << "compiler finished within 50ms";
  EXPECT_FALSE(o.compilable);
  ASSERT_FALSE(o.diagnostics.empty());
  EXPECT_EQ(o.diagnostics.front().category, Category::kOther);
  EXPECT_EQ(o.diagnostics.front().severity, Severity::kError);
}

// compilable iff exit 0 and no Error diagnostic; verdicts are repeatable.
TEST(CompileCheckProperty, DeterministicAndConsistent) {
  const auto fixtures = testing::CompilableFixtures();
  for (std::size_t i = 0; i < fixtures.size(); i += 7) {
    const auto& sn = fixtures[i];
    const auto a = CompileCheck(sn.source, sn.claimed_lang, Config());
    const auto b = CompileCheck(sn.source, sn.claimed_lang, Config());
    EXPECT_TRUE(a.compilable) << sn.id;
    EXPECT_EQ(a.compilable, b.compilable);
    EXPECT_EQ(a.errors(), b.errors());
    EXPECT_EQ(a.compilable, a.exit_code == 0 && a.errors().empty());
    // Broken variant: drop the last closing brace.
    std::string broken = sn.source;
    broken.erase(broken.rfind('}'), 1);
    const auto c = CompileCheck(broken, sn.claimed_lang, Config());
    EXPECT_FALSE(c.compilable) << sn.id;
    EXPECT_EQ(c.compilable, c.exit_code == 0 && c.errors().empty());
  }
}

TEST(CompileCheck, LeavesNoTemporaryFiles) {
  const auto tmp = std::filesystem::temp_directory_path();
  auto count = [&] {
    std::size_t n = 0;
    for (const auto& e : std::filesystem::directory_iterator(tmp)) {
      if (e.path().filename().string().rfind("codevet-", 0) == 0) ++n;
    }
    return n;
  };
  const std::size_t before = count();
  CompileCheck("int main(void){return 0;}", LangLabel::kC, Config());
  EXPECT_EQ(count(), before);
}

TEST(Subprocess, RunsWithTimeoutAndCapturesOutput) {
  ProcessOptions options;
  options.timeout = std::chrono::duration<double>(5);
  const auto r = RunProcess({"sh", "-c", "echo out; echo err 1>&2; exit 3"}, options);
  EXPECT_EQ(r.exit_code, 3);
  EXPECT_NE(r.output.find("out"), std::string::npos);
  EXPECT_NE(r.output.find("err"), std::string::npos);
  options.timeout = std::chrono::duration<double>(0.2);
  const auto slow = RunProcess({"sleep", "5"}, options);
  EXPECT_TRUE(slow.timed_out);
  EXPECT_THROW(RunProcess({"no-such-binary-abc"}, options), IoFailure);
}

}  // namespace
}  // namespace codevet
