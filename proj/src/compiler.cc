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

#include <cstdlib>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>

#include "codevet/subprocess.h"

namespace codevet {

namespace {

// Diagnostics must come out in ASCII with no colour escapes regardless of
// the caller's locale or terminal.
const std::vector<std::pair<std::string, std::string>>& CompilerEnvironment() {
  static const std::vector<std::pair<std::string, std::string>> kEnv = {
      {"LC_ALL", "C"}, {"LANG", "C"}, {"GCC_COLORS", ""}};
  return kEnv;
}

}  // namespace

CompilerConfig::CompilerConfig(std::string command, std::string std_c,
                               std::string std_cpp,
                               std::vector<std::string> extra_flags,
                               std::chrono::duration<double> timeout)
    : command_(std::move(command)),
      std_c_(std::move(std_c)),
      std_cpp_(std::move(std_cpp)),
      extra_flags_(std::move(extra_flags)),
      timeout_(timeout) {
  auto resolved = FindExecutable(command_);
  if (!resolved) throw CompilerNotFound(command_);
  resolved_path_ = resolved->string();
  if (!(timeout_.count() > 0)) {
    throw std::invalid_argument("compiler timeout must be positive");
  }
}

CompilerConfig CompilerConfig::FromEnvironment() {
  const char* cc = std::getenv("CODEVET_CC");
  if (cc != nullptr && *cc != '\0') return CompilerConfig(cc);
  return CompilerConfig();
}

const std::string& CompilerConfig::StandardFor(LangLabel lang) const {
  return lang == LangLabel::kCpp ? std_cpp_ : std_c_;
}

std::string CompilerConfig::Identity() const {
  static std::mutex mutex;
  static std::map<std::string, std::string> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(resolved_path_);
  if (it != cache.end()) return it->second;

  std::string identity = command_;
  try {
    ProcessOptions options;
    options.env = CompilerEnvironment();
    options.timeout = timeout_;
    auto result = RunProcess({resolved_path_, "--version"}, options);
    std::istringstream lines(result.output);
    std::string first;
    if (std::getline(lines, first) && !first.empty()) identity = first;
  } catch (const IoFailure&) {
  }
  cache.emplace(resolved_path_, identity);
  return identity;
}

std::vector<std::string> CompilerConfig::CommandLine(
    LangLabel lang, const std::string& file_name) const {
  std::vector<std::string> argv = {resolved_path_, "-fsyntax-only",
                                   "-std=" + StandardFor(lang)};
  argv.insert(argv.end(), extra_flags_.begin(), extra_flags_.end());
  argv.push_back(file_name);
  return argv;
}

bool CompileOutcome::has_error() const {
  for (const auto& d : diagnostics) {
    if (d.severity == Severity::kError) return true;
  }
  return false;
}

std::string SnippetFileName(LangLabel lang) {
  return lang == LangLabel::kCpp ? "snippet.cpp" : "snippet.c";
}

CompileOutcome CompileCheck(std::string_view source, LangLabel lang,
                            const CompilerConfig& config) {
  if (!IsCFamilyCompilable(lang)) {
    throw std::invalid_argument("compile_check requires C or C++ source");
  }
  if (source.empty()) {
    throw std::invalid_argument("compile_check requires non-empty source");
  }

  TempDir dir;
  const std::string file_name = SnippetFileName(lang);
  {
    std::ofstream out(dir.path() / file_name, std::ios::binary);
    out.write(source.data(), static_cast<std::streamsize>(source.size()));
    if (!out) throw IoFailure("cannot write " + file_name);
  }

  ProcessOptions options;
  options.working_dir = dir.path();
  options.env = CompilerEnvironment();
  options.timeout = config.timeout();
  ProcessResult run = RunProcess(config.CommandLine(lang, file_name), options);

  CompileOutcome outcome;
  outcome.exit_code = run.exit_code;
  outcome.elapsed = run.elapsed;
  outcome.compiler_identity = config.Identity();
  outcome.timed_out = run.timed_out;
  outcome.diagnostics = ParseDiagnostics(run.output);
  if (run.timed_out) {
    Diagnostic timeout;
    timeout.severity = Severity::kError;
    timeout.category = Category::kOther;
    std::ostringstream message;
    message << "compilation timed out after " << config.timeout().count()
            << " s";
    timeout.message = message.str();
    timeout.raw = file_name + ": error: " + timeout.message;
    outcome.diagnostics.push_back(std::move(timeout));
  }
  outcome.compilable =
      !run.timed_out && outcome.exit_code == 0 && !outcome.has_error();
  return outcome;
}

}  // namespace codevet
