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

#ifndef CODEVET_COMPILER_H
#define CODEVET_COMPILER_H

#include <chrono>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "codevet/diagnostics.h"
#include "codevet/lang.h"

namespace codevet {

class CompilerNotFound : public std::runtime_error {
 public:
  explicit CompilerNotFound(const std::string& command)
      : std::runtime_error("compiler not found: '" + command +
                           "' (set CODEVET_CC or --cc)"),
        command_(command) {}
  const std::string& command() const { return command_; }

 private:
  std::string command_;
};

// Settings for the compile oracle. Defaults keep implicit function
// declarations a warning in C, so snippets that call undeclared functions
// still count as compilable.
class CompilerConfig {
 public:
  static constexpr std::string_view kDefaultCommand = "gcc";
  static constexpr std::string_view kDefaultStdC = "gnu11";
  static constexpr std::string_view kDefaultStdCpp = "gnu++14";
  static constexpr double kDefaultTimeoutSeconds = 10.0;

  // Throws CompilerNotFound when `command` does not resolve to an executable
  // and std::invalid_argument when timeout is not positive.
  explicit CompilerConfig(std::string command = std::string(kDefaultCommand),
                          std::string std_c = std::string(kDefaultStdC),
                          std::string std_cpp = std::string(kDefaultStdCpp),
                          std::vector<std::string> extra_flags = {},
                          std::chrono::duration<double> timeout =
                              std::chrono::duration<double>(
                                  kDefaultTimeoutSeconds));

  // Default config with CODEVET_CC applied when set.
  static CompilerConfig FromEnvironment();

  const std::string& command() const { return command_; }
  const std::string& resolved_path() const { return resolved_path_; }
  const std::string& std_c() const { return std_c_; }
  const std::string& std_cpp() const { return std_cpp_; }
  const std::vector<std::string>& extra_flags() const { return extra_flags_; }
  std::chrono::duration<double> timeout() const { return timeout_; }

  const std::string& StandardFor(LangLabel lang) const;

  // First line of `<command> --version`, computed once per command.
  std::string Identity() const;

  // The argv used to compile `file_name` (relative to the work directory).
  std::vector<std::string> CommandLine(LangLabel lang,
                                       const std::string& file_name) const;

 private:
  std::string command_;
  std::string resolved_path_;
  std::string std_c_;
  std::string std_cpp_;
  std::vector<std::string> extra_flags_;
  std::chrono::duration<double> timeout_;
};

struct CompileOutcome {
  bool compilable = false;
  std::vector<Diagnostic> diagnostics;
  int exit_code = -1;
  std::chrono::duration<double> elapsed{0};
  std::string compiler_identity;
  bool timed_out = false;

  std::vector<Diagnostic> errors() const { return ErrorsOnly(diagnostics); }
  bool has_error() const;
};

// Name of the temporary translation unit: "snippet.c" or "snippet.cpp".
// Diagnostics refer to it by this relative name, which keeps their raw text
// independent of where the temporary directory lives.
std::string SnippetFileName(LangLabel lang);

// Compiles `source` in syntax-only mode (no code generation, no linking)
// inside a private temporary directory. A timeout yields a non-compilable
// outcome with one synthetic Error diagnostic of category Other.
//
// Throws std::invalid_argument if lang is not C/C++ or source is empty,
// IoFailure if the temporary file cannot be written.
CompileOutcome CompileCheck(std::string_view source, LangLabel lang,
                            const CompilerConfig& config);

}  // namespace codevet

#endif  // CODEVET_COMPILER_H
