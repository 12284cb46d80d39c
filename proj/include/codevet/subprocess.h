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

#ifndef CODEVET_SUBPROCESS_H
#define CODEVET_SUBPROCESS_H

#include <chrono>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace codevet {

class IoFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ProcessResult {
  int exit_code = -1;
  bool timed_out = false;
  // stdout and stderr interleaved in arrival order.
  std::string output;
  std::chrono::duration<double> elapsed{0};
};

struct ProcessOptions {
  std::optional<std::filesystem::path> working_dir;
  // Added to (or overriding) the inherited environment.
  std::vector<std::pair<std::string, std::string>> env;
  std::chrono::duration<double> timeout{10.0};
};

// Runs argv[0] (searched on PATH) with the given arguments, capturing
// combined output. The child is killed when the timeout expires. Throws
// IoFailure when the process cannot be started.
ProcessResult RunProcess(const std::vector<std::string>& argv,
                         const ProcessOptions& options);

// Resolves an executable name against PATH (or checks an explicit path).
std::optional<std::filesystem::path> FindExecutable(const std::string& name);

// RAII private temporary directory, removed recursively on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& prefix = "codevet");
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace codevet

#endif  // CODEVET_SUBPROCESS_H
