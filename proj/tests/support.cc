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

#include "support.h"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "codevet/worker_pool.h"

namespace codevet::testing {

namespace fs = std::filesystem;

fs::path FixtureDir() { return fs::path(CODEVET_FIXTURE_DIR); }

std::string ReadText(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read fixture " + path.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<CodeSnippet> LoadSnippetDir(const std::string& sub, LangLabel lang) {
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(FixtureDir() / "compilable" / sub)) {
    const auto ext = entry.path().extension();
    if (ext == ".c" || ext == ".cpp") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<CodeSnippet> out;
  for (const auto& f : files) {
    out.push_back(CodeSnippet{f.stem().string(), ReadText(f), lang, "fixture"});
  }
  return out;
}

std::vector<CodeSnippet> CompilableFixtures() {
  auto all = LoadSnippetDir("c", LangLabel::kC);
  auto cpp = LoadSnippetDir("cpp", LangLabel::kCpp);
  all.insert(all.end(), cpp.begin(), cpp.end());
  return all;
}

std::vector<Injected> InjectAll(const std::vector<CodeSnippet>& fixtures,
                                const CompilerConfig& config, std::uint64_t seed,
                                std::size_t jobs) {
  auto per_snippet = ParallelMap(fixtures.size(), jobs, [&](std::size_t i) {
    std::vector<Injected> items;
    const CodeSnippet& sn = fixtures[i];
    for (MutationKind kind : kAllMutationKinds) {
      InjectResult r = InjectError(sn.source, sn.claimed_lang, kind, seed, config, sn.id);
      if (!r.applied) continue;
      CodeSnippet mutated{sn.id + ":" + std::string(MutationKindWire(kind)), r.mutated,
                          sn.claimed_lang, sn.origin};
      items.push_back(Injected{sn, std::move(mutated), std::move(r)});
    }
    return items;
  });
  std::vector<Injected> out;
  for (auto& group : per_snippet) {
    for (auto& item : group) out.push_back(std::move(item));
  }
  return out;
}

}  // namespace codevet::testing
