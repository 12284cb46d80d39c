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

// Fixture loading shared by the unit tests and the acceptance runner.

#ifndef CODEVET_TESTS_SUPPORT_H
#define CODEVET_TESTS_SUPPORT_H

#include <filesystem>
#include <string>
#include <vector>

#include "codevet/compiler.h"
#include "codevet/corpus.h"
#include "codevet/inject.h"

namespace codevet::testing {

std::filesystem::path FixtureDir();

std::string ReadText(const std::filesystem::path& path);

// Every *.c / *.cpp file under fixtures/compilable/<sub>, sorted by name,
// as snippets whose id is the file stem.
std::vector<CodeSnippet> LoadSnippetDir(const std::string& sub, LangLabel lang);

// fixtures/compilable/c followed by fixtures/compilable/cpp.
std::vector<CodeSnippet> CompilableFixtures();

struct Injected {
  CodeSnippet original;
  CodeSnippet mutated;  // id "<original id>:<kind>"
  InjectResult result;
};

// Every kind applied to every fixture with `seed`; only emitted mutations
// are returned, in fixture then kind order.
std::vector<Injected> InjectAll(const std::vector<CodeSnippet>& fixtures,
                                const CompilerConfig& config, std::uint64_t seed,
                                std::size_t jobs);

}  // namespace codevet::testing

#endif  // CODEVET_TESTS_SUPPORT_H
