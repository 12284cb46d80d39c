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

#include "codevet/lang.h"

namespace codevet {

namespace {

struct LabelNames {
  LangLabel label;
  std::string_view wire;
  std::string_view display;
};

constexpr std::array<LabelNames, 11> kNames = {{
    {LangLabel::kC, "c", "C"},
    {LangLabel::kCpp, "cpp", "C++"},
    {LangLabel::kPython, "python", "Python"},
    {LangLabel::kObjectiveC, "objective-c", "Objective-C"},
    {LangLabel::kAssembly, "assembly", "Assembly"},
    {LangLabel::kJava, "java", "Java"},
    {LangLabel::kGo, "go", "Go"},
    {LangLabel::kCSharp, "csharp", "C#"},
    {LangLabel::kRuby, "ruby", "Ruby"},
    {LangLabel::kR, "r", "R"},
    {LangLabel::kUnknown, "unknown", "Unknown"},
}};

}  // namespace

std::string_view LabelToWire(LangLabel label) {
  return kNames[LabelIndex(label)].wire;
}

std::optional<LangLabel> LabelFromWire(std::string_view wire) {
  for (const auto& names : kNames) {
    if (names.label != LangLabel::kUnknown && names.wire == wire) {
      return names.label;
    }
  }
  return std::nullopt;
}

std::string_view DisplayName(LangLabel label) {
  return kNames[LabelIndex(label)].display;
}

}  // namespace codevet
