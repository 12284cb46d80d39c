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

#ifndef CODEVET_LANG_H
#define CODEVET_LANG_H

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace codevet {

// Enumeration order is significant: it is the tie-break order used by the
// language classifier.
enum class LangLabel {
  kC,
  kCpp,
  kPython,
  kObjectiveC,
  kAssembly,
  kJava,
  kGo,
  kCSharp,
  kRuby,
  kR,
  kUnknown,
};

// Every label except kUnknown, in enumeration order.
inline constexpr std::array<LangLabel, 10> kKnownLabels = {
    LangLabel::kC,        LangLabel::kCpp,        LangLabel::kPython,
    LangLabel::kObjectiveC, LangLabel::kAssembly, LangLabel::kJava,
    LangLabel::kGo,       LangLabel::kCSharp,     LangLabel::kRuby,
    LangLabel::kR};

inline constexpr std::size_t kNumKnownLabels = kKnownLabels.size();

constexpr std::size_t LabelIndex(LangLabel label) {
  return static_cast<std::size_t>(label);
}

// Corpus-file spelling: "c", "cpp", "python", "objective-c", ...
// kUnknown maps to "unknown".
std::string_view LabelToWire(LangLabel label);

// Inverse of LabelToWire for the ten known labels. Returns nullopt for any
// other string (including "unknown").
std::optional<LangLabel> LabelFromWire(std::string_view wire);

// Human-facing name used in prompts and instructions: "C", "C++",
// "Objective-C", "C#", ...
std::string_view DisplayName(LangLabel label);

inline bool IsCFamilyCompilable(LangLabel label) {
  return label == LangLabel::kC || label == LangLabel::kCpp;
}

}  // namespace codevet

#endif  // CODEVET_LANG_H
