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

#ifndef CODEVET_DIAGNOSTICS_H
#define CODEVET_DIAGNOSTICS_H

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace codevet {

enum class Severity { kError, kWarning, kNote };

// Coarse cause of a compile failure.
enum class Category { kSyntax, kSemantic, kScope, kOther };

std::string_view SeverityName(Severity severity);
std::string_view CategoryName(Category category);
std::optional<Severity> SeverityFromName(std::string_view name);
std::optional<Category> CategoryFromName(std::string_view name);

struct Diagnostic {
  std::optional<int> line;    // 1-based
  std::optional<int> column;  // 1-based
  Severity severity = Severity::kNote;
  std::string message;
  Category category = Category::kOther;
  // The diagnostic's header line exactly as the compiler printed it.
  std::string raw;
  // Non-matching lines that followed the header (source excerpt, carets,
  // fix-it hints, "In function" banners).
  std::vector<std::string> context;

  bool operator==(const Diagnostic&) const = default;
};

// Keyword classification applied to the diagnostic message. Scope patterns
// are checked before Semantic ones, Semantic before Syntax.
Category Categorize(std::string_view message);

// Splits GNU-style compiler output into diagnostics. Recognized header
// shapes, anchored at the start of a line:
//
//   <path>:<line>:<col>: <severity>: <message>
//   <path>:<line>: <severity>: <message>
//
// Any other line is attached to the preceding diagnostic as context, or
// dropped when no diagnostic precedes it. Severities other than error,
// warning and note become kNote, except "fatal error" which is an error.
std::vector<Diagnostic> ParseDiagnostics(std::string_view raw_output);

std::vector<Diagnostic> ErrorsOnly(const std::vector<Diagnostic>& diagnostics);

}  // namespace codevet

#endif  // CODEVET_DIAGNOSTICS_H
