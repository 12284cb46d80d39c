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

#include "codevet/diagnostics.h"

#include <array>
#include <charconv>
#include <regex>

namespace codevet {

namespace {

// Keywords are matched against the message with quoted spans blanked out, so
// an identifier that happens to be called 'undefined' cannot sway the result.
constexpr std::array<std::string_view, 3> kScopeKeywords = {
    "not declared in this scope", "out of scope", "was not declared"};

constexpr std::array<std::string_view, 4> kSyntaxKeywords = {
    "expected", "stray", "unterminated", "missing terminating"};

constexpr std::array<std::string_view, 16> kSemanticKeywords = {
    "undeclared",          "undefined",
    "unknown type",        "conflicting types",
    "incompatible",        "does not name a type",
    "has no member",       "invalid operands",
    "redefinition",        "too few arguments",
    "too many arguments",  "cannot convert",
    "no matching function", "array size missing",
    "uninitialized const", "lvalue required"};

std::string BlankQuoted(std::string_view message) {
  std::string out;
  out.reserve(message.size());
  bool in_quote = false;
  for (char c : message) {
    if (c == '\'') {
      in_quote = !in_quote;
      out.push_back('\'');
    } else {
      out.push_back(in_quote ? '_' : c);
    }
  }
  return out;
}

template <std::size_t N>
bool ContainsAny(std::string_view haystack,
                 const std::array<std::string_view, N>& needles) {
  for (auto needle : needles) {
    if (haystack.find(needle) != std::string_view::npos) return true;
  }
  return false;
}

Severity MapSeverity(std::string_view word) {
  if (word == "error" || word == "fatal error") return Severity::kError;
  if (word == "warning") return Severity::kWarning;
  return Severity::kNote;
}

int ToInt(const std::string& digits) {
  int value = 0;
  std::from_chars(digits.data(), digits.data() + digits.size(), value);
  return value;
}

}  // namespace

std::string_view SeverityName(Severity severity) {
  switch (severity) {
    case Severity::kError:
      return "error";
    case Severity::kWarning:
      return "warning";
    case Severity::kNote:
      return "note";
  }
  return "note";
}

std::string_view CategoryName(Category category) {
  switch (category) {
    case Category::kSyntax:
      return "syntax";
    case Category::kSemantic:
      return "semantic";
    case Category::kScope:
      return "scope";
    case Category::kOther:
      return "other";
  }
  return "other";
}

std::optional<Severity> SeverityFromName(std::string_view name) {
  if (name == "error") return Severity::kError;
  if (name == "warning") return Severity::kWarning;
  if (name == "note") return Severity::kNote;
  return std::nullopt;
}

std::optional<Category> CategoryFromName(std::string_view name) {
  if (name == "syntax") return Category::kSyntax;
  if (name == "semantic") return Category::kSemantic;
  if (name == "scope") return Category::kScope;
  if (name == "other") return Category::kOther;
  return std::nullopt;
}

Category Categorize(std::string_view message) {
  const std::string text = BlankQuoted(message);
  if (ContainsAny(text, kScopeKeywords)) return Category::kScope;
  if (ContainsAny(text, kSyntaxKeywords)) return Category::kSyntax;
  if (ContainsAny(text, kSemanticKeywords)) return Category::kSemantic;
  return Category::kOther;
}

std::vector<Diagnostic> ParseDiagnostics(std::string_view raw_output) {
  static const std::regex kWithColumn(
      R"(^(.+?):([0-9]+):([0-9]+): ([a-z]+(?: [a-z]+)?): (.*)$)");
  static const std::regex kLineOnly(
      R"(^(.+?):([0-9]+): ([a-z]+(?: [a-z]+)?): (.*)$)");
  static const std::regex kNoLocation(
      R"(^([^:]+): (error|fatal error|warning|note): (.*)$)");

  std::vector<Diagnostic> diagnostics;
  std::size_t pos = 0;
  while (pos < raw_output.size()) {
    std::size_t end = raw_output.find('\n', pos);
    if (end == std::string_view::npos) end = raw_output.size();
    std::string line(raw_output.substr(pos, end - pos));
    pos = end + 1;
    if (!line.empty() && line.back() == '\r') line.pop_back();

    std::smatch m;
    Diagnostic diagnostic;
    bool matched = false;
    if (std::regex_match(line, m, kWithColumn)) {
      diagnostic.line = ToInt(m[2]);
      diagnostic.column = ToInt(m[3]);
      diagnostic.severity = MapSeverity(m[4].str());
      diagnostic.message = m[5];
      matched = true;
    } else if (std::regex_match(line, m, kLineOnly)) {
      diagnostic.line = ToInt(m[2]);
      diagnostic.severity = MapSeverity(m[3].str());
      diagnostic.message = m[4];
      matched = true;
    } else if (std::regex_match(line, m, kNoLocation)) {
      diagnostic.severity = MapSeverity(m[2].str());
      diagnostic.message = m[3];
      matched = true;
    }

    if (matched) {
      diagnostic.category = Categorize(diagnostic.message);
      diagnostic.raw = line;
      diagnostics.push_back(std::move(diagnostic));
    } else if (!diagnostics.empty() && !line.empty()) {
      diagnostics.back().context.push_back(line);
    }
  }
  return diagnostics;
}

std::vector<Diagnostic> ErrorsOnly(const std::vector<Diagnostic>& diagnostics) {
  std::vector<Diagnostic> errors;
  for (const auto& d : diagnostics) {
    if (d.severity == Severity::kError) errors.push_back(d);
  }
  return errors;
}

}  // namespace codevet
