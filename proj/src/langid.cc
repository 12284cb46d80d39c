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

#include "codevet/langid.h"

#include <algorithm>
#include <cctype>

#include "json.hpp"

namespace codevet {

using nlohmann::json;

namespace {

constexpr std::string_view kBuiltinRules =
#include "langid_rules.inc"
    ;

// Copies a quoted literal starting at `i` (which holds the quote) into out.
// Literals end at the matching quote or at end of line.
std::size_t CopyLiteral(std::string_view s, std::size_t i, std::string& out) {
  const char quote = s[i];
  out.push_back(quote);
  ++i;
  while (i < s.size()) {
    const char c = s[i];
    if (c == '\n') return i;
    out.push_back(c);
    ++i;
    if (c == '\\' && i < s.size() && s[i] != '\n') {
      out.push_back(s[i]);
      ++i;
    } else if (c == quote) {
      return i;
    }
  }
  return i;
}

std::string StripCLike(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (c == '"' || c == '\'') {
      i = CopyLiteral(s, i, out);
    } else if (c == '/' && i + 1 < s.size() && s[i + 1] == '/') {
      while (i < s.size() && s[i] != '\n') ++i;
    } else if (c == '/' && i + 1 < s.size() && s[i + 1] == '*') {
      // A closed comment leaves its newlines, or one space, so lines and
      // token boundaries survive (int/**/x is not intx).
      auto close = s.find("*/", i + 2);
      if (close == std::string_view::npos) break;
      const auto newlines = std::count(s.begin() + i, s.begin() + close, '\n');
      out.append(newlines > 0 ? static_cast<std::size_t>(newlines) : 1,
                 newlines > 0 ? '\n' : ' ');
      i = close + 2;
    } else {
      out.push_back(c);
      ++i;
    }
  }
  return out;
}

std::string StripHash(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (c == '"' || c == '\'') {
      i = CopyLiteral(s, i, out);
    } else if (c == '#') {
      while (i < s.size() && s[i] != '\n') ++i;
    } else {
      out.push_back(c);
      ++i;
    }
  }
  return out;
}

std::size_t NonWhitespaceBytes(std::string_view s) {
  std::size_t n = 0;
  for (unsigned char c : s) {
    if (!std::isspace(c)) ++n;
  }
  return n;
}

std::size_t CountMatches(const std::regex& re, std::string_view text) {
  std::size_t count = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const char* begin = text.data() + pos;
    const char* finish = text.data() + end;
    count += static_cast<std::size_t>(
        std::distance(std::cregex_iterator(begin, finish, re),
                      std::cregex_iterator()));
    pos = end + 1;
  }
  return count;
}

struct StrippedViews {
  std::string clike;
  std::string hash;
  std::string other;

  explicit StrippedViews(std::string_view source)
      : clike(StripCLike(source)),
        hash(StripHash(source)),
        other(source) {}

  const std::string& For(CommentFamily family) const {
    switch (family) {
      case CommentFamily::kCLike:
        return clike;
      case CommentFamily::kHash:
        return hash;
      case CommentFamily::kOther:
        return other;
    }
    return other;
  }
};

}  // namespace

std::string StripComments(std::string_view source, CommentFamily family) {
  switch (family) {
    case CommentFamily::kCLike:
      return StripCLike(source);
    case CommentFamily::kHash:
      return StripHash(source);
    case CommentFamily::kOther:
      return std::string(source);
  }
  return std::string(source);
}

CommentFamily FamilyOf(LangLabel label) {
  switch (label) {
    case LangLabel::kPython:
    case LangLabel::kRuby:
    case LangLabel::kR:
    case LangLabel::kAssembly:
      return CommentFamily::kHash;
    case LangLabel::kUnknown:
      return CommentFamily::kOther;
    default:
      return CommentFamily::kCLike;
  }
}

RuleTable RuleTable::FromJson(std::string_view document) {
  RuleTable table;
  json doc;
  try {
    doc = json::parse(document);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("rule table is not JSON: ") +
                                e.what());
  }
  try {
    table.version_ = doc.at("version").get<int>();
    for (const auto& entry : doc.at("rules")) {
      LangRule rule;
      const auto wire = entry.at("lang").get<std::string>();
      const auto label = LabelFromWire(wire);
      if (!label) throw std::invalid_argument("unknown language '" + wire + "'");
      rule.lang = *label;
      rule.pattern = entry.at("pattern").get<std::string>();
      rule.weight = entry.value("weight", 1.0);
      rule.exclusive = entry.value("exclusive", false);
      if (!(rule.weight > 0)) {
        throw std::invalid_argument("rule weight must be positive: " +
                                    rule.pattern);
      }
      try {
        rule.compiled = std::regex(rule.pattern, std::regex::ECMAScript |
                                                     std::regex::optimize);
      } catch (const std::regex_error& e) {
        throw std::invalid_argument("bad rule pattern '" + rule.pattern +
                                    "': " + e.what());
      }
      table.rules_.push_back(std::move(rule));
    }
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed rule table: ") +
                                e.what());
  }
  return table;
}

const RuleTable& RuleTable::Builtin() {
  static const RuleTable table = FromJson(kBuiltinRules);
  return table;
}

std::vector<std::size_t> RuleMatchCounts(std::string_view source,
                                         const RuleTable& table) {
  const StrippedViews views(source);
  std::vector<std::size_t> counts;
  counts.reserve(table.rules().size());
  for (const auto& rule : table.rules()) {
    counts.push_back(CountMatches(rule.compiled, views.For(FamilyOf(rule.lang))));
  }
  return counts;
}

LangScore Classify(std::string_view source, const RuleTable& table) {
  const StrippedViews views(source);
  std::array<double, kNumKnownLabels> raw{};
  for (const auto& rule : table.rules()) {
    raw[LabelIndex(rule.lang)] +=
        rule.weight * static_cast<double>(CountMatches(
                          rule.compiled, views.For(FamilyOf(rule.lang))));
  }

  LangScore result;
  double total = 0.0;
  for (LangLabel label : kKnownLabels) {
    const std::size_t bytes = NonWhitespaceBytes(views.For(FamilyOf(label)));
    const double score =
        bytes == 0 ? 0.0 : raw[LabelIndex(label)] * 1000.0 / bytes;
    result.scores[LabelIndex(label)] = score;
    total += score;
  }
  if (total <= 0.0) return result;

  LangLabel best = kKnownLabels.front();
  for (LangLabel label : kKnownLabels) {
    if (result.score(label) > result.score(best)) best = label;
  }
  result.predicted = best;
  result.confidence = result.score(best) / total;
  return result;
}

MislabelReport DetectMislabels(const std::vector<CodeSnippet>& corpus,
                               const std::vector<LangScore>& scores,
                               double threshold) {
  if (!(threshold >= 0.0 && threshold <= 1.0)) {
    throw std::invalid_argument("mislabel threshold must be in [0, 1]");
  }
  if (scores.size() != corpus.size()) {
    throw std::invalid_argument("one score per snippet required");
  }
  MislabelReport report;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto& snippet = corpus[i];
    const auto& score = scores[i];
    if (snippet.claimed_lang == LangLabel::kUnknown) continue;
    auto& stats = report.by_claimed_label[snippet.claimed_lang];
    ++stats.claimed;
    if (score.predicted != LangLabel::kUnknown &&
        score.predicted != snippet.claimed_lang &&
        score.confidence >= threshold) {
      ++stats.mislabeled;
      report.findings.push_back(
          {snippet.id, snippet.claimed_lang, score.predicted, score.confidence});
    }
  }
  return report;
}

MislabelReport DetectMislabels(const std::vector<CodeSnippet>& corpus,
                               double threshold) {
  std::vector<LangScore> scores;
  scores.reserve(corpus.size());
  for (const auto& snippet : corpus) scores.push_back(Classify(snippet));
  return DetectMislabels(corpus, scores, threshold);
}

std::string BuildClassifyPrompt(std::string_view source) {
  const LangScore guess = Classify(source);
  std::string prompt(kClassifyInstruction);
  prompt += "\n\n";
  prompt += StripComments(source, FamilyOf(guess.predicted));
  return prompt;
}

std::optional<LangLabel> ParseLabelToken(std::string_view reply) {
  static const std::map<std::string, LangLabel, std::less<>> kTokens = {
      {"c", LangLabel::kC},
      {"c++", LangLabel::kCpp},
      {"cpp", LangLabel::kCpp},
      {"cxx", LangLabel::kCpp},
      {"python", LangLabel::kPython},
      {"python3", LangLabel::kPython},
      {"objective-c", LangLabel::kObjectiveC},
      {"objectivec", LangLabel::kObjectiveC},
      {"obj-c", LangLabel::kObjectiveC},
      {"objc", LangLabel::kObjectiveC},
      {"assembly", LangLabel::kAssembly},
      {"asm", LangLabel::kAssembly},
      {"java", LangLabel::kJava},
      {"go", LangLabel::kGo},
      {"golang", LangLabel::kGo},
      {"c#", LangLabel::kCSharp},
      {"csharp", LangLabel::kCSharp},
      {"ruby", LangLabel::kRuby},
      {"r", LangLabel::kR},
  };
  auto is_token_char = [](unsigned char c) {
    return std::isalnum(c) || c == '+' || c == '#' || c == '-';
  };
  std::size_t i = 0;
  while (i < reply.size()) {
    while (i < reply.size() &&
           !is_token_char(static_cast<unsigned char>(reply[i]))) {
      ++i;
    }
    std::size_t start = i;
    while (i < reply.size() &&
           is_token_char(static_cast<unsigned char>(reply[i]))) {
      ++i;
    }
    if (start == i) break;
    std::string token;
    for (std::size_t k = start; k < i; ++k) {
      token.push_back(static_cast<char>(
          std::tolower(static_cast<unsigned char>(reply[k]))));
    }
    // Trailing hyphens come from prose such as "C-".
    while (!token.empty() && token.back() == '-') token.pop_back();
    auto it = kTokens.find(token);
    if (it != kTokens.end()) return it->second;
  }
  return std::nullopt;
}

ModelClassification ModelClassify(const CodeSnippet& snippet,
                                  ChatBackend& backend) {
  ModelClassification result;
  try {
    result.reply = backend.Complete(BuildClassifyPrompt(snippet.source));
  } catch (const BackendError& e) {
    result.error = e.kind();
    result.error_message = e.what();
    return result;
  }
  if (auto label = ParseLabelToken(result.reply)) {
    result.score.predicted = *label;
    result.score.scores[LabelIndex(*label)] = 1.0;
    result.score.confidence = 1.0;
  }
  return result;
}

}  // namespace codevet
