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

#ifndef CODEVET_LANGID_H
#define CODEVET_LANGID_H

#include <array>
#include <map>
#include <optional>
#include <regex>
#include <string>
#include <string_view>
#include <vector>

#include "codevet/chat_backend.h"
#include "codevet/corpus.h"
#include "codevet/lang.h"

namespace codevet {

enum class CommentFamily { kCLike, kHash, kOther };

// Removes comments outside string and character literals. kCLike strips
// // ... and replaces /* ... */ with its newlines or a single space (an
// unterminated block comment runs to end of input),
// kHash strips # ... to end of line, kOther returns the text unchanged.
// Idempotent for every family.
std::string StripComments(std::string_view source, CommentFamily family);

// Comment syntax used when scoring a given language.
CommentFamily FamilyOf(LangLabel label);

inline constexpr double kDefaultMislabelThreshold = 0.6;

struct LangScore {
  std::array<double, kNumKnownLabels> scores{};
  LangLabel predicted = LangLabel::kUnknown;
  double confidence = 0.0;

  double score(LangLabel label) const { return scores[LabelIndex(label)]; }
  bool operator==(const LangScore&) const = default;
};

// One signature in the rule table. Patterns are ECMAScript regexes applied
// line by line; every match adds `weight` to the language's raw score.
struct LangRule {
  LangLabel lang = LangLabel::kUnknown;
  std::string pattern;
  double weight = 1.0;
  bool exclusive = false;
  std::regex compiled;
};

class RuleTable {
 public:
  // Parses the JSON rule document: {"version": N, "rules": [{"lang": ...,
  // "pattern": ..., "weight": ..., "exclusive": bool}, ...]}. Throws
  // std::invalid_argument on schema errors or bad regexes.
  static RuleTable FromJson(std::string_view document);

  // The table compiled into the binary from data/langid_rules.json.
  static const RuleTable& Builtin();

  int version() const { return version_; }
  const std::vector<LangRule>& rules() const { return rules_; }

 private:
  int version_ = 0;
  std::vector<LangRule> rules_;
};

// Number of matches of each rule, in table order, against the text that the
// rule's language would see after comment stripping.
std::vector<std::size_t> RuleMatchCounts(std::string_view source,
                                         const RuleTable& table);

// Deterministic scorer. Each language's score is the weighted count of its
// signature matches per 1000 non-whitespace bytes of the source after
// stripping that language's comments. Ties go to the earlier label.
LangScore Classify(std::string_view source,
                   const RuleTable& table = RuleTable::Builtin());
inline LangScore Classify(const CodeSnippet& snippet,
                          const RuleTable& table = RuleTable::Builtin()) {
  return Classify(snippet.source, table);
}

struct MislabelFinding {
  std::string snippet_id;
  LangLabel claimed = LangLabel::kUnknown;
  LangLabel predicted = LangLabel::kUnknown;
  double confidence = 0.0;
};

struct LabelMislabelStats {
  std::size_t claimed = 0;
  std::size_t mislabeled = 0;
  double rate() const {
    return claimed == 0 ? 0.0 : static_cast<double>(mislabeled) / claimed;
  }
};

struct MislabelReport {
  std::vector<MislabelFinding> findings;
  std::map<LangLabel, LabelMislabelStats> by_claimed_label;
};

MislabelReport DetectMislabels(const std::vector<CodeSnippet>& corpus,
                               const std::vector<LangScore>& scores,
                               double threshold);
MislabelReport DetectMislabels(const std::vector<CodeSnippet>& corpus,
                               double threshold = kDefaultMislabelThreshold);

// Instruction sent to a model backend for language identification.
inline constexpr std::string_view kClassifyInstruction =
    "Identify the programming language of the following code. Answer with "
    "one word.";

std::string BuildClassifyPrompt(std::string_view source);

// First token in `reply` that names a known language, if any.
std::optional<LangLabel> ParseLabelToken(std::string_view reply);

struct ModelClassification {
  LangScore score;  // one-hot on the parsed label, Unknown when unparseable
  std::string reply;
  std::optional<BackendError::Kind> error;
  std::string error_message;
};

// Never throws on backend failures; they are recorded in the result.
ModelClassification ModelClassify(const CodeSnippet& snippet,
                                  ChatBackend& backend);

}  // namespace codevet

#endif  // CODEVET_LANGID_H
