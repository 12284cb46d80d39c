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

#ifndef CODEVET_CORPUS_H
#define CODEVET_CORPUS_H

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "codevet/lang.h"

namespace codevet {

inline constexpr std::size_t kDefaultMaxTokens = 4096;

// Token estimate used for length filtering: ceil(bytes / 4). No tokenizer is
// consulted; the estimate depends on nothing but the byte length.
constexpr std::size_t ApproxTokens(std::string_view source) {
  return (source.size() + 3) / 4;
}

bool IsValidUtf8(std::string_view text);

// One corpus entry. Immutable after load; safe to share across threads.
struct CodeSnippet {
  std::string id;
  std::string source;
  LangLabel claimed_lang = LangLabel::kUnknown;
  std::string origin;

  std::size_t approx_tokens() const { return ApproxTokens(source); }

  bool operator==(const CodeSnippet&) const = default;
};

enum class RejectKind {
  kMalformedRecord,
  kDuplicateId,
};

std::string_view RejectKindName(RejectKind kind);

// A corpus line that could not be ingested.
struct RejectedLine {
  std::size_t line_number = 0;  // 1-based
  RejectKind kind = RejectKind::kMalformedRecord;
  std::string reason;
  std::string id;    // set for kDuplicateId
  std::string text;  // the offending line, verbatim
};

struct LoadResult {
  std::vector<CodeSnippet> snippets;
  std::vector<RejectedLine> rejects;
};

class CorpusError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class FileNotFoundError : public CorpusError {
 public:
  explicit FileNotFoundError(const std::filesystem::path& path)
      : CorpusError("corpus file not found: " + path.string()) {}
};

// Parses one JSON-lines record. Throws CorpusError with a reason on any
// schema violation.
CodeSnippet ParseRecord(std::string_view line);

// Serializes one record as a single JSON line (no trailing newline). The
// "lang" key is emitted only for known labels, "origin" only when non-empty.
std::string FormatRecord(const CodeSnippet& snippet);

// Streams a corpus. Malformed lines and repeated ids are collected into
// rejects; the first occurrence of an id wins. Blank lines are ignored.
LoadResult ReadCorpus(std::istream& in);

// Throws FileNotFoundError when the file does not exist.
LoadResult LoadCorpus(const std::filesystem::path& path);

void WriteCorpus(std::ostream& out, const std::vector<CodeSnippet>& snippets);
void WriteCorpus(const std::filesystem::path& path,
                 const std::vector<CodeSnippet>& snippets);

struct LengthPartition {
  std::vector<CodeSnippet> kept;
  std::vector<CodeSnippet> dropped;
};

// Stable partition by approx_tokens <= max_tokens. Throws
// std::invalid_argument when max_tokens is zero.
LengthPartition FilterByLength(const std::vector<CodeSnippet>& snippets,
                               std::size_t max_tokens);

}  // namespace codevet

#endif  // CODEVET_CORPUS_H
