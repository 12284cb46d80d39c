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

#include "codevet/corpus.h"

#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <unordered_set>

#include "json.hpp"

namespace codevet {

using nlohmann::json;

bool IsValidUtf8(std::string_view text) {
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    const auto lead = static_cast<unsigned char>(text[i]);
    std::size_t extra = 0;
    std::uint32_t code_point = 0;
    if (lead < 0x80) {
      ++i;
      continue;
    } else if ((lead & 0xE0) == 0xC0) {
      extra = 1;
      code_point = lead & 0x1F;
    } else if ((lead & 0xF0) == 0xE0) {
      extra = 2;
      code_point = lead & 0x0F;
    } else if ((lead & 0xF8) == 0xF0) {
      extra = 3;
      code_point = lead & 0x07;
    } else {
      return false;
    }
    if (i + extra >= n) return false;
    for (std::size_t k = 1; k <= extra; ++k) {
      const auto cont = static_cast<unsigned char>(text[i + k]);
      if ((cont & 0xC0) != 0x80) return false;
      code_point = (code_point << 6) | (cont & 0x3F);
    }
    // Overlong encodings, surrogates and values past U+10FFFF.
    if ((extra == 1 && code_point < 0x80) ||
        (extra == 2 && code_point < 0x800) ||
        (extra == 3 && code_point < 0x10000) || code_point > 0x10FFFF ||
        (code_point >= 0xD800 && code_point <= 0xDFFF)) {
      return false;
    }
    i += extra + 1;
  }
  return true;
}

std::string_view RejectKindName(RejectKind kind) {
  switch (kind) {
    case RejectKind::kMalformedRecord:
      return "MalformedRecord";
    case RejectKind::kDuplicateId:
      return "DuplicateId";
  }
  return "MalformedRecord";
}

CodeSnippet ParseRecord(std::string_view line) {
  if (!IsValidUtf8(line)) {
    throw CorpusError("record is not valid UTF-8");
  }
  json record;
  try {
    record = json::parse(line);
  } catch (const json::parse_error& e) {
    throw CorpusError(std::string("invalid JSON: ") + e.what());
  }
  if (!record.is_object()) {
    throw CorpusError("record is not a JSON object");
  }
  for (const auto& [key, value] : record.items()) {
    if (key != "id" && key != "source" && key != "lang" && key != "origin") {
      throw CorpusError("unexpected field '" + key + "'");
    }
  }

  CodeSnippet snippet;
  if (!record.contains("id") || !record["id"].is_string()) {
    throw CorpusError("field 'id' missing or not a string");
  }
  snippet.id = record["id"].get<std::string>();
  if (snippet.id.empty()) {
    throw CorpusError("field 'id' is empty");
  }
  if (!record.contains("source") || !record["source"].is_string()) {
    throw CorpusError("field 'source' missing or not a string");
  }
  snippet.source = record["source"].get<std::string>();

  if (record.contains("lang") && !record["lang"].is_null()) {
    if (!record["lang"].is_string()) {
      throw CorpusError("field 'lang' is not a string");
    }
    const auto wire = record["lang"].get<std::string>();
    const auto label = LabelFromWire(wire);
    if (!label) {
      throw CorpusError("unknown language label '" + wire + "'");
    }
    snippet.claimed_lang = *label;
  }
  if (record.contains("origin") && !record["origin"].is_null()) {
    if (!record["origin"].is_string()) {
      throw CorpusError("field 'origin' is not a string");
    }
    snippet.origin = record["origin"].get<std::string>();
  }
  return snippet;
}

std::string FormatRecord(const CodeSnippet& snippet) {
  json record;
  record["id"] = snippet.id;
  record["source"] = snippet.source;
  if (snippet.claimed_lang != LangLabel::kUnknown) {
    record["lang"] = std::string(LabelToWire(snippet.claimed_lang));
  }
  if (!snippet.origin.empty()) {
    record["origin"] = snippet.origin;
  }
  return record.dump();
}

LoadResult ReadCorpus(std::istream& in) {
  LoadResult result;
  std::unordered_set<std::string> seen;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    try {
      CodeSnippet snippet = ParseRecord(line);
      if (!seen.insert(snippet.id).second) {
        result.rejects.push_back({line_number, RejectKind::kDuplicateId,
                                  "duplicate id '" + snippet.id + "'",
                                  snippet.id, line});
        continue;
      }
      result.snippets.push_back(std::move(snippet));
    } catch (const CorpusError& e) {
      result.rejects.push_back(
          {line_number, RejectKind::kMalformedRecord, e.what(), "", line});
    }
  }
  return result;
}

LoadResult LoadCorpus(const std::filesystem::path& path) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(path, ec)) {
    throw FileNotFoundError(path);
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw FileNotFoundError(path);
  }
  return ReadCorpus(in);
}

void WriteCorpus(std::ostream& out, const std::vector<CodeSnippet>& snippets) {
  for (const auto& snippet : snippets) {
    out << FormatRecord(snippet) << '\n';
  }
}

void WriteCorpus(const std::filesystem::path& path,
                 const std::vector<CodeSnippet>& snippets) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw CorpusError("cannot open for writing: " + path.string());
  }
  WriteCorpus(out, snippets);
}

LengthPartition FilterByLength(const std::vector<CodeSnippet>& snippets,
                               std::size_t max_tokens) {
  if (max_tokens == 0) {
    throw std::invalid_argument("max_tokens must be positive");
  }
  LengthPartition partition;
  for (const auto& snippet : snippets) {
    if (snippet.approx_tokens() <= max_tokens) {
      partition.kept.push_back(snippet);
    } else {
      partition.dropped.push_back(snippet);
    }
  }
  return partition;
}

}  // namespace codevet
