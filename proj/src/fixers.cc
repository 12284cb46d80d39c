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

#include "codevet/fixers.h"

#include <algorithm>
#include <cctype>
#include <vector>

#include "codevet/syntax.h"

namespace codevet {

namespace {

struct HeaderEntry {
  std::string_view symbol;
  std::string_view c_header;    // empty when not a C symbol
  std::string_view cpp_header;  // empty when not a C++ symbol
  bool in_std = false;          // C++ spelling lives in namespace std
};

// clang-format off
constexpr HeaderEntry kHeaderTable[] = {
    {"printf", "stdio.h", "cstdio", false},   {"fprintf", "stdio.h", "cstdio", false},
    {"sprintf", "stdio.h", "cstdio", false},  {"snprintf", "stdio.h", "cstdio", false},
    {"scanf", "stdio.h", "cstdio", false},    {"sscanf", "stdio.h", "cstdio", false},
    {"puts", "stdio.h", "cstdio", false},     {"putchar", "stdio.h", "cstdio", false},
    {"getchar", "stdio.h", "cstdio", false},  {"fgets", "stdio.h", "cstdio", false},
    {"fopen", "stdio.h", "cstdio", false},    {"fclose", "stdio.h", "cstdio", false},
    {"FILE", "stdio.h", "cstdio", false},     {"EOF", "stdio.h", "cstdio", false},
    {"stdin", "stdio.h", "cstdio", false},    {"stdout", "stdio.h", "cstdio", false},
    {"stderr", "stdio.h", "cstdio", false},   {"perror", "stdio.h", "cstdio", false},
    {"malloc", "stdlib.h", "cstdlib", false}, {"calloc", "stdlib.h", "cstdlib", false},
    {"realloc", "stdlib.h", "cstdlib", false}, {"free", "stdlib.h", "cstdlib", false},
    {"exit", "stdlib.h", "cstdlib", false},   {"atoi", "stdlib.h", "cstdlib", false},
    {"atof", "stdlib.h", "cstdlib", false},   {"abs", "stdlib.h", "cstdlib", false},
    {"rand", "stdlib.h", "cstdlib", false},   {"srand", "stdlib.h", "cstdlib", false},
    {"qsort", "stdlib.h", "cstdlib", false},  {"EXIT_SUCCESS", "stdlib.h", "cstdlib", false},
    {"EXIT_FAILURE", "stdlib.h", "cstdlib", false},
    {"NULL", "stddef.h", "cstddef", false},   {"size_t", "stddef.h", "cstddef", false},
    {"ptrdiff_t", "stddef.h", "cstddef", false},
    {"strlen", "string.h", "cstring", false}, {"strcpy", "string.h", "cstring", false},
    {"strncpy", "string.h", "cstring", false}, {"strcmp", "string.h", "cstring", false},
    {"strncmp", "string.h", "cstring", false}, {"strcat", "string.h", "cstring", false},
    {"strchr", "string.h", "cstring", false}, {"strstr", "string.h", "cstring", false},
    {"memcpy", "string.h", "cstring", false}, {"memset", "string.h", "cstring", false},
    {"memcmp", "string.h", "cstring", false}, {"memmove", "string.h", "cstring", false},
    {"bool", "stdbool.h", "", false},         {"true", "stdbool.h", "", false},
    {"false", "stdbool.h", "", false},
    {"int8_t", "stdint.h", "cstdint", false}, {"int16_t", "stdint.h", "cstdint", false},
    {"int32_t", "stdint.h", "cstdint", false}, {"int64_t", "stdint.h", "cstdint", false},
    {"uint8_t", "stdint.h", "cstdint", false}, {"uint16_t", "stdint.h", "cstdint", false},
    {"uint32_t", "stdint.h", "cstdint", false}, {"uint64_t", "stdint.h", "cstdint", false},
    {"uintptr_t", "stdint.h", "cstdint", false},
    {"sqrt", "math.h", "cmath", false},       {"pow", "math.h", "cmath", false},
    {"fabs", "math.h", "cmath", false},       {"floor", "math.h", "cmath", false},
    {"ceil", "math.h", "cmath", false},       {"sin", "math.h", "cmath", false},
    {"cos", "math.h", "cmath", false},        {"exp", "math.h", "cmath", false},
    {"log", "math.h", "cmath", false},
    {"isdigit", "ctype.h", "cctype", false},  {"isalpha", "ctype.h", "cctype", false},
    {"isspace", "ctype.h", "cctype", false},  {"isalnum", "ctype.h", "cctype", false},
    {"toupper", "ctype.h", "cctype", false},  {"tolower", "ctype.h", "cctype", false},
    {"assert", "assert.h", "cassert", false}, {"time", "time.h", "ctime", false},
    {"INT_MAX", "limits.h", "climits", false}, {"INT_MIN", "limits.h", "climits", false},
    {"cout", "", "iostream", true},           {"cin", "", "iostream", true},
    {"cerr", "", "iostream", true},           {"endl", "", "iostream", true},
    {"string", "", "string", true},           {"to_string", "", "string", true},
    {"getline", "", "string", true},          {"vector", "", "vector", true},
    {"map", "", "map", true},                 {"set", "", "set", true},
    {"unordered_map", "", "unordered_map", true}, {"unordered_set", "", "unordered_set", true},
    {"list", "", "list", true},               {"deque", "", "deque", true},
    {"queue", "", "queue", true},             {"priority_queue", "", "queue", true},
    {"stack", "", "stack", true},             {"array", "", "array", true},
    {"pair", "", "utility", true},            {"make_pair", "", "utility", true},
    {"move", "", "utility", true},            {"tuple", "", "tuple", true},
    {"sort", "", "algorithm", true},          {"reverse", "", "algorithm", true},
    {"find", "", "algorithm", true},          {"max", "", "algorithm", true},
    {"min", "", "algorithm", true},           {"swap", "", "utility", true},
    {"unique_ptr", "", "memory", true},       {"shared_ptr", "", "memory", true},
    {"make_unique", "", "memory", true},      {"make_shared", "", "memory", true},
    {"function", "", "functional", true},     {"accumulate", "", "numeric", true},
    {"iota", "", "numeric", true},            {"stringstream", "", "sstream", true},
    {"ostringstream", "", "sstream", true},   {"istringstream", "", "sstream", true},
    {"optional", "", "optional", true},       {"runtime_error", "", "stdexcept", true},
    {"invalid_argument", "", "stdexcept", true}, {"numeric_limits", "", "limits", true},
    {"setw", "", "iomanip", true},            {"setprecision", "", "iomanip", true},
};
// clang-format on

const HeaderEntry* FindHeaderEntry(std::string_view symbol, LangLabel lang) {
  for (const auto& entry : kHeaderTable) {
    if (entry.symbol != symbol) continue;
    const auto header = lang == LangLabel::kCpp ? entry.cpp_header : entry.c_header;
    if (!header.empty()) return &entry;
  }
  return nullptr;
}

bool StartsWith(std::string_view s, std::string_view prefix) {
  return s.substr(0, prefix.size()) == prefix;
}

bool Contains(std::string_view s, std::string_view part) {
  return s.find(part) != std::string_view::npos;
}

bool IsIdentChar(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

std::string StripFlagSuffix(std::string_view message) {
  // "... [-Wfoo]" and "; did you mean 'x'?" tails.
  std::string out(message);
  if (auto pos = out.rfind(" [-W"); pos != std::string::npos) out.resize(pos);
  if (auto pos = out.find("; did you mean"); pos != std::string::npos)
    out.resize(pos);
  return out;
}

// All quoted 'x' items in order.
std::vector<std::string> QuotedItems(std::string_view text) {
  std::vector<std::string> items;
  std::size_t pos = 0;
  while (true) {
    const auto open = text.find('\'', pos);
    if (open == std::string_view::npos) break;
    // A quoted apostrophe ''' is one item.
    std::size_t close = text.find('\'', open + 1);
    if (close == open + 1 && open + 2 < text.size() && text[open + 2] == '\'')
      close = open + 2;
    if (close == std::string_view::npos) break;
    items.emplace_back(text.substr(open + 1, close - open - 1));
    pos = close + 1;
  }
  return items;
}

// "expected X before Y" pieces.
struct Expectation {
  std::vector<std::string> expected;  // quoted items of X
  enum class Where { kBefore, kAfter, kAtEndOfInput, kAtEndOfDeclaration, kNone };
  Where where = Where::kNone;
  std::string before;  // Y, raw
};

std::optional<Expectation> ParseExpectation(std::string_view message) {
  if (!StartsWith(message, "expected ")) return std::nullopt;
  Expectation exp;
  const std::string_view rest = message.substr(9);
  std::size_t cut = std::string_view::npos;
  struct Marker {
    std::string_view text;
    Expectation::Where where;
  };
  for (const Marker& m : {Marker{" before ", Expectation::Where::kBefore},
                          Marker{" after ", Expectation::Where::kAfter},
                          Marker{" at end of input", Expectation::Where::kAtEndOfInput},
                          Marker{" at end of declaration",
                                 Expectation::Where::kAtEndOfDeclaration}}) {
    const auto pos = rest.find(m.text);
    if (pos != std::string_view::npos && pos < cut) {
      cut = pos;
      exp.where = m.where;
      if (m.where == Expectation::Where::kBefore) {
        exp.before = std::string(rest.substr(pos + m.text.size()));
      }
    }
  }
  exp.expected = QuotedItems(rest.substr(0, cut));
  if (exp.where == Expectation::Where::kNone) {
    // Clang: "expected ';'" with no tail.
    exp.where = Expectation::Where::kAtEndOfDeclaration;
  }
  return exp;
}

bool ExpectsAny(const Expectation& exp, std::initializer_list<std::string_view> toks) {
  for (const auto& item : exp.expected) {
    for (auto t : toks) {
      if (item == t) return true;
    }
  }
  return false;
}

// The token a "before ..." clause names.
struct BeforeToken {
  enum class Kind { kText, kNumber, kString, kChar, kEndOfInput, kAny };
  Kind kind = Kind::kAny;
  std::string text;
};

BeforeToken ParseBefore(std::string_view before) {
  BeforeToken tok;
  std::string_view b = before;
  if (b.size() >= 6 && b.substr(b.size() - 6) == " token") b.remove_suffix(6);
  if (b.size() >= 2 && b.front() == '\'' && b.back() == '\'') {
    tok.kind = BeforeToken::Kind::kText;
    tok.text = std::string(b.substr(1, b.size() - 2));
  } else if (b == "numeric constant") {
    tok.kind = BeforeToken::Kind::kNumber;
  } else if (b == "string constant") {
    tok.kind = BeforeToken::Kind::kString;
  } else if (b == "character constant") {
    tok.kind = BeforeToken::Kind::kChar;
  } else if (b == "end of input") {
    tok.kind = BeforeToken::Kind::kEndOfInput;
  }
  return tok;
}

class Locator {
 public:
  Locator(std::string_view code, std::string_view diagnosed, LangLabel lang)
      : code_(code) {
    try {
      tokens_ = Tokenize(code, lang);
      tokenized_ = true;
    } catch (const ParseFailure&) {
      tokenized_ = false;
    }
    SplitLines(code, code_lines_);
    std::vector<std::string_view> old_lines;
    SplitLines(diagnosed.empty() ? code : diagnosed, old_lines);
    old_count_ = old_lines.size();
    const std::size_t common = std::min(old_lines.size(), code_lines_.size());
    while (prefix_ < common && old_lines[prefix_] == code_lines_[prefix_]) ++prefix_;
    while (suffix_ < common - prefix_ &&
           old_lines[old_lines.size() - 1 - suffix_] ==
               code_lines_[code_lines_.size() - 1 - suffix_]) {
      ++suffix_;
    }
  }

  bool tokenized() const { return tokenized_; }
  const std::vector<Token>& tokens() const { return tokens_; }
  std::string_view TokenText(std::size_t i) const {
    return code_.substr(tokens_[i].span.begin, tokens_[i].span.size());
  }

  // Byte offsets the (line, column) may denote: byte columns and GCC's
  // tab-expanded display columns.
  std::vector<std::size_t> Offsets(const Diagnostic& d) const {
    std::vector<std::size_t> out;
    if (!d.line) return out;
    const std::size_t line = MapLine(static_cast<std::size_t>(*d.line));
    if (line == 0 || line > code_lines_.size()) return out;
    const std::string_view text = code_lines_[line - 1];
    const std::size_t start = static_cast<std::size_t>(text.data() - code_.data());
    const std::size_t col = d.column ? static_cast<std::size_t>(*d.column) : 1;
    out.push_back(start + std::min(col - 1, text.size()));
    std::size_t display = 0;
    for (std::size_t i = 0; i <= text.size(); ++i) {
      if (display >= col - 1) {
        if (start + i != out.front()) out.push_back(start + i);
        break;
      }
      if (i == text.size()) break;
      const auto c = static_cast<unsigned char>(text[i]);
      if (c == '\t') {
        display = (display / 8 + 1) * 8;
      } else if ((c & 0xC0) != 0x80) {
        ++display;
      }
    }
    return out;
  }

  // Index of the first token starting at or after `offset`.
  std::size_t TokenAtOrAfter(std::size_t offset) const {
    for (std::size_t i = 0; i < tokens_.size(); ++i) {
      if (tokens_[i].span.end > offset || tokens_[i].kind == TokenKind::kEnd) {
        return i;
      }
    }
    return tokens_.size() - 1;
  }

  bool Matches(std::size_t index, const BeforeToken& want) const {
    const Token& t = tokens_[index];
    const auto text = TokenText(index);
    switch (want.kind) {
      case BeforeToken::Kind::kText:
        if (t.kind == TokenKind::kEnd) return false;
        if (text == want.text) return true;
        // A '>>' or '<<=' token may have been reported by its prefix.
        return t.kind == TokenKind::kPunct && StartsWith(text, want.text);
      case BeforeToken::Kind::kNumber:
        return t.kind == TokenKind::kNumber;
      case BeforeToken::Kind::kString:
        return t.kind == TokenKind::kString;
      case BeforeToken::Kind::kChar:
        return t.kind == TokenKind::kChar;
      case BeforeToken::Kind::kEndOfInput:
        return t.kind == TokenKind::kEnd;
      case BeforeToken::Kind::kAny:
        return t.kind != TokenKind::kEnd;
    }
    return false;
  }

  // The token the diagnostic points at, verified against `want`.
  std::optional<std::size_t> FindToken(const Diagnostic& d,
                                       const BeforeToken& want) const {
    if (!tokenized_) return std::nullopt;
    for (std::size_t offset : Offsets(d)) {
      const std::size_t i = TokenAtOrAfter(offset);
      if (Matches(i, want)) return i;
    }
    return std::nullopt;
  }

  std::size_t EndOfPrevious(std::size_t index) const {
    return index == 0 ? 0 : tokens_[index - 1].span.end;
  }

  // The innermost '(' or '[' still open just before token `index`, unless
  // a '{' opened after it.
  std::optional<std::size_t> InnermostOpen(std::size_t index) const {
    std::vector<std::size_t> open;
    for (std::size_t i = 0; i < index && i < tokens_.size(); ++i) {
      if (tokens_[i].kind != TokenKind::kPunct) continue;
      const auto t = TokenText(i);
      if (t == "(" || t == "[" || t == "{") {
        open.push_back(i);
      } else if (t == ")" || t == "]" || t == "}") {
        const std::string_view want = t == ")" ? "(" : t == "]" ? "[" : "{";
        // Pop to the matching opener; unmatched closers are ignored.
        for (std::size_t k = open.size(); k > 0; --k) {
          if (TokenText(open[k - 1]) == want) {
            open.resize(k - 1);
            break;
          }
        }
      }
    }
    if (open.empty() || TokenText(open.back()) == "{") return std::nullopt;
    return open.back();
  }

  struct Balance {
    int paren = 0;
    int bracket = 0;
    int brace = 0;
  };
  Balance Count() const {
    Balance b;
    for (std::size_t i = 0; i < tokens_.size(); ++i) {
      if (tokens_[i].kind != TokenKind::kPunct) continue;
      const auto t = TokenText(i);
      if (t == "(") ++b.paren;
      else if (t == ")") --b.paren;
      else if (t == "[") ++b.bracket;
      else if (t == "]") --b.bracket;
      else if (t == "{") ++b.brace;
      else if (t == "}") --b.brace;
    }
    return b;
  }

 private:
  static void SplitLines(std::string_view text, std::vector<std::string_view>& out) {
    std::size_t pos = 0;
    while (pos <= text.size()) {
      std::size_t end = text.find('\n', pos);
      if (end == std::string_view::npos) end = text.size();
      out.push_back(text.substr(pos, end - pos));
      if (end == text.size()) break;
      pos = end + 1;
    }
  }

  std::size_t MapLine(std::size_t line) const {
    if (line <= prefix_) return line;
    if (line + suffix_ > old_count_) {
      return line + code_lines_.size() - old_count_;
    }
    return line;
  }

  std::string_view code_;
  std::vector<Token> tokens_;
  bool tokenized_ = false;
  std::vector<std::string_view> code_lines_;
  std::size_t old_count_ = 0;
  std::size_t prefix_ = 0;
  std::size_t suffix_ = 0;
};

std::string Insert(std::string_view code, std::size_t at, std::string_view text) {
  std::string out(code.substr(0, at));
  out += text;
  out.append(code.substr(at));
  return out;
}

std::string Erase(std::string_view code, Span span) {
  std::string out(code.substr(0, span.begin));
  out.append(code.substr(span.end));
  return out;
}

// The identifier an "undeclared" style message is about.
std::optional<std::string> UndeclaredSymbol(std::string_view message) {
  const auto items = QuotedItems(message);
  if (items.empty()) return std::nullopt;
  const bool undeclared =
      Contains(message, "' undeclared") ||
      Contains(message, "' was not declared in this scope") ||
      Contains(message, "' has not been declared") ||
      StartsWith(message, "use of undeclared identifier '");
  const bool missing_type =
      StartsWith(message, "unknown type name '") ||
      Contains(message, "' does not name a type") ||
      Contains(message, "' does not name a template type") ||
      Contains(message, "' is not a member of 'std'") ||
      Contains(message, "' in namespace 'std' does not name") ||
      StartsWith(message, "implicit declaration of function '");
  if (!undeclared && !missing_type) return std::nullopt;
  std::string symbol = items.front();
  if (StartsWith(symbol, "std::")) symbol = symbol.substr(5);
  if (symbol.empty() || !std::all_of(symbol.begin(), symbol.end(), IsIdentChar)) {
    return std::nullopt;
  }
  return symbol;
}

bool IsPlainUndeclared(std::string_view message) {
  return Contains(message, "' undeclared") ||
         Contains(message, "' was not declared in this scope") ||
         StartsWith(message, "use of undeclared identifier '");
}

bool IsStrayCloserMessage(std::string_view message) {
  // The compiler hit a closing delimiter it did not expect.
  for (auto lead : {"expected statement before '", "expected expression before '",
                    "expected primary-expression before '", "expected ';' before '",
                    "expected identifier or '(' before '",
                    "expected declaration before '", "expected ',' or ';' before '",
                    "expected unqualified-id before '"}) {
    if (StartsWith(message, lead)) {
      const auto tail = message.substr(std::string_view(lead).size());
      return StartsWith(tail, ")' token") || StartsWith(tail, "]' token") ||
             StartsWith(tail, "}' token");
    }
  }
  return false;
}

bool IsEndOfInputBrace(std::string_view message) {
  return message == "expected declaration or statement at end of input" ||
         message == "expected '}' at end of input" || message == "expected '}'";
}

bool HasInclude(std::string_view code, std::string_view header) {
  const std::string needle = "<" + std::string(header) + ">";
  std::size_t pos = 0;
  while ((pos = code.find("#include", pos)) != std::string_view::npos) {
    const auto end = code.find('\n', pos);
    const auto line = code.substr(pos, end == std::string_view::npos
                                           ? std::string_view::npos
                                           : end - pos);
    if (Contains(line, needle)) return true;
    pos += 8;
  }
  return false;
}

FixResult Declined(RuleKind kind, std::string_view why) {
  return FixResult::Decline("rule " + std::string(RuleKindName(kind)) + ": " +
                            std::string(why));
}

FixResult Fixed(RuleKind kind, std::string code) {
  return FixResult::Candidate(std::move(code),
                              "rule " + std::string(RuleKindName(kind)));
}

// A ';' before token `index` only makes sense at statement level or in a
// for header that still lacks one of its two.
bool SemicolonFitsAt(const Locator& loc, std::size_t index) {
  const auto open = loc.InnermostOpen(index);
  if (!open) return true;
  if (loc.TokenText(*open) != "(" || *open == 0 || loc.TokenText(*open - 1) != "for") {
    return false;
  }
  // The whole header counts: a third ';' never fits.
  int depth = 0;
  int semicolons = 0;
  for (std::size_t i = *open + 1; i < loc.tokens().size() && depth >= 0; ++i) {
    const auto t = loc.TokenText(i);
    if (t == "(" || t == "[" || t == "{") ++depth;
    else if (t == ")" || t == "]" || t == "}") --depth;
    else if (t == ";" && depth == 0) ++semicolons;
  }
  return semicolons < 2;
}

FixResult ApplySemicolon(const FixRequest& req, const Locator& loc,
                         const std::string& message) {
  constexpr RuleKind kKind = RuleKind::kMissingSemicolon;
  const auto exp = ParseExpectation(message);
  if (!exp) return Declined(kKind, "not an expectation message");
  if (exp->where == Expectation::Where::kBefore) {
    const BeforeToken want = ParseBefore(exp->before);
    const auto index = loc.FindToken(*req.error, want);
    if (!index) return Declined(kKind, "diagnosed token not found");
    if (!SemicolonFitsAt(loc, *index)) {
      return Declined(kKind, "inside parentheses");
    }
    return Fixed(kKind, Insert(req.code, loc.EndOfPrevious(*index), ";"));
  }
  // "after ...", "at end of declaration": the location is where ';' goes,
  // possibly with whitespace in between.
  const BeforeToken any;
  const auto index = loc.FindToken(*req.error, any);
  if (!index && loc.tokenized()) {
    return Declined(kKind, "diagnosed location not found");
  }
  const std::size_t at = index ? loc.EndOfPrevious(*index) : req.code.size();
  if (at > 0 && req.code[at - 1] == ';') {
    return Declined(kKind, "semicolon already present");
  }
  return Fixed(kKind, Insert(req.code, at, ";"));
}

FixResult ApplyDelimiter(const FixRequest& req, const Locator& loc,
                         const std::string& message) {
  constexpr RuleKind kKind = RuleKind::kUnbalancedDelimiter;
  if (!loc.tokenized()) return Declined(kKind, "source does not tokenize");
  const auto balance = loc.Count();

  if (IsEndOfInputBrace(message)) {
    if (balance.brace <= 0) return Declined(kKind, "braces already balance");
    std::string code(req.code);
    if (!code.empty() && code.back() != '\n') code += "\n";
    for (int i = 0; i < balance.brace; ++i) code += "}\n";
    return Fixed(kKind, std::move(code));
  }

  if (IsStrayCloserMessage(message)) {
    const auto items = QuotedItems(message);
    const std::string closer = items.back();
    const int surplus = closer == ")" ? -balance.paren
                      : closer == "]" ? -balance.bracket
                                      : -balance.brace;
    if (surplus > 0) {
      BeforeToken want;
      want.kind = BeforeToken::Kind::kText;
      want.text = closer;
      const auto index = loc.FindToken(*req.error, want);
      if (!index) return Declined(kKind, "stray delimiter not found");
      return Fixed(kKind, Erase(req.code, loc.tokens()[*index].span));
    }
  }

  const auto exp = ParseExpectation(message);
  if (!exp || exp->where != Expectation::Where::kBefore) {
    return Declined(kKind, "no missing delimiter named");
  }
  std::string insert;
  for (const auto& item : exp->expected) {
    if (item == ")" || item == "]" || item == "(" || item == "}") {
      insert = item;
      break;
    }
  }
  if (insert.empty()) {
    // "expected primary-expression before '.' token" and similar, inside a
    // parenthesis or bracket that never closes: close it there.
    const BeforeToken want = ParseBefore(exp->before);
    const auto index = loc.FindToken(*req.error, want);
    if (!index) return Declined(kKind, "no missing delimiter named");
    const auto open = loc.InnermostOpen(*index);
    if (!open) return Declined(kKind, "no missing delimiter named");
    const auto opener = loc.TokenText(*open);
    if (opener == "(" && balance.paren > 0) {
      return Fixed(kKind, Insert(req.code, loc.EndOfPrevious(*index), ")"));
    }
    if (opener == "[" && balance.bracket > 0) {
      return Fixed(kKind, Insert(req.code, loc.EndOfPrevious(*index), "]"));
    }
    return Declined(kKind, "no missing delimiter named");
  }
  const int missing = insert == ")" ? balance.paren
                    : insert == "]" ? balance.bracket
                    : insert == "}" ? balance.brace
                                    : -balance.paren;
  if (missing <= 0) return Declined(kKind, "delimiters already balance");
  const BeforeToken want = ParseBefore(exp->before);
  const auto index = loc.FindToken(*req.error, want);
  if (!index) return Declined(kKind, "diagnosed token not found");
  const std::size_t at = insert == "(" ? loc.tokens()[*index].span.begin
                                       : loc.EndOfPrevious(*index);
  return Fixed(kKind, Insert(req.code, at, insert));
}

FixResult ApplyHeader(const FixRequest& req, const Locator& loc,
                      const std::string& message) {
  constexpr RuleKind kKind = RuleKind::kMissingHeader;
  const auto symbol = UndeclaredSymbol(message);
  if (!symbol) return Declined(kKind, "no symbol named");
  const HeaderEntry* entry = FindHeaderEntry(*symbol, req.lang);
  if (entry == nullptr) return Declined(kKind, "symbol not in the header table");
  const auto header =
      req.lang == LangLabel::kCpp ? entry->cpp_header : entry->c_header;
  if (!HasInclude(req.code, header)) {
    return Fixed(kKind, Insert(req.code, 0,
                               "#include <" + std::string(header) + ">\n"));
  }
  // Header present: an unqualified std name.
  if (req.lang == LangLabel::kCpp && entry->in_std && IsPlainUndeclared(message)) {
    BeforeToken want;
    want.kind = BeforeToken::Kind::kText;
    want.text = *symbol;
    const auto index = loc.FindToken(*req.error, want);
    if (!index) return Declined(kKind, "symbol not at the diagnosed location");
    if (*index > 0 && loc.TokenText(*index - 1) == "::") {
      return Declined(kKind, "symbol already qualified");
    }
    return Fixed(kKind, Insert(req.code, loc.tokens()[*index].span.begin, "std::"));
  }
  return Declined(kKind, "header already included");
}

FixResult ApplyUndeclared(const FixRequest& req, const Locator& loc,
                          const std::string& message) {
  constexpr RuleKind kKind = RuleKind::kUndeclaredIdentifier;
  if (!IsPlainUndeclared(message)) return Declined(kKind, "not an undeclared name");
  const auto symbol = UndeclaredSymbol(message);
  if (!symbol) return Declined(kKind, "no symbol named");
  if (!loc.tokenized()) return Declined(kKind, "source does not tokenize");
  BeforeToken want;
  want.kind = BeforeToken::Kind::kText;
  want.text = *symbol;
  const auto found = loc.FindToken(*req.error, want);
  if (!found) return Declined(kKind, "symbol not at the diagnosed location");
  const std::size_t i = *found;
  const auto next = loc.TokenText(i + 1);
  const auto prev = i > 0 ? loc.TokenText(i - 1) : std::string_view();
  if (next == "." || next == "->" || next == "::" || prev == "." ||
      prev == "->" || prev == "::") {
    return Declined(kKind, "member or scope access; type cannot be inferred");
  }

  std::string decl;
  if (prev == "case") {
    decl = "enum { " + *symbol + " };";
  } else if (next == "(") {
    decl = "int " + *symbol + (req.lang == LangLabel::kCpp ? "(...);" : "();");
  } else if (next == "[") {
    decl = "int " + *symbol + "[1024];";
  } else if (next == "=" && loc.tokens()[i + 2].kind == TokenKind::kString) {
    decl = "const char *" + *symbol + ";";
  } else if (next == "=" && loc.tokens()[i + 2].kind == TokenKind::kNumber &&
             loc.TokenText(i + 2).find('.') != std::string_view::npos) {
    decl = "double " + *symbol + ";";
  } else {
    decl = "int " + *symbol + ";";
  }

  // After the last preprocessor line that precedes the use; the top
  // otherwise.
  const auto use = loc.tokens()[i].span.begin;
  std::optional<std::size_t> after;
  for (const auto& t : loc.tokens()) {
    if (t.span.begin >= use) break;
    if (t.kind == TokenKind::kDirective) after = t.span.end;
  }
  if (after) return Fixed(kKind, Insert(req.code, *after, "\n" + decl));
  return Fixed(kKind, Insert(req.code, 0, decl + "\n"));
}

}  // namespace

std::string_view RuleKindName(RuleKind kind) {
  switch (kind) {
    case RuleKind::kMissingSemicolon:
      return "semicolon";
    case RuleKind::kMissingHeader:
      return "header";
    case RuleKind::kUndeclaredIdentifier:
      return "undeclared";
    case RuleKind::kUnbalancedDelimiter:
      return "delimiter";
  }
  return "semicolon";
}

std::optional<RuleKind> RuleKindFromName(std::string_view name) {
  for (RuleKind kind : kAllRuleKinds) {
    if (RuleKindName(kind) == name) return kind;
  }
  return std::nullopt;
}

std::optional<std::string_view> HeaderFor(std::string_view symbol,
                                          LangLabel lang) {
  const HeaderEntry* entry = FindHeaderEntry(symbol, lang);
  if (entry == nullptr) return std::nullopt;
  return lang == LangLabel::kCpp ? entry->cpp_header : entry->c_header;
}

namespace {

// Candidate rules for a message, most specific first.
std::vector<RuleKind> CandidateRules(const std::string& message, LangLabel lang) {
  std::vector<RuleKind> rules;
  if (IsEndOfInputBrace(message) || IsStrayCloserMessage(message)) {
    rules.push_back(RuleKind::kUnbalancedDelimiter);
  }
  if (auto symbol = UndeclaredSymbol(message)) {
    if (FindHeaderEntry(*symbol, lang) != nullptr) {
      rules.push_back(RuleKind::kMissingHeader);
    } else if (IsPlainUndeclared(message)) {
      rules.push_back(RuleKind::kUndeclaredIdentifier);
    }
  }
  if (auto exp = ParseExpectation(message)) {
    if (exp->where != Expectation::Where::kAtEndOfInput &&
        ExpectsAny(*exp, {";"})) {
      rules.push_back(RuleKind::kMissingSemicolon);
    }
    // Any "expected ... before" may sit inside a delimiter that never
    // closes. The semicolon rule declines inside parentheses and the
    // delimiter rule declines when everything balances.
    if (exp->where == Expectation::Where::kBefore &&
        std::find(rules.begin(), rules.end(), RuleKind::kUnbalancedDelimiter) ==
            rules.end()) {
      rules.push_back(RuleKind::kUnbalancedDelimiter);
    }
  }
  return rules;
}

}  // namespace

std::optional<RuleKind> RuleFixer::MatchRule(const Diagnostic& error,
                                             LangLabel lang) {
  const auto rules = CandidateRules(StripFlagSuffix(error.message), lang);
  if (rules.empty()) return std::nullopt;
  return rules.front();
}

FixResult RuleFixer::Fix(const FixRequest& request) {
  if (request.error == nullptr) return FixResult::Decline("no diagnostic");
  const std::string message = StripFlagSuffix(request.error->message);
  const auto rules = CandidateRules(message, request.lang);
  if (rules.empty()) return FixResult::Decline("no rule matches");
  const Locator loc(request.code, request.diagnosed_code, request.lang);
  FixResult last = FixResult::Decline("no rule enabled");
  for (RuleKind rule : rules) {
    if (!enabled_.count(rule)) continue;
    switch (rule) {
      case RuleKind::kMissingSemicolon:
        last = ApplySemicolon(request, loc, message);
        break;
      case RuleKind::kMissingHeader:
        last = ApplyHeader(request, loc, message);
        break;
      case RuleKind::kUndeclaredIdentifier:
        last = ApplyUndeclared(request, loc, message);
        break;
      case RuleKind::kUnbalancedDelimiter:
        last = ApplyDelimiter(request, loc, message);
        break;
    }
    if (last.status == FixStatus::kCandidate) return last;
  }
  return last;
}

FixResult OracleFixer::Fix(const FixRequest& request) {
  auto it = references_.find(std::string(request.snippet_id));
  if (it == references_.end()) return FixResult::Decline("no reference source");
  return FixResult::Candidate(it->second, "oracle reference");
}

FixResult ModelFixer::Fix(const FixRequest& request) {
  std::string reply;
  try {
    reply = backend_.Complete(std::string(request.prompt));
  } catch (const BackendError& e) {
    return FixResult::Failure(std::string(BackendErrorKindName(e.kind())) +
                              ": " + e.what());
  }
  try {
    return FixResult::Candidate(ExtractCandidate(reply), "model reply");
  } catch (const NoCodeFound& e) {
    return FixResult::Decline(e.what());
  }
}

}  // namespace codevet
