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

#include "codevet/syntax.h"

#include <algorithm>
#include <array>
#include <cctype>
#include <optional>
#include <set>
#include <unordered_set>

namespace codevet {

namespace {

// ---------------------------------------------------------------------------
// Lexing

const std::unordered_set<std::string_view>& CKeywords() {
  static const std::unordered_set<std::string_view> kWords = {
      "auto",          "break",         "case",         "char",
      "const",         "continue",      "default",      "do",
      "double",        "else",          "enum",         "extern",
      "float",         "for",           "goto",         "if",
      "inline",        "int",           "long",         "register",
      "restrict",      "return",        "short",        "signed",
      "sizeof",        "static",        "struct",       "switch",
      "typedef",       "union",         "unsigned",     "void",
      "volatile",      "while",         "_Bool",        "_Complex",
      "_Alignas",      "_Alignof",      "_Atomic",      "_Generic",
      "_Noreturn",     "_Static_assert", "_Thread_local", "__attribute__",
      "__inline",      "__inline__",    "__restrict",   "__restrict__",
      "__extension__", "__typeof__",    "typeof",       "asm",
      "__asm__",       "__volatile__",  "__const",      "__alignof__",
  };
  return kWords;
}

const std::unordered_set<std::string_view>& CppOnlyKeywords() {
  static const std::unordered_set<std::string_view> kWords = {
      "alignas",      "alignof",     "bool",         "catch",
      "char8_t",      "char16_t",    "char32_t",     "class",
      "const_cast",   "constexpr",   "consteval",    "constinit",
      "decltype",     "delete",      "dynamic_cast", "explicit",
      "export",       "false",       "friend",       "mutable",
      "namespace",    "new",         "noexcept",     "nullptr",
      "operator",     "private",     "protected",    "public",
      "reinterpret_cast", "static_assert", "static_cast", "template",
      "this",         "thread_local", "throw",       "true",
      "try",          "typeid",      "typename",     "using",
      "virtual",      "wchar_t",     "co_await",     "co_return",
      "co_yield",     "concept",     "requires",
  };
  return kWords;
}

bool IsKeyword(std::string_view word, LangLabel lang) {
  if (CKeywords().count(word)) return true;
  return lang == LangLabel::kCpp && CppOnlyKeywords().count(word);
}

bool IsIdentStart(unsigned char c) {
  return std::isalpha(c) || c == '_' || c == '$' || c >= 0x80;
}
bool IsIdentChar(unsigned char c) {
  return std::isalnum(c) || c == '_' || c == '$' || c >= 0x80;
}

constexpr std::array<std::string_view, 43> kPunctuators = {
    ">>=", "<<=", "<=>", "->*", "...", "->", "++", "--", "<<", ">>", "<=",
    ">=",  "==",  "!=",  "&&",  "||",  "+=", "-=", "*=", "/=", "%=", "&=",
    "|=",  "^=",  "::",  ".*",  "##",  "{",  "}",  "[",  "]",  "(",  ")",
    ";",   ":",   ",",   ".",   "?",   "~",  "!",  "+",  "-",  "*",
};
constexpr std::array<std::string_view, 8> kSingleExtra = {
    "/", "%", "<", ">", "=", "&", "|", "^"};

class Lexer {
 public:
  Lexer(std::string_view src, LangLabel lang) : src_(src), lang_(lang) {}

  std::vector<Token> Run() {
    std::vector<Token> tokens;
    bool line_start = true;
    while (true) {
      SkipSpaceAndComments(line_start);
      if (i_ >= src_.size()) break;
      const std::size_t start = i_;
      const auto c = static_cast<unsigned char>(src_[i_]);
      TokenKind kind = TokenKind::kPunct;
      if (c == '#' && line_start) {
        LexDirective();
        kind = TokenKind::kDirective;
      } else if (IsIdentStart(c)) {
        kind = LexIdentifierOrPrefixedLiteral();
      } else if (std::isdigit(c) ||
                 (c == '.' && i_ + 1 < src_.size() &&
                  std::isdigit(static_cast<unsigned char>(src_[i_ + 1])))) {
        LexNumber();
        kind = TokenKind::kNumber;
      } else if (c == '"') {
        LexQuoted('"');
        kind = TokenKind::kString;
      } else if (c == '\'') {
        LexQuoted('\'');
        kind = TokenKind::kChar;
      } else {
        LexPunct();
      }
      line_start = false;
      tokens.push_back({kind, {start, i_}});
    }
    tokens.push_back({TokenKind::kEnd, {src_.size(), src_.size()}});
    return tokens;
  }

 private:
  void SkipSpaceAndComments(bool& line_start) {
    while (i_ < src_.size()) {
      const char c = src_[i_];
      if (c == '\n') {
        line_start = true;
        ++i_;
      } else if (c == ' ' || c == '\t' || c == '\r' || c == '\f' ||
                 c == '\v') {
        ++i_;
      } else if (c == '\\' && i_ + 1 < src_.size() && src_[i_ + 1] == '\n') {
        i_ += 2;
      } else if (c == '/' && i_ + 1 < src_.size() && src_[i_ + 1] == '/') {
        while (i_ < src_.size() && src_[i_] != '\n') {
          if (src_[i_] == '\\' && i_ + 1 < src_.size() && src_[i_ + 1] == '\n')
            ++i_;
          ++i_;
        }
      } else if (c == '/' && i_ + 1 < src_.size() && src_[i_ + 1] == '*') {
        auto close = src_.find("*/", i_ + 2);
        if (close == std::string_view::npos) {
          throw ParseFailure("unterminated block comment", i_);
        }
        i_ = close + 2;
      } else {
        return;
      }
    }
  }

  void LexDirective() {
    while (i_ < src_.size() && src_[i_] != '\n') {
      if (src_[i_] == '\\' && i_ + 1 < src_.size() && src_[i_ + 1] == '\n') {
        i_ += 2;
        continue;
      }
      if (src_[i_] == '/' && i_ + 1 < src_.size() && src_[i_ + 1] == '*') {
        auto close = src_.find("*/", i_ + 2);
        if (close == std::string_view::npos) {
          throw ParseFailure("unterminated block comment", i_);
        }
        i_ = close + 2;
        continue;
      }
      ++i_;
    }
    // Trailing whitespace stays out of the token.
    while (i_ > 0 && (src_[i_ - 1] == ' ' || src_[i_ - 1] == '\t' ||
                      src_[i_ - 1] == '\r')) {
      --i_;
    }
  }

  TokenKind LexIdentifierOrPrefixedLiteral() {
    const std::size_t start = i_;
    while (i_ < src_.size() && IsIdentChar(static_cast<unsigned char>(src_[i_])))
      ++i_;
    const std::string_view word = src_.substr(start, i_ - start);
    if (i_ < src_.size() && (src_[i_] == '"' || src_[i_] == '\'')) {
      static const std::set<std::string_view> kPrefixes = {"L", "u", "U", "u8"};
      static const std::set<std::string_view> kRawPrefixes = {"R", "LR", "uR",
                                                              "UR", "u8R"};
      if (src_[i_] == '"' && lang_ == LangLabel::kCpp &&
          kRawPrefixes.count(word)) {
        LexRawString();
        return TokenKind::kString;
      }
      if (kPrefixes.count(word)) {
        const char quote = src_[i_];
        LexQuoted(quote);
        return quote == '"' ? TokenKind::kString : TokenKind::kChar;
      }
    }
    return IsKeyword(word, lang_) ? TokenKind::kKeyword : TokenKind::kIdentifier;
  }

  void LexRawString() {
    const std::size_t start = i_;
    ++i_;  // opening quote
    const std::size_t paren = src_.find('(', i_);
    if (paren == std::string_view::npos) {
      throw ParseFailure("malformed raw string literal", start);
    }
    const std::string close =
        ")" + std::string(src_.substr(i_, paren - i_)) + "\"";
    const std::size_t end = src_.find(close, paren + 1);
    if (end == std::string_view::npos) {
      throw ParseFailure("unterminated raw string literal", start);
    }
    i_ = end + close.size();
  }

  void LexNumber() {
    while (i_ < src_.size()) {
      const auto c = static_cast<unsigned char>(src_[i_]);
      if ((c == '+' || c == '-') && i_ > 0 &&
          (src_[i_ - 1] == 'e' || src_[i_ - 1] == 'E' || src_[i_ - 1] == 'p' ||
           src_[i_ - 1] == 'P')) {
        ++i_;
      } else if (std::isalnum(c) || c == '.' || c == '_') {
        ++i_;
      } else if (c == '\'' && lang_ == LangLabel::kCpp && i_ + 1 < src_.size() &&
                 std::isxdigit(static_cast<unsigned char>(src_[i_ + 1]))) {
        ++i_;
      } else {
        break;
      }
    }
  }

  void LexQuoted(char quote) {
    const std::size_t start = i_;
    ++i_;
    while (i_ < src_.size()) {
      const char c = src_[i_];
      if (c == '\\') {
        i_ += 2;
        continue;
      }
      if (c == '\n') break;
      ++i_;
      if (c == quote) return;
    }
    throw ParseFailure("unterminated literal", start);
  }

  void LexPunct() {
    const std::string_view rest = src_.substr(i_);
    for (auto p : kPunctuators) {
      if (rest.substr(0, p.size()) == p) {
        i_ += p.size();
        return;
      }
    }
    for (auto p : kSingleExtra) {
      if (rest.substr(0, 1) == p) {
        i_ += 1;
        return;
      }
    }
    // Anything else (stray '@', '`', '\\') becomes a one-byte token that the
    // parser will reject.
    i_ += 1;
  }

  std::string_view src_;
  LangLabel lang_;
  std::size_t i_ = 0;
};

// ---------------------------------------------------------------------------
// Parsing

const std::unordered_set<std::string_view>& BuiltinTypeNames() {
  static const std::unordered_set<std::string_view> kNames = {
      "size_t",    "ssize_t",   "ptrdiff_t", "intptr_t",  "uintptr_t",
      "int8_t",    "int16_t",   "int32_t",   "int64_t",   "uint8_t",
      "uint16_t",  "uint32_t",  "uint64_t",  "intmax_t",  "uintmax_t",
      "FILE",      "va_list",   "time_t",    "clock_t",   "off_t",
      "pid_t",     "bool",      "wchar_t",   "jmp_buf",   "sig_atomic_t",
      "fpos_t",    "div_t",     "ldiv_t",    "mode_t",    "pthread_t",
      "pthread_mutex_t", "socklen_t", "uint_fast8_t", "uint_fast32_t",
      "int_fast32_t", "__int128", "__builtin_va_list", "max_align_t",
  };
  return kNames;
}

const std::unordered_set<std::string_view>& StdTypeNames() {
  static const std::unordered_set<std::string_view> kNames = {
      "string",        "wstring",       "string_view",    "ostream",
      "istream",       "iostream",      "stringstream",   "ostringstream",
      "istringstream", "ifstream",      "ofstream",       "fstream",
      "exception",     "runtime_error", "logic_error",    "invalid_argument",
      "out_of_range",  "mutex",         "thread",         "size_type",
      "nullptr_t",     "byte",          "streamsize",     "iterator",
      "const_iterator",
  };
  return kNames;
}

const std::unordered_set<std::string_view>& StdTemplateNames() {
  static const std::unordered_set<std::string_view> kNames = {
      "vector",        "map",           "set",          "multimap",
      "multiset",      "unordered_map", "unordered_set", "pair",
      "tuple",         "array",         "list",         "deque",
      "queue",         "priority_queue", "stack",       "unique_ptr",
      "shared_ptr",    "weak_ptr",      "function",     "optional",
      "variant",       "basic_string",  "numeric_limits", "make_pair",
      "make_tuple",    "make_unique",   "make_shared",  "lock_guard",
      "unique_lock",   "initializer_list", "less",      "greater",
      "hash",          "get",           "is_same",      "enable_if",
      "remove_reference", "decay",      "iterator_traits", "static_pointer_cast",
      "atomic",        "reference_wrapper", "span",     "complex",
      "bitset",        "max",           "min",          "declval",
      "forward",       "any_cast",      "is_integral",  "conditional",
  };
  return kNames;
}

// A type-specifier keyword (as opposed to a qualifier or storage class).
bool IsTypeKeyword(std::string_view w) {
  static const std::unordered_set<std::string_view> kWords = {
      "void",   "char",     "short",    "int",      "long",    "float",
      "double", "signed",   "unsigned", "_Bool",    "_Complex", "bool",
      "wchar_t", "char8_t", "char16_t", "char32_t", "auto"};
  return kWords.count(w) > 0;
}

bool IsQualifierKeyword(std::string_view w) {
  static const std::unordered_set<std::string_view> kWords = {
      "const",      "volatile",     "restrict",     "__restrict",
      "__restrict__", "static",     "extern",       "register",
      "inline",     "__inline",     "__inline__",   "_Noreturn",
      "_Thread_local", "thread_local", "typedef",   "constexpr",
      "consteval",  "constinit",    "virtual",      "explicit",
      "friend",     "mutable",      "__extension__", "__const",
      "__volatile__", "_Atomic"};
  return kWords.count(w) > 0;
}

bool IsAssignmentOp(std::string_view op) {
  return op == "=" || op == "+=" || op == "-=" || op == "*=" || op == "/=" ||
         op == "%=" || op == "&=" || op == "|=" || op == "^=" ||
         op == "<<=" || op == ">>=";
}

// Binding strength of binary operators; -1 when not a binary operator.
int BinaryPrecedence(std::string_view op) {
  if (op == ".*" || op == "->*") return 11;
  if (op == "*" || op == "/" || op == "%") return 10;
  if (op == "+" || op == "-") return 9;
  if (op == "<<" || op == ">>") return 8;
  if (op == "<=>") return 7;
  if (op == "<" || op == "<=" || op == ">" || op == ">=") return 6;
  if (op == "==" || op == "!=") return 5;
  if (op == "&") return 4;
  if (op == "^") return 3;
  if (op == "|") return 2;
  if (op == "&&") return 1;
  if (op == "||") return 0;
  return -1;
}

enum class Context { kFile, kBlock, kClass, kParam, kTypeId, kCondition };

struct DeclSpecInfo {
  bool has_type = false;
  bool is_typedef = false;
  bool defines_type = false;  // a struct/union/enum/class body was parsed
  std::vector<std::string> defined_names;
};

struct DeclaratorInfo {
  std::string name;
  bool is_function = false;
  bool has_paren_initializer = false;
  int node = -1;
};

class Parser {
 public:
  Parser(std::string_view src, LangLabel lang)
      : src_(src), lang_(lang), tokens_(Lexer(src, lang).Run()) {
    SyntaxNode root;
    root.span = {0, src.size()};
    nodes_.push_back(std::move(root));
    open_.push_back(0);
  }

  bool cpp() const { return lang_ == LangLabel::kCpp; }

  void ParseTranslationUnit() {
    while (!AtEnd()) ParseExternalDeclaration(Context::kFile, "");
  }

  // Entry points used by ReparsesAs.
  bool ParseLoneInitializer() {
    if (Is("=")) {
      int node = Open(NodeKind::kInitializer);
      Advance();
      ParseInitializerClause();
      Close(node);
    } else if (Is("{")) {
      int node = Open(NodeKind::kInitializer);
      ParseBracedInitList();
      Close(node);
    } else if (Is("(")) {
      int node = Open(NodeKind::kInitializer);
      ParseCallArguments();
      Close(node);
    } else {
      return false;
    }
    return AtEnd();
  }

  bool ParseLoneTypeDefinition() {
    const std::size_t before = nodes_.size();
    ParseExternalDeclaration(Context::kFile, "");
    if (!AtEnd()) return false;
    int defs = 0;
    for (std::size_t i = before; i < nodes_.size(); ++i) {
      if (nodes_[i].parent == 0 && nodes_[i].kind == NodeKind::kTypeDefinition)
        ++defs;
      else if (nodes_[i].parent == 0)
        return false;
    }
    return defs == 1;
  }

  std::vector<Token> TakeTokens() { return std::move(tokens_); }
  std::vector<SyntaxNode> TakeNodes() { return std::move(nodes_); }

 private:
  // --- token access -------------------------------------------------------

  const Token& Peek(std::size_t ahead = 0) const {
    const std::size_t idx = std::min(pos_ + ahead, tokens_.size() - 1);
    return tokens_[idx];
  }
  const Token& TokAt(std::size_t idx) const {
    return tokens_[std::min(idx, tokens_.size() - 1)];
  }
  std::string_view Text(const Token& t) const {
    return src_.substr(t.span.begin, t.span.size());
  }
  std::string_view PeekText(std::size_t ahead = 0) const {
    return Text(Peek(ahead));
  }
  bool AtEnd() const { return Peek().kind == TokenKind::kEnd; }
  bool Is(std::string_view text, std::size_t ahead = 0) const {
    const Token& t = Peek(ahead);
    return t.kind != TokenKind::kEnd && t.kind != TokenKind::kString &&
           t.kind != TokenKind::kChar && Text(t) == text;
  }
  bool IsAt(std::size_t idx, std::string_view text) const {
    const Token& t = TokAt(idx);
    return (t.kind == TokenKind::kPunct || t.kind == TokenKind::kKeyword ||
            t.kind == TokenKind::kIdentifier) &&
           Text(t) == text;
  }
  bool IsIdent(std::size_t ahead = 0) const {
    return Peek(ahead).kind == TokenKind::kIdentifier;
  }

  [[noreturn]] void Fail(const std::string& what) const {
    const Token& t = Peek();
    std::string found =
        t.kind == TokenKind::kEnd ? "end of input" : "'" + std::string(Text(t)) + "'";
    throw ParseFailure(what + ", found " + found, t.span.begin);
  }

  const Token& Advance() {
    if (AtEnd()) Fail("unexpected end of input");
    const Token& t = tokens_[pos_];
    if (t.kind == TokenKind::kPunct) {
      const auto text = Text(t);
      if (text == "(" || text == ")") Leaf(NodeKind::kParenthesis, t, std::string(text));
    } else if (t.kind == TokenKind::kIdentifier) {
      Leaf(NodeKind::kIdentifier, t, std::string(Text(t)));
    }
    last_end_ = t.span.end;
    ++pos_;
    return tokens_[pos_ - 1];
  }

  void Expect(std::string_view text) {
    if (!Is(text)) Fail("expected '" + std::string(text) + "'");
    Advance();
  }

  // Splits a leading '>' off a '>>' or '>=' token so template argument lists
  // can close.
  void SplitGreater() {
    Token& t = tokens_[pos_];
    if (t.kind != TokenKind::kPunct) return;
    const auto text = Text(t);
    if (text.size() > 1 && text[0] == '>') {
      Token rest{TokenKind::kPunct, {t.span.begin + 1, t.span.end}};
      t.span.end = t.span.begin + 1;
      tokens_.insert(tokens_.begin() + static_cast<std::ptrdiff_t>(pos_) + 1, rest);
    }
  }

  void ExpectCloseAngle() {
    SplitGreater();
    Expect(">");
  }

  // Skips a balanced (...) / [...] / {...} group starting at the current
  // token.
  void SkipBalanced() {
    const std::string_view open = PeekText();
    std::string_view close = open == "(" ? ")" : open == "[" ? "]" : "}";
    int depth = 0;
    do {
      if (AtEnd()) Fail("unbalanced '" + std::string(open) + "'");
      if (Is(open)) ++depth;
      else if (Is(close)) --depth;
      Advance();
    } while (depth > 0);
  }

  // --- node building ------------------------------------------------------

  int Open(NodeKind kind) {
    SyntaxNode node;
    node.kind = kind;
    node.span.begin = Peek().span.begin;
    node.span.end = node.span.begin;
    node.parent = open_.back();
    nodes_.push_back(std::move(node));
    const int index = static_cast<int>(nodes_.size()) - 1;
    nodes_[node_parent(index)].children.push_back(index);
    open_.push_back(index);
    return index;
  }

  int node_parent(int index) const { return nodes_[index].parent; }

  void Close(int index) {
    nodes_[index].span.end = std::max(nodes_[index].span.begin, last_end_);
    // A reparented initializer widens its already closed declarator.
    for (int p = nodes_[index].parent; p >= 0; p = nodes_[p].parent) {
      if (nodes_[p].span.end >= nodes_[index].span.end) break;
      nodes_[p].span.end = nodes_[index].span.end;
    }
    while (!open_.empty() && open_.back() != index) open_.pop_back();
    if (!open_.empty()) open_.pop_back();
  }

  void Leaf(NodeKind kind, const Token& t, std::string name) {
    SyntaxNode node;
    node.kind = kind;
    node.span = t.span;
    node.name = std::move(name);
    node.parent = open_.back();
    nodes_.push_back(std::move(node));
    const int index = static_cast<int>(nodes_.size()) - 1;
    nodes_[nodes_[index].parent].children.push_back(index);
  }

  // --- name tables --------------------------------------------------------

  bool IsKnownType(std::string_view name) const {
    if (variables_.count(std::string(name))) return false;
    if (types_.count(std::string(name))) return true;
    if (BuiltinTypeNames().count(name)) return true;
    if (cpp() && (StdTypeNames().count(name) || StdTemplateNames().count(name)))
      return true;
    return false;
  }

  bool IsKnownTemplate(std::string_view name) const {
    if (!cpp()) return false;
    if (variables_.count(std::string(name))) return false;
    return templates_.count(std::string(name)) || StdTemplateNames().count(name);
  }

  void DeclareType(const std::string& name) {
    if (name.empty()) return;
    types_.insert(name);
    variables_.erase(name);
  }

  void DeclareVariable(const std::string& name) {
    if (name.empty()) return;
    if (!types_.count(name)) variables_.insert(name);
  }

  // --- lookahead helpers (no side effects) --------------------------------

  // Scans a template argument list starting at the '<' at idx. Returns the
  // index just past the closing '>' or nullopt.
  std::optional<std::size_t> ScanTemplateArgs(std::size_t idx) const {
    if (!IsAt(idx, "<")) return std::nullopt;
    int angle = 0;
    int paren = 0;
    for (std::size_t i = idx; i < tokens_.size() && i < idx + 256; ++i) {
      const Token& t = tokens_[i];
      if (t.kind == TokenKind::kEnd) return std::nullopt;
      if (t.kind != TokenKind::kPunct) continue;
      const auto text = Text(t);
      if (text == "(" || text == "[") ++paren;
      else if (text == ")" || text == "]") {
        if (--paren < 0) return std::nullopt;
      } else if (text == ";" || text == "{" || text == "}" ||
                 (paren == 0 && (text == "&&" || text == "||"))) {
        return std::nullopt;
      } else if (paren == 0 && text == "<") {
        ++angle;
      } else if (paren == 0 && (text == ">" || text == ">>")) {
        angle -= static_cast<int>(text.size());
        if (angle <= 0) {
          // A '>>' that closes two levels at once ends the inner list only
          // if it was the final close; either way the scan ends here.
          return i + 1;
        }
      }
    }
    return std::nullopt;
  }

  // Whether a '<' following `name` at idx opens a template argument list.
  bool TemplateArgsFollow(std::size_t idx, std::string_view name,
                          bool type_context) const {
    if (!cpp() || !IsAt(idx, "<")) return false;
    auto end = ScanTemplateArgs(idx);
    if (!end) return false;
    if (IsKnownTemplate(name)) return true;
    const Token& after = TokAt(*end);
    const auto text = Text(after);
    if (after.kind == TokenKind::kEnd) return false;
    if (text == "(" || text == "::" || text == "{") return true;
    if (!type_context) return false;
    return after.kind == TokenKind::kIdentifier || text == "*" ||
           text == "&" || text == "&&" || text == ")" || text == "," ||
           text == ">" || text == ";" || text == "..." || text == "[";
  }

  struct NameScan {
    std::size_t end = 0;  // index after the name
    std::string last;     // final component
    bool qualified = false;
    bool templated = false;
  };

  // Scans [::] id [<...>] (:: id [<...>])* starting at idx.
  std::optional<NameScan> ScanQualifiedName(std::size_t idx,
                                            bool type_context) const {
    NameScan scan;
    std::size_t i = idx;
    if (IsAt(i, "::")) {
      scan.qualified = true;
      ++i;
    }
    while (true) {
      if (IsAt(i, "template")) ++i;
      if (TokAt(i).kind != TokenKind::kIdentifier) return std::nullopt;
      scan.last = std::string(Text(TokAt(i)));
      ++i;
      if (TemplateArgsFollow(i, scan.last, type_context)) {
        i = *ScanTemplateArgs(i);
        scan.templated = true;
      }
      if (IsAt(i, "::") && (TokAt(i + 1).kind == TokenKind::kIdentifier ||
                            IsAt(i + 1, "template"))) {
        scan.qualified = true;
        ++i;
        continue;
      }
      break;
    }
    scan.end = i;
    return scan;
  }

  bool IsDeclKeyword(std::string_view w) const {
    return IsTypeKeyword(w) || IsQualifierKeyword(w) || w == "struct" ||
           w == "union" || w == "enum" || w == "class" || w == "typename" ||
           w == "__attribute__" || w == "alignas" || w == "_Alignas" ||
           w == "typeof" || w == "__typeof__" || w == "decltype" ||
           w == "static_assert" || w == "_Static_assert" || w == "using" ||
           w == "template";
  }

  // Decides whether the statement at the cursor is a declaration.
  bool IsDeclarationStart() const {
    const Token& t = Peek();
    if (t.kind == TokenKind::kKeyword) {
      const auto w = Text(t);
      if (w == "typedef" || w == "struct" || w == "union" || w == "enum" ||
          w == "class") {
        return true;
      }
      if (IsDeclKeyword(w)) {
        // int(x) / auto(x) in C++ expression position is vanishingly rare.
        return true;
      }
      return false;
    }
    if (Is("[") && Is("[", 1)) return true;  // [[attribute]]
    if (t.kind != TokenKind::kIdentifier && !Is("::")) return false;
    auto scan = ScanQualifiedName(pos_, true);
    if (!scan) return false;
    const Token& next = TokAt(scan->end);
    const auto next_text = Text(next);
    if (next.kind == TokenKind::kIdentifier) return true;
    if (next.kind == TokenKind::kKeyword &&
        (next_text == "const" || next_text == "volatile")) {
      return true;
    }
    const bool known = IsKnownType(scan->last) || scan->templated;
    if (known) {
      if (next_text == "*" || next_text == "&" || next_text == "&&") return true;
      if (next_text == "(") {
        return IsAt(scan->end + 1, "*") || IsAt(scan->end + 1, "&");
      }
      return false;
    }
    if ((next_text == "*" || next_text == "&") &&
        TokAt(scan->end + 1).kind == TokenKind::kIdentifier) {
      const auto after = Text(TokAt(scan->end + 2));
      return after == "=" || after == ";" || after == "," || after == "[" ||
             after == ")";
    }
    if (next_text == "*" && IsAt(scan->end + 1, "*")) return true;
    return false;
  }

  // Whether a type-id starts at idx (used for casts, sizeof and template
  // arguments).
  bool IsTypeIdAt(std::size_t idx) const {
    const Token& t = TokAt(idx);
    if (t.kind == TokenKind::kKeyword) {
      const auto w = Text(t);
      return IsTypeKeyword(w) || w == "const" || w == "volatile" ||
             w == "struct" || w == "union" || w == "enum" || w == "class" ||
             w == "typename" || w == "typeof" || w == "__typeof__" ||
             w == "decltype" || w == "_Atomic";
    }
    if (t.kind != TokenKind::kIdentifier && !IsAt(idx, "::")) return false;
    auto scan = ScanQualifiedName(idx, true);
    if (!scan) return false;
    if (IsKnownType(scan->last)) {
      // `T(args)` in an expression is a functional cast, not a type-id,
      // unless it is the whole parenthesized group.
      return true;
    }
    if (scan->templated) return true;
    return false;
  }

  // For C-style casts with an unknown type name: "(name)" or "(name *)"
  // followed by something that can start an operand.
  bool LooksLikeCastOfUnknown() const {
    if (!Is("(") || !IsIdent(1)) return false;
    if (IsAt(pos_ + 2, "*")) {
      std::size_t i = pos_ + 2;
      while (IsAt(i, "*")) ++i;
      return IsAt(i, ")");
    }
    if (!IsAt(pos_ + 2, ")")) return false;
    const Token& after = TokAt(pos_ + 3);
    return after.kind == TokenKind::kIdentifier ||
           after.kind == TokenKind::kNumber ||
           after.kind == TokenKind::kString || after.kind == TokenKind::kChar;
  }

  bool LooksLikeParameterList() const {
    // Cursor is on '('.
    if (!cpp()) return true;
    const Token& first = Peek(1);
    const auto w = Text(first);
    if (w == ")" || w == "..." ) return true;
    if (first.kind == TokenKind::kKeyword) {
      return IsDeclKeyword(w) && w != "sizeof";
    }
    if (first.kind != TokenKind::kIdentifier && w != "::") return false;
    auto scan = ScanQualifiedName(pos_ + 1, true);
    if (!scan) return false;
    const auto next = Text(TokAt(scan->end));
    if (TokAt(scan->end).kind == TokenKind::kIdentifier) return true;
    if (IsKnownType(scan->last) || scan->templated) {
      return next == "*" || next == "&" || next == "&&" || next == ")" ||
             next == "," || next == "::" || next == "...";
    }
    return false;
  }

  // --- declarations -------------------------------------------------------

  void ParseExternalDeclaration(Context ctx, const std::string& class_name) {
    const Token& t = Peek();
    if (t.kind == TokenKind::kDirective) {
      Leaf(NodeKind::kDirective, t, "");
      last_end_ = t.span.end;
      ++pos_;
      return;
    }
    if (Is(";")) {
      Advance();
      return;
    }
    if (cpp() && Is("namespace")) {
      ParseNamespace();
      return;
    }
    if (cpp() && Is("extern") && Peek(1).kind == TokenKind::kString) {
      Advance();
      Advance();
      if (Is("{")) {
        Advance();
        while (!Is("}")) {
          if (AtEnd()) Fail("expected '}'");
          ParseExternalDeclaration(Context::kFile, "");
        }
        Advance();
        return;
      }
    }
    if (cpp() && Is("template")) {
      ParseTemplateDeclaration(ctx, class_name);
      return;
    }
    if (cpp() && Is("using")) {
      ParseUsing();
      return;
    }
    if (Is("static_assert") || Is("_Static_assert")) {
      Advance();
      SkipBalanced();
      Expect(";");
      return;
    }
    ParseDeclaration(ctx, class_name);
  }

  void ParseNamespace() {
    int node = Open(NodeKind::kNamespace);
    Advance();  // namespace
    std::string name;
    while (IsIdent() || Is("::")) {
      if (IsIdent()) name = std::string(PeekText());
      Advance();
    }
    nodes_[node].name = name;
    if (Is("=")) {
      Advance();
      ParseQualifiedName(true);
      Expect(";");
      Close(node);
      return;
    }
    Expect("{");
    while (!Is("}")) {
      if (AtEnd()) Fail("expected '}' closing namespace");
      ParseExternalDeclaration(Context::kFile, "");
    }
    Advance();
    Close(node);
  }

  void ParseUsing() {
    const std::size_t start = pos_;
    // using X = type;
    if (IsIdent(1) && Is("=", 2)) {
      int node = Open(NodeKind::kTypeDefinition);
      Advance();
      const std::string name(PeekText());
      Advance();
      Advance();  // =
      ParseTypeId();
      Expect(";");
      nodes_[node].name = name;
      nodes_[node].defined_names.push_back(name);
      DeclareType(name);
      Close(node);
      return;
    }
    (void)start;
    int node = Open(NodeKind::kDeclaration);
    Advance();  // using
    if (Is("namespace")) Advance();
    if (Is("typename")) Advance();
    ParseQualifiedName(true);
    Expect(";");
    Close(node);
  }

  void ParseTemplateDeclaration(Context ctx, const std::string& class_name) {
    Advance();  // template
    if (!Is("<")) {
      // Explicit instantiation: template class Foo<int>;
      ParseDeclaration(ctx, class_name);
      return;
    }
    Advance();
    while (true) {
      SplitGreater();
      if (Is(">")) break;
      if (Is("typename") || Is("class")) {
        Advance();
        if (Is("...")) Advance();
        if (IsIdent()) {
          DeclareType(std::string(PeekText()));
          Advance();
        }
        if (Is("=")) {
          Advance();
          ParseTypeId();
        }
      } else if (Is("template")) {
        Advance();
        Expect("<");
        int depth = 1;
        while (depth > 0) {
          SplitGreater();
          if (Is("<")) ++depth;
          else if (Is(">")) --depth;
          Advance();
        }
        if (Is("class") || Is("typename")) Advance();
        if (IsIdent()) {
          DeclareType(std::string(PeekText()));
          templates_.insert(std::string(PeekText()));
          Advance();
        }
      } else {
        ParseDeclSpecifiers(Context::kParam, "");
        ParseDeclarator(Context::kParam, "", true);
        if (Is("=")) {
          Advance();
          ++template_arg_depth_;
          ParseConditional();
          --template_arg_depth_;
        }
      }
      SplitGreater();
      if (Is(",")) {
        Advance();
        continue;
      }
      break;
    }
    ExpectCloseAngle();
    pending_template_ = true;
    ParseExternalDeclaration(ctx, class_name);
  }

  // Parses one declaration (or function definition) including its
  // terminating ';' where one is required.
  void ParseDeclaration(Context ctx, const std::string& class_name) {
    const bool is_template = pending_template_;
    pending_template_ = false;
    int node = Open(NodeKind::kDeclaration);
    DeclSpecInfo spec = ParseDeclSpecifiers(ctx, class_name);
    if (is_template) {
      for (const auto& n : spec.defined_names) templates_.insert(n);
    }

    if (Is(";")) {
      Advance();
      FinishDeclaration(node, spec);
      return;
    }
    if (!spec.has_type && ctx == Context::kBlock) {
      Fail("expected a declaration");
    }

    bool first = true;
    while (true) {
      DeclaratorInfo decl = ParseDeclarator(ctx, class_name, false);
      if (is_template && decl.is_function) templates_.insert(decl.name);
      if (spec.is_typedef) {
        DeclareType(decl.name);
        spec.defined_names.push_back(decl.name);
      } else if (!decl.is_function) {
        DeclareVariable(decl.name);
      }

      if (first && decl.is_function && !spec.is_typedef) {
        if (Is("{") || Is("try") || (Is(":") && cpp())) {
          nodes_[node].kind = NodeKind::kFunctionDefinition;
          nodes_[node].name = decl.name;
          ParseFunctionBody();
          Close(node);
          return;
        }
        if (Is("=") && (Is("default", 1) || Is("delete", 1) ||
                        PeekText(1) == "0")) {
          Advance();
          Advance();
          Expect(";");
          FinishDeclaration(node, spec);
          return;
        }
      }
      first = false;

      if (ctx == Context::kClass && Is(":")) {  // bit-field
        Advance();
        ParseConditional();
      }
      if (!decl.has_paren_initializer) {
        if (Is("=")) {
          int init = Open(NodeKind::kInitializer);
          Reparent(init, decl.node);
          Advance();
          ParseInitializerClause();
          Close(init);
        } else if (Is("{") && cpp()) {
          int init = Open(NodeKind::kInitializer);
          Reparent(init, decl.node);
          ParseBracedInitList();
          Close(init);
        }
      }
      SkipAttributes();
      if (Is(",")) {
        Advance();
        continue;
      }
      Expect(";");
      break;
    }
    FinishDeclaration(node, spec);
  }

  void FinishDeclaration(int node, const DeclSpecInfo& spec) {
    if (spec.is_typedef || spec.defines_type) {
      nodes_[node].kind = NodeKind::kTypeDefinition;
      nodes_[node].defined_names = spec.defined_names;
      if (!spec.defined_names.empty()) nodes_[node].name = spec.defined_names.front();
    }
    Close(node);
  }

  // Moves a freshly opened node under `parent` (declarators own their
  // initializers even though the initializer is parsed after the
  // declarator closed).
  void Reparent(int child, int parent) {
    if (parent < 0) return;
    auto& old_siblings = nodes_[nodes_[child].parent].children;
    old_siblings.erase(std::remove(old_siblings.begin(), old_siblings.end(), child),
                       old_siblings.end());
    nodes_[child].parent = parent;
    nodes_[parent].children.push_back(child);
  }

  void SkipAttributes() {
    while (true) {
      if (Is("__attribute__")) {
        Advance();
        SkipBalanced();
      } else if (Is("asm") || Is("__asm__")) {
        Advance();
        SkipBalanced();
      } else if (Is("[") && Is("[", 1)) {
        SkipBalanced();
      } else if (Is("alignas") || Is("_Alignas")) {
        Advance();
        SkipBalanced();
      } else {
        return;
      }
    }
  }

  DeclSpecInfo ParseDeclSpecifiers(Context ctx, const std::string& class_name) {
    DeclSpecInfo info;
    while (true) {
      SkipAttributes();
      const Token& t = Peek();
      const auto w = Text(t);
      if (t.kind == TokenKind::kKeyword) {
        if (w == "typedef") {
          info.is_typedef = true;
          Advance();
          continue;
        }
        if (w == "_Atomic" && Is("(", 1)) {
          Advance();
          SkipBalanced();
          info.has_type = true;
          continue;
        }
        if (IsQualifierKeyword(w)) {
          Advance();
          continue;
        }
        if (IsTypeKeyword(w)) {
          info.has_type = true;
          Advance();
          continue;
        }
        if (w == "typeof" || w == "__typeof__" || w == "decltype") {
          Advance();
          SkipBalanced();
          info.has_type = true;
          continue;
        }
        if (w == "struct" || w == "union" || w == "enum" || w == "class") {
          ParseClassOrEnumSpecifier(info);
          info.has_type = true;
          continue;
        }
        if (w == "typename") {
          Advance();
          ParseQualifiedName(true);
          info.has_type = true;
          continue;
        }
        break;
      }
      if (info.has_type) break;
      if (t.kind != TokenKind::kIdentifier && !Is("::")) break;

      // Constructors and destructors inside a class body.
      if (ctx == Context::kClass && w == class_name && Is("(", 1)) break;
      // Out-of-line constructor definitions: A::A(...)
      if (ctx == Context::kFile && cpp()) {
        auto scan = ScanQualifiedName(pos_, true);
        if (scan && scan->qualified && IsAt(scan->end, "(")) {
          const std::size_t last_idx = scan->end - 1;
          const bool ctor = IsAt(last_idx - 1, "::") &&
                            IsAt(last_idx, std::string(Text(TokAt(last_idx - 2))));
          const bool dtor = IsAt(last_idx - 1, "~");
          if (ctor || dtor) break;
        }
        if (scan && IsAt(scan->end, "::") && IsAt(scan->end + 1, "~")) break;
      }

      auto scan = ScanQualifiedName(pos_, true);
      if (!scan) break;
      const auto next = TokAt(scan->end);
      const auto next_text = Text(next);
      bool treat_as_type = false;
      if (IsKnownType(scan->last) || scan->templated) {
        treat_as_type = true;
      } else if (next.kind == TokenKind::kIdentifier ||
                 (next.kind == TokenKind::kKeyword &&
                  (next_text == "const" || next_text == "volatile" ||
                   next_text == "operator"))) {
        treat_as_type = true;
      } else if ((next_text == "*" || next_text == "&" || next_text == "&&") &&
                 ctx != Context::kBlock) {
        treat_as_type = true;
      } else if (ctx == Context::kParam || ctx == Context::kTypeId) {
        treat_as_type = next_text == ")" || next_text == "," ||
                        next_text == "[" || next_text == ">" ||
                        next_text == "*" || next_text == "&" ||
                        next_text == "...";
      }
      if (!treat_as_type) break;
      ParseQualifiedName(true);
      info.has_type = true;
    }
    return info;
  }

  void ParseClassOrEnumSpecifier(DeclSpecInfo& info) {
    const bool is_enum = Is("enum");
    const bool is_class = Is("class") || Is("struct");
    Advance();
    if (is_enum && (Is("class") || Is("struct"))) Advance();
    SkipAttributes();
    std::string name;
    if (IsIdent() || Is("::")) {
      auto scan = ScanQualifiedName(pos_, true);
      name = scan ? scan->last : std::string(PeekText());
      ParseQualifiedName(true);
    }
    if (Is("final")) Advance();
    if (is_enum && Is(":")) {
      Advance();
      ParseTypeId();
    }
    if (!is_enum && Is(":") && cpp()) {
      Advance();
      while (true) {
        while (Is("public") || Is("private") || Is("protected") ||
               Is("virtual")) {
          Advance();
        }
        ParseQualifiedName(true);
        if (Is("...")) Advance();
        if (!Is(",")) break;
        Advance();
      }
    }
    if (cpp() && !name.empty()) DeclareType(name);
    if (!Is("{")) {
      if (!name.empty()) tags_.insert(name);
      return;
    }
    info.defines_type = true;
    if (!name.empty()) {
      info.defined_names.push_back(name);
      tags_.insert(name);
    }
    Advance();  // {
    if (is_enum) {
      while (!Is("}")) {
        if (!IsIdent()) Fail("expected enumerator");
        info.defined_names.push_back(std::string(PeekText()));
        DeclareVariable(std::string(PeekText()));
        Advance();
        SkipAttributes();
        if (Is("=")) {
          Advance();
          ParseConditional();
        }
        if (Is(",")) {
          Advance();
          continue;
        }
        if (!Is("}")) Fail("expected ',' or '}' in enum");
      }
      Advance();
      return;
    }
    (void)is_class;
    while (!Is("}")) {
      if (AtEnd()) Fail("expected '}' closing class body");
      if ((Is("public") || Is("private") || Is("protected")) && Is(":", 1)) {
        Advance();
        Advance();
        continue;
      }
      if (Is("friend") || Is("typedef") || Is("using") || Is("template") ||
          Is("static_assert") || Is(";") || Peek().kind == TokenKind::kDirective) {
        if (Is("friend") && (Is("class", 1) || Is("struct", 1)) && Is(";", 3)) {
          Advance();
          Advance();
          Advance();
          Advance();
          continue;
        }
        ParseExternalDeclaration(Context::kClass, name);
        continue;
      }
      ParseDeclaration(Context::kClass, name);
    }
    Advance();  // }
  }

  // Returns the name parsed (last component).
  std::string ParseQualifiedName(bool type_context) {
    std::string last;
    if (Is("::")) Advance();
    while (true) {
      if (Is("template")) Advance();
      if (Is("~")) Advance();
      if (cpp() && Is("operator")) {
        last = "operator";
        ParseOperatorName();
        return last;
      }
      if (!IsIdent()) Fail("expected identifier");
      last = std::string(PeekText());
      Advance();
      if (TemplateArgsFollow(pos_, last, type_context)) {
        ParseTemplateArgs();
      }
      if (Is("::") && (IsIdent(1) || Is("template", 1) || Is("~", 1) ||
                       Is("operator", 1))) {
        Advance();
        continue;
      }
      return last;
    }
  }

  void ParseOperatorName() {
    Advance();  // operator
    if (Is("(") && Is(")", 1)) {
      Advance();
      Advance();
      return;
    }
    if (Is("[") && Is("]", 1)) {
      Advance();
      Advance();
      return;
    }
    if (Is("new") || Is("delete")) {
      Advance();
      if (Is("[") && Is("]", 1)) {
        Advance();
        Advance();
      }
      return;
    }
    if (Peek().kind == TokenKind::kPunct) {
      Advance();
      return;
    }
    if (Peek().kind == TokenKind::kString) {  // operator "" _suffix
      Advance();
      if (IsIdent()) Advance();
      return;
    }
    // Conversion operator: operator T*()
    ParseDeclSpecifiers(Context::kTypeId, "");
    while (Is("*") || Is("&") || Is("&&")) Advance();
  }

  void ParseTemplateArgs() {
    Expect("<");
    ++template_arg_depth_;
    SplitGreater();
    while (!Is(">")) {
      if (IsTypeIdAt(pos_) && !LooksLikeExpressionArg()) {
        ParseTypeId();
      } else {
        ParseConditional();
      }
      if (Is("...")) Advance();
      SplitGreater();
      if (Is(",")) {
        Advance();
        continue;
      }
      break;
    }
    --template_arg_depth_;
    ExpectCloseAngle();
  }

  // `N + 1` or `sizeof(T)` inside template arguments.
  bool LooksLikeExpressionArg() const {
    if (Peek().kind != TokenKind::kIdentifier) return false;
    auto scan = ScanQualifiedName(pos_, true);
    if (!scan) return false;
    const auto next = Text(TokAt(scan->end));
    return IsKnownType(scan->last) == false && !scan->templated &&
           next != "*" && next != "&";
  }

  void ParseTypeId() {
    DeclSpecInfo spec = ParseDeclSpecifiers(Context::kTypeId, "");
    if (!spec.has_type) Fail("expected a type");
    ParseDeclarator(Context::kTypeId, "", true);
  }

  DeclaratorInfo ParseDeclarator(Context ctx, const std::string& class_name,
                                 bool allow_abstract) {
    DeclaratorInfo info;
    info.node = Open(NodeKind::kDeclarator);
    SkipAttributes();
    while (true) {
      if (Is("*") || Is("&") || Is("&&") || Is("^")) {
        Advance();
        while (Is("const") || Is("volatile") || Is("restrict") ||
               Is("__restrict") || Is("__restrict__") || Is("_Atomic")) {
          Advance();
        }
        SkipAttributes();
        continue;
      }
      // Pointer to member: C::*
      if (cpp() && IsIdent() && Is("::", 1) && Is("*", 2)) {
        Advance();
        Advance();
        Advance();
        continue;
      }
      break;
    }

    if (Is("(") && (Is("*", 1) || Is("&", 1) || Is("^", 1) ||
                    (IsIdent(1) && Is(")", 2) && ctx != Context::kParam) ||
                    (Is("(", 1)))) {
      Advance();
      DeclaratorInfo inner = ParseDeclarator(ctx, class_name, allow_abstract);
      info.name = inner.name;
      Expect(")");
    } else if (IsIdent() || Is("::") || Is("~") || (cpp() && Is("operator"))) {
      if (Is("~")) {
        Advance();
        info.name = "~" + std::string(PeekText());
        if (!IsIdent()) Fail("expected destructor name");
        Advance();
      } else {
        info.name = ParseDeclaratorName();
      }
    } else if (!allow_abstract) {
      Fail("expected a declarator");
    }
    if (Is("...")) Advance();

    while (true) {
      SkipAttributes();
      if (Is("[")) {
        Advance();
        if (Is("[")) Fail("unexpected '['");
        if (!Is("]")) {
          while (Is("static") || Is("const") || Is("restrict")) Advance();
          if (!Is("]")) ParseAssignment();
        }
        Expect("]");
        continue;
      }
      if (Is("(")) {
        if (ctx != Context::kParam && ctx != Context::kTypeId &&
            !info.is_function && !LooksLikeParameterList()) {
          int init = Open(NodeKind::kInitializer);
          ParseCallArguments();
          Close(init);
          info.has_paren_initializer = true;
          break;
        }
        ParseParameterList();
        info.is_function = true;
        ParseFunctionQualifiers();
        continue;
      }
      break;
    }
    nodes_[info.node].name = info.name;
    Close(info.node);
    return info;
  }

  std::string ParseDeclaratorName() {
    std::string full;
    if (Is("::")) Advance();
    while (true) {
      if (Is("~")) {
        Advance();
        if (!IsIdent()) Fail("expected destructor name");
        full = "~" + std::string(PeekText());
        Advance();
        return full;
      }
      if (cpp() && Is("operator")) {
        ParseOperatorName();
        return "operator";
      }
      if (!IsIdent()) Fail("expected identifier");
      full = std::string(PeekText());
      Advance();
      if (TemplateArgsFollow(pos_, full, true) && Is("::", 0) == false) {
        // Explicit specialisation or out-of-line member of a template.
        auto end = ScanTemplateArgs(pos_);
        if (end && IsAt(*end, "::")) ParseTemplateArgs();
      }
      if (Is("::") && (IsIdent(1) || Is("~", 1) || Is("operator", 1))) {
        Advance();
        continue;
      }
      return full;
    }
  }

  void ParseFunctionQualifiers() {
    while (true) {
      if (Is("const") || Is("volatile") || Is("&") || Is("&&") ||
          Is("override") || Is("final")) {
        Advance();
        continue;
      }
      if (Is("noexcept") || Is("throw")) {
        Advance();
        if (Is("(")) SkipBalanced();
        continue;
      }
      if (Is("->")) {
        Advance();
        ParseTypeId();
        continue;
      }
      if (Is("__attribute__")) {
        SkipAttributes();
        continue;
      }
      return;
    }
  }

  void ParseParameterList() {
    Expect("(");
    if (Is(")")) {
      Advance();
      return;
    }
    while (true) {
      if (Is("...")) {
        Advance();
      } else {
        DeclSpecInfo spec = ParseDeclSpecifiers(Context::kParam, "");
        if (!spec.has_type) {
          // K&R identifier lists are outside the subset.
          Fail("expected a parameter type");
        }
        ParseDeclarator(Context::kParam, "", true);
        if (Is("=")) {  // default argument
          Advance();
          ParseInitializerClause();
        }
      }
      if (Is(",")) {
        Advance();
        continue;
      }
      break;
    }
    Expect(")");
  }

  void ParseFunctionBody() {
    if (Is("try")) {
      Advance();
      ParseFunctionBody();
      ParseCatchClauses();
      return;
    }
    if (Is(":")) {  // constructor initializer list
      Advance();
      while (true) {
        ParseQualifiedName(false);
        if (Is("(")) {
          ParseCallArguments();
        } else if (Is("{")) {
          ParseBracedInitList();
        } else {
          Fail("expected member initializer");
        }
        if (Is("...")) Advance();
        if (!Is(",")) break;
        Advance();
      }
    }
    ParseCompound();
  }

  void ParseCatchClauses() {
    while (Is("catch")) {
      Advance();
      Expect("(");
      if (Is("...")) {
        Advance();
      } else {
        ParseDeclSpecifiers(Context::kParam, "");
        ParseDeclarator(Context::kParam, "", true);
      }
      Expect(")");
      ParseCompound();
    }
  }

  // --- statements ---------------------------------------------------------

  void ParseCompound() {
    int node = Open(NodeKind::kCompoundStatement);
    Expect("{");
    while (!Is("}")) {
      if (AtEnd()) Fail("expected '}'");
      ParseStatement();
    }
    Advance();
    Close(node);
  }

  void ParseParenCondition() {
    Expect("(");
    if (cpp() && IsDeclarationStart() && !Is("(")) {
      ParseDeclSpecifiers(Context::kCondition, "");
      DeclaratorInfo decl = ParseDeclarator(Context::kCondition, "", false);
      DeclareVariable(decl.name);
      if (Is("=")) {
        int init = Open(NodeKind::kInitializer);
        Reparent(init, decl.node);
        Advance();
        ParseInitializerClause();
        Close(init);
      } else if (Is("{")) {
        ParseBracedInitList();
      }
      if (Is(";")) {  // C++17 if (init; cond)
        Advance();
        ParseExpressionNode();
      }
    } else {
      ParseExpressionNode();
    }
    Expect(")");
  }

  void ParseStatement() {
    const Token& t = Peek();
    if (t.kind == TokenKind::kDirective) {
      Leaf(NodeKind::kDirective, t, "");
      last_end_ = t.span.end;
      ++pos_;
      return;
    }
    if (Is("{")) {
      ParseCompound();
      return;
    }
    if (Is(";")) {
      Advance();
      return;
    }
    const auto w = Text(t);
    if (t.kind == TokenKind::kKeyword) {
      if (w == "if") {
        int node = Open(NodeKind::kStatement);
        Advance();
        if (Is("constexpr")) Advance();
        ParseParenCondition();
        ParseStatement();
        if (Is("else")) {
          Advance();
          ParseStatement();
        }
        Close(node);
        return;
      }
      if (w == "while" || w == "switch") {
        int node = Open(NodeKind::kStatement);
        Advance();
        ParseParenCondition();
        ParseStatement();
        Close(node);
        return;
      }
      if (w == "do") {
        int node = Open(NodeKind::kStatement);
        Advance();
        ParseStatement();
        Expect("while");
        Expect("(");
        ParseExpressionNode();
        Expect(")");
        Expect(";");
        Close(node);
        return;
      }
      if (w == "for") {
        ParseFor();
        return;
      }
      if (w == "return" || w == "co_return") {
        int node = Open(NodeKind::kStatement);
        Advance();
        if (!Is(";")) {
          if (Is("{")) {
            ParseBracedInitList();
          } else {
            ParseExpressionNode();
          }
        }
        Expect(";");
        Close(node);
        return;
      }
      if (w == "break" || w == "continue") {
        Advance();
        Expect(";");
        return;
      }
      if (w == "goto") {
        Advance();
        if (Is("*")) {
          Advance();
          ParseExpressionNode();
        } else {
          Advance();
        }
        Expect(";");
        return;
      }
      if (w == "case") {
        int node = Open(NodeKind::kStatement);
        Advance();
        ParseConditional();
        if (Is("...")) {
          Advance();
          ParseConditional();
        }
        Expect(":");
        Close(node);
        return;
      }
      if (w == "default") {
        Advance();
        Expect(":");
        return;
      }
      if (w == "try") {
        Advance();
        ParseCompound();
        ParseCatchClauses();
        return;
      }
      if (w == "asm" || w == "__asm__") {
        Advance();
        while (Is("volatile") || Is("__volatile__") || Is("goto")) Advance();
        SkipBalanced();
        Expect(";");
        return;
      }
      if (w == "using" || w == "static_assert" || w == "_Static_assert" ||
          w == "template" || w == "namespace") {
        ParseExternalDeclaration(Context::kBlock, "");
        return;
      }
    }
    // label:
    if (t.kind == TokenKind::kIdentifier && Is(":", 1)) {
      Advance();
      Advance();
      return;
    }
    if (IsDeclarationStart()) {
      ParseDeclaration(Context::kBlock, "");
      return;
    }
    int node = Open(NodeKind::kStatement);
    ParseExpressionNode();
    Expect(";");
    Close(node);
  }

  void ParseFor() {
    int node = Open(NodeKind::kStatement);
    Advance();  // for
    Expect("(");
    if (Is(";")) {
      Advance();
    } else if (IsDeclarationStart()) {
      int decl_node = Open(NodeKind::kDeclaration);
      DeclSpecInfo spec = ParseDeclSpecifiers(Context::kBlock, "");
      (void)spec;
      bool range_for = false;
      while (true) {
        DeclaratorInfo decl = ParseDeclarator(Context::kBlock, "", false);
        DeclareVariable(decl.name);
        if (Is(":")) {
          range_for = true;
          break;
        }
        if (!decl.has_paren_initializer) {
          if (Is("=")) {
            int init = Open(NodeKind::kInitializer);
            Reparent(init, decl.node);
            Advance();
            ParseInitializerClause();
            Close(init);
          } else if (Is("{") && cpp()) {
            int init = Open(NodeKind::kInitializer);
            Reparent(init, decl.node);
            ParseBracedInitList();
            Close(init);
          }
        }
        if (Is(",")) {
          Advance();
          continue;
        }
        break;
      }
      Close(decl_node);
      if (range_for) {
        Advance();  // :
        if (Is("{")) {
          ParseBracedInitList();
        } else {
          ParseExpressionNode();
        }
        Expect(")");
        ParseStatement();
        Close(node);
        return;
      }
      Expect(";");
    } else {
      ParseExpressionNode();
      Expect(";");
    }
    if (!Is(";")) ParseExpressionNode();
    Expect(";");
    if (!Is(")")) ParseExpressionNode();
    Expect(")");
    ParseStatement();
    Close(node);
  }

  // --- expressions --------------------------------------------------------

  void ParseExpressionNode() {
    int node = Open(NodeKind::kExpression);
    ParseExpression();
    Close(node);
  }

  void ParseExpression() {
    ParseAssignment();
    while (Is(",") && template_arg_depth_ == 0) {
      Advance();
      ParseAssignment();
    }
  }

  void RecordOperator() {
    const Token& t = Peek();
    Leaf(NodeKind::kBinaryOperator, t, std::string(Text(t)));
  }

  void ParseAssignment() {
    if (Is("throw")) {
      Advance();
      if (!Is(";") && !Is(")") && !Is(",") && !Is(":")) ParseAssignment();
      return;
    }
    ParseConditional();
    if (Peek().kind == TokenKind::kPunct && IsAssignmentOp(PeekText())) {
      if (template_arg_depth_ > 0 && PeekText() == ">>=") return;
      RecordOperator();
      Advance();
      if (Is("{") && cpp()) {
        ParseBracedInitList();
      } else {
        ParseAssignment();
      }
    }
  }

  void ParseConditional() {
    ParseBinary(0);
    if (Is("?")) {
      Advance();
      if (!Is(":")) {
        const int saved = template_arg_depth_;
        template_arg_depth_ = 0;
        ParseExpression();
        template_arg_depth_ = saved;
      }
      Expect(":");
      ParseAssignment();
    }
  }

  void ParseBinary(int min_prec) {
    ParseCast();
    while (Peek().kind == TokenKind::kPunct) {
      const auto op = PeekText();
      const int prec = BinaryPrecedence(op);
      if (prec < min_prec || prec < 0) return;
      if (template_arg_depth_ > 0 && (op == ">" || op == ">>")) return;
      RecordOperator();
      Advance();
      ParseBinary(prec + 1);
    }
  }

  void ParseCast() {
    if (Is("(") && !Is("{", 1)) {
      const bool known_type = IsTypeIdAt(pos_ + 1);
      if (known_type || LooksLikeCastOfUnknown()) {
        // A known type followed by '(' or '{' may be a functional cast
        // inside parentheses, e.g. (T(x)) -- check that the type-id ends at
        // the closing parenthesis.
        const std::size_t saved_pos = pos_;
        const std::size_t saved_nodes = nodes_.size();
        const std::size_t saved_end = last_end_;
        const auto saved_open = open_;
        const auto saved_tokens = tokens_.size();
        bool is_cast = false;
        try {
          Advance();
          ParseTypeId();
          is_cast = Is(")");
        } catch (const ParseFailure&) {
          is_cast = false;
        }
        if (is_cast) {
          Advance();  // )
          if (Is("{")) {
            ParseBracedInitList();
            ParsePostfixTail();
          } else {
            ParseCast();
          }
          return;
        }
        Rewind(saved_pos, saved_nodes, saved_end, saved_open, saved_tokens);
      }
    }
    ParseUnary();
  }

  void Rewind(std::size_t pos, std::size_t node_count, std::size_t end,
              const std::vector<int>& open, std::size_t token_count) {
    (void)token_count;
    pos_ = pos;
    last_end_ = end;
    // Drop nodes created since the checkpoint and detach them from parents.
    for (std::size_t i = node_count; i < nodes_.size(); ++i) {
      const int parent = nodes_[i].parent;
      if (parent >= 0 && static_cast<std::size_t>(parent) < node_count) {
        auto& siblings = nodes_[parent].children;
        siblings.erase(std::remove(siblings.begin(), siblings.end(),
                                   static_cast<int>(i)),
                       siblings.end());
      }
    }
    nodes_.resize(node_count);
    open_ = open;
  }

  void ParseUnary() {
    const auto w = PeekText();
    const Token& t = Peek();
    if (t.kind == TokenKind::kPunct &&
        (w == "++" || w == "--" || w == "+" || w == "-" || w == "!" ||
         w == "~" || w == "*" || w == "&" || w == "&&")) {
      Advance();
      ParseCast();
      return;
    }
    if (t.kind == TokenKind::kKeyword) {
      if (w == "sizeof" || w == "alignof" || w == "_Alignof" ||
          w == "__alignof__") {
        Advance();
        if (Is("...")) {
          Advance();
          SkipBalanced();
          return;
        }
        if (Is("(") && IsTypeIdAt(pos_ + 1)) {
          const std::size_t saved_pos = pos_;
          const std::size_t saved_nodes = nodes_.size();
          const std::size_t saved_end = last_end_;
          const auto saved_open = open_;
          try {
            Advance();
            ParseTypeId();
            if (Is(")")) {
              Advance();
              return;
            }
          } catch (const ParseFailure&) {
          }
          Rewind(saved_pos, saved_nodes, saved_end, saved_open, 0);
        }
        ParseUnary();
        return;
      }
      if (w == "new") {
        ParseNew();
        return;
      }
      if (w == "delete") {
        Advance();
        if (Is("[")) {
          Advance();
          Expect("]");
        }
        ParseCast();
        return;
      }
      if (w == "__extension__" || w == "co_await") {
        Advance();
        ParseCast();
        return;
      }
    }
    if (Is("::") && (Is("new", 1) || Is("delete", 1))) {
      Advance();
      ParseUnary();
      return;
    }
    ParsePostfix();
  }

  void ParseNew() {
    Advance();  // new
    if (Is("(")) {
      // Placement arguments or a parenthesized type.
      if (IsTypeIdAt(pos_ + 1)) {
        Advance();
        ParseTypeId();
        Expect(")");
      } else {
        ParseCallArguments();
        if (Is("(")) {
          Advance();
          ParseTypeId();
          Expect(")");
        } else {
          ParseNewTypeId();
        }
      }
    } else {
      ParseNewTypeId();
    }
    if (Is("(")) {
      ParseCallArguments();
    } else if (Is("{")) {
      ParseBracedInitList();
    }
  }

  void ParseNewTypeId() {
    DeclSpecInfo spec = ParseDeclSpecifiers(Context::kTypeId, "");
    if (!spec.has_type) Fail("expected a type after 'new'");
    while (Is("*") || Is("&")) Advance();
    while (Is("[")) {
      Advance();
      ParseExpression();
      Expect("]");
    }
  }

  void ParseCallArguments() {
    Expect("(");
    const int saved = template_arg_depth_;
    template_arg_depth_ = 0;
    while (!Is(")")) {
      if (Is("{")) {
        ParseBracedInitList();
      } else {
        ParseAssignment();
      }
      if (Is("...")) Advance();
      if (Is(",")) {
        Advance();
        continue;
      }
      break;
    }
    template_arg_depth_ = saved;
    Expect(")");
  }

  void ParsePostfix() {
    ParsePrimary();
    ParsePostfixTail();
  }

  void ParsePostfixTail() {
    while (true) {
      if (Is("[")) {
        Advance();
        const int saved = template_arg_depth_;
        template_arg_depth_ = 0;
        if (Is("{")) {
          ParseBracedInitList();
        } else {
          ParseExpression();
        }
        template_arg_depth_ = saved;
        Expect("]");
      } else if (Is("(")) {
        ParseCallArguments();
      } else if (Is(".") || Is("->")) {
        Advance();
        if (Is("template")) Advance();
        if (Is("~")) Advance();
        if (cpp() && Is("operator")) {
          ParseOperatorName();
          continue;
        }
        if (!IsIdent()) Fail("expected member name");
        const std::string member(PeekText());
        Advance();
        if (TemplateArgsFollow(pos_, member, false)) ParseTemplateArgs();
      } else if (Is("++") || Is("--")) {
        Advance();
      } else {
        return;
      }
    }
  }

  void ParsePrimary() {
    const Token& t = Peek();
    const auto w = Text(t);
    switch (t.kind) {
      case TokenKind::kNumber:
      case TokenKind::kChar:
        Advance();
        return;
      case TokenKind::kString:
        Advance();
        // Adjacent literals, including format macros such as PRIu64.
        while (Peek().kind == TokenKind::kString ||
               (IsIdent() && Peek(1).kind == TokenKind::kString &&
                IsMacroLike(PeekText()))) {
          Advance();
        }
        return;
      case TokenKind::kEnd:
        Fail("expected an expression");
      case TokenKind::kDirective:
        Fail("unexpected preprocessor line inside an expression");
      default:
        break;
    }
    if (w == "(") {
      if (Is("{", 1)) {  // GNU statement expression
        Advance();
        ParseCompound();
        Expect(")");
        return;
      }
      Advance();
      const int saved = template_arg_depth_;
      template_arg_depth_ = 0;
      ParseExpression();
      template_arg_depth_ = saved;
      Expect(")");
      return;
    }
    if (w == "[" && cpp()) {
      ParseLambda();
      return;
    }
    if (w == "{" && cpp()) {
      ParseBracedInitList();
      return;
    }
    if (t.kind == TokenKind::kKeyword) {
      if (w == "this" || w == "true" || w == "false" || w == "nullptr") {
        Advance();
        return;
      }
      if (w == "static_cast" || w == "dynamic_cast" || w == "const_cast" ||
          w == "reinterpret_cast") {
        Advance();
        Expect("<");
        ++template_arg_depth_;
        ParseTypeId();
        --template_arg_depth_;
        ExpectCloseAngle();
        Expect("(");
        ParseExpression();
        Expect(")");
        return;
      }
      if (w == "typeid" || w == "_Generic" || w == "decltype" ||
          w == "noexcept" || w == "__builtin_offsetof") {
        Advance();
        SkipBalanced();
        return;
      }
      if (IsTypeKeyword(w)) {
        // Functional cast: int(x), double{y}
        while (Peek().kind == TokenKind::kKeyword && IsTypeKeyword(PeekText()))
          Advance();
        if (Is("(")) {
          ParseCallArguments();
        } else if (Is("{")) {
          ParseBracedInitList();
        } else {
          Fail("expected '(' after type name");
        }
        return;
      }
      if (w == "typename") {
        Advance();
        ParseQualifiedName(true);
        return;
      }
      Fail("unexpected keyword");
    }
    if (t.kind == TokenKind::kIdentifier || w == "::") {
      if (IsIdent() && IsTypeArgBuiltin(w) && Is("(", 1)) {
        Advance();
        SkipBalanced();
        return;
      }
      const std::string name = ParseQualifiedName(false);
      if (cpp() && Is("{") && IsKnownType(name)) ParseBracedInitList();
      return;
    }
    Fail("expected an expression");
  }

  static bool IsMacroLike(std::string_view w) {
    for (char c : w) {
      if (std::islower(static_cast<unsigned char>(c))) return false;
    }
    return true;
  }

  // Builtins whose arguments include a type.
  static bool IsTypeArgBuiltin(std::string_view w) {
    return w == "va_arg" || w == "__builtin_va_arg" || w == "offsetof" ||
           w == "__builtin_offsetof" || w == "__builtin_types_compatible_p";
  }

  void ParseLambda() {
    SkipBalanced();  // captures
    if (Is("<")) {   // template lambda
      ParseTemplateArgs();
    }
    if (Is("(")) ParseParameterList();
    while (Is("mutable") || Is("constexpr") || Is("consteval")) Advance();
    ParseFunctionQualifiers();
    ParseCompound();
  }

  void ParseBracedInitList() {
    Expect("{");
    const int saved = template_arg_depth_;
    template_arg_depth_ = 0;
    while (!Is("}")) {
      // Designators: .field = / [index] =
      bool designated = false;
      while (Is(".") && IsIdent(1)) {
        Advance();
        Advance();
        designated = true;
        while (Is("[")) {
          Advance();
          ParseConditional();
          Expect("]");
        }
      }
      while (!designated && Is("[")) {
        // C designator [i] = v  (C++ lambdas do not appear at this position
        // followed by '=').
        const std::size_t saved_pos = pos_;
        const std::size_t saved_nodes = nodes_.size();
        const std::size_t saved_end = last_end_;
        const auto saved_open = open_;
        try {
          Advance();
          ParseConditional();
          if (Is("...")) {
            Advance();
            ParseConditional();
          }
          Expect("]");
          if (Is("=") || Is("[") || Is(".")) {
            designated = true;
            continue;
          }
        } catch (const ParseFailure&) {
        }
        Rewind(saved_pos, saved_nodes, saved_end, saved_open, 0);
        break;
      }
      if (designated) {
        while (Is(".") && IsIdent(1)) {
          Advance();
          Advance();
        }
        if (Is("=")) Advance();
      } else if (IsIdent() && Is(":", 1)) {  // GNU old-style designator
        Advance();
        Advance();
      }
      ParseInitializerClause();
      if (Is("...")) Advance();
      if (Is(",")) {
        Advance();
        continue;
      }
      break;
    }
    template_arg_depth_ = saved;
    Expect("}");
  }

  void ParseInitializerClause() {
    if (Is("{")) {
      ParseBracedInitList();
    } else {
      ParseAssignment();
    }
  }

  std::string_view src_;
  LangLabel lang_;
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  std::size_t last_end_ = 0;
  std::vector<SyntaxNode> nodes_;
  std::vector<int> open_;
  std::set<std::string> types_;
  std::set<std::string> templates_;
  std::set<std::string> tags_;
  std::set<std::string> variables_;
  int template_arg_depth_ = 0;
  bool pending_template_ = false;
};

void RequireCFamily(LangLabel lang) {
  if (!IsCFamilyCompilable(lang)) {
    throw std::invalid_argument("syntax trees are built for C and C++ only");
  }
}

}  // namespace

std::vector<Token> Tokenize(std::string_view source, LangLabel lang) {
  RequireCFamily(lang);
  return Lexer(source, lang).Run();
}

std::string_view NodeKindName(NodeKind kind) {
  switch (kind) {
    case NodeKind::kTranslationUnit:
      return "TranslationUnit";
    case NodeKind::kDirective:
      return "Directive";
    case NodeKind::kFunctionDefinition:
      return "FunctionDefinition";
    case NodeKind::kDeclaration:
      return "Declaration";
    case NodeKind::kDeclarator:
      return "Declarator";
    case NodeKind::kInitializer:
      return "Initializer";
    case NodeKind::kTypeDefinition:
      return "TypeDefinition";
    case NodeKind::kNamespace:
      return "Namespace";
    case NodeKind::kCompoundStatement:
      return "CompoundStatement";
    case NodeKind::kStatement:
      return "Statement";
    case NodeKind::kExpression:
      return "Expression";
    case NodeKind::kBinaryOperator:
      return "BinaryOperator";
    case NodeKind::kParenthesis:
      return "Parenthesis";
    case NodeKind::kIdentifier:
      return "Identifier";
  }
  return "Unknown";
}

std::vector<int> SyntaxTree::NodesOf(NodeKind kind) const {
  std::vector<int> found;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (nodes_[i].kind == kind) found.push_back(static_cast<int>(i));
  }
  std::stable_sort(found.begin(), found.end(), [this](int a, int b) {
    return nodes_[a].span.begin < nodes_[b].span.begin;
  });
  return found;
}

SyntaxTree BuildAst(std::string source, LangLabel lang) {
  RequireCFamily(lang);
  Parser parser(source, lang);
  parser.ParseTranslationUnit();
  auto tokens = parser.TakeTokens();
  auto nodes = parser.TakeNodes();
  return SyntaxTree(std::move(source), lang, std::move(tokens),
                    std::move(nodes));
}

bool ReparsesAs(std::string_view fragment, LangLabel lang, NodeKind kind) {
  RequireCFamily(lang);
  try {
    switch (kind) {
      case NodeKind::kInitializer: {
        Parser parser(fragment, lang);
        return parser.ParseLoneInitializer();
      }
      case NodeKind::kTypeDefinition: {
        Parser parser(fragment, lang);
        return parser.ParseLoneTypeDefinition();
      }
      case NodeKind::kBinaryOperator: {
        auto tokens = Tokenize(fragment, lang);
        if (tokens.size() != 2 || tokens[0].kind != TokenKind::kPunct) return false;
        const auto text = fragment.substr(tokens[0].span.begin, tokens[0].span.size());
        return BinaryPrecedence(text) >= 0 || IsAssignmentOp(text);
      }
      case NodeKind::kParenthesis: {
        auto tokens = Tokenize(fragment, lang);
        return tokens.size() == 2 && (fragment == "(" || fragment == ")");
      }
      case NodeKind::kIdentifier: {
        auto tokens = Tokenize(fragment, lang);
        return tokens.size() == 2 && tokens[0].kind == TokenKind::kIdentifier &&
               tokens[0].span.size() == fragment.size();
      }
      default:
        return false;
    }
  } catch (const ParseFailure&) {
    return false;
  }
}

}  // namespace codevet
