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

// A span-preserving parser for a practical subset of C and C++.
//
// The grammar covers what small, self-contained snippets usually contain:
// preprocessor lines (kept opaque), declarations with initializers,
// typedefs, struct/union/enum/class definitions, functions, namespaces,
// simple templates, lambdas, and the full C expression grammar. Anything
// else raises ParseFailure. Every node records the byte range it came from,
// so callers can edit the source by span without re-printing it.

#ifndef CODEVET_SYNTAX_H
#define CODEVET_SYNTAX_H

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "codevet/lang.h"

namespace codevet {

// Half-open byte range [begin, end).
struct Span {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const { return end - begin; }
  bool operator==(const Span&) const = default;
};

enum class TokenKind {
  kIdentifier,
  kKeyword,
  kNumber,
  kString,
  kChar,
  kPunct,
  kDirective,  // a whole preprocessor line, continuations included
  kEnd,
};

struct Token {
  TokenKind kind = TokenKind::kEnd;
  Span span;
};

class ParseFailure : public std::runtime_error {
 public:
  ParseFailure(const std::string& message, std::size_t offset)
      : std::runtime_error(message + " at byte " + std::to_string(offset)),
        offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

// Comments are dropped; everything else becomes a token. The final token is
// always kEnd. Throws ParseFailure on an unterminated comment or literal.
std::vector<Token> Tokenize(std::string_view source, LangLabel lang);

enum class NodeKind {
  kTranslationUnit,
  kDirective,
  kFunctionDefinition,
  kDeclaration,
  kDeclarator,       // one declared entity; name holds the identifier
  kInitializer,      // "= expr", "{...}" or "(args)" after a declarator
  kTypeDefinition,   // typedef / using-alias / struct-union-enum-class body
  kNamespace,
  kCompoundStatement,
  kStatement,
  kExpression,
  kBinaryOperator,   // the operator token; name holds its spelling
  kParenthesis,      // a single "(" or ")" token
  kIdentifier,       // an identifier token; name holds it
};

std::string_view NodeKindName(NodeKind kind);

struct SyntaxNode {
  NodeKind kind = NodeKind::kTranslationUnit;
  Span span;
  std::string name;
  // For kTypeDefinition: every name the definition introduces (tag, typedef
  // names, enumerators).
  std::vector<std::string> defined_names;
  int parent = -1;
  std::vector<int> children;
};

class SyntaxTree {
 public:
  SyntaxTree(std::string source, LangLabel lang, std::vector<Token> tokens,
             std::vector<SyntaxNode> nodes)
      : source_(std::move(source)),
        lang_(lang),
        tokens_(std::move(tokens)),
        nodes_(std::move(nodes)) {}

  const std::string& source() const { return source_; }
  LangLabel lang() const { return lang_; }
  const std::vector<Token>& tokens() const { return tokens_; }
  const std::vector<SyntaxNode>& nodes() const { return nodes_; }
  const SyntaxNode& root() const { return nodes_.front(); }
  const SyntaxNode& node(int index) const { return nodes_[index]; }

  // Nodes of one kind in source order.
  std::vector<int> NodesOf(NodeKind kind) const;

  std::string_view Text(Span span) const {
    return std::string_view(source_).substr(span.begin, span.size());
  }
  std::string_view Text(const SyntaxNode& node) const {
    return Text(node.span);
  }

 private:
  std::string source_;
  LangLabel lang_;
  std::vector<Token> tokens_;
  std::vector<SyntaxNode> nodes_;
};

// Parses a whole translation unit. Throws ParseFailure when the source uses
// constructs outside the supported subset.
SyntaxTree BuildAst(std::string source, LangLabel lang);

// True when `fragment` on its own parses as exactly one node of `kind`:
// an initializer clause, a type definition, a single binary operator, a
// single parenthesis or a single identifier.
bool ReparsesAs(std::string_view fragment, LangLabel lang, NodeKind kind);

}  // namespace codevet

#endif  // CODEVET_SYNTAX_H
