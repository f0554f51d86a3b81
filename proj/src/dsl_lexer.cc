// Copyright 2026 The semlint Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstddef>
#include <string>
#include <vector>

#include "semlint/dsl.h"
#include "semlint/error.h"

namespace semlint {

const char* TokenKindName(TokenKind kind) {
  switch (kind) {
    case TokenKind::kSkipMarker:
      return "'<*'";
    case TokenKind::kRuleArrow:
      return "'=>'";
    case TokenKind::kQuestion:
      return "'?'";
    case TokenKind::kSlash:
      return "'/'";
    case TokenKind::kThenArrow:
      return "'->'";
    case TokenKind::kAmp:
      return "'&'";
    case TokenKind::kAssign:
      return "':='";
    case TokenKind::kSemicolon:
      return "';'";
    case TokenKind::kLtDollar:
      return "'<$'";
    case TokenKind::kLtSlash:
      return "'</'";
    case TokenKind::kSlashGt:
      return "'/>'";
    case TokenKind::kLParen:
      return "'('";
    case TokenKind::kRParen:
      return "')'";
    case TokenKind::kComma:
      return "','";
    case TokenKind::kEquals:
      return "'='";
    case TokenKind::kDollar:
      return "'$'";
    case TokenKind::kLt:
      return "'<'";
    case TokenKind::kGt:
      return "'>'";
    case TokenKind::kName:
      return "NAME";
    case TokenKind::kString:
      return "STRING";
    case TokenKind::kText:
      return "TEXT";
    case TokenKind::kEnd:
      return "end of input";
  }
  return "token";
}

namespace {

bool IsSpace(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f';
}

bool IsTermNameChar(char c) {
  auto u = static_cast<unsigned char>(c);
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
         (c >= '0' && c <= '9') || c == '_' || u >= 0x80;
}

bool IsTagNameChar(char c) {
  return IsTermNameChar(c) || c == '-' || c == '.' || c == ':';
}

// Lexer modes. Element constructs nest; `depth_` counts open elements whose
// content is being scanned.
enum class Mode { kTerm, kTag, kCloseTag, kVarElem, kContent };

class Lexer {
 public:
  Lexer(std::string_view text, const std::string& file)
      : src_(text), file_(file) {}

  std::vector<Token> Run() {
    std::vector<Token> out;
    for (;;) {
      Token t = Next();
      bool end = t.kind == TokenKind::kEnd;
      out.push_back(std::move(t));
      if (end) return out;
    }
  }

 private:
  bool AtEnd() const { return pos_ >= src_.size(); }
  char Peek(std::size_t ahead = 0) const {
    return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
  }
  bool StartsWith(std::string_view s) const {
    return src_.substr(pos_, s.size()) == s;
  }
  void Advance(std::size_t n = 1) {
    for (std::size_t k = 0; k < n && pos_ < src_.size(); ++k) {
      if (src_[pos_] == '\n') ++line_;
      ++pos_;
    }
  }

  [[noreturn]] void Fail(std::size_t line, const std::string& detail) const {
    throw Error(ErrorKind::kLex, SourcePos{file_, line}, detail);
  }

  Mode AfterElement() const { return depth_ > 0 ? Mode::kContent : Mode::kTerm; }

  Token Make(TokenKind kind, std::string lexeme, std::size_t line,
             bool spaced) const {
    return Token{kind, std::move(lexeme), SourcePos{file_, line}, spaced};
  }

  Token Punct(TokenKind kind, std::size_t len, bool spaced) {
    std::size_t line = line_;
    std::string lexeme(src_.substr(pos_, len));
    Advance(len);
    return Make(kind, std::move(lexeme), line, spaced);
  }

  Token Name(bool tag_chars, bool spaced) {
    std::size_t line = line_;
    std::size_t start = pos_;
    while (!AtEnd() &&
           (tag_chars ? IsTagNameChar(Peek()) : IsTermNameChar(Peek()))) {
      Advance();
    }
    return Make(TokenKind::kName, std::string(src_.substr(start, pos_ - start)),
                line, spaced);
  }

  Token String(bool spaced) {
    std::size_t line = line_;
    char quote = Peek();
    Advance();
    std::string value;
    for (;;) {
      if (AtEnd()) Fail(line, "unterminated string");
      char c = Peek();
      if (c == quote) {
        Advance();
        return Make(TokenKind::kString, std::move(value), line, spaced);
      }
      if (c == '\\') {
        char e = Peek(1);
        switch (e) {
          case '"':
          case '\\':
          case '\'':
            value.push_back(e);
            break;
          case 'n':
            value.push_back('\n');
            break;
          case 't':
            value.push_back('\t');
            break;
          case 'r':
            value.push_back('\r');
            break;
          case '\0':
            Fail(line, "unterminated string");
          default:
            value.push_back('\\');
            value.push_back(e);
        }
        Advance(2);
        continue;
      }
      value.push_back(c);
      Advance();
    }
  }

  [[noreturn]] void Unexpected() const {
    std::string shown(1, Peek());
    Fail(line_, "unexpected character '" + shown + "'");
  }

  Token Next() {
    bool spaced = false;
    while (!AtEnd() && IsSpace(Peek())) {
      spaced = true;
      Advance();
    }
    if (AtEnd()) {
      if (mode_ != Mode::kTerm) {
        Fail(open_line_, "unterminated element construct");
      }
      return Make(TokenKind::kEnd, "", line_, spaced);
    }
    switch (mode_) {
      case Mode::kTerm:
        return NextTerm(spaced);
      case Mode::kTag:
        return NextTag(spaced);
      case Mode::kCloseTag:
        if (Peek() == '>') {
          --depth_;
          mode_ = AfterElement();
          return Punct(TokenKind::kGt, 1, spaced);
        }
        if (IsTagNameChar(Peek())) return Name(true, spaced);
        Unexpected();
      case Mode::kVarElem:
        if (Peek() == '>') {
          mode_ = AfterElement();
          return Punct(TokenKind::kGt, 1, spaced);
        }
        if (IsTermNameChar(Peek())) return Name(false, spaced);
        Unexpected();
      case Mode::kContent:
        return NextContent(spaced);
    }
    Unexpected();
  }

  // '<' opens an element construct in term and content modes.
  bool OpenConstruct(bool spaced, Token& out) {
    if (StartsWith("</")) {
      open_line_ = line_;
      mode_ = Mode::kCloseTag;
      out = Punct(TokenKind::kLtSlash, 2, spaced);
      return true;
    }
    if (StartsWith("<$")) {
      open_line_ = line_;
      mode_ = Mode::kVarElem;
      out = Punct(TokenKind::kLtDollar, 2, spaced);
      return true;
    }
    if (Peek() == '<' && IsTagNameChar(Peek(1))) {
      open_line_ = line_;
      mode_ = Mode::kTag;
      out = Punct(TokenKind::kLt, 1, spaced);
      return true;
    }
    return false;
  }

  Token NextTerm(bool spaced) {
    Token t;
    if (StartsWith("<*")) return Punct(TokenKind::kSkipMarker, 2, spaced);
    if (OpenConstruct(spaced, t)) return t;
    if (StartsWith("=>")) return Punct(TokenKind::kRuleArrow, 2, spaced);
    if (StartsWith("->")) return Punct(TokenKind::kThenArrow, 2, spaced);
    if (StartsWith(":=")) return Punct(TokenKind::kAssign, 2, spaced);
    if (StartsWith("/>")) return Punct(TokenKind::kSlashGt, 2, spaced);
    switch (Peek()) {
      case '?':
        return Punct(TokenKind::kQuestion, 1, spaced);
      case '/':
        return Punct(TokenKind::kSlash, 1, spaced);
      case '&':
        return Punct(TokenKind::kAmp, 1, spaced);
      case ';':
        return Punct(TokenKind::kSemicolon, 1, spaced);
      case '(':
        return Punct(TokenKind::kLParen, 1, spaced);
      case ')':
        return Punct(TokenKind::kRParen, 1, spaced);
      case ',':
        return Punct(TokenKind::kComma, 1, spaced);
      case '=':
        return Punct(TokenKind::kEquals, 1, spaced);
      case '$':
        return Punct(TokenKind::kDollar, 1, spaced);
      case '>':
        return Punct(TokenKind::kGt, 1, spaced);
      case '"':
      case '\'':
        return String(spaced);
      default:
        break;
    }
    if (IsTermNameChar(Peek())) return Name(false, spaced);
    Unexpected();
  }

  Token NextTag(bool spaced) {
    if (StartsWith("/>")) {
      mode_ = AfterElement();
      return Punct(TokenKind::kSlashGt, 2, spaced);
    }
    switch (Peek()) {
      case '>':
        ++depth_;
        mode_ = Mode::kContent;
        return Punct(TokenKind::kGt, 1, spaced);
      case '=':
        return Punct(TokenKind::kEquals, 1, spaced);
      case '$':
        return Punct(TokenKind::kDollar, 1, spaced);
      case '"':
      case '\'':
        return String(spaced);
      default:
        break;
    }
    if (IsTagNameChar(Peek())) return Name(true, spaced);
    Unexpected();
  }

  Token NextContent(bool spaced) {
    Token t;
    if (OpenConstruct(spaced, t)) return t;
    std::size_t line = line_;
    std::size_t start = pos_;
    Advance();
    while (!AtEnd()) {
      if (Peek() == '<' &&
          (Peek(1) == '/' || Peek(1) == '$' || IsTagNameChar(Peek(1)))) {
        break;
      }
      Advance();
    }
    return Make(TokenKind::kText, std::string(src_.substr(start, pos_ - start)),
                line, spaced);
  }

  std::string_view src_;
  const std::string& file_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t open_line_ = 1;
  std::size_t depth_ = 0;
  Mode mode_ = Mode::kTerm;
};

}  // namespace

std::vector<Token> Tokenize(std::string_view text, const std::string& file) {
  return Lexer(text, file).Run();
}

}  // namespace semlint
