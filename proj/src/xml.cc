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

#include "semlint/xml.h"

#include <cstdint>
#include <string>
#include <utility>

#include "semlint/error.h"

namespace semlint {

const std::string* XmlNode::FindAttr(std::string_view attr_name) const {
  for (const XmlAttr& a : attrs) {
    if (a.name == attr_name) return &a.value;
  }
  return nullptr;
}

XmlNodePtr XmlNode::MakeElement(std::string name, std::vector<XmlAttr> attrs,
                                XmlNodeList children, SourcePos pos) {
  auto n = std::make_shared<XmlNode>();
  n->kind = Kind::kElement;
  n->name = std::move(name);
  n->attrs = std::move(attrs);
  n->children = std::move(children);
  n->pos = std::move(pos);
  return n;
}

XmlNodePtr XmlNode::MakeText(std::string text, SourcePos pos) {
  auto n = std::make_shared<XmlNode>();
  n->kind = Kind::kText;
  n->text = std::move(text);
  n->pos = std::move(pos);
  return n;
}

bool SameTree(const XmlNode& a, const XmlNode& b) {
  if (&a == &b) return true;
  if (a.kind != b.kind) return false;
  if (a.is_text()) return a.text == b.text;
  if (a.name != b.name || a.attrs != b.attrs ||
      a.children.size() != b.children.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.children.size(); ++i) {
    if (!SameTree(*a.children[i], *b.children[i])) return false;
  }
  return true;
}

namespace {

bool IsSpace(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r';
}

bool IsNameChar(char c) {
  auto u = static_cast<unsigned char>(c);
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
         (c >= '0' && c <= '9') || c == '_' || c == ':' || c == '-' ||
         c == '.' || u >= 0x80;
}

void AppendUtf8(std::uint32_t cp, std::string& out) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

// Returns the 1-based line of the first invalid byte, or 0 if valid.
std::size_t FindInvalidUtf8(std::string_view s) {
  std::size_t line = 1;
  std::size_t i = 0;
  while (i < s.size()) {
    auto c = static_cast<unsigned char>(s[i]);
    if (c == '\n') ++line;
    std::size_t len = 0;
    std::uint32_t min = 0;
    if (c < 0x80) {
      ++i;
      continue;
    } else if ((c & 0xE0) == 0xC0) {
      len = 2;
      min = 0x80;
    } else if ((c & 0xF0) == 0xE0) {
      len = 3;
      min = 0x800;
    } else if ((c & 0xF8) == 0xF0) {
      len = 4;
      min = 0x10000;
    } else {
      return line;
    }
    if (i + len > s.size()) return line;
    std::uint32_t cp = c & (0x7F >> len);
    for (std::size_t k = 1; k < len; ++k) {
      auto cc = static_cast<unsigned char>(s[i + k]);
      if ((cc & 0xC0) != 0x80) return line;
      cp = (cp << 6) | (cc & 0x3F);
    }
    if (cp < min || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
      return line;
    }
    i += len;
  }
  return 0;
}

class XmlParser {
 public:
  XmlParser(std::string_view src, const std::string& file)
      : src_(src), file_(file) {}

  XmlNodePtr ParseDocument() {
    if (src_.substr(0, 3) == "\xEF\xBB\xBF") pos_ = 3;
    SkipMisc(/*allow_doctype=*/true);
    if (AtEnd() || Peek() != '<') Fail("root element expected");
    XmlNodePtr root = ParseElement();
    SkipMisc(/*allow_doctype=*/false);
    if (!AtEnd()) Fail("content after the root element");
    return root;
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
  SourcePos Here() const { return SourcePos{file_, line_}; }

  [[noreturn]] void Fail(const std::string& detail) const {
    throw Error(ErrorKind::kMalformedXml, Here(), detail);
  }
  [[noreturn]] void FailAt(std::size_t line, const std::string& detail) const {
    throw Error(ErrorKind::kMalformedXml, SourcePos{file_, line}, detail);
  }

  void SkipSpace() {
    while (!AtEnd() && IsSpace(Peek())) Advance();
  }

  void SkipUntil(std::string_view terminator, const char* what) {
    std::size_t start_line = line_;
    while (!AtEnd() && !StartsWith(terminator)) Advance();
    if (AtEnd()) FailAt(start_line, std::string("unterminated ") + what);
    Advance(terminator.size());
  }

  void SkipDoctype() {
    std::size_t start_line = line_;
    int bracket = 0;
    while (!AtEnd()) {
      char c = Peek();
      if (c == '[') ++bracket;
      if (c == ']') --bracket;
      if (c == '>' && bracket <= 0) {
        Advance();
        return;
      }
      Advance();
    }
    FailAt(start_line, "unterminated DOCTYPE");
  }

  void SkipMisc(bool allow_doctype) {
    for (;;) {
      SkipSpace();
      if (StartsWith("<?")) {
        SkipUntil("?>", "processing instruction");
      } else if (StartsWith("<!--")) {
        SkipUntil("-->", "comment");
      } else if (allow_doctype && StartsWith("<!DOCTYPE")) {
        SkipDoctype();
      } else {
        return;
      }
    }
  }

  std::string ParseName() {
    std::size_t start = pos_;
    while (!AtEnd() && IsNameChar(Peek())) Advance();
    if (start == pos_) Fail("name expected");
    return std::string(src_.substr(start, pos_ - start));
  }

  // At '&'; appends the decoded reference.
  void ParseReference(std::string& out) {
    std::size_t semi = src_.find(';', pos_);
    if (semi == std::string_view::npos || semi - pos_ > 32) {
      Fail("bad entity reference");
    }
    std::string_view ref = src_.substr(pos_ + 1, semi - pos_ - 1);
    if (ref == "amp") {
      out += '&';
    } else if (ref == "lt") {
      out += '<';
    } else if (ref == "gt") {
      out += '>';
    } else if (ref == "quot") {
      out += '"';
    } else if (ref == "apos") {
      out += '\'';
    } else if (ref.size() > 1 && ref[0] == '#') {
      bool hex = ref[1] == 'x' || ref[1] == 'X';
      std::string_view digits = ref.substr(hex ? 2 : 1);
      if (digits.empty()) Fail("bad character reference &" + std::string(ref) + ";");
      std::uint32_t cp = 0;
      for (char d : digits) {
        int v;
        if (d >= '0' && d <= '9') {
          v = d - '0';
        } else if (hex && d >= 'a' && d <= 'f') {
          v = d - 'a' + 10;
        } else if (hex && d >= 'A' && d <= 'F') {
          v = d - 'A' + 10;
        } else {
          Fail("bad character reference &" + std::string(ref) + ";");
        }
        cp = cp * (hex ? 16 : 10) + static_cast<std::uint32_t>(v);
        if (cp > 0x10FFFF) Fail("character reference out of range");
      }
      if (cp == 0 || (cp >= 0xD800 && cp <= 0xDFFF)) {
        Fail("invalid character reference &" + std::string(ref) + ";");
      }
      AppendUtf8(cp, out);
    } else {
      Fail("unknown entity &" + std::string(ref) + ";");
    }
    Advance(semi - pos_ + 1);
  }

  std::string ParseAttrValue() {
    char quote = Peek();
    if (quote != '"' && quote != '\'') Fail("quoted attribute value expected");
    std::size_t start_line = line_;
    Advance();
    std::string value;
    for (;;) {
      if (AtEnd()) FailAt(start_line, "unterminated attribute value");
      char c = Peek();
      if (c == quote) {
        Advance();
        return value;
      }
      if (c == '<') Fail("'<' in attribute value");
      if (c == '&') {
        ParseReference(value);
        continue;
      }
      if (c == '\r') {
        Advance();
        continue;
      }
      value.push_back(c);
      Advance();
    }
  }

  struct TextBuffer {
    std::string text;
    std::size_t line = 0;  // line of first non-blank character, 0 if none

    void Append(char c, std::size_t at_line) {
      if (line == 0 && !IsSpace(c)) line = at_line;
      text.push_back(c);
    }
    void AppendDecoded(const std::string& s, std::size_t at_line) {
      for (char c : s) Append(c, at_line);
    }
  };

  void Flush(TextBuffer& buf, XmlNodeList& children) const {
    if (buf.line != 0) {
      children.push_back(
          XmlNode::MakeText(std::move(buf.text), SourcePos{file_, buf.line}));
    }
    buf = TextBuffer{};
  }

  XmlNodePtr ParseElement() {
    SourcePos open_pos = Here();
    Advance();  // '<'
    std::string name = ParseName();
    std::vector<XmlAttr> attrs;
    for (;;) {
      bool had_space = !AtEnd() && IsSpace(Peek());
      SkipSpace();
      if (AtEnd()) {
        FailAt(open_pos.line, "unterminated tag <" + name + ">");
      }
      if (StartsWith("/>")) {
        Advance(2);
        return XmlNode::MakeElement(std::move(name), std::move(attrs), {},
                                    std::move(open_pos));
      }
      if (Peek() == '>') {
        Advance();
        break;
      }
      if (!had_space) Fail("whitespace expected before attribute");
      std::string attr_name = ParseName();
      SkipSpace();
      if (Peek() != '=') Fail("'=' expected after attribute " + attr_name);
      Advance();
      SkipSpace();
      std::string value = ParseAttrValue();
      for (const XmlAttr& a : attrs) {
        if (a.name == attr_name) Fail("duplicate attribute " + attr_name);
      }
      attrs.push_back({std::move(attr_name), std::move(value)});
    }

    XmlNodeList children;
    TextBuffer buf;
    for (;;) {
      if (AtEnd()) {
        FailAt(open_pos.line, "unterminated element <" + name + ">");
      }
      char c = Peek();
      if (c == '<') {
        if (StartsWith("</")) {
          Flush(buf, children);
          std::size_t close_line = line_;
          Advance(2);
          std::string close = ParseName();
          SkipSpace();
          if (Peek() != '>') Fail("'>' expected in close tag");
          Advance();
          if (close != name) {
            FailAt(close_line, "close tag " + name + " expected, found " +
                                   close + " (opened at line " +
                                   std::to_string(open_pos.line) + ")");
          }
          return XmlNode::MakeElement(std::move(name), std::move(attrs),
                                      std::move(children), std::move(open_pos));
        }
        if (StartsWith("<!--")) {
          SkipUntil("-->", "comment");
        } else if (StartsWith("<![CDATA[")) {
          std::size_t start_line = line_;
          Advance(9);
          for (;;) {
            if (AtEnd()) FailAt(start_line, "unterminated CDATA section");
            if (StartsWith("]]>")) {
              Advance(3);
              break;
            }
            if (Peek() != '\r') buf.Append(Peek(), line_);
            Advance();
          }
        } else if (StartsWith("<?")) {
          SkipUntil("?>", "processing instruction");
        } else if (StartsWith("<!")) {
          Fail("unexpected markup declaration");
        } else {
          Flush(buf, children);
          children.push_back(ParseElement());
        }
      } else if (c == '&') {
        std::size_t at = line_;
        std::string decoded;
        ParseReference(decoded);
        buf.AppendDecoded(decoded, at);
      } else {
        if (c != '\r') buf.Append(c, line_);
        Advance();
      }
    }
  }

  std::string_view src_;
  const std::string& file_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
};

void AppendEscaped(std::string_view s, bool attr, std::string& out) {
  for (char c : s) {
    switch (c) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '"':
        if (attr) {
          out += "&quot;";
          break;
        }
        [[fallthrough]];
      default:
        out.push_back(c);
    }
  }
}

void AppendXml(const XmlNode& n, std::string& out) {
  if (n.is_text()) {
    AppendEscaped(n.text, false, out);
    return;
  }
  out += '<';
  out += n.name;
  for (const XmlAttr& a : n.attrs) {
    out += ' ';
    out += a.name;
    out += "=\"";
    AppendEscaped(a.value, true, out);
    out += '"';
  }
  if (n.children.empty()) {
    out += "/>";
    return;
  }
  out += '>';
  for (const XmlNodePtr& c : n.children) AppendXml(*c, out);
  out += "</";
  out += n.name;
  out += '>';
}

}  // namespace

XmlNodePtr ParseXml(std::string_view bytes, const std::string& file) {
  if (std::size_t bad = FindInvalidUtf8(bytes); bad != 0) {
    throw Error(ErrorKind::kEncoding, SourcePos{file, bad},
                "input is not valid UTF-8");
  }
  return XmlParser(bytes, file).ParseDocument();
}

std::string ToXml(const XmlNode& node) {
  std::string out;
  AppendXml(node, out);
  return out;
}

}  // namespace semlint
