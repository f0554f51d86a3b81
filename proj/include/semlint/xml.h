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

#ifndef SEMLINT_XML_H_
#define SEMLINT_XML_H_

#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "semlint/source_pos.h"

namespace semlint {

struct XmlNode;
using XmlNodePtr = std::shared_ptr<const XmlNode>;
using XmlNodeList = std::vector<XmlNodePtr>;

struct XmlAttr {
  std::string name;
  std::string value;

  friend bool operator==(const XmlAttr&, const XmlAttr&) = default;
};

// Element or text node of a parsed document. Nodes are immutable once
// built and shared through XmlNodePtr, so binding a node to a variable
// never copies the subtree.
struct XmlNode {
  enum class Kind { kElement, kText };

  Kind kind = Kind::kElement;
  std::string name;             // element only
  std::vector<XmlAttr> attrs;   // element only, document order
  XmlNodeList children;         // element only
  std::string text;             // text only, verbatim
  SourcePos pos;

  bool is_element() const { return kind == Kind::kElement; }
  bool is_text() const { return kind == Kind::kText; }

  // Returns nullptr when the attribute is absent.
  const std::string* FindAttr(std::string_view attr_name) const;

  static XmlNodePtr MakeElement(std::string name, std::vector<XmlAttr> attrs,
                                XmlNodeList children, SourcePos pos);
  static XmlNodePtr MakeText(std::string text, SourcePos pos);
};

// Structural equality; positions are ignored.
bool SameTree(const XmlNode& a, const XmlNode& b);

// Parses one standalone XML document and returns its root element.
//
// Comments, processing instructions and the DOCTYPE are discarded. CDATA
// sections become text. Whitespace-only text nodes are dropped; any other
// text is kept verbatim (after decoding entity and character references).
// A text node's line is that of its first non-blank character.
//
// Throws Error(kEncoding) for invalid UTF-8 and Error(kMalformedXml) for
// structural problems, both naming file and line.
XmlNodePtr ParseXml(std::string_view bytes, const std::string& file);

// Serializes a subtree back to XML text (used by tests and debugging).
std::string ToXml(const XmlNode& node);

}  // namespace semlint

#endif  // SEMLINT_XML_H_
