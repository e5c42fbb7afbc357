#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "store.hpp"

namespace odralite::xml {

struct XmlNode {
  std::string tag;
  std::vector<std::pair<std::string, std::string>> attributes;  // ordered, names unique
  std::vector<XmlNode> children;
  std::string text;  // trimmed character data; empty = none
};

// Subset parser: elements, attributes (both quote styles), character data,
// comments (skipped), and the five named entities. DTDs, processing
// instructions and CDATA are rejected as unsupported; syntax errors carry
// line:column positions. A document may hold any number of top-level
// elements.
std::vector<XmlNode> parse_document(std::string_view text);

// Element -> Complex object named by tag (or the override, top level only);
// attribute -> "@name" string child; trimmed text -> "_text" string child;
// child order preserved. Returns the created roots in document order.
std::vector<Oid> import_xml(std::string_view document, Store& store,
                            std::string_view root_class_override = {});

// Inverse mapping. "@" string children become attributes, "_text" children
// become character data, complex children become elements; any other payload
// is wrapped as <name><_value>display</_value></name>. Compact output, no
// inter-element whitespace.
std::string export_xml(Oid root, const Store& store);

}  // namespace odralite::xml
