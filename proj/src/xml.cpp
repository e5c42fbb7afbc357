#include "xml.hpp"

#include <cctype>
#include <type_traits>
#include <variant>

#include "error.hpp"
#include "format.hpp"

namespace odralite::xml {
namespace {

bool is_space(char c) noexcept { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

bool name_start(char c) noexcept {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == ':';
}

bool name_char(char c) noexcept {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == ':' || c == '-' ||
         c == '.';
}

std::string trimmed(const std::string& s) {
  std::size_t lo = 0;
  std::size_t hi = s.size();
  while (lo < hi && is_space(s[lo])) ++lo;
  while (hi > lo && is_space(s[hi - 1])) --hi;
  return s.substr(lo, hi - lo);
}

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src) {}

  std::vector<XmlNode> parse_all() {
    std::vector<XmlNode> roots;
    while (true) {
      skip_ws();
      if (pos_ >= src_.size()) break;
      if (starts_with("<!--")) {
        skip_comment();
        continue;
      }
      check_unsupported();
      if (src_[pos_] == '<') {
        roots.push_back(parse_element());
      } else {
        error(pos_, "text outside of elements");
      }
    }
    return roots;
  }

 private:
  [[noreturn]] void error(std::size_t at, const std::string& msg) const {
    fail(Errc::xml_syntax, "xml syntax error at " + position(at) + ": " + msg);
  }

  [[noreturn]] void unsupported(std::size_t at, const std::string& msg) const {
    fail(Errc::unsupported_feature, "unsupported xml feature at " + position(at) + ": " + msg);
  }

  std::string position(std::size_t at) const {
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t i = 0; i < at && i < src_.size(); ++i) {
      if (src_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    return std::to_string(line) + ":" + std::to_string(col);
  }

  bool starts_with(std::string_view prefix) const {
    return src_.substr(pos_, prefix.size()) == prefix;
  }

  void skip_ws() {
    while (pos_ < src_.size() && is_space(src_[pos_])) ++pos_;
  }

  void skip_comment() {
    const std::size_t at = pos_;
    pos_ += 4;  // "<!--"
    const std::size_t end = src_.find("-->", pos_);
    if (end == std::string_view::npos) error(at, "unterminated comment");
    pos_ = end + 3;
  }

  // Call with pos_ at '<' of a non-comment construct.
  void check_unsupported() {
    if (starts_with("<![CDATA[")) unsupported(pos_, "CDATA section");
    if (starts_with("<!")) unsupported(pos_, "markup declaration (DTD)");
    if (starts_with("<?")) unsupported(pos_, "processing instruction");
  }

  std::string parse_name() {
    const std::size_t at = pos_;
    if (pos_ >= src_.size() || !name_start(src_[pos_])) error(at, "expected a name");
    std::size_t end = pos_ + 1;
    while (end < src_.size() && name_char(src_[end])) ++end;
    std::string name(src_.substr(pos_, end - pos_));
    pos_ = end;
    return name;
  }

  void decode_entity(std::string& out) {
    const std::size_t at = pos_;
    const std::size_t semi = src_.find(';', pos_);
    if (semi == std::string_view::npos || semi - pos_ > 6) error(at, "malformed entity");
    const std::string_view body = src_.substr(pos_ + 1, semi - pos_ - 1);
    if (body == "lt") {
      out += '<';
    } else if (body == "gt") {
      out += '>';
    } else if (body == "amp") {
      out += '&';
    } else if (body == "quot") {
      out += '"';
    } else if (body == "apos") {
      out += '\'';
    } else {
      error(at, "unknown entity &" + std::string(body) + ";");
    }
    pos_ = semi + 1;
  }

  std::string parse_attr_value() {
    if (pos_ >= src_.size() || (src_[pos_] != '"' && src_[pos_] != '\'')) {
      error(pos_, "expected a quoted attribute value");
    }
    const char quote = src_[pos_];
    const std::size_t at = pos_++;
    std::string value;
    while (true) {
      if (pos_ >= src_.size()) error(at, "unterminated attribute value");
      const char c = src_[pos_];
      if (c == quote) {
        ++pos_;
        return value;
      }
      if (c == '<') error(pos_, "'<' in attribute value");
      if (c == '&') {
        decode_entity(value);
      } else {
        value += c;
        ++pos_;
      }
    }
  }

  XmlNode parse_element() {
    const std::size_t at = pos_;
    ++pos_;  // '<'
    XmlNode node;
    node.tag = parse_name();
    while (true) {
      skip_ws();
      if (pos_ >= src_.size()) error(at, "unterminated start tag <" + node.tag);
      if (src_[pos_] == '>') {
        ++pos_;
        parse_content(node);
        return node;
      }
      if (starts_with("/>")) {
        pos_ += 2;
        return node;
      }
      const std::size_t attr_at = pos_;
      std::string attr_name = parse_name();
      for (const auto& [existing, _] : node.attributes) {
        if (existing == attr_name) error(attr_at, "duplicate attribute " + attr_name);
      }
      skip_ws();
      if (pos_ >= src_.size() || src_[pos_] != '=') error(pos_, "expected '=' after attribute name");
      ++pos_;
      skip_ws();
      node.attributes.emplace_back(std::move(attr_name), parse_attr_value());
    }
  }

  void parse_content(XmlNode& node) {
    std::string text;
    while (true) {
      if (pos_ >= src_.size()) error(pos_, "unexpected end of input inside <" + node.tag + ">");
      if (starts_with("</")) {
        const std::size_t at = pos_;
        pos_ += 2;
        std::string end_name = parse_name();
        if (end_name != node.tag) {
          error(at, "mismatched end tag </" + end_name + "> for <" + node.tag + ">");
        }
        skip_ws();
        if (pos_ >= src_.size() || src_[pos_] != '>') error(pos_, "expected '>' in end tag");
        ++pos_;
        node.text = trimmed(text);
        return;
      }
      if (starts_with("<!--")) {
        skip_comment();
        continue;
      }
      if (src_[pos_] == '<') {
        check_unsupported();
        node.children.push_back(parse_element());
        continue;
      }
      if (src_[pos_] == '&') {
        decode_entity(text);
      } else {
        text += src_[pos_];
        ++pos_;
      }
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

void escape_text(std::string_view raw, std::string& out) {
  for (const char c : raw) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
}

void escape_attr(std::string_view raw, std::string& out) {
  for (const char c : raw) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
}

Oid insert_node(Store& store, Oid parent, const XmlNode& node, std::string_view name_override) {
  const std::string name = name_override.empty() ? node.tag : std::string(name_override);
  const Oid oid = store.insert_object(parent, name, Complex{});
  for (const auto& [attr_name, attr_value] : node.attributes) {
    store.insert_object(oid, "@" + attr_name, attr_value);
  }
  if (!node.text.empty()) store.insert_object(oid, "_text", node.text);
  for (const XmlNode& child : node.children) insert_node(store, oid, child, {});
  return oid;
}

std::string payload_display(const Payload& payload) {
  return std::visit(
      [](const auto& v) -> std::string {
        using P = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<P, Reference>) {
          return "#" + std::to_string(v.target.value);
        } else if constexpr (std::is_same_v<P, Collection>) {
          return display_collection(v);
        } else if constexpr (std::is_same_v<P, Complex>) {
          return {};  // not reached; complex children are exported as elements
        } else {
          return display_scalar(Scalar(v));
        }
      },
      payload);
}

void write_value_element(const StoredObject& obj, std::string& out) {
  out += '<';
  out += obj.name;
  out += "><_value>";
  escape_text(payload_display(obj.payload), out);
  out += "</_value></";
  out += obj.name;
  out += '>';
}

void write_element(const Store& store, const StoredObject& obj, std::string& out) {
  const auto* cplx = std::get_if<Complex>(&obj.payload);
  if (cplx == nullptr) {
    write_value_element(obj, out);
    return;
  }
  std::vector<const StoredObject*> content;
  out += '<';
  out += obj.name;
  for (const Oid child_oid : cplx->children) {
    const StoredObject& child = store.get_object(child_oid);
    const auto* text = std::get_if<std::string>(&child.payload);
    if (text != nullptr && child.name.size() > 1 && child.name.front() == '@') {
      out += ' ';
      out += child.name.substr(1);
      out += "=\"";
      escape_attr(*text, out);
      out += '"';
    } else {
      content.push_back(&child);
    }
  }
  if (content.empty()) {
    out += "/>";
    return;
  }
  out += '>';
  for (const StoredObject* child : content) {
    const auto* text = std::get_if<std::string>(&child->payload);
    if (text != nullptr && child->name == "_text") {
      escape_text(*text, out);
    } else if (std::holds_alternative<Complex>(child->payload)) {
      write_element(store, *child, out);
    } else {
      write_value_element(*child, out);
    }
  }
  out += "</";
  out += obj.name;
  out += '>';
}

}  // namespace

std::vector<XmlNode> parse_document(std::string_view text) { return Parser(text).parse_all(); }

std::vector<Oid> import_xml(std::string_view document, Store& store,
                            std::string_view root_class_override) {
  const std::vector<XmlNode> nodes = parse_document(document);
  std::vector<Oid> roots;
  roots.reserve(nodes.size());
  for (const XmlNode& node : nodes) {
    roots.push_back(insert_node(store, Oid{}, node, root_class_override));
  }
  return roots;
}

std::string export_xml(Oid root, const Store& store) {
  const StoredObject& obj = store.get_object(root);
  std::string out;
  write_element(store, obj, out);
  out += '\n';
  return out;
}

}  // namespace odralite::xml
