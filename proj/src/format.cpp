#include "format.hpp"

#include <bit>
#include <charconv>
#include <cstdio>

namespace odralite {

void append_escaped(std::string& out, std::string_view s) {
  for (char c : s) {
    switch (c) {
      case '\\': out += "\\\\"; break;
      case '"': out += "\\\""; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += c; break;
    }
  }
}

std::string quote_string(std::string_view s) {
  std::string out;
  out.reserve(s.size() + 2);
  out += '"';
  append_escaped(out, s);
  out += '"';
  return out;
}

std::string float_text(double value) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), value);
  std::string text(buf, res.ptr);
  if (text.find('.') == std::string::npos && text.find('e') == std::string::npos &&
      text.find("inf") == std::string::npos && text.find("nan") == std::string::npos) {
    text += ".0";
  }
  return text;
}

std::string float_bits_hex(double value) {
  auto bits = std::bit_cast<std::uint64_t>(value);
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(bits));
  return std::string(buf, 16);
}

bool parse_float_bits_hex(std::string_view hex, double& out) {
  if (hex.size() != 16) return false;
  std::uint64_t bits = 0;
  for (char c : hex) {
    int digit;
    if (c >= '0' && c <= '9') digit = c - '0';
    else if (c >= 'a' && c <= 'f') digit = c - 'a' + 10;
    else if (c >= 'A' && c <= 'F') digit = c - 'A' + 10;
    else return false;
    bits = (bits << 4) | static_cast<std::uint64_t>(digit);
  }
  out = std::bit_cast<double>(bits);
  return true;
}

std::string display_scalar(const Scalar& value) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::int64_t>) return std::to_string(v);
        else if constexpr (std::is_same_v<T, double>) return float_text(v);
        else if constexpr (std::is_same_v<T, std::string>) return quote_string(v);
        else return v ? "true" : "false";
      },
      value);
}

std::string display_collection(const Collection& coll) {
  const char* open = coll.kind == CollectionKind::set ? "set{" : coll.kind == CollectionKind::list ? "list[" : "array[";
  std::string out = open;
  for (std::size_t i = 0; i < coll.elements.size(); ++i) {
    if (i > 0) out += ", ";
    out += display_scalar(coll.elements[i]);
  }
  out += coll.kind == CollectionKind::set ? '}' : ']';
  return out;
}

}  // namespace odralite
