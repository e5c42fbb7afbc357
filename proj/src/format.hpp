#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "store.hpp"

namespace odralite {

// Escapes backslash, double quote, newline and tab, and wraps the result in
// double quotes. This is the one quoted-string syntax used by snapshots,
// query literals and display output.
std::string quote_string(std::string_view s);

// Appends the escaped body (no surrounding quotes).
void append_escaped(std::string& out, std::string_view s);

// Shortest decimal text that parses back to exactly the same double. Always
// contains '.' or an exponent so the text reads as a float, not an int.
std::string float_text(double value);

// 16 lowercase hex digits of the big-endian IEEE-754 bit pattern.
std::string float_bits_hex(double value);
bool parse_float_bits_hex(std::string_view hex, double& out);

// Human-readable forms used by query output and XML export of non-complex
// payloads. Strings appear quoted, collections as set{..}/list[..]/array[..].
std::string display_scalar(const Scalar& value);
std::string display_collection(const Collection& coll);

}  // namespace odralite
