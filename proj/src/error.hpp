#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace odralite {

// Error codes shared between the C++ core and the C API surface.
enum class Errc {
  ok = 0,

  // store
  unknown_oid,
  unknown_parent,
  parent_not_complex,
  malformed_collection,
  dangling_reference,
  snapshot_syntax,

  // xml
  xml_syntax,
  unsupported_feature,

  // query
  parse_error,

  // eval
  unbound_name,
  non_boolean_predicate,
  non_singleton,
  type_mismatch,
  division_by_zero,
  no_fusion_plan,

  // fusion
  float_join_key,
  non_scalar_element,

  // dataset / bench / general
  invalid_params,
  strategy_mismatch,
  io_error,
  out_of_memory,
  internal,
};

const char* errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, std::string message) : std::runtime_error(std::move(message)), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, std::string message) {
  throw Error(code, std::move(message));
}

}  // namespace odralite
