#include "store.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

#include "format.hpp"

namespace odralite {

namespace {

constexpr std::string_view kSnapshotHeader = "ODRALITE 1";

bool valid_name(std::string_view name) {
  if (name.empty()) return false;
  for (char c : name) {
    if (static_cast<unsigned char>(c) <= 0x20 || c == 0x7f) return false;
  }
  return true;
}

[[noreturn]] void syntax_error(int line, const std::string& what) {
  fail(Errc::snapshot_syntax, "snapshot line " + std::to_string(line) + ": " + what);
}

// Cursor over one snapshot line. Tokens are space-separated; string payloads
// are quote-delimited with escapes.
struct LineCursor {
  std::string_view rest;
  int line;

  void skip_spaces() {
    while (!rest.empty() && rest.front() == ' ') rest.remove_prefix(1);
  }

  bool at_end() {
    skip_spaces();
    return rest.empty();
  }

  std::string_view token() {
    skip_spaces();
    if (rest.empty()) syntax_error(line, "unexpected end of line");
    std::size_t n = 0;
    while (n < rest.size() && rest[n] != ' ') ++n;
    auto tok = rest.substr(0, n);
    rest.remove_prefix(n);
    return tok;
  }

  std::uint64_t number(const char* what) {
    auto tok = token();
    std::uint64_t value = 0;
    auto res = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size()) {
      syntax_error(line, std::string("bad ") + what + " '" + std::string(tok) + "'");
    }
    return value;
  }

  std::int64_t signed_number(const char* what) {
    auto tok = token();
    std::int64_t value = 0;
    auto res = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size()) {
      syntax_error(line, std::string("bad ") + what + " '" + std::string(tok) + "'");
    }
    return value;
  }

  // Consumes a quoted string starting at the cursor.
  std::string quoted() {
    skip_spaces();
    if (rest.empty() || rest.front() != '"') syntax_error(line, "expected quoted string");
    rest.remove_prefix(1);
    std::string out;
    while (true) {
      if (rest.empty()) syntax_error(line, "unterminated string");
      char c = rest.front();
      rest.remove_prefix(1);
      if (c == '"') return out;
      if (c == '\\') {
        if (rest.empty()) syntax_error(line, "unterminated escape");
        char e = rest.front();
        rest.remove_prefix(1);
        switch (e) {
          case '\\': out += '\\'; break;
          case '"': out += '"'; break;
          case 'n': out += '\n'; break;
          case 't': out += '\t'; break;
          default: syntax_error(line, std::string("unknown escape '\\") + e + "'");
        }
      } else {
        out += c;
      }
    }
  }
};

void write_scalar_elem(std::ostream& out, const Scalar& s) {
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::int64_t>) {
          out << "i:" << v;
        } else if constexpr (std::is_same_v<T, double>) {
          out << "f:" << float_bits_hex(v);
        } else if constexpr (std::is_same_v<T, std::string>) {
          out << "s:" << quote_string(v);
        } else {
          out << "b:" << (v ? "true" : "false");
        }
      },
      s);
}

Scalar read_scalar_elem(LineCursor& cur) {
  cur.skip_spaces();
  if (cur.rest.size() < 2 || cur.rest[1] != ':') syntax_error(cur.line, "expected tagged element");
  char tag = cur.rest[0];
  cur.rest.remove_prefix(2);
  switch (tag) {
    case 'i': return cur.signed_number("int element");
    case 'f': {
      auto tok = cur.token();
      double v;
      if (!parse_float_bits_hex(tok, v)) syntax_error(cur.line, "bad float bits");
      return v;
    }
    case 's': return cur.quoted();
    case 'b': {
      auto tok = cur.token();
      if (tok == "true") return true;
      if (tok == "false") return false;
      syntax_error(cur.line, "bad bool element");
    }
    default: syntax_error(cur.line, std::string("unknown element tag '") + tag + "'");
  }
}

}  // namespace

const char* collection_kind_name(CollectionKind kind) noexcept {
  switch (kind) {
    case CollectionKind::set: return "set";
    case CollectionKind::list: return "list";
    case CollectionKind::array: return "array";
  }
  return "?";
}

const char* errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::ok: return "ok";
    case Errc::unknown_oid: return "unknown oid";
    case Errc::unknown_parent: return "unknown parent";
    case Errc::parent_not_complex: return "parent not complex";
    case Errc::malformed_collection: return "malformed collection";
    case Errc::dangling_reference: return "dangling reference";
    case Errc::snapshot_syntax: return "snapshot syntax";
    case Errc::xml_syntax: return "xml syntax";
    case Errc::unsupported_feature: return "unsupported feature";
    case Errc::parse_error: return "parse error";
    case Errc::unbound_name: return "unbound name";
    case Errc::non_boolean_predicate: return "non-boolean predicate";
    case Errc::non_singleton: return "non-singleton result";
    case Errc::type_mismatch: return "type mismatch";
    case Errc::division_by_zero: return "division by zero";
    case Errc::no_fusion_plan: return "no fusion plan";
    case Errc::float_join_key: return "float join key";
    case Errc::non_scalar_element: return "non-scalar element";
    case Errc::invalid_params: return "invalid params";
    case Errc::strategy_mismatch: return "strategy mismatch";
    case Errc::io_error: return "io error";
    case Errc::out_of_memory: return "out of memory";
    case Errc::internal: return "internal error";
  }
  return "?";
}

void Store::validate_payload(const Payload& payload) const {
  if (const auto* coll = std::get_if<Collection>(&payload)) {
    if (!coll->elements.empty()) {
      std::size_t type_index = coll->elements.front().index();
      for (const auto& e : coll->elements) {
        if (e.index() != type_index) {
          fail(Errc::malformed_collection, "collection elements must have one type");
        }
      }
    }
    if (coll->kind == CollectionKind::set) {
      auto sorted = coll->elements;
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        fail(Errc::malformed_collection, "duplicate element in set");
      }
    }
    if (coll->kind == CollectionKind::array && coll->declared_len &&
        *coll->declared_len != coll->elements.size()) {
      fail(Errc::malformed_collection,
           "array declared length " + std::to_string(*coll->declared_len) + " but has " +
               std::to_string(coll->elements.size()) + " elements");
    }
  } else if (const auto* cplx = std::get_if<Complex>(&payload)) {
    if (!cplx->children.empty()) {
      fail(Errc::invalid_params, "complex payload must be inserted empty");
    }
  }
}

Oid Store::insert_object(Oid parent, std::string_view name, Payload payload) {
  if (!valid_name(name)) {
    fail(Errc::invalid_params, "invalid object name '" + std::string(name) + "'");
  }
  validate_payload(payload);
  if (parent) {
    auto it = objects_.find(parent.value);
    if (it == objects_.end()) {
      fail(Errc::unknown_parent, "unknown parent oid " + std::to_string(parent.value));
    }
    if (!std::holds_alternative<Complex>(it->second.payload)) {
      fail(Errc::parent_not_complex,
           "parent oid " + std::to_string(parent.value) + " is not complex");
    }
  }
  if (auto* coll = std::get_if<Collection>(&payload)) {
    if (coll->kind == CollectionKind::array) coll->declared_len = coll->elements.size();
    else coll->declared_len.reset();
  }

  Oid oid{next_oid_++};
  objects_.emplace(oid.value, StoredObject{oid, std::string(name), std::move(payload), parent});
  if (parent) {
    std::get<Complex>(objects_.at(parent.value).payload).children.push_back(oid);
  } else {
    root_order_.push_back(oid);
    auto it = roots_by_name_.find(name);
    if (it == roots_by_name_.end()) {
      roots_by_name_.emplace(std::string(name), std::vector<Oid>{oid});
    } else {
      it->second.push_back(oid);
    }
  }
  return oid;
}

const StoredObject& Store::fetch(Oid oid) const {
  auto it = objects_.find(oid.value);
  if (it == objects_.end()) fail(Errc::unknown_oid, "unknown oid " + std::to_string(oid.value));
  return it->second;
}

StoredObject& Store::fetch(Oid oid) {
  return const_cast<StoredObject&>(static_cast<const Store*>(this)->fetch(oid));
}

const StoredObject& Store::get_object(Oid oid) const { return fetch(oid); }

bool Store::contains(Oid oid) const noexcept { return objects_.contains(oid.value); }

std::vector<Oid> Store::roots(std::string_view name) const {
  auto it = roots_by_name_.find(name);
  if (it == roots_by_name_.end()) return {};
  return it->second;
}

std::vector<std::string> Store::class_names() const {
  std::vector<std::string> out;
  out.reserve(roots_by_name_.size());
  for (const auto& [name, oids] : roots_by_name_) out.push_back(name);
  return out;
}

std::vector<Oid> Store::resolve_child(Oid oid, std::string_view name) const {
  const auto& obj = fetch(oid);
  const auto* cplx = std::get_if<Complex>(&obj.payload);
  if (!cplx) return {};
  std::vector<Oid> out;
  for (Oid child : cplx->children) {
    if (fetch(child).name == name) out.push_back(child);
  }
  return out;
}

void Store::write_object(std::ostream& out, Oid oid) const {
  const auto& obj = fetch(oid);
  out << "OBJ " << obj.oid.value << ' ';
  if (obj.parent) out << obj.parent.value;
  else out << '-';
  out << ' ' << obj.name << ' ';
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::int64_t>) {
          out << "INT " << v;
        } else if constexpr (std::is_same_v<T, double>) {
          out << "FLT " << float_bits_hex(v);
        } else if constexpr (std::is_same_v<T, std::string>) {
          out << "STR " << quote_string(v);
        } else if constexpr (std::is_same_v<T, bool>) {
          out << "BOOL " << (v ? "true" : "false");
        } else if constexpr (std::is_same_v<T, Reference>) {
          out << "REF " << v.target.value;
        } else if constexpr (std::is_same_v<T, Complex>) {
          out << "CPLX";
        } else {
          out << (v.kind == CollectionKind::set ? "SET" : v.kind == CollectionKind::list ? "LIST" : "ARRAY");
          out << ' ' << v.elements.size();
          for (const auto& e : v.elements) {
            out << ' ';
            write_scalar_elem(out, e);
          }
        }
      },
      obj.payload);
  out << '\n';
  if (const auto* cplx = std::get_if<Complex>(&obj.payload)) {
    for (Oid child : cplx->children) write_object(out, child);
  }
}

void Store::save_snapshot(std::ostream& out) const {
  for (const auto& [value, obj] : objects_) {
    if (const auto* ref = std::get_if<Reference>(&obj.payload)) {
      if (!contains(ref->target)) {
        fail(Errc::dangling_reference, "oid " + std::to_string(value) + " references unknown oid " +
                                           std::to_string(ref->target.value));
      }
    }
  }
  out << kSnapshotHeader << '\n';
  for (Oid root : root_order_) write_object(out, root);
}

std::string Store::save_snapshot_text() const {
  std::ostringstream out;
  save_snapshot(out);
  return out.str();
}

Oid Store::insert_raw(Oid oid, Oid parent, std::string name, Payload payload, int line) {
  if (objects_.contains(oid.value)) {
    syntax_error(line, "duplicate oid " + std::to_string(oid.value));
  }
  if (parent) {
    auto it = objects_.find(parent.value);
    if (it == objects_.end()) syntax_error(line, "unknown parent " + std::to_string(parent.value));
    auto* cplx = std::get_if<Complex>(&it->second.payload);
    if (!cplx) syntax_error(line, "parent " + std::to_string(parent.value) + " is not complex");
    cplx->children.push_back(oid);
  }
  objects_.emplace(oid.value, StoredObject{oid, std::move(name), std::move(payload), parent});
  if (!parent) {
    root_order_.push_back(oid);
    roots_by_name_[objects_.at(oid.value).name].push_back(oid);
  }
  next_oid_ = std::max(next_oid_, oid.value + 1);
  return oid;
}

Store Store::load_snapshot(std::istream& in) {
  Store store;
  std::string line;
  int lineno = 0;
  std::vector<std::pair<int, Oid>> ref_targets;

  if (!std::getline(in, line)) syntax_error(1, "empty input");
  ++lineno;
  if (line != kSnapshotHeader) syntax_error(1, "bad header, expected '" + std::string(kSnapshotHeader) + "'");

  while (std::getline(in, line)) {
    ++lineno;
    LineCursor cur{line, lineno};
    auto tag = cur.token();
    if (tag != "OBJ") syntax_error(lineno, "expected OBJ record, got '" + std::string(tag) + "'");
    Oid oid{cur.number("oid")};
    if (!oid) syntax_error(lineno, "oid 0 is reserved");
    Oid parent{};
    {
      auto tok = cur.token();
      if (tok != "-") {
        std::uint64_t value = 0;
        auto res = std::from_chars(tok.data(), tok.data() + tok.size(), value);
        if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size() || value == 0) {
          syntax_error(lineno, "bad parent '" + std::string(tok) + "'");
        }
        parent = Oid{value};
      }
    }
    auto name_tok = cur.token();
    if (!valid_name(name_tok)) syntax_error(lineno, "bad object name");
    auto kind = cur.token();

    Payload payload;
    if (kind == "INT") {
      payload = cur.signed_number("int");
    } else if (kind == "FLT") {
      auto tok = cur.token();
      double v;
      if (!parse_float_bits_hex(tok, v)) syntax_error(lineno, "bad float bits");
      payload = v;
    } else if (kind == "STR") {
      payload = cur.quoted();
    } else if (kind == "BOOL") {
      auto tok = cur.token();
      if (tok == "true") payload = true;
      else if (tok == "false") payload = false;
      else syntax_error(lineno, "bad bool payload");
    } else if (kind == "REF") {
      Oid target{cur.number("ref target")};
      ref_targets.emplace_back(lineno, target);
      payload = Reference{target};
    } else if (kind == "CPLX") {
      payload = Complex{};
    } else if (kind == "SET" || kind == "LIST" || kind == "ARRAY") {
      Collection coll;
      coll.kind = kind == "SET" ? CollectionKind::set
                                : kind == "LIST" ? CollectionKind::list : CollectionKind::array;
      auto count = cur.number("element count");
      coll.elements.reserve(count);
      for (std::uint64_t i = 0; i < count; ++i) coll.elements.push_back(read_scalar_elem(cur));
      if (coll.kind == CollectionKind::array) coll.declared_len = coll.elements.size();
      try {
        store.validate_payload(payload = std::move(coll));
      } catch (const Error& e) {
        syntax_error(lineno, e.what());
      }
    } else {
      syntax_error(lineno, "unknown kind tag '" + std::string(kind) + "'");
    }
    if (!cur.at_end()) syntax_error(lineno, "trailing content");
    store.insert_raw(oid, parent, std::string(name_tok), std::move(payload), lineno);
  }

  for (const auto& [line_no, target] : ref_targets) {
    if (!store.contains(target)) {
      syntax_error(line_no, "reference to unknown oid " + std::to_string(target.value));
    }
  }
  return store;
}

Store Store::load_snapshot_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  return load_snapshot(in);
}

}  // namespace odralite
