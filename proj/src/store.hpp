#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

#include "error.hpp"

namespace odralite {

// Object identifier. 0 is reserved as "none" (used for parents of roots).
struct Oid {
  std::uint64_t value = 0;

  friend auto operator<=>(const Oid&, const Oid&) = default;
  explicit operator bool() const noexcept { return value != 0; }
};

// Scalar values that may appear as atoms and as collection elements.
using Scalar = std::variant<std::int64_t, double, std::string, bool>;

enum class CollectionKind { set, list, array };

const char* collection_kind_name(CollectionKind kind) noexcept;

struct Collection {
  CollectionKind kind = CollectionKind::set;
  std::vector<Scalar> elements;
  // Arrays carry an explicit length; normalized to elements.size() on insert.
  std::optional<std::size_t> declared_len;
};

struct Reference {
  Oid target;
};

struct Complex {
  std::vector<Oid> children;
};

using Payload =
    std::variant<std::int64_t, double, std::string, bool, Reference, Collection, Complex>;

struct StoredObject {
  Oid oid;
  std::string name;
  Payload payload;
  Oid parent;  // 0 for roots
};

// In-memory object store. Objects are identified, named, possibly nested,
// and may hold atomic values, references, scalar collections, or children.
// Root objects are grouped by name into classes.
//
// Mutations must be serialized by the caller; reads may run concurrently
// between mutations.
class Store {
 public:
  Store() = default;

  // Inserts an object. parent == Oid{} creates a root. Complex payloads must
  // be inserted with an empty child list; children are attached by inserting
  // them with this object as parent.
  Oid insert_object(Oid parent, std::string_view name, Payload payload);

  const StoredObject& get_object(Oid oid) const;
  bool contains(Oid oid) const noexcept;
  std::size_t object_count() const noexcept { return objects_.size(); }

  // All root objects with the given name, in insertion order.
  std::vector<Oid> roots(std::string_view name) const;
  // Class names (names that have at least one root), sorted.
  std::vector<std::string> class_names() const;
  // All roots regardless of name, in insertion order.
  const std::vector<Oid>& root_order() const noexcept { return root_order_; }

  // Children of oid whose name matches, in stored order. Empty for
  // non-complex objects.
  std::vector<Oid> resolve_child(Oid oid, std::string_view name) const;

  // Textual snapshot persistence. save validates that all references
  // resolve; load accepts forward references within the file and validates
  // at the end.
  void save_snapshot(std::ostream& out) const;
  std::string save_snapshot_text() const;
  static Store load_snapshot(std::istream& in);
  static Store load_snapshot_text(std::string_view text);

 private:
  void validate_payload(const Payload& payload) const;
  StoredObject& fetch(Oid oid);
  const StoredObject& fetch(Oid oid) const;
  Oid insert_raw(Oid oid, Oid parent, std::string name, Payload payload, int line_for_errors);
  void write_object(std::ostream& out, Oid oid) const;

  std::uint64_t next_oid_ = 1;
  std::unordered_map<std::uint64_t, StoredObject> objects_;
  std::vector<Oid> root_order_;
  std::map<std::string, std::vector<Oid>, std::less<>> roots_by_name_;
};

}  // namespace odralite
