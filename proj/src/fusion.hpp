#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

#include "store.hpp"

namespace odralite::fusion {

// Equality semantics for list/array join keys: seq keeps stored order, bag
// sorts to multiset equality. Sets are always sorted.
enum class Mode { seq, bag };

const char* mode_name(Mode mode) noexcept;

// One scalar join-key element. Floats are rejected as join keys; bools sort
// below ints, ints below strings, natural order within a kind. The 64-bit
// hash is computed once at construction and cached.
class ElementKey {
 public:
  explicit ElementKey(bool v);
  explicit ElementKey(std::int64_t v);
  explicit ElementKey(std::string v);

  // Throws float_join_key for doubles.
  static ElementKey from_scalar(const Scalar& s);

  std::uint64_t hash() const noexcept { return hash_; }

  friend bool operator==(const ElementKey& a, const ElementKey& b) {
    return a.hash_ == b.hash_ && a.value_ == b.value_;
  }
  friend bool operator<(const ElementKey& a, const ElementKey& b) { return a.value_ < b.value_; }

 private:
  std::variant<bool, std::int64_t, std::string> value_;  // index order is the cross-kind order
  std::uint64_t hash_;
};

struct ElementKeyHasher {
  std::size_t operator()(const ElementKey& k) const noexcept {
    return static_cast<std::size_t>(k.hash());
  }
};

using KeySequence = std::vector<ElementKey>;

// Canonical join key of a collection: sets sorted ascending in both modes,
// lists/arrays kept in stored order under seq and sorted under bag.
KeySequence canonical_key(const Collection& coll, Mode mode);

// Empty sequences route to partition 0; otherwise the first element's hash
// picks the partition. For sets the first canonical element is the minimum.
std::size_t partition_of(const KeySequence& key, std::size_t partition_count) noexcept;

struct TrieNode {
  std::unordered_map<ElementKey, std::unique_ptr<TrieNode>, ElementKeyHasher> edges;
  std::vector<Oid> terminals;  // objects whose key sequence ends exactly here
};

// Matches at exactly pos == key length; prefixes and extensions never match.
std::span<const Oid> hashsearch(const TrieNode& node, std::span<const ElementKey> key,
                                std::size_t pos);

// Partitioned trie-of-hash-tables built from one side of a join.
class FusionIndex {
 public:
  FusionIndex(std::size_t partition_count, Mode mode);

  void insert(Oid oid, const KeySequence& key);
  std::span<const Oid> probe(const KeySequence& key) const;

  std::size_t partition_count() const noexcept { return partitions_.size(); }
  Mode mode() const noexcept { return mode_; }
  const TrieNode& partition_root(std::size_t p) const { return *partitions_[p]; }

 private:
  std::vector<std::unique_ptr<TrieNode>> partitions_;
  Mode mode_;
};

using KeyedItem = std::pair<Oid, KeySequence>;

FusionIndex build_index(std::span<const KeyedItem> items, std::size_t partition_count, Mode mode,
                        unsigned threads = 1);

struct JoinItem {
  Oid oid;
  const Collection* collection;
};

struct JoinOptions {
  Mode mode = Mode::seq;
  std::size_t partitions = 16;
  unsigned threads = 1;
};

// Canonicalizes each item's collection; errors carry the offending oid.
std::vector<KeyedItem> canonicalize_items(std::span<const JoinItem> items, Mode mode);

// Probes every right item against the index; pairs are (left, right).
std::vector<std::pair<Oid, Oid>> probe_all(const FusionIndex& index,
                                           std::span<const KeyedItem> rights,
                                           unsigned threads = 1);

// Hash-trie join: builds from the left side, probes with the right side.
// Multiset-equal to nested_loop_join on the same input.
std::vector<std::pair<Oid, Oid>> fusion_join(std::span<const JoinItem> left,
                                             std::span<const JoinItem> right,
                                             const JoinOptions& opts);

// Brute-force reference: all pairs with equal canonical keys, emitted in
// left-major, right-minor input order.
std::vector<std::pair<Oid, Oid>> nested_loop_join(std::span<const JoinItem> left,
                                                  std::span<const JoinItem> right, Mode mode);

// Work counters, mainly for complexity checks and the bench harness.
// element_hash_count counts hash computations (one per key construction);
// pair_compare_count counts nested-loop key comparisons.
std::uint64_t element_hash_count() noexcept;
void reset_element_hash_count() noexcept;
std::uint64_t pair_compare_count() noexcept;
void reset_pair_compare_count() noexcept;

}  // namespace odralite::fusion
