#include "fusion.hpp"

#include <algorithm>
#include <atomic>
#include <thread>
#include <type_traits>

#include "error.hpp"

namespace odralite::fusion {
namespace {

std::atomic<std::uint64_t> g_element_hashes{0};
std::atomic<std::uint64_t> g_pair_compares{0};

constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ull;
constexpr std::uint64_t kFnvPrime = 0x100000001b3ull;

std::uint64_t fnv1a(std::uint64_t h, const unsigned char* data, std::size_t n) noexcept {
  for (std::size_t i = 0; i < n; ++i) {
    h ^= data[i];
    h *= kFnvPrime;
  }
  return h;
}

// Tagged so 1, "1" and true hash apart: 0x01 int (big-endian two's
// complement), 0x02 string bytes, 0x03 bool byte.
std::uint64_t hash_int(std::int64_t v) noexcept {
  unsigned char buf[9];
  buf[0] = 0x01;
  auto u = static_cast<std::uint64_t>(v);
  for (int i = 0; i < 8; ++i) {
    buf[1 + i] = static_cast<unsigned char>((u >> (8 * (7 - i))) & 0xff);
  }
  return fnv1a(kFnvOffset, buf, sizeof buf);
}

std::uint64_t hash_str(const std::string& v) noexcept {
  unsigned char tag = 0x02;
  std::uint64_t h = fnv1a(kFnvOffset, &tag, 1);
  return fnv1a(h, reinterpret_cast<const unsigned char*>(v.data()), v.size());
}

std::uint64_t hash_bool(bool v) noexcept {
  unsigned char buf[2] = {0x03, static_cast<unsigned char>(v ? 1 : 0)};
  return fnv1a(kFnvOffset, buf, sizeof buf);
}

void count_hash() noexcept { g_element_hashes.fetch_add(1, std::memory_order_relaxed); }

}  // namespace

const char* mode_name(Mode mode) noexcept { return mode == Mode::seq ? "seq" : "bag"; }

ElementKey::ElementKey(bool v) : value_(v), hash_(hash_bool(v)) { count_hash(); }

ElementKey::ElementKey(std::int64_t v) : value_(v), hash_(hash_int(v)) { count_hash(); }

ElementKey::ElementKey(std::string v) : value_(std::move(v)), hash_(hash_str(std::get<std::string>(value_))) {
  count_hash();
}

ElementKey ElementKey::from_scalar(const Scalar& s) {
  return std::visit(
      [](const auto& v) -> ElementKey {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, double>) {
          fail(Errc::float_join_key, "float elements cannot form join keys");
        } else {
          return ElementKey(v);
        }
      },
      s);
}

KeySequence canonical_key(const Collection& coll, Mode mode) {
  KeySequence key;
  key.reserve(coll.elements.size());
  for (const Scalar& s : coll.elements) {
    key.push_back(ElementKey::from_scalar(s));
  }
  if (coll.kind == CollectionKind::set || mode == Mode::bag) {
    std::sort(key.begin(), key.end());
  }
  return key;
}

std::size_t partition_of(const KeySequence& key, std::size_t partition_count) noexcept {
  if (key.empty() || partition_count <= 1) return 0;
  return static_cast<std::size_t>(key.front().hash() % partition_count);
}

std::span<const Oid> hashsearch(const TrieNode& node, std::span<const ElementKey> key,
                                std::size_t pos) {
  if (pos == key.size()) return node.terminals;
  auto it = node.edges.find(key[pos]);
  if (it == node.edges.end()) return {};
  return hashsearch(*it->second, key, pos + 1);
}

FusionIndex::FusionIndex(std::size_t partition_count, Mode mode) : mode_(mode) {
  if (partition_count == 0) fail(Errc::invalid_params, "partition count must be positive");
  partitions_.reserve(partition_count);
  for (std::size_t i = 0; i < partition_count; ++i) {
    partitions_.push_back(std::make_unique<TrieNode>());
  }
}

void FusionIndex::insert(Oid oid, const KeySequence& key) {
  TrieNode* node = partitions_[partition_of(key, partitions_.size())].get();
  for (const ElementKey& k : key) {
    auto& slot = node->edges[k];
    if (!slot) slot = std::make_unique<TrieNode>();
    node = slot.get();
  }
  node->terminals.push_back(oid);
}

std::span<const Oid> FusionIndex::probe(const KeySequence& key) const {
  const TrieNode& root = *partitions_[partition_of(key, partitions_.size())];
  return hashsearch(root, std::span<const ElementKey>(key.data(), key.size()), 0);
}

std::vector<KeyedItem> canonicalize_items(std::span<const JoinItem> items, Mode mode) {
  std::vector<KeyedItem> out;
  out.reserve(items.size());
  for (const JoinItem& item : items) {
    if (item.collection == nullptr) {
      fail(Errc::internal, "join item without collection payload");
    }
    try {
      out.emplace_back(item.oid, canonical_key(*item.collection, mode));
    } catch (const Error& e) {
      fail(e.code(), std::string(e.what()) + " (object #" + std::to_string(item.oid.value) + ")");
    }
  }
  return out;
}

FusionIndex build_index(std::span<const KeyedItem> items, std::size_t partition_count, Mode mode,
                        unsigned threads) {
  FusionIndex index(partition_count, mode);
  const std::size_t p_count = index.partition_count();
  unsigned workers = std::max(1u, threads);
  workers = std::min<unsigned>(workers, static_cast<unsigned>(p_count));
  if (workers <= 1 || items.size() < 2 * p_count) {
    for (const auto& [oid, key] : items) index.insert(oid, key);
    return index;
  }
  // Group by partition first so each worker owns disjoint tries.
  std::vector<std::vector<std::size_t>> by_partition(p_count);
  for (std::size_t i = 0; i < items.size(); ++i) {
    by_partition[partition_of(items[i].second, p_count)].push_back(i);
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t p = w; p < p_count; p += workers) {
        for (std::size_t i : by_partition[p]) index.insert(items[i].first, items[i].second);
      }
    });
  }
  for (auto& t : pool) t.join();
  return index;
}

std::vector<std::pair<Oid, Oid>> probe_all(const FusionIndex& index,
                                           std::span<const KeyedItem> rights, unsigned threads) {
  std::vector<std::pair<Oid, Oid>> pairs;
  unsigned workers = std::max(1u, threads);
  if (workers <= 1 || rights.size() < 1024) {
    for (const auto& [oid, key] : rights) {
      for (Oid left : index.probe(key)) pairs.emplace_back(left, oid);
    }
    return pairs;
  }
  // Chunked rights, concatenated in chunk order: same pair order as the
  // sequential loop.
  const std::size_t chunk = (rights.size() + workers - 1) / workers;
  std::vector<std::vector<std::pair<Oid, Oid>>> partial(workers);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      const std::size_t lo = std::min(rights.size(), w * chunk);
      const std::size_t hi = std::min(rights.size(), lo + chunk);
      for (std::size_t i = lo; i < hi; ++i) {
        for (Oid left : index.probe(rights[i].second)) {
          partial[w].emplace_back(left, rights[i].first);
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  std::size_t total = 0;
  for (const auto& part : partial) total += part.size();
  pairs.reserve(total);
  for (const auto& part : partial) pairs.insert(pairs.end(), part.begin(), part.end());
  return pairs;
}

std::vector<std::pair<Oid, Oid>> fusion_join(std::span<const JoinItem> left,
                                             std::span<const JoinItem> right,
                                             const JoinOptions& opts) {
  auto lefts = canonicalize_items(left, opts.mode);
  auto rights = canonicalize_items(right, opts.mode);
  FusionIndex index = build_index(lefts, opts.partitions, opts.mode, opts.threads);
  return probe_all(index, rights, opts.threads);
}

std::vector<std::pair<Oid, Oid>> nested_loop_join(std::span<const JoinItem> left,
                                                  std::span<const JoinItem> right, Mode mode) {
  auto lefts = canonicalize_items(left, mode);
  auto rights = canonicalize_items(right, mode);
  std::vector<std::pair<Oid, Oid>> pairs;
  for (const auto& [loid, lkey] : lefts) {
    for (const auto& [roid, rkey] : rights) {
      g_pair_compares.fetch_add(1, std::memory_order_relaxed);
      if (lkey == rkey) pairs.emplace_back(loid, roid);
    }
  }
  return pairs;
}

std::uint64_t element_hash_count() noexcept {
  return g_element_hashes.load(std::memory_order_relaxed);
}

void reset_element_hash_count() noexcept {
  g_element_hashes.store(0, std::memory_order_relaxed);
}

std::uint64_t pair_compare_count() noexcept {
  return g_pair_compares.load(std::memory_order_relaxed);
}

void reset_pair_compare_count() noexcept { g_pair_compares.store(0, std::memory_order_relaxed); }

}  // namespace odralite::fusion
