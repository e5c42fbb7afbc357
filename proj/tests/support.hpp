#pragma once

// Random-store generation shared by the round-trip property tests.

#include <cstdint>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "store.hpp"

namespace testsupport {

using odralite::Collection;
using odralite::CollectionKind;
using odralite::Oid;
using odralite::Payload;
using odralite::Reference;
using odralite::Scalar;
using odralite::Store;

using Rng = std::mt19937_64;

inline std::string random_name(Rng& rng) {
  static const char* pool[] = {"alpha", "beta",  "gamma", "delta", "kappa",
                               "sigma", "omega", "x",     "y",     "z2"};
  return pool[rng() % 10];
}

inline std::string random_text(Rng& rng) {
  // Includes every character class the quoting layer has to escape.
  static const char alphabet[] = "abcXYZ 019_\"\\\n\t<>&'";
  std::string s;
  const std::size_t len = rng() % 9;
  for (std::size_t i = 0; i < len; ++i) s += alphabet[rng() % (sizeof(alphabet) - 1)];
  return s;
}

inline Scalar random_scalar(Rng& rng) {
  switch (rng() % 4) {
    case 0: return static_cast<std::int64_t>(static_cast<std::int64_t>(rng()) % 2001 - 1000);
    case 1: {
      std::uniform_real_distribution<double> d(-1e6, 1e6);
      return d(rng);
    }
    case 2: return random_text(rng);
    default: return rng() % 2 == 0;
  }
}

inline Collection random_collection(Rng& rng) {
  Collection c;
  c.kind = static_cast<CollectionKind>(rng() % 3);
  const std::size_t len = rng() % 6;
  // One element type per collection; sets stay duplicate free.
  const unsigned elem_kind = rng() % 3;
  for (std::size_t i = 0; i < len; ++i) {
    Scalar s;
    switch (elem_kind) {
      case 0: s = static_cast<std::int64_t>(rng() % 50); break;
      case 1: s = std::string(1, static_cast<char>('a' + rng() % 26)); break;
      default: s = rng() % 2 == 0; break;
    }
    if (c.kind == CollectionKind::set) {
      bool dup = false;
      for (const auto& e : c.elements) dup = dup || e == s;
      if (dup) continue;
    }
    c.elements.push_back(std::move(s));
  }
  return c;
}

// A store with nested complex objects, every payload kind, and references
// that may point anywhere (including forward targets).
inline Store random_store(Rng& rng, std::size_t target_objects = 24) {
  Store store;
  std::vector<Oid> complexes;
  std::vector<Oid> all;
  const std::size_t roots = 1 + rng() % 3;
  for (std::size_t r = 0; r < roots; ++r) {
    Oid oid = store.insert_object(Oid{}, random_name(rng), odralite::Complex{});
    complexes.push_back(oid);
    all.push_back(oid);
  }
  while (all.size() < target_objects) {
    Oid parent = complexes[rng() % complexes.size()];
    Payload payload;
    switch (rng() % 6) {
      case 0: payload = static_cast<std::int64_t>(static_cast<std::int64_t>(rng()) % 5000 - 2500); break;
      case 1: {
        std::uniform_real_distribution<double> d(-1e9, 1e9);
        payload = d(rng);
        break;
      }
      case 2: payload = random_text(rng); break;
      case 3: payload = rng() % 2 == 0; break;
      case 4: payload = random_collection(rng); break;
      default: payload = odralite::Complex{}; break;
    }
    Oid oid = store.insert_object(parent, random_name(rng), std::move(payload));
    if (std::holds_alternative<odralite::Complex>(store.get_object(oid).payload)) {
      complexes.push_back(oid);
    }
    all.push_back(oid);
  }
  // References are attached last so targets always exist.
  const std::size_t refs = rng() % 4;
  for (std::size_t i = 0; i < refs; ++i) {
    Oid parent = complexes[rng() % complexes.size()];
    Oid target = all[rng() % all.size()];
    store.insert_object(parent, random_name(rng), Reference{target});
  }
  return store;
}

}  // namespace testsupport
