#pragma once

#include <cstdint>
#include <string>

#include "fusion.hpp"
#include "store.hpp"

namespace odralite::bench {

struct GenParams {
  std::size_t n_left = 0;
  std::size_t n_right = 0;
  std::size_t coll_len = 0;
  std::uint64_t alphabet = 1;  // element values drawn uniformly from [0, alphabet)
  CollectionKind kind = CollectionKind::set;
  std::uint64_t seed = 0;
};

// Deterministic synthetic dataset: n_left roots "L" and n_right roots "R",
// each holding one collection child "k" of coll_len elements. Sets draw
// without replacement (requires alphabet >= coll_len).
Store gen_dataset(const GenParams& params);

struct BenchParams {
  GenParams gen;
  fusion::Mode mode = fusion::Mode::seq;
  std::size_t partitions = 16;
  unsigned reps = 5;  // >= 3
  unsigned threads = 1;
};

struct BenchRow {
  std::string strategy;  // "naive" or "fusion"
  double build_ms = 0.0;
  double probe_ms = 0.0;
  double total_ms = 0.0;
  std::uint64_t pairs = 0;
};

struct BenchResult {
  BenchRow naive;
  BenchRow fusion;
};

// Runs both strategies reps times over the generated dataset and reports
// median timings. Aborts with StrategyMismatch if the strategies ever
// disagree on the pair count.
BenchResult run_bench(const BenchParams& params);

extern const char* kCsvHeader;
std::string csv_row(const BenchParams& params, const BenchRow& row);

}  // namespace odralite::bench
