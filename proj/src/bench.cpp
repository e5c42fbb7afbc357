#include "bench.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <random>
#include <unordered_set>
#include <vector>

#include "error.hpp"

namespace odralite::bench {
namespace {

using Clock = std::chrono::steady_clock;

double ms_between(Clock::time_point a, Clock::time_point b) {
  return std::chrono::duration<double, std::milli>(b - a).count();
}

double median(std::vector<double> samples) {
  std::sort(samples.begin(), samples.end());
  return samples[samples.size() / 2];
}

Collection make_collection(std::mt19937_64& rng, const GenParams& p) {
  Collection coll;
  coll.kind = p.kind;
  coll.elements.reserve(p.coll_len);
  if (p.kind == CollectionKind::set) {
    std::unordered_set<std::uint64_t> seen;
    while (coll.elements.size() < p.coll_len) {
      // modulo instead of a distribution: identical across standard libraries
      const std::uint64_t v = rng() % p.alphabet;
      if (seen.insert(v).second) coll.elements.push_back(static_cast<std::int64_t>(v));
    }
  } else {
    for (std::size_t i = 0; i < p.coll_len; ++i) {
      coll.elements.push_back(static_cast<std::int64_t>(rng() % p.alphabet));
    }
  }
  return coll;
}

std::vector<fusion::JoinItem> items_of(const Store& store, std::string_view cls) {
  std::vector<fusion::JoinItem> items;
  for (const Oid root : store.roots(cls)) {
    const auto kids = store.resolve_child(root, "k");
    if (kids.size() != 1) fail(Errc::internal, "generated object lost its key collection");
    const auto* coll = std::get_if<Collection>(&store.get_object(kids[0]).payload);
    if (coll == nullptr) fail(Errc::internal, "generated key attribute is not a collection");
    items.push_back({root, coll});
  }
  return items;
}

std::string fmt_ms(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

}  // namespace

Store gen_dataset(const GenParams& params) {
  if (params.alphabet < 1) fail(Errc::invalid_params, "alphabet must be at least 1");
  if (params.kind == CollectionKind::set && params.alphabet < params.coll_len) {
    fail(Errc::invalid_params, "set generation needs alphabet >= collection length");
  }
  Store store;
  std::mt19937_64 rng(params.seed);
  const auto add_class = [&](const char* name, std::size_t count) {
    for (std::size_t i = 0; i < count; ++i) {
      const Oid root = store.insert_object(Oid{}, name, Complex{});
      store.insert_object(root, "k", make_collection(rng, params));
    }
  };
  add_class("L", params.n_left);
  add_class("R", params.n_right);
  return store;
}

BenchResult run_bench(const BenchParams& params) {
  if (params.reps < 3) fail(Errc::invalid_params, "repetitions must be at least 3");
  const Store store = gen_dataset(params.gen);
  const auto lefts = items_of(store, "L");
  const auto rights = items_of(store, "R");

  BenchResult result;
  result.naive.strategy = "naive";
  result.fusion.strategy = "fusion";

  std::vector<double> naive_totals;
  std::uint64_t naive_pairs = 0;
  for (unsigned rep = 0; rep < params.reps; ++rep) {
    const auto t0 = Clock::now();
    const auto pairs = fusion::nested_loop_join(lefts, rights, params.mode);
    const auto t1 = Clock::now();
    naive_totals.push_back(ms_between(t0, t1));
    naive_pairs = pairs.size();
  }
  result.naive.total_ms = median(std::move(naive_totals));
  result.naive.pairs = naive_pairs;

  std::vector<double> build_samples;
  std::vector<double> probe_samples;
  std::vector<double> total_samples;
  std::uint64_t fusion_pairs = 0;
  for (unsigned rep = 0; rep < params.reps; ++rep) {
    const auto t0 = Clock::now();
    auto left_keys = fusion::canonicalize_items(lefts, params.mode);
    const auto index =
        fusion::build_index(left_keys, params.partitions, params.mode, params.threads);
    const auto t1 = Clock::now();
    auto right_keys = fusion::canonicalize_items(rights, params.mode);
    const auto pairs = fusion::probe_all(index, right_keys, params.threads);
    const auto t2 = Clock::now();
    build_samples.push_back(ms_between(t0, t1));
    probe_samples.push_back(ms_between(t1, t2));
    total_samples.push_back(ms_between(t0, t2));
    fusion_pairs = pairs.size();
  }
  result.fusion.build_ms = median(std::move(build_samples));
  result.fusion.probe_ms = median(std::move(probe_samples));
  result.fusion.total_ms = median(std::move(total_samples));
  result.fusion.pairs = fusion_pairs;

  if (naive_pairs != fusion_pairs) {
    fail(Errc::strategy_mismatch,
         "strategies disagree: naive found " + std::to_string(naive_pairs) + " pairs, fusion " +
             std::to_string(fusion_pairs));
  }
  return result;
}

const char* kCsvHeader = "n_left,n_right,coll_len,kind,mode,strategy,build_ms,probe_ms,total_ms,pairs,seed";

std::string csv_row(const BenchParams& params, const BenchRow& row) {
  std::string out;
  out += std::to_string(params.gen.n_left);
  out += ',';
  out += std::to_string(params.gen.n_right);
  out += ',';
  out += std::to_string(params.gen.coll_len);
  out += ',';
  out += collection_kind_name(params.gen.kind);
  out += ',';
  out += fusion::mode_name(params.mode);
  out += ',';
  out += row.strategy;
  out += ',';
  out += fmt_ms(row.build_ms);
  out += ',';
  out += fmt_ms(row.probe_ms);
  out += ',';
  out += fmt_ms(row.total_ms);
  out += ',';
  out += std::to_string(row.pairs);
  out += ',';
  out += std::to_string(params.gen.seed);
  return out;
}

}  // namespace odralite::bench
