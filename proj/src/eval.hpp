#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "fusion.hpp"
#include "query.hpp"
#include "store.hpp"

namespace odralite::eval {

// Query results: atoms (scalars or whole collection values), references to
// store objects, and ordered tuples. Binders never appear here; they live
// only in environment frames.
using AtomValue = std::variant<std::int64_t, double, std::string, bool, Collection>;

struct RefResult {
  Oid target;
};

struct RuntimeResult;
using TupleResult = std::vector<RuntimeResult>;

struct RuntimeResult {
  std::variant<AtomValue, RefResult, TupleResult> value;
};

using ResultBag = std::vector<RuntimeResult>;

RuntimeResult atom_result(AtomValue v);
RuntimeResult ref_result(Oid target);
RuntimeResult tuple_result(TupleResult items);

struct Binder {
  std::string name;
  RuntimeResult value;
};

struct EnvFrame {
  std::vector<Binder> binders;
};

// Environment stack. Lookup scans top-down; the first frame holding the name
// wins and contributes every matching binder in frame order.
class EnvStack {
 public:
  void push(EnvFrame frame) { frames_.push_back(std::move(frame)); }
  void pop() { frames_.pop_back(); }
  std::size_t depth() const noexcept { return frames_.size(); }
  std::optional<ResultBag> lookup(std::string_view name) const;

 private:
  std::vector<EnvFrame> frames_;
};

class FrameGuard {
 public:
  FrameGuard(EnvStack& stack, EnvFrame frame) : stack_(stack) { stack_.push(std::move(frame)); }
  ~FrameGuard() { stack_.pop(); }
  FrameGuard(const FrameGuard&) = delete;
  FrameGuard& operator=(const FrameGuard&) = delete;

 private:
  EnvStack& stack_;
};

// Scope opened by one element: children of a complex object become binders
// (atomic by value, references dereferenced, complex children by oid,
// collections as collection atoms); tuples concatenate; atoms open nothing.
EnvFrame nested(const Store& store, const RuntimeResult& r);

// Follows Reference payloads until a non-reference object; guards cycles.
Oid resolve_ref_chain(const Store& store, Oid start);

class Interpreter {
 public:
  explicit Interpreter(const Store& store, fusion::Mode mode = fusion::Mode::seq);

  // Evaluates under the current environment; asserts the stack depth is
  // restored at every boundary.
  ResultBag eval(const query::QueryNode& node);

  EnvStack& envs() { return envs_; }
  const Store& store() const { return store_; }
  fusion::Mode mode() const { return mode_; }

 private:
  ResultBag eval_node(const query::QueryNode& node);
  AtomValue deref(const RuntimeResult& r) const;
  bool eval_predicate(const query::QueryNode& pred, const char* what);
  RuntimeResult eval_single(const query::QueryNode& node, const char* what);
  AtomValue compare(query::CompareOp op, const AtomValue& a, const AtomValue& b) const;
  AtomValue arith(query::ArithOp op, const AtomValue& a, const AtomValue& b) const;

  const Store& store_;
  fusion::Mode mode_;
  EnvStack envs_;
};

enum class Strategy { naive, fusion, auto_ };

const char* strategy_name(Strategy s) noexcept;
std::optional<Strategy> strategy_from_name(std::string_view text) noexcept;

struct EvalOptions {
  Strategy strategy = Strategy::auto_;
  fusion::Mode mode = fusion::Mode::seq;
  std::size_t partitions = 16;
  unsigned threads = 1;
};

// Rewrite target for an independent equi-join; filter/source/projection
// pointers borrow from the analyzed query tree.
struct EquiJoinPlan {
  std::string left_class;
  const query::QueryNode* left_filter = nullptr;
  std::vector<std::string> left_path;
  std::string right_class;
  const query::QueryNode* right_filter = nullptr;
  std::vector<std::string> right_path;
  const query::QueryNode* left_source = nullptr;
  const query::QueryNode* right_source = nullptr;
  std::vector<const query::QueryNode*> projections;  // applied in order
};

struct Detection {
  std::optional<EquiJoinPlan> plan;
  std::string reason;  // why no plan; empty when plan is set
};

// Static, store-informed shape check: Dot-projections over
// Join(Class|Class-where-filter, ..., on lhs == rhs) with attribute paths
// that resolve uniquely to collections on every instance and no name capture
// across sides. Conservative: declines anything it cannot prove independent.
Detection detect_equi_join(const Store& store, const query::QueryNode& root);

ResultBag execute(const Store& store, const query::QueryNode& node, const EvalOptions& options);

std::string explain_text(const Store& store, const query::QueryNode& node,
                         const EvalOptions& options);

// One display line: tuple components tab-separated, strings quoted, refs as
// #oid, collections in display form.
std::string render_result(const Store& store, const RuntimeResult& r);

// Depth-restoration instrumentation (see Interpreter::eval).
std::uint64_t depth_checks() noexcept;
std::uint64_t depth_violations() noexcept;
void reset_depth_counters() noexcept;

}  // namespace odralite::eval
