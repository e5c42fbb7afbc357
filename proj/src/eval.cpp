#include "eval.hpp"

#include <algorithm>
#include <atomic>
#include <type_traits>
#include <utility>

#include "format.hpp"

namespace odralite::eval {
namespace {

std::atomic<std::uint64_t> g_depth_checks{0};
std::atomic<std::uint64_t> g_depth_violations{0};

const char* atom_kind_name(const AtomValue& v) noexcept {
  switch (v.index()) {
    case 0: return "int";
    case 1: return "float";
    case 2: return "string";
    case 3: return "bool";
    default: return "collection";
  }
}

template <typename T>
bool apply_compare(query::CompareOp op, const T& a, const T& b) {
  switch (op) {
    case query::CompareOp::eq: return a == b;
    case query::CompareOp::ne: return a != b;
    case query::CompareOp::lt: return a < b;
    case query::CompareOp::le: return a <= b;
    case query::CompareOp::gt: return a > b;
    case query::CompareOp::ge: return a >= b;
  }
  return false;
}

std::optional<double> numeric_of(const AtomValue& v) {
  if (const auto* i = std::get_if<std::int64_t>(&v)) return static_cast<double>(*i);
  if (const auto* d = std::get_if<double>(&v)) return *d;
  return std::nullopt;
}

}  // namespace

RuntimeResult atom_result(AtomValue v) { return RuntimeResult{std::move(v)}; }
RuntimeResult ref_result(Oid target) { return RuntimeResult{RefResult{target}}; }
RuntimeResult tuple_result(TupleResult items) { return RuntimeResult{std::move(items)}; }

std::optional<ResultBag> EnvStack::lookup(std::string_view name) const {
  for (auto fit = frames_.rbegin(); fit != frames_.rend(); ++fit) {
    ResultBag bag;
    for (const Binder& b : fit->binders) {
      if (b.name == name) bag.push_back(b.value);
    }
    if (!bag.empty()) return bag;
  }
  return std::nullopt;
}

Oid resolve_ref_chain(const Store& store, Oid start) {
  Oid cur = start;
  std::size_t hops = 0;
  const std::size_t limit = store.object_count() + 1;
  while (true) {
    const StoredObject& obj = store.get_object(cur);
    const auto* ref = std::get_if<Reference>(&obj.payload);
    if (!ref) return cur;
    if (++hops > limit) {
      fail(Errc::type_mismatch, "reference cycle at object #" + std::to_string(cur.value));
    }
    cur = ref->target;
  }
}

EnvFrame nested(const Store& store, const RuntimeResult& r) {
  EnvFrame frame;
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, TupleResult>) {
          for (const RuntimeResult& item : v) {
            EnvFrame sub = nested(store, item);
            for (Binder& b : sub.binders) frame.binders.push_back(std::move(b));
          }
        } else if constexpr (std::is_same_v<T, RefResult>) {
          const StoredObject& obj = store.get_object(v.target);
          const auto* cplx = std::get_if<Complex>(&obj.payload);
          if (cplx == nullptr) return;
          for (Oid child_oid : cplx->children) {
            const StoredObject& child = store.get_object(child_oid);
            std::visit(
                [&](const auto& payload) {
                  using P = std::decay_t<decltype(payload)>;
                  if constexpr (std::is_same_v<P, Reference>) {
                    frame.binders.push_back(
                        {child.name, ref_result(resolve_ref_chain(store, payload.target))});
                  } else if constexpr (std::is_same_v<P, Complex>) {
                    frame.binders.push_back({child.name, ref_result(child.oid)});
                  } else {
                    frame.binders.push_back({child.name, atom_result(AtomValue(payload))});
                  }
                },
                child.payload);
          }
        }
        // plain atoms open no scope
      },
      r.value);
  return frame;
}

Interpreter::Interpreter(const Store& store, fusion::Mode mode) : store_(store), mode_(mode) {
  EnvFrame base;
  for (const std::string& cls : store.class_names()) {
    for (Oid root : store.roots(cls)) base.binders.push_back({cls, ref_result(root)});
  }
  envs_.push(std::move(base));
}

ResultBag Interpreter::eval(const query::QueryNode& node) {
  const std::size_t entry_depth = envs_.depth();
  ResultBag out = eval_node(node);
  g_depth_checks.fetch_add(1, std::memory_order_relaxed);
  if (envs_.depth() != entry_depth) {
    g_depth_violations.fetch_add(1, std::memory_order_relaxed);
    fail(Errc::internal, "environment stack depth not restored after evaluation");
  }
  return out;
}

ResultBag Interpreter::eval_node(const query::QueryNode& node) {
  using namespace query;
  return std::visit(
      [&](const auto& n) -> ResultBag {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Name>) {
          auto found = envs_.lookup(n.ident);
          if (!found) fail(Errc::unbound_name, "unbound name: " + n.ident);
          return std::move(*found);
        } else if constexpr (std::is_same_v<T, LitInt>) {
          return {atom_result(AtomValue(n.value))};
        } else if constexpr (std::is_same_v<T, LitFloat>) {
          return {atom_result(AtomValue(n.value))};
        } else if constexpr (std::is_same_v<T, LitStr>) {
          return {atom_result(AtomValue(n.value))};
        } else if constexpr (std::is_same_v<T, LitBool>) {
          return {atom_result(AtomValue(n.value))};
        } else if constexpr (std::is_same_v<T, Compare>) {
          AtomValue a = deref(eval_single(*n.lhs, "comparison operand"));
          AtomValue b = deref(eval_single(*n.rhs, "comparison operand"));
          return {atom_result(compare(n.op, a, b))};
        } else if constexpr (std::is_same_v<T, Arith>) {
          AtomValue a = deref(eval_single(*n.lhs, "arithmetic operand"));
          AtomValue b = deref(eval_single(*n.rhs, "arithmetic operand"));
          return {atom_result(arith(n.op, a, b))};
        } else if constexpr (std::is_same_v<T, And> || std::is_same_v<T, Or>) {
          AtomValue a = deref(eval_single(*n.lhs, "boolean operand"));
          AtomValue b = deref(eval_single(*n.rhs, "boolean operand"));
          const bool* ba = std::get_if<bool>(&a);
          const bool* bb = std::get_if<bool>(&b);
          if (ba == nullptr || bb == nullptr) {
            fail(Errc::type_mismatch, std::string("boolean operator applied to ") +
                                          atom_kind_name(ba ? b : a));
          }
          const bool value = std::is_same_v<T, And> ? (*ba && *bb) : (*ba || *bb);
          return {atom_result(AtomValue(value))};
        } else if constexpr (std::is_same_v<T, Where>) {
          ResultBag src = eval(*n.source);
          ResultBag out;
          for (const RuntimeResult& x : src) {
            FrameGuard guard(envs_, nested(store_, x));
            if (eval_predicate(*n.predicate, "where predicate")) out.push_back(x);
          }
          return out;
        } else if constexpr (std::is_same_v<T, Dot>) {
          ResultBag src = eval(*n.source);
          ResultBag out;
          for (const RuntimeResult& x : src) {
            FrameGuard guard(envs_, nested(store_, x));
            ResultBag sub = eval(*n.expr);
            for (RuntimeResult& v : sub) out.push_back(std::move(v));
          }
          return out;
        } else if constexpr (std::is_same_v<T, Join>) {
          ResultBag src = eval(*n.source);
          ResultBag out;
          for (const RuntimeResult& x : src) {
            FrameGuard guard(envs_, nested(store_, x));
            ResultBag ys = eval(*n.expr);
            for (RuntimeResult& y : ys) {
              bool keep = true;
              if (n.on_pred) {
                FrameGuard inner(envs_, nested(store_, y));
                keep = eval_predicate(*n.on_pred, "join predicate");
              }
              if (keep) {
                TupleResult pair;
                pair.reserve(2);
                pair.push_back(x);
                pair.push_back(std::move(y));
                out.push_back(tuple_result(std::move(pair)));
              }
            }
          }
          return out;
        } else {
          static_assert(std::is_same_v<T, Tuple>);
          TupleResult items;
          items.reserve(n.items.size());
          for (const NodePtr& item : n.items) {
            items.push_back(eval_single(*item, "tuple component"));
          }
          return {tuple_result(std::move(items))};
        }
      },
      node.node);
}

RuntimeResult Interpreter::eval_single(const query::QueryNode& node, const char* what) {
  ResultBag bag = eval(node);
  if (bag.size() != 1) {
    fail(Errc::non_singleton, std::string(what) + " must yield exactly one result, got " +
                                  std::to_string(bag.size()));
  }
  return std::move(bag.front());
}

bool Interpreter::eval_predicate(const query::QueryNode& pred, const char* what) {
  ResultBag bag = eval(pred);
  if (bag.size() != 1) {
    fail(Errc::non_singleton, std::string(what) + " must yield exactly one result, got " +
                                  std::to_string(bag.size()));
  }
  AtomValue v = deref(bag.front());
  const bool* b = std::get_if<bool>(&v);
  if (b == nullptr) {
    fail(Errc::non_boolean_predicate,
         std::string(what) + " must be boolean, got " + atom_kind_name(v));
  }
  return *b;
}

AtomValue Interpreter::deref(const RuntimeResult& r) const {
  return std::visit(
      [&](const auto& v) -> AtomValue {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, AtomValue>) {
          return v;
        } else if constexpr (std::is_same_v<T, RefResult>) {
          const StoredObject& obj = store_.get_object(resolve_ref_chain(store_, v.target));
          return std::visit(
              [&](const auto& payload) -> AtomValue {
                using P = std::decay_t<decltype(payload)>;
                if constexpr (std::is_same_v<P, Complex>) {
                  fail(Errc::type_mismatch,
                       "complex object " + obj.name + " used as a single value");
                } else if constexpr (std::is_same_v<P, Reference>) {
                  fail(Errc::internal, "unresolved reference chain");
                } else {
                  return AtomValue(payload);
                }
              },
              obj.payload);
        } else {
          fail(Errc::type_mismatch, "tuple used as a single value");
        }
      },
      r.value);
}

AtomValue Interpreter::compare(query::CompareOp op, const AtomValue& a, const AtomValue& b) const {
  using query::CompareOp;
  const auto* ia = std::get_if<std::int64_t>(&a);
  const auto* ib = std::get_if<std::int64_t>(&b);
  if (ia && ib) return AtomValue(apply_compare(op, *ia, *ib));
  auto da = numeric_of(a);
  auto db = numeric_of(b);
  if (da && db) return AtomValue(apply_compare(op, *da, *db));
  const auto* sa = std::get_if<std::string>(&a);
  const auto* sb = std::get_if<std::string>(&b);
  if (sa && sb) return AtomValue(apply_compare(op, *sa, *sb));
  const auto* ba = std::get_if<bool>(&a);
  const auto* bb = std::get_if<bool>(&b);
  if (ba && bb) {
    if (op != CompareOp::eq && op != CompareOp::ne) {
      fail(Errc::type_mismatch, "ordering comparison on booleans");
    }
    return AtomValue(apply_compare(op, *ba, *bb));
  }
  const auto* ca = std::get_if<Collection>(&a);
  const auto* cb = std::get_if<Collection>(&b);
  if (ca && cb) {
    if (op != CompareOp::eq && op != CompareOp::ne) {
      fail(Errc::type_mismatch, "ordering comparison on collections");
    }
    const bool equal = fusion::canonical_key(*ca, mode_) == fusion::canonical_key(*cb, mode_);
    return AtomValue(op == CompareOp::eq ? equal : !equal);
  }
  fail(Errc::type_mismatch, std::string("cannot compare ") + atom_kind_name(a) + " with " +
                                atom_kind_name(b));
}

AtomValue Interpreter::arith(query::ArithOp op, const AtomValue& a, const AtomValue& b) const {
  using query::ArithOp;
  const auto* ia = std::get_if<std::int64_t>(&a);
  const auto* ib = std::get_if<std::int64_t>(&b);
  if (ia && ib) {
    switch (op) {
      case ArithOp::add: return AtomValue(*ia + *ib);
      case ArithOp::sub: return AtomValue(*ia - *ib);
      case ArithOp::mul: return AtomValue(*ia * *ib);
      case ArithOp::div:
        if (*ib == 0) fail(Errc::division_by_zero, "integer division by zero");
        return AtomValue(*ia / *ib);
    }
  }
  auto da = numeric_of(a);
  auto db = numeric_of(b);
  if (da && db) {
    switch (op) {
      case ArithOp::add: return AtomValue(*da + *db);
      case ArithOp::sub: return AtomValue(*da - *db);
      case ArithOp::mul: return AtomValue(*da * *db);
      case ArithOp::div: return AtomValue(*da / *db);
    }
  }
  fail(Errc::type_mismatch, std::string("arithmetic on ") + atom_kind_name(da ? b : a));
}

const char* strategy_name(Strategy s) noexcept {
  switch (s) {
    case Strategy::naive: return "naive";
    case Strategy::fusion: return "fusion";
    case Strategy::auto_: return "auto";
  }
  return "?";
}

std::optional<Strategy> strategy_from_name(std::string_view text) noexcept {
  if (text == "naive") return Strategy::naive;
  if (text == "fusion") return Strategy::fusion;
  if (text == "auto") return Strategy::auto_;
  return std::nullopt;
}

namespace {

struct SideShape {
  std::string class_name;
  const query::QueryNode* filter = nullptr;
  const query::QueryNode* source = nullptr;
};

std::optional<SideShape> side_of(const query::QueryNode& n) {
  if (const auto* nm = std::get_if<query::Name>(&n.node)) {
    return SideShape{nm->ident, nullptr, &n};
  }
  if (const auto* w = std::get_if<query::Where>(&n.node)) {
    if (const auto* nm = std::get_if<query::Name>(&w->source->node)) {
      return SideShape{nm->ident, w->predicate.get(), &n};
    }
  }
  return std::nullopt;
}

bool flatten_path(const query::QueryNode& n, std::vector<std::string>& out) {
  if (const auto* nm = std::get_if<query::Name>(&n.node)) {
    out.push_back(nm->ident);
    return true;
  }
  if (const auto* d = std::get_if<query::Dot>(&n.node)) {
    return flatten_path(*d->source, out) && flatten_path(*d->expr, out);
  }
  return false;
}

std::string path_text(const std::vector<std::string>& path) {
  std::string s;
  for (const std::string& step : path) {
    if (!s.empty()) s += '.';
    s += step;
  }
  return s;
}

bool has_child(const Store& store, Oid oid, const std::string& name) {
  return !store.resolve_child(oid, name).empty();
}

// Every instance must resolve each step to exactly one child and end in a
// collection; intermediate steps may cross complex children or references
// to complex objects.
bool path_ok(const Store& store, const std::string& cls, const std::vector<std::string>& path,
             std::string& reason) {
  for (Oid root : store.roots(cls)) {
    Oid cur = root;
    for (std::size_t i = 0; i < path.size(); ++i) {
      auto kids = store.resolve_child(cur, path[i]);
      if (kids.size() != 1) {
        reason = "attribute path " + path_text(path) + " does not resolve uniquely on every " + cls;
        return false;
      }
      const StoredObject& child = store.get_object(kids[0]);
      if (i + 1 == path.size()) {
        if (!std::holds_alternative<Collection>(child.payload)) {
          reason =
              "attribute path " + path_text(path) + " does not end in a collection on every " + cls;
          return false;
        }
      } else if (std::holds_alternative<Complex>(child.payload)) {
        cur = child.oid;
      } else if (const auto* ref = std::get_if<Reference>(&child.payload)) {
        Oid target;
        try {
          target = resolve_ref_chain(store, ref->target);
        } catch (const Error&) {
          reason = "attribute path " + path_text(path) + " crosses an unresolvable reference";
          return false;
        }
        if (!std::holds_alternative<Complex>(store.get_object(target).payload)) {
          reason = "attribute path " + path_text(path) + " crosses a non-complex reference";
          return false;
        }
        cur = target;
      } else {
        reason = "attribute path " + path_text(path) + " crosses an atomic attribute on " + cls;
        return false;
      }
    }
  }
  return true;
}

void collect_names(const query::QueryNode& n, std::vector<std::string>& out) {
  using namespace query;
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Name>) {
          out.push_back(v.ident);
        } else if constexpr (std::is_same_v<T, Compare> || std::is_same_v<T, Arith> ||
                             std::is_same_v<T, And> || std::is_same_v<T, Or>) {
          collect_names(*v.lhs, out);
          collect_names(*v.rhs, out);
        } else if constexpr (std::is_same_v<T, Where>) {
          collect_names(*v.source, out);
          collect_names(*v.predicate, out);
        } else if constexpr (std::is_same_v<T, Dot>) {
          collect_names(*v.source, out);
          collect_names(*v.expr, out);
        } else if constexpr (std::is_same_v<T, Join>) {
          collect_names(*v.source, out);
          collect_names(*v.expr, out);
          if (v.on_pred) collect_names(*v.on_pred, out);
        } else if constexpr (std::is_same_v<T, Tuple>) {
          for (const NodePtr& item : v.items) collect_names(*item, out);
        }
      },
      n.node);
}

// A filter name is safe when it always binds in its own element (every own
// root has the child) or can never bind in the other side's element.
bool filter_independent(const Store& store, const query::QueryNode* filter,
                        const std::string& own_class, const std::string& other_class,
                        std::string& reason) {
  if (filter == nullptr) return true;
  std::vector<std::string> names;
  collect_names(*filter, names);
  const auto own_roots = store.roots(own_class);
  const auto other_roots = store.roots(other_class);
  for (const std::string& n : names) {
    const bool all_own = std::all_of(own_roots.begin(), own_roots.end(),
                                     [&](Oid r) { return has_child(store, r, n); });
    const bool none_other = std::none_of(other_roots.begin(), other_roots.end(),
                                         [&](Oid r) { return has_child(store, r, n); });
    if (!all_own && !none_other) {
      reason = "filter name " + n + " may bind across join sides";
      return false;
    }
  }
  return true;
}

}  // namespace

Detection detect_equi_join(const Store& store, const query::QueryNode& root) {
  using namespace query;
  EquiJoinPlan plan;
  const QueryNode* node = &root;
  while (const auto* d = std::get_if<Dot>(&node->node)) {
    plan.projections.insert(plan.projections.begin(), d->expr.get());
    node = d->source.get();
  }
  const auto* jn = std::get_if<Join>(&node->node);
  if (jn == nullptr) return {std::nullopt, "query is not a join"};
  if (!jn->on_pred) return {std::nullopt, "join has no on clause (navigational join)"};
  const auto* cmp = std::get_if<Compare>(&jn->on_pred->node);
  if (cmp == nullptr || cmp->op != CompareOp::eq) {
    return {std::nullopt, "on clause is not a single equality"};
  }
  auto left = side_of(*jn->source);
  if (!left) return {std::nullopt, "left join operand is not a class or filtered class"};
  auto right = side_of(*jn->expr);
  if (!right) return {std::nullopt, "right join operand is not a class or filtered class"};
  if (store.roots(left->class_name).empty()) {
    return {std::nullopt, "unknown class " + left->class_name};
  }
  if (store.roots(right->class_name).empty()) {
    return {std::nullopt, "unknown class " + right->class_name};
  }
  if (!flatten_path(*cmp->lhs, plan.left_path)) {
    return {std::nullopt, "left side of on clause is not an attribute path"};
  }
  if (!flatten_path(*cmp->rhs, plan.right_path)) {
    return {std::nullopt, "right side of on clause is not an attribute path"};
  }
  std::string reason;
  if (!path_ok(store, left->class_name, plan.left_path, reason)) return {std::nullopt, reason};
  if (!path_ok(store, right->class_name, plan.right_path, reason)) return {std::nullopt, reason};
  // The left key head must bind in the left element: the right element, whose
  // scope sits above it, may not offer the same name.
  for (Oid r : store.roots(right->class_name)) {
    if (has_child(store, r, plan.left_path.front())) {
      return {std::nullopt,
              "key attribute " + plan.left_path.front() + " is ambiguous between join sides"};
    }
  }
  // The right class name is looked up under nested(left element); a left
  // attribute of the same name would capture it.
  for (Oid l : store.roots(left->class_name)) {
    if (has_child(store, l, right->class_name)) {
      return {std::nullopt,
              "class name " + right->class_name + " is shadowed by a left attribute"};
    }
  }
  if (!filter_independent(store, left->filter, left->class_name, right->class_name, reason)) {
    return {std::nullopt, reason};
  }
  if (!filter_independent(store, right->filter, right->class_name, left->class_name, reason)) {
    return {std::nullopt, reason};
  }
  plan.left_class = left->class_name;
  plan.left_filter = left->filter;
  plan.right_class = right->class_name;
  plan.right_filter = right->filter;
  plan.left_source = left->source;
  plan.right_source = right->source;
  return {std::move(plan), ""};
}

namespace {

std::vector<fusion::JoinItem> collect_join_items(const Store& store, const ResultBag& bag,
                                                 const std::vector<std::string>& path) {
  std::vector<fusion::JoinItem> items;
  items.reserve(bag.size());
  for (const RuntimeResult& r : bag) {
    const auto* ref = std::get_if<RefResult>(&r.value);
    if (ref == nullptr) fail(Errc::internal, "fusion source did not evaluate to references");
    Oid cur = ref->target;
    const Collection* coll = nullptr;
    for (std::size_t i = 0; i < path.size(); ++i) {
      auto kids = store.resolve_child(cur, path[i]);
      if (kids.size() != 1) fail(Errc::internal, "join key path no longer resolves uniquely");
      const StoredObject& child = store.get_object(kids[0]);
      if (i + 1 == path.size()) {
        coll = std::get_if<Collection>(&child.payload);
        if (coll == nullptr) fail(Errc::internal, "join key path no longer ends in a collection");
      } else if (std::holds_alternative<Complex>(child.payload)) {
        cur = child.oid;
      } else if (const auto* cref = std::get_if<Reference>(&child.payload)) {
        cur = resolve_ref_chain(store, cref->target);
      } else {
        fail(Errc::internal, "join key path crosses an atomic attribute");
      }
    }
    items.push_back({ref->target, coll});
  }
  return items;
}

ResultBag run_fusion(const Store& store, const EquiJoinPlan& plan, const EvalOptions& options) {
  Interpreter interp(store, options.mode);
  ResultBag left_bag = interp.eval(*plan.left_source);
  ResultBag right_bag = interp.eval(*plan.right_source);
  auto lefts = collect_join_items(store, left_bag, plan.left_path);
  auto rights = collect_join_items(store, right_bag, plan.right_path);
  fusion::JoinOptions jopts;
  jopts.mode = options.mode;
  jopts.partitions = options.partitions;
  jopts.threads = options.threads;
  auto pairs = fusion::fusion_join(lefts, rights, jopts);
  ResultBag out;
  out.reserve(pairs.size());
  for (const auto& [l, r] : pairs) {
    TupleResult pair;
    pair.reserve(2);
    pair.push_back(ref_result(l));
    pair.push_back(ref_result(r));
    out.push_back(tuple_result(std::move(pair)));
  }
  for (const query::QueryNode* proj : plan.projections) {
    ResultBag next;
    for (const RuntimeResult& x : out) {
      FrameGuard guard(interp.envs(), nested(store, x));
      ResultBag vals = interp.eval(*proj);
      for (RuntimeResult& v : vals) next.push_back(std::move(v));
    }
    out = std::move(next);
  }
  return out;
}

}  // namespace

ResultBag execute(const Store& store, const query::QueryNode& node, const EvalOptions& options) {
  switch (options.strategy) {
    case Strategy::naive: {
      Interpreter interp(store, options.mode);
      return interp.eval(node);
    }
    case Strategy::fusion: {
      Detection det = detect_equi_join(store, node);
      if (!det.plan) fail(Errc::no_fusion_plan, "no fusion plan: " + det.reason);
      return run_fusion(store, *det.plan, options);
    }
    case Strategy::auto_: {
      Detection det = detect_equi_join(store, node);
      if (det.plan) return run_fusion(store, *det.plan, options);
      Interpreter interp(store, options.mode);
      return interp.eval(node);
    }
  }
  fail(Errc::internal, "unknown strategy");
}

std::string explain_text(const Store& store, const query::QueryNode& node,
                         const EvalOptions& options) {
  Detection det = detect_equi_join(store, node);
  std::string out;
  out += "query: " + query::unparse(node) + "\n";
  out += std::string("fusion: ") + (det.plan ? "yes" : "no") + "\n";
  out += "reason: " + (det.plan ? std::string("-") : det.reason) + "\n";
  if (det.plan) {
    const EquiJoinPlan& plan = *det.plan;
    out += "left_class: " + plan.left_class + "\n";
    out += "left_filter: " +
           (plan.left_filter ? query::unparse(*plan.left_filter) : std::string("-")) + "\n";
    out += "left_path: " + path_text(plan.left_path) + "\n";
    out += "right_class: " + plan.right_class + "\n";
    out += "right_filter: " +
           (plan.right_filter ? query::unparse(*plan.right_filter) : std::string("-")) + "\n";
    out += "right_path: " + path_text(plan.right_path) + "\n";
  } else {
    out += "left_class: -\n";
    out += "left_filter: -\n";
    out += "left_path: -\n";
    out += "right_class: -\n";
    out += "right_filter: -\n";
    out += "right_path: -\n";
  }
  out += std::string("mode: ") + fusion::mode_name(options.mode) + "\n";
  out += "partitions: " + std::to_string(options.partitions) + "\n";
  return out;
}

namespace {

void render_component(const RuntimeResult& r, std::string& out) {
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, AtomValue>) {
          std::visit(
              [&](const auto& atom) {
                using A = std::decay_t<decltype(atom)>;
                if constexpr (std::is_same_v<A, Collection>) {
                  out += display_collection(atom);
                } else {
                  out += display_scalar(Scalar(atom));
                }
              },
              v);
        } else if constexpr (std::is_same_v<T, RefResult>) {
          out += '#';
          out += std::to_string(v.target.value);
        } else {
          out += '(';
          for (std::size_t i = 0; i < v.size(); ++i) {
            if (i > 0) out += ", ";
            render_component(v[i], out);
          }
          out += ')';
        }
      },
      r.value);
}

}  // namespace

std::string render_result(const Store&, const RuntimeResult& r) {
  std::string out;
  if (const auto* t = std::get_if<TupleResult>(&r.value)) {
    for (std::size_t i = 0; i < t->size(); ++i) {
      if (i > 0) out += '\t';
      render_component((*t)[i], out);
    }
    return out;
  }
  render_component(r, out);
  return out;
}

std::uint64_t depth_checks() noexcept { return g_depth_checks.load(std::memory_order_relaxed); }

std::uint64_t depth_violations() noexcept {
  return g_depth_violations.load(std::memory_order_relaxed);
}

void reset_depth_counters() noexcept {
  g_depth_checks.store(0, std::memory_order_relaxed);
  g_depth_violations.store(0, std::memory_order_relaxed);
}

}  // namespace odralite::eval
