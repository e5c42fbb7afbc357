#include "odralite/odralite.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <new>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "bench.hpp"
#include "error.hpp"
#include "eval.hpp"
#include "query.hpp"
#include "store.hpp"
#include "xml.hpp"

struct odl_store {
  odralite::Store impl;
};

struct odl_query {
  odralite::query::NodePtr ast;
};

struct odl_result {
  std::vector<std::string> lines;
};

namespace {

using odralite::Errc;

thread_local std::string t_last_error;

void set_error(std::string message) { t_last_error = std::move(message); }

odl_status to_status(Errc code) noexcept {
  switch (code) {
    case Errc::ok: return ODL_OK;
    case Errc::unknown_oid: return ODL_E_UNKNOWN_OID;
    case Errc::unknown_parent: return ODL_E_UNKNOWN_PARENT;
    case Errc::parent_not_complex: return ODL_E_PARENT_NOT_COMPLEX;
    case Errc::malformed_collection: return ODL_E_MALFORMED_COLLECTION;
    case Errc::dangling_reference: return ODL_E_DANGLING_REFERENCE;
    case Errc::snapshot_syntax: return ODL_E_SNAPSHOT_SYNTAX;
    case Errc::xml_syntax: return ODL_E_XML_SYNTAX;
    case Errc::unsupported_feature: return ODL_E_UNSUPPORTED_FEATURE;
    case Errc::parse_error: return ODL_E_PARSE;
    case Errc::unbound_name: return ODL_E_UNBOUND_NAME;
    case Errc::non_boolean_predicate: return ODL_E_NON_BOOLEAN_PREDICATE;
    case Errc::non_singleton: return ODL_E_NON_SINGLETON;
    case Errc::type_mismatch: return ODL_E_TYPE_MISMATCH;
    case Errc::division_by_zero: return ODL_E_DIVISION_BY_ZERO;
    case Errc::no_fusion_plan: return ODL_E_NO_FUSION_PLAN;
    case Errc::float_join_key: return ODL_E_FLOAT_JOIN_KEY;
    case Errc::non_scalar_element: return ODL_E_NON_SCALAR_ELEMENT;
    case Errc::invalid_params: return ODL_E_INVALID_PARAMS;
    case Errc::strategy_mismatch: return ODL_E_STRATEGY_MISMATCH;
    case Errc::io_error: return ODL_E_IO;
    case Errc::out_of_memory: return ODL_E_OUT_OF_MEMORY;
    case Errc::internal: return ODL_E_INTERNAL;
  }
  return ODL_E_INTERNAL;
}

template <typename F>
odl_status guarded(F&& body) noexcept {
  try {
    body();
    return ODL_OK;
  } catch (const odralite::Error& e) {
    set_error(e.what());
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    set_error("out of memory");
    return ODL_E_OUT_OF_MEMORY;
  } catch (const std::exception& e) {
    set_error(e.what());
    return ODL_E_INTERNAL;
  }
}

odl_status invalid(const char* message) {
  set_error(message);
  return ODL_E_INVALID_PARAMS;
}

char* dup_text(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

odralite::Oid oid_of(uint64_t value) { return odralite::Oid{value}; }

odralite::CollectionKind coll_kind_of(odl_coll_kind kind) {
  switch (kind) {
    case ODL_COLL_SET: return odralite::CollectionKind::set;
    case ODL_COLL_LIST: return odralite::CollectionKind::list;
    case ODL_COLL_ARRAY: return odralite::CollectionKind::array;
  }
  odralite::fail(Errc::invalid_params, "unknown collection kind");
}

odralite::Scalar scalar_of(const odl_elem& elem) {
  switch (elem.tag) {
    case ODL_ELEM_INT: return odralite::Scalar(elem.i);
    case ODL_ELEM_FLOAT: return odralite::Scalar(elem.f);
    case ODL_ELEM_STR:
      if (elem.s == nullptr) odralite::fail(Errc::invalid_params, "null string element");
      return odralite::Scalar(std::string(elem.s));
    case ODL_ELEM_BOOL: return odralite::Scalar(elem.b != 0);
  }
  odralite::fail(Errc::invalid_params, "unknown element tag");
}

odralite::eval::EvalOptions eval_options_of(const odl_exec_options* options) {
  odralite::eval::EvalOptions out;
  if (options == nullptr) return out;
  switch (options->strategy) {
    case ODL_STRATEGY_NAIVE: out.strategy = odralite::eval::Strategy::naive; break;
    case ODL_STRATEGY_FUSION: out.strategy = odralite::eval::Strategy::fusion; break;
    case ODL_STRATEGY_AUTO: out.strategy = odralite::eval::Strategy::auto_; break;
    default: odralite::fail(Errc::invalid_params, "unknown strategy");
  }
  out.mode = options->mode == ODL_MODE_BAG ? odralite::fusion::Mode::bag
                                           : odralite::fusion::Mode::seq;
  out.partitions = options->partitions;
  out.threads = options->threads;
  return out;
}

odralite::bench::GenParams gen_params_of(const odl_gen_params& p) {
  odralite::bench::GenParams out;
  out.n_left = p.n_left;
  out.n_right = p.n_right;
  out.coll_len = p.coll_len;
  out.alphabet = p.alphabet;
  out.kind = coll_kind_of(p.kind);
  out.seed = p.seed;
  return out;
}

odralite::bench::BenchParams bench_params_of(const odl_bench_params& p) {
  odralite::bench::BenchParams out;
  out.gen = gen_params_of(p.gen);
  out.mode = p.mode == ODL_MODE_BAG ? odralite::fusion::Mode::bag : odralite::fusion::Mode::seq;
  out.partitions = p.partitions;
  out.reps = p.reps;
  out.threads = p.threads;
  return out;
}

void fill_row(const odralite::bench::BenchRow& row, odl_bench_row* out) {
  out->build_ms = row.build_ms;
  out->probe_ms = row.probe_ms;
  out->total_ms = row.total_ms;
  out->pairs = row.pairs;
}

}  // namespace

extern "C" {

const char* odl_version(void) { return "0.1.0"; }

const char* odl_last_error(void) { return t_last_error.c_str(); }

const char* odl_status_name(odl_status status) {
  switch (status) {
    case ODL_OK: return "ok";
    case ODL_E_UNKNOWN_OID: return "unknown_oid";
    case ODL_E_UNKNOWN_PARENT: return "unknown_parent";
    case ODL_E_PARENT_NOT_COMPLEX: return "parent_not_complex";
    case ODL_E_MALFORMED_COLLECTION: return "malformed_collection";
    case ODL_E_DANGLING_REFERENCE: return "dangling_reference";
    case ODL_E_SNAPSHOT_SYNTAX: return "snapshot_syntax";
    case ODL_E_XML_SYNTAX: return "xml_syntax";
    case ODL_E_UNSUPPORTED_FEATURE: return "unsupported_feature";
    case ODL_E_PARSE: return "parse_error";
    case ODL_E_UNBOUND_NAME: return "unbound_name";
    case ODL_E_NON_BOOLEAN_PREDICATE: return "non_boolean_predicate";
    case ODL_E_NON_SINGLETON: return "non_singleton";
    case ODL_E_TYPE_MISMATCH: return "type_mismatch";
    case ODL_E_DIVISION_BY_ZERO: return "division_by_zero";
    case ODL_E_NO_FUSION_PLAN: return "no_fusion_plan";
    case ODL_E_FLOAT_JOIN_KEY: return "float_join_key";
    case ODL_E_NON_SCALAR_ELEMENT: return "non_scalar_element";
    case ODL_E_INVALID_PARAMS: return "invalid_params";
    case ODL_E_STRATEGY_MISMATCH: return "strategy_mismatch";
    case ODL_E_IO: return "io_error";
    case ODL_E_OUT_OF_MEMORY: return "out_of_memory";
    case ODL_E_INTERNAL: return "internal";
  }
  return "unknown";
}

void odl_text_free(char* text) { std::free(text); }

odl_status odl_store_new(odl_store** out_store) {
  if (out_store == nullptr) return invalid("out_store is null");
  return guarded([&] { *out_store = new odl_store{}; });
}

void odl_store_free(odl_store* store) { delete store; }

odl_status odl_store_open(const char* path, odl_store** out_store) {
  if (path == nullptr || out_store == nullptr) return invalid("path or out_store is null");
  return guarded([&] {
    std::ifstream in(path, std::ios::binary);
    if (!in) odralite::fail(Errc::io_error, std::string("cannot open ") + path);
    auto store = std::make_unique<odl_store>();
    store->impl = odralite::Store::load_snapshot(in);
    *out_store = store.release();
  });
}

odl_status odl_store_save(const odl_store* store, const char* path) {
  if (store == nullptr || path == nullptr) return invalid("store or path is null");
  return guarded([&] {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) odralite::fail(Errc::io_error, std::string("cannot write ") + path);
    store->impl.save_snapshot(out);
    out.flush();
    if (!out) odralite::fail(Errc::io_error, std::string("write failed for ") + path);
  });
}

odl_status odl_store_load_text(const char* text, odl_store** out_store) {
  if (text == nullptr || out_store == nullptr) return invalid("text or out_store is null");
  return guarded([&] {
    auto store = std::make_unique<odl_store>();
    store->impl = odralite::Store::load_snapshot_text(text);
    *out_store = store.release();
  });
}

odl_status odl_store_save_text(const odl_store* store, char** out_text) {
  if (store == nullptr || out_text == nullptr) return invalid("store or out_text is null");
  return guarded([&] { *out_text = dup_text(store->impl.save_snapshot_text()); });
}

size_t odl_object_count(const odl_store* store) {
  return store == nullptr ? 0 : store->impl.object_count();
}

size_t odl_class_count(const odl_store* store) {
  return store == nullptr ? 0 : store->impl.class_names().size();
}

odl_status odl_class_name(const odl_store* store, size_t index, char** out_name) {
  if (store == nullptr || out_name == nullptr) return invalid("store or out_name is null");
  return guarded([&] {
    const auto names = store->impl.class_names();
    if (index >= names.size()) odralite::fail(Errc::invalid_params, "class index out of range");
    *out_name = dup_text(names[index]);
  });
}

odl_status odl_root_count(const odl_store* store, const char* class_name, size_t* out_count) {
  if (store == nullptr || class_name == nullptr || out_count == nullptr) {
    return invalid("store, class_name or out_count is null");
  }
  return guarded([&] { *out_count = store->impl.roots(class_name).size(); });
}

odl_status odl_root_at(const odl_store* store, const char* class_name, size_t index,
                       uint64_t* out_oid) {
  if (store == nullptr || class_name == nullptr || out_oid == nullptr) {
    return invalid("store, class_name or out_oid is null");
  }
  return guarded([&] {
    const auto roots = store->impl.roots(class_name);
    if (index >= roots.size()) odralite::fail(Errc::invalid_params, "root index out of range");
    *out_oid = roots[index].value;
  });
}

odl_status odl_resolve_child(const odl_store* store, uint64_t oid, const char* name,
                             uint64_t* out_oids, size_t capacity, size_t* out_count) {
  if (store == nullptr || name == nullptr || out_count == nullptr) {
    return invalid("store, name or out_count is null");
  }
  return guarded([&] {
    const auto kids = store->impl.resolve_child(oid_of(oid), name);
    *out_count = kids.size();
    if (out_oids != nullptr) {
      const size_t n = kids.size() < capacity ? kids.size() : capacity;
      for (size_t i = 0; i < n; ++i) out_oids[i] = kids[i].value;
    }
  });
}

odl_status odl_insert_complex(odl_store* store, uint64_t parent, const char* name,
                              uint64_t* out_oid) {
  if (store == nullptr || name == nullptr) return invalid("store or name is null");
  return guarded([&] {
    const auto oid = store->impl.insert_object(oid_of(parent), name, odralite::Complex{});
    if (out_oid != nullptr) *out_oid = oid.value;
  });
}

odl_status odl_insert_int(odl_store* store, uint64_t parent, const char* name, int64_t value,
                          uint64_t* out_oid) {
  if (store == nullptr || name == nullptr) return invalid("store or name is null");
  return guarded([&] {
    const auto oid = store->impl.insert_object(oid_of(parent), name, odralite::Payload(value));
    if (out_oid != nullptr) *out_oid = oid.value;
  });
}

odl_status odl_insert_float(odl_store* store, uint64_t parent, const char* name, double value,
                            uint64_t* out_oid) {
  if (store == nullptr || name == nullptr) return invalid("store or name is null");
  return guarded([&] {
    const auto oid = store->impl.insert_object(oid_of(parent), name, odralite::Payload(value));
    if (out_oid != nullptr) *out_oid = oid.value;
  });
}

odl_status odl_insert_str(odl_store* store, uint64_t parent, const char* name, const char* value,
                          uint64_t* out_oid) {
  if (store == nullptr || name == nullptr || value == nullptr) {
    return invalid("store, name or value is null");
  }
  return guarded([&] {
    const auto oid =
        store->impl.insert_object(oid_of(parent), name, odralite::Payload(std::string(value)));
    if (out_oid != nullptr) *out_oid = oid.value;
  });
}

odl_status odl_insert_bool(odl_store* store, uint64_t parent, const char* name, int value,
                           uint64_t* out_oid) {
  if (store == nullptr || name == nullptr) return invalid("store or name is null");
  return guarded([&] {
    const auto oid =
        store->impl.insert_object(oid_of(parent), name, odralite::Payload(value != 0));
    if (out_oid != nullptr) *out_oid = oid.value;
  });
}

odl_status odl_insert_ref(odl_store* store, uint64_t parent, const char* name, uint64_t target,
                          uint64_t* out_oid) {
  if (store == nullptr || name == nullptr) return invalid("store or name is null");
  return guarded([&] {
    const auto oid = store->impl.insert_object(oid_of(parent), name,
                                               odralite::Reference{oid_of(target)});
    if (out_oid != nullptr) *out_oid = oid.value;
  });
}

odl_status odl_insert_collection(odl_store* store, uint64_t parent, const char* name,
                                 odl_coll_kind kind, const odl_elem* elems, size_t count,
                                 uint64_t* out_oid) {
  if (store == nullptr || name == nullptr) return invalid("store or name is null");
  if (count > 0 && elems == nullptr) return invalid("elems is null");
  return guarded([&] {
    odralite::Collection coll;
    coll.kind = coll_kind_of(kind);
    coll.elements.reserve(count);
    for (size_t i = 0; i < count; ++i) coll.elements.push_back(scalar_of(elems[i]));
    const auto oid = store->impl.insert_object(oid_of(parent), name, std::move(coll));
    if (out_oid != nullptr) *out_oid = oid.value;
  });
}

odl_status odl_object_kind(const odl_store* store, uint64_t oid, odl_kind* out_kind) {
  if (store == nullptr || out_kind == nullptr) return invalid("store or out_kind is null");
  return guarded([&] {
    const auto& payload = store->impl.get_object(oid_of(oid)).payload;
    switch (payload.index()) {
      case 0: *out_kind = ODL_KIND_INT; break;
      case 1: *out_kind = ODL_KIND_FLOAT; break;
      case 2: *out_kind = ODL_KIND_STR; break;
      case 3: *out_kind = ODL_KIND_BOOL; break;
      case 4: *out_kind = ODL_KIND_REF; break;
      case 5: *out_kind = ODL_KIND_COLLECTION; break;
      default: *out_kind = ODL_KIND_COMPLEX; break;
    }
  });
}

odl_status odl_object_name(const odl_store* store, uint64_t oid, char** out_name) {
  if (store == nullptr || out_name == nullptr) return invalid("store or out_name is null");
  return guarded([&] { *out_name = dup_text(store->impl.get_object(oid_of(oid)).name); });
}

odl_status odl_object_parent(const odl_store* store, uint64_t oid, uint64_t* out_parent) {
  if (store == nullptr || out_parent == nullptr) return invalid("store or out_parent is null");
  return guarded([&] { *out_parent = store->impl.get_object(oid_of(oid)).parent.value; });
}

odl_status odl_object_int(const odl_store* store, uint64_t oid, int64_t* out_value) {
  if (store == nullptr || out_value == nullptr) return invalid("store or out_value is null");
  return guarded([&] {
    const auto* v = std::get_if<int64_t>(&store->impl.get_object(oid_of(oid)).payload);
    if (v == nullptr) odralite::fail(Errc::type_mismatch, "object payload is not an int");
    *out_value = *v;
  });
}

odl_status odl_object_float(const odl_store* store, uint64_t oid, double* out_value) {
  if (store == nullptr || out_value == nullptr) return invalid("store or out_value is null");
  return guarded([&] {
    const auto* v = std::get_if<double>(&store->impl.get_object(oid_of(oid)).payload);
    if (v == nullptr) odralite::fail(Errc::type_mismatch, "object payload is not a float");
    *out_value = *v;
  });
}

odl_status odl_object_str(const odl_store* store, uint64_t oid, char** out_value) {
  if (store == nullptr || out_value == nullptr) return invalid("store or out_value is null");
  return guarded([&] {
    const auto* v = std::get_if<std::string>(&store->impl.get_object(oid_of(oid)).payload);
    if (v == nullptr) odralite::fail(Errc::type_mismatch, "object payload is not a string");
    *out_value = dup_text(*v);
  });
}

odl_status odl_object_bool(const odl_store* store, uint64_t oid, int* out_value) {
  if (store == nullptr || out_value == nullptr) return invalid("store or out_value is null");
  return guarded([&] {
    const auto* v = std::get_if<bool>(&store->impl.get_object(oid_of(oid)).payload);
    if (v == nullptr) odralite::fail(Errc::type_mismatch, "object payload is not a bool");
    *out_value = *v ? 1 : 0;
  });
}

odl_status odl_object_ref(const odl_store* store, uint64_t oid, uint64_t* out_target) {
  if (store == nullptr || out_target == nullptr) return invalid("store or out_target is null");
  return guarded([&] {
    const auto* v = std::get_if<odralite::Reference>(&store->impl.get_object(oid_of(oid)).payload);
    if (v == nullptr) odralite::fail(Errc::type_mismatch, "object payload is not a reference");
    *out_target = v->target.value;
  });
}

odl_status odl_object_child_count(const odl_store* store, uint64_t oid, size_t* out_count) {
  if (store == nullptr || out_count == nullptr) return invalid("store or out_count is null");
  return guarded([&] {
    const auto* v = std::get_if<odralite::Complex>(&store->impl.get_object(oid_of(oid)).payload);
    *out_count = v == nullptr ? 0 : v->children.size();
  });
}

odl_status odl_object_child_at(const odl_store* store, uint64_t oid, size_t index,
                               uint64_t* out_child) {
  if (store == nullptr || out_child == nullptr) return invalid("store or out_child is null");
  return guarded([&] {
    const auto* v = std::get_if<odralite::Complex>(&store->impl.get_object(oid_of(oid)).payload);
    if (v == nullptr) odralite::fail(Errc::type_mismatch, "object payload is not complex");
    if (index >= v->children.size()) {
      odralite::fail(Errc::invalid_params, "child index out of range");
    }
    *out_child = v->children[index].value;
  });
}

odl_status odl_object_coll_kind(const odl_store* store, uint64_t oid, odl_coll_kind* out_kind) {
  if (store == nullptr || out_kind == nullptr) return invalid("store or out_kind is null");
  return guarded([&] {
    const auto* v =
        std::get_if<odralite::Collection>(&store->impl.get_object(oid_of(oid)).payload);
    if (v == nullptr) odralite::fail(Errc::type_mismatch, "object payload is not a collection");
    switch (v->kind) {
      case odralite::CollectionKind::set: *out_kind = ODL_COLL_SET; break;
      case odralite::CollectionKind::list: *out_kind = ODL_COLL_LIST; break;
      case odralite::CollectionKind::array: *out_kind = ODL_COLL_ARRAY; break;
    }
  });
}

odl_status odl_object_elem_count(const odl_store* store, uint64_t oid, size_t* out_count) {
  if (store == nullptr || out_count == nullptr) return invalid("store or out_count is null");
  return guarded([&] {
    const auto* v =
        std::get_if<odralite::Collection>(&store->impl.get_object(oid_of(oid)).payload);
    if (v == nullptr) odralite::fail(Errc::type_mismatch, "object payload is not a collection");
    *out_count = v->elements.size();
  });
}

odl_status odl_object_elem_at(const odl_store* store, uint64_t oid, size_t index,
                              odl_elem* out_elem) {
  if (store == nullptr || out_elem == nullptr) return invalid("store or out_elem is null");
  return guarded([&] {
    const auto* v =
        std::get_if<odralite::Collection>(&store->impl.get_object(oid_of(oid)).payload);
    if (v == nullptr) odralite::fail(Errc::type_mismatch, "object payload is not a collection");
    if (index >= v->elements.size()) {
      odralite::fail(Errc::invalid_params, "element index out of range");
    }
    *out_elem = odl_elem{ODL_ELEM_INT, 0, 0.0, nullptr, 0};
    std::visit(
        [&](const auto& scalar) {
          using S = std::decay_t<decltype(scalar)>;
          if constexpr (std::is_same_v<S, int64_t>) {
            out_elem->tag = ODL_ELEM_INT;
            out_elem->i = scalar;
          } else if constexpr (std::is_same_v<S, double>) {
            out_elem->tag = ODL_ELEM_FLOAT;
            out_elem->f = scalar;
          } else if constexpr (std::is_same_v<S, std::string>) {
            out_elem->tag = ODL_ELEM_STR;
            out_elem->s = dup_text(scalar);
          } else {
            out_elem->tag = ODL_ELEM_BOOL;
            out_elem->b = scalar ? 1 : 0;
          }
        },
        v->elements[index]);
  });
}

odl_status odl_import_xml(odl_store* store, const char* document, const char* root_class_or_null,
                          size_t* out_root_count) {
  if (store == nullptr || document == nullptr) return invalid("store or document is null");
  return guarded([&] {
    const auto roots = odralite::xml::import_xml(
        document, store->impl, root_class_or_null == nullptr ? "" : root_class_or_null);
    if (out_root_count != nullptr) *out_root_count = roots.size();
  });
}

odl_status odl_export_xml(const odl_store* store, uint64_t root, char** out_text) {
  if (store == nullptr || out_text == nullptr) return invalid("store or out_text is null");
  return guarded([&] { *out_text = dup_text(odralite::xml::export_xml(oid_of(root), store->impl)); });
}

odl_status odl_query_parse(const char* text, odl_query** out_query) {
  if (text == nullptr || out_query == nullptr) return invalid("text or out_query is null");
  return guarded([&] {
    auto query = std::make_unique<odl_query>();
    query->ast = odralite::query::parse(text);
    *out_query = query.release();
  });
}

void odl_query_free(odl_query* query) { delete query; }

odl_status odl_query_unparse(const odl_query* query, char** out_text) {
  if (query == nullptr || out_text == nullptr) return invalid("query or out_text is null");
  return guarded([&] { *out_text = dup_text(odralite::query::unparse(*query->ast)); });
}

void odl_exec_options_init(odl_exec_options* options) {
  if (options == nullptr) return;
  options->strategy = ODL_STRATEGY_AUTO;
  options->mode = ODL_MODE_SEQ;
  options->partitions = 16;
  options->threads = 1;
}

odl_status odl_query_execute(const odl_store* store, const odl_query* query,
                             const odl_exec_options* options, odl_result** out_result) {
  if (store == nullptr || query == nullptr || out_result == nullptr) {
    return invalid("store, query or out_result is null");
  }
  return guarded([&] {
    const auto opts = eval_options_of(options);
    const auto bag = odralite::eval::execute(store->impl, *query->ast, opts);
    auto result = std::make_unique<odl_result>();
    result->lines.reserve(bag.size());
    for (const auto& r : bag) {
      result->lines.push_back(odralite::eval::render_result(store->impl, r));
    }
    *out_result = result.release();
  });
}

size_t odl_result_count(const odl_result* result) {
  return result == nullptr ? 0 : result->lines.size();
}

const char* odl_result_line(const odl_result* result, size_t index) {
  if (result == nullptr || index >= result->lines.size()) return nullptr;
  return result->lines[index].c_str();
}

void odl_result_free(odl_result* result) { delete result; }

odl_status odl_query_explain(const odl_store* store, const odl_query* query,
                             const odl_exec_options* options, char** out_text) {
  if (store == nullptr || query == nullptr || out_text == nullptr) {
    return invalid("store, query or out_text is null");
  }
  return guarded([&] {
    const auto opts = eval_options_of(options);
    *out_text = dup_text(odralite::eval::explain_text(store->impl, *query->ast, opts));
  });
}

odl_status odl_gen_dataset(const odl_gen_params* params, odl_store** out_store) {
  if (params == nullptr || out_store == nullptr) return invalid("params or out_store is null");
  return guarded([&] {
    auto store = std::make_unique<odl_store>();
    store->impl = odralite::bench::gen_dataset(gen_params_of(*params));
    *out_store = store.release();
  });
}

odl_status odl_bench_run(const odl_bench_params* params, odl_bench_row* out_naive,
                         odl_bench_row* out_fusion) {
  if (params == nullptr || out_naive == nullptr || out_fusion == nullptr) {
    return invalid("params, out_naive or out_fusion is null");
  }
  return guarded([&] {
    const auto result = odralite::bench::run_bench(bench_params_of(*params));
    fill_row(result.naive, out_naive);
    fill_row(result.fusion, out_fusion);
  });
}

const char* odl_bench_csv_header(void) { return odralite::bench::kCsvHeader; }

odl_status odl_bench_csv_row(const odl_bench_params* params, const odl_bench_row* row,
                             const char* strategy, char** out_row) {
  if (params == nullptr || row == nullptr || strategy == nullptr || out_row == nullptr) {
    return invalid("params, row, strategy or out_row is null");
  }
  return guarded([&] {
    odralite::bench::BenchRow impl_row;
    impl_row.strategy = strategy;
    impl_row.build_ms = row->build_ms;
    impl_row.probe_ms = row->probe_ms;
    impl_row.total_ms = row->total_ms;
    impl_row.pairs = row->pairs;
    *out_row = dup_text(odralite::bench::csv_row(bench_params_of(*params), impl_row));
  });
}

}  // extern "C"
