/* odralite C API: opaque handles, status codes, UTF-8 strings.
 *
 * Conventions:
 *   - Functions returning odl_status set the thread-local message readable
 *     via odl_last_error() on any status other than ODL_OK.
 *   - char** out parameters receive a heap string the caller releases with
 *     odl_text_free(); const char* returns are borrowed and valid until the
 *     owning handle is freed or mutated.
 *   - Object ids are plain uint64_t; 0 is "none" (the parent of roots).
 */
#ifndef ODRALITE_H
#define ODRALITE_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define ODL_API __declspec(dllexport)
#else
#define ODL_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct odl_store odl_store;
typedef struct odl_query odl_query;
typedef struct odl_result odl_result;

typedef enum odl_status {
  ODL_OK = 0,
  ODL_E_UNKNOWN_OID,
  ODL_E_UNKNOWN_PARENT,
  ODL_E_PARENT_NOT_COMPLEX,
  ODL_E_MALFORMED_COLLECTION,
  ODL_E_DANGLING_REFERENCE,
  ODL_E_SNAPSHOT_SYNTAX,
  ODL_E_XML_SYNTAX,
  ODL_E_UNSUPPORTED_FEATURE,
  ODL_E_PARSE,
  ODL_E_UNBOUND_NAME,
  ODL_E_NON_BOOLEAN_PREDICATE,
  ODL_E_NON_SINGLETON,
  ODL_E_TYPE_MISMATCH,
  ODL_E_DIVISION_BY_ZERO,
  ODL_E_NO_FUSION_PLAN,
  ODL_E_FLOAT_JOIN_KEY,
  ODL_E_NON_SCALAR_ELEMENT,
  ODL_E_INVALID_PARAMS,
  ODL_E_STRATEGY_MISMATCH,
  ODL_E_IO,
  ODL_E_OUT_OF_MEMORY,
  ODL_E_INTERNAL
} odl_status;

typedef enum odl_kind {
  ODL_KIND_INT = 0,
  ODL_KIND_FLOAT,
  ODL_KIND_STR,
  ODL_KIND_BOOL,
  ODL_KIND_REF,
  ODL_KIND_COLLECTION,
  ODL_KIND_COMPLEX
} odl_kind;

typedef enum odl_coll_kind {
  ODL_COLL_SET = 0,
  ODL_COLL_LIST,
  ODL_COLL_ARRAY
} odl_coll_kind;

typedef enum odl_elem_tag {
  ODL_ELEM_INT = 0,
  ODL_ELEM_FLOAT,
  ODL_ELEM_STR,
  ODL_ELEM_BOOL
} odl_elem_tag;

/* One collection element. For ODL_ELEM_STR, `s` points at the text; when an
 * element is produced by odl_object_elem_at the string is heap-allocated and
 * must be released with odl_text_free. */
typedef struct odl_elem {
  odl_elem_tag tag;
  int64_t i;
  double f;
  const char* s;
  int b;
} odl_elem;

typedef enum odl_strategy {
  ODL_STRATEGY_NAIVE = 0,
  ODL_STRATEGY_FUSION,
  ODL_STRATEGY_AUTO
} odl_strategy;

typedef enum odl_mode {
  ODL_MODE_SEQ = 0,
  ODL_MODE_BAG
} odl_mode;

ODL_API const char* odl_version(void);
/* Message for the most recent failing call on this thread; borrowed. */
ODL_API const char* odl_last_error(void);
ODL_API const char* odl_status_name(odl_status status);
ODL_API void odl_text_free(char* text);

/* ---- store lifecycle ---- */
ODL_API odl_status odl_store_new(odl_store** out_store);
ODL_API void odl_store_free(odl_store* store);
ODL_API odl_status odl_store_open(const char* path, odl_store** out_store);
ODL_API odl_status odl_store_save(const odl_store* store, const char* path);
ODL_API odl_status odl_store_load_text(const char* text, odl_store** out_store);
ODL_API odl_status odl_store_save_text(const odl_store* store, char** out_text);

/* ---- store introspection ---- */
ODL_API size_t odl_object_count(const odl_store* store);
ODL_API size_t odl_class_count(const odl_store* store);
ODL_API odl_status odl_class_name(const odl_store* store, size_t index, char** out_name);
ODL_API odl_status odl_root_count(const odl_store* store, const char* class_name,
                                  size_t* out_count);
ODL_API odl_status odl_root_at(const odl_store* store, const char* class_name, size_t index,
                               uint64_t* out_oid);
ODL_API odl_status odl_resolve_child(const odl_store* store, uint64_t oid, const char* name,
                                     uint64_t* out_oids, size_t capacity, size_t* out_count);

/* ---- object construction (parent 0 = root) ---- */
ODL_API odl_status odl_insert_complex(odl_store* store, uint64_t parent, const char* name,
                                      uint64_t* out_oid);
ODL_API odl_status odl_insert_int(odl_store* store, uint64_t parent, const char* name,
                                  int64_t value, uint64_t* out_oid);
ODL_API odl_status odl_insert_float(odl_store* store, uint64_t parent, const char* name,
                                    double value, uint64_t* out_oid);
ODL_API odl_status odl_insert_str(odl_store* store, uint64_t parent, const char* name,
                                  const char* value, uint64_t* out_oid);
ODL_API odl_status odl_insert_bool(odl_store* store, uint64_t parent, const char* name, int value,
                                   uint64_t* out_oid);
ODL_API odl_status odl_insert_ref(odl_store* store, uint64_t parent, const char* name,
                                  uint64_t target, uint64_t* out_oid);
ODL_API odl_status odl_insert_collection(odl_store* store, uint64_t parent, const char* name,
                                         odl_coll_kind kind, const odl_elem* elems, size_t count,
                                         uint64_t* out_oid);

/* ---- object accessors ---- */
ODL_API odl_status odl_object_kind(const odl_store* store, uint64_t oid, odl_kind* out_kind);
ODL_API odl_status odl_object_name(const odl_store* store, uint64_t oid, char** out_name);
ODL_API odl_status odl_object_parent(const odl_store* store, uint64_t oid, uint64_t* out_parent);
ODL_API odl_status odl_object_int(const odl_store* store, uint64_t oid, int64_t* out_value);
ODL_API odl_status odl_object_float(const odl_store* store, uint64_t oid, double* out_value);
ODL_API odl_status odl_object_str(const odl_store* store, uint64_t oid, char** out_value);
ODL_API odl_status odl_object_bool(const odl_store* store, uint64_t oid, int* out_value);
ODL_API odl_status odl_object_ref(const odl_store* store, uint64_t oid, uint64_t* out_target);
ODL_API odl_status odl_object_child_count(const odl_store* store, uint64_t oid, size_t* out_count);
ODL_API odl_status odl_object_child_at(const odl_store* store, uint64_t oid, size_t index,
                                       uint64_t* out_child);
ODL_API odl_status odl_object_coll_kind(const odl_store* store, uint64_t oid,
                                        odl_coll_kind* out_kind);
ODL_API odl_status odl_object_elem_count(const odl_store* store, uint64_t oid, size_t* out_count);
ODL_API odl_status odl_object_elem_at(const odl_store* store, uint64_t oid, size_t index,
                                      odl_elem* out_elem);

/* ---- XML ---- */
ODL_API odl_status odl_import_xml(odl_store* store, const char* document,
                                  const char* root_class_or_null, size_t* out_root_count);
ODL_API odl_status odl_export_xml(const odl_store* store, uint64_t root, char** out_text);

/* ---- queries ---- */
ODL_API odl_status odl_query_parse(const char* text, odl_query** out_query);
ODL_API void odl_query_free(odl_query* query);
ODL_API odl_status odl_query_unparse(const odl_query* query, char** out_text);

typedef struct odl_exec_options {
  odl_strategy strategy;
  odl_mode mode;
  size_t partitions;
  unsigned threads;
} odl_exec_options;

/* strategy=auto, mode=seq, partitions=16, threads=1 */
ODL_API void odl_exec_options_init(odl_exec_options* options);

/* Result lines are display-rendered tuples (tab-separated components,
 * strings quoted, references as #oid), in evaluation order. */
ODL_API odl_status odl_query_execute(const odl_store* store, const odl_query* query,
                                     const odl_exec_options* options, odl_result** out_result);
ODL_API size_t odl_result_count(const odl_result* result);
ODL_API const char* odl_result_line(const odl_result* result, size_t index);
ODL_API void odl_result_free(odl_result* result);

ODL_API odl_status odl_query_explain(const odl_store* store, const odl_query* query,
                                     const odl_exec_options* options, char** out_text);

/* ---- synthetic data + benchmarking ---- */
typedef struct odl_gen_params {
  size_t n_left;
  size_t n_right;
  size_t coll_len;
  uint64_t alphabet;
  odl_coll_kind kind;
  uint64_t seed;
} odl_gen_params;

ODL_API odl_status odl_gen_dataset(const odl_gen_params* params, odl_store** out_store);

typedef struct odl_bench_params {
  odl_gen_params gen;
  odl_mode mode;
  size_t partitions;
  unsigned reps;
  unsigned threads;
} odl_bench_params;

typedef struct odl_bench_row {
  double build_ms;
  double probe_ms;
  double total_ms;
  uint64_t pairs;
} odl_bench_row;

ODL_API odl_status odl_bench_run(const odl_bench_params* params, odl_bench_row* out_naive,
                                 odl_bench_row* out_fusion);
ODL_API const char* odl_bench_csv_header(void);
ODL_API odl_status odl_bench_csv_row(const odl_bench_params* params, const odl_bench_row* row,
                                     const char* strategy, char** out_row);

#ifdef __cplusplus
}
#endif

#endif /* ODRALITE_H */
