// Command-line front end. Talks to the engine exclusively through the C API.
#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <sys/stat.h>
#include <vector>

#include "CLI11.hpp"
#include "odralite/odralite.h"

namespace {

struct StoreHandle {
  odl_store* ptr = nullptr;
  ~StoreHandle() { odl_store_free(ptr); }
  StoreHandle() = default;
  StoreHandle(const StoreHandle&) = delete;
  StoreHandle& operator=(const StoreHandle&) = delete;
};

struct QueryHandle {
  odl_query* ptr = nullptr;
  ~QueryHandle() { odl_query_free(ptr); }
};

struct ResultHandle {
  odl_result* ptr = nullptr;
  ~ResultHandle() { odl_result_free(ptr); }
};

struct TextHandle {
  char* ptr = nullptr;
  ~TextHandle() { odl_text_free(ptr); }
};

int exit_code_for(odl_status status) {
  return (status == ODL_E_INTERNAL || status == ODL_E_STRATEGY_MISMATCH) ? 2 : 1;
}

int report(odl_status status) {
  std::fprintf(stderr, "error: %s\n", odl_last_error());
  return exit_code_for(status);
}

int report_user(const std::string& message) {
  std::fprintf(stderr, "error: %s\n", message.c_str());
  return 1;
}

bool file_exists(const std::string& path) {
  struct stat st {};
  return ::stat(path.c_str(), &st) == 0;
}

bool file_empty(const std::string& path) {
  struct stat st {};
  if (::stat(path.c_str(), &st) != 0) return true;
  return st.st_size == 0;
}

int open_db(const std::string& db_path, StoreHandle& store) {
  if (db_path.empty()) return report_user("this command needs --db <snapshot>");
  if (const auto st = odl_store_open(db_path.c_str(), &store.ptr); st != ODL_OK) {
    return report(st);
  }
  return 0;
}

void print_summary(const odl_store* store) {
  std::printf("objects: %zu\n", odl_object_count(store));
  const size_t classes = odl_class_count(store);
  std::printf("classes: %zu\n", classes);
  for (size_t i = 0; i < classes; ++i) {
    TextHandle name;
    if (odl_class_name(store, i, &name.ptr) != ODL_OK) continue;
    size_t roots = 0;
    odl_root_count(store, name.ptr, &roots);
    std::printf("  %s: %zu\n", name.ptr, roots);
  }
}

bool parse_kind(const std::string& text, odl_coll_kind& out) {
  if (text == "set") {
    out = ODL_COLL_SET;
  } else if (text == "list") {
    out = ODL_COLL_LIST;
  } else if (text == "array") {
    out = ODL_COLL_ARRAY;
  } else {
    return false;
  }
  return true;
}

bool parse_mode(const std::string& text, odl_mode& out) {
  if (text == "seq") {
    out = ODL_MODE_SEQ;
  } else if (text == "bag") {
    out = ODL_MODE_BAG;
  } else {
    return false;
  }
  return true;
}

bool parse_strategy(const std::string& text, odl_strategy& out) {
  if (text == "naive") {
    out = ODL_STRATEGY_NAIVE;
  } else if (text == "fusion") {
    out = ODL_STRATEGY_FUSION;
  } else if (text == "auto") {
    out = ODL_STRATEGY_AUTO;
  } else {
    return false;
  }
  return true;
}

int run_load(const std::string& path) {
  StoreHandle store;
  if (const auto st = odl_store_open(path.c_str(), &store.ptr); st != ODL_OK) return report(st);
  print_summary(store.ptr);
  return 0;
}

int run_save(const std::string& db_path, const std::string& target) {
  StoreHandle store;
  if (const int rc = open_db(db_path, store); rc != 0) return rc;
  if (const auto st = odl_store_save(store.ptr, target.c_str()); st != ODL_OK) return report(st);
  std::printf("saved %s (%zu objects)\n", target.c_str(), odl_object_count(store.ptr));
  return 0;
}

int run_import_xml(const std::string& db_path, const std::string& file,
                   const std::string& root_class) {
  if (db_path.empty()) return report_user("this command needs --db <snapshot>");
  StoreHandle store;
  if (file_exists(db_path)) {
    if (const auto st = odl_store_open(db_path.c_str(), &store.ptr); st != ODL_OK) {
      return report(st);
    }
  } else {
    if (const auto st = odl_store_new(&store.ptr); st != ODL_OK) return report(st);
  }
  std::ifstream in(file, std::ios::binary);
  if (!in) return report_user("cannot open " + file);
  std::ostringstream text;
  text << in.rdbuf();
  const std::string document = text.str();
  size_t roots = 0;
  if (const auto st = odl_import_xml(store.ptr, document.c_str(),
                                     root_class.empty() ? nullptr : root_class.c_str(), &roots);
      st != ODL_OK) {
    return report(st);
  }
  if (const auto st = odl_store_save(store.ptr, db_path.c_str()); st != ODL_OK) {
    return report(st);
  }
  std::printf("imported %zu root objects into %s\n", roots, db_path.c_str());
  return 0;
}

int run_export_xml(const std::string& db_path, std::uint64_t oid, const std::string& out_path) {
  StoreHandle store;
  if (const int rc = open_db(db_path, store); rc != 0) return rc;
  TextHandle text;
  if (const auto st = odl_export_xml(store.ptr, oid, &text.ptr); st != ODL_OK) return report(st);
  if (out_path.empty()) {
    std::fputs(text.ptr, stdout);
  } else {
    std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
    if (!out) return report_user("cannot write " + out_path);
    out << text.ptr;
  }
  return 0;
}

int run_query(const std::string& db_path, const std::string& text, const odl_exec_options& options) {
  StoreHandle store;
  if (const int rc = open_db(db_path, store); rc != 0) return rc;
  QueryHandle query;
  if (const auto st = odl_query_parse(text.c_str(), &query.ptr); st != ODL_OK) return report(st);
  ResultHandle result;
  if (const auto st = odl_query_execute(store.ptr, query.ptr, &options, &result.ptr);
      st != ODL_OK) {
    return report(st);
  }
  std::vector<std::string> lines;
  lines.reserve(odl_result_count(result.ptr));
  for (size_t i = 0; i < odl_result_count(result.ptr); ++i) {
    lines.emplace_back(odl_result_line(result.ptr, i));
  }
  std::sort(lines.begin(), lines.end());
  for (const std::string& line : lines) std::printf("%s\n", line.c_str());
  return 0;
}

int run_explain(const std::string& db_path, const std::string& text) {
  StoreHandle store;
  if (const int rc = open_db(db_path, store); rc != 0) return rc;
  QueryHandle query;
  if (const auto st = odl_query_parse(text.c_str(), &query.ptr); st != ODL_OK) return report(st);
  odl_exec_options options;
  odl_exec_options_init(&options);
  TextHandle out;
  if (const auto st = odl_query_explain(store.ptr, query.ptr, &options, &out.ptr); st != ODL_OK) {
    return report(st);
  }
  std::fputs(out.ptr, stdout);
  return 0;
}

int run_gen(const odl_gen_params& params, const std::string& out_path) {
  StoreHandle store;
  if (const auto st = odl_gen_dataset(&params, &store.ptr); st != ODL_OK) return report(st);
  if (const auto st = odl_store_save(store.ptr, out_path.c_str()); st != ODL_OK) {
    return report(st);
  }
  std::printf("generated %zu objects -> %s\n", odl_object_count(store.ptr), out_path.c_str());
  return 0;
}

int run_bench(const odl_bench_params& params, const std::string& csv_path) {
  odl_bench_row naive{};
  odl_bench_row fusion{};
  if (const auto st = odl_bench_run(&params, &naive, &fusion); st != ODL_OK) return report(st);
  TextHandle naive_row;
  TextHandle fusion_row;
  if (const auto st = odl_bench_csv_row(&params, &naive, "naive", &naive_row.ptr); st != ODL_OK) {
    return report(st);
  }
  if (const auto st = odl_bench_csv_row(&params, &fusion, "fusion", &fusion_row.ptr);
      st != ODL_OK) {
    return report(st);
  }
  if (csv_path.empty()) {
    std::printf("%s\n%s\n%s\n", odl_bench_csv_header(), naive_row.ptr, fusion_row.ptr);
  } else {
    const bool need_header = file_empty(csv_path);
    std::ofstream out(csv_path, std::ios::app);
    if (!out) return report_user("cannot write " + csv_path);
    if (need_header) out << odl_bench_csv_header() << '\n';
    out << naive_row.ptr << '\n' << fusion_row.ptr << '\n';
    std::printf("appended 2 rows to %s\n", csv_path.c_str());
  }
  std::printf("naive:  total=%.3fms pairs=%llu\n", naive.total_ms,
              static_cast<unsigned long long>(naive.pairs));
  std::printf("fusion: build=%.3fms probe=%.3fms total=%.3fms pairs=%llu\n", fusion.build_ms,
              fusion.probe_ms, fusion.total_ms, static_cast<unsigned long long>(fusion.pairs));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"odralite: in-memory object store with collection-join queries"};
  app.require_subcommand(1);
  std::string db_path;
  app.add_option("--db", db_path, "snapshot file backing this command");

  auto* load_cmd = app.add_subcommand("load", "open a snapshot and print a summary");
  std::string load_path;
  load_cmd->add_option("snapshot", load_path, "snapshot file")->required();

  auto* save_cmd = app.add_subcommand("save", "copy the --db snapshot to a new file");
  std::string save_path;
  save_cmd->add_option("snapshot", save_path, "target file")->required();

  auto* import_cmd = app.add_subcommand("import-xml", "import an XML file into the --db store");
  std::string import_file;
  std::string root_class;
  import_cmd->add_option("file", import_file, "XML document")->required();
  import_cmd->add_option("--root-class", root_class, "name override for imported roots");

  auto* export_cmd = app.add_subcommand("export-xml", "export one object subtree as XML");
  std::uint64_t export_oid = 0;
  std::string export_out;
  export_cmd->add_option("oid", export_oid, "root object id")->required();
  export_cmd->add_option("--out", export_out, "output file (default: stdout)");

  auto* query_cmd = app.add_subcommand("query", "run a query against the --db store");
  std::string query_text;
  std::string strategy_text = "auto";
  std::string query_mode_text = "seq";
  std::size_t query_partitions = 16;
  query_cmd->add_option("text", query_text, "query text")->required();
  query_cmd->add_option("--strategy", strategy_text, "naive|fusion|auto (default auto)");
  query_cmd->add_option("--mode", query_mode_text, "seq|bag list/array key equality (default seq)");
  query_cmd->add_option("--partitions", query_partitions, "fusion partition count (default 16)");

  auto* explain_cmd = app.add_subcommand("explain", "show the join plan for a query");
  std::string explain_text_arg;
  explain_cmd->add_option("text", explain_text_arg, "query text")->required();

  auto* gen_cmd = app.add_subcommand("gen", "generate a synthetic dataset snapshot");
  odl_gen_params gen_params{};
  gen_params.alphabet = 1;
  std::string gen_kind_text = "set";
  std::string gen_out;
  gen_cmd->add_option("--left", gen_params.n_left, "number of L objects")->required();
  gen_cmd->add_option("--right", gen_params.n_right, "number of R objects")->required();
  gen_cmd->add_option("--len", gen_params.coll_len, "elements per collection")->required();
  gen_cmd->add_option("--alphabet", gen_params.alphabet, "distinct element values")->required();
  gen_cmd->add_option("--kind", gen_kind_text, "set|list|array")->required();
  gen_cmd->add_option("--seed", gen_params.seed, "generator seed")->required();
  gen_cmd->add_option("--out", gen_out, "snapshot file to write")->required();

  auto* bench_cmd = app.add_subcommand("bench", "time naive vs fusion joins on synthetic data");
  odl_bench_params bench_params{};
  bench_params.gen.alphabet = 1;
  bench_params.partitions = 16;
  bench_params.reps = 5;
  bench_params.threads = 1;
  bench_params.gen.seed = 1;
  std::string bench_kind_text = "set";
  std::string bench_mode_text = "seq";
  std::string bench_csv;
  bench_cmd->add_option("--left", bench_params.gen.n_left, "number of L objects")->required();
  bench_cmd->add_option("--right", bench_params.gen.n_right, "number of R objects")->required();
  bench_cmd->add_option("--len", bench_params.gen.coll_len, "elements per collection")->required();
  bench_cmd->add_option("--alphabet", bench_params.gen.alphabet, "distinct element values")
      ->required();
  bench_cmd->add_option("--kind", bench_kind_text, "set|list|array")->required();
  bench_cmd->add_option("--mode", bench_mode_text, "seq|bag (default seq)");
  bench_cmd->add_option("--partitions", bench_params.partitions, "partition count (default 16)");
  bench_cmd->add_option("--reps", bench_params.reps, "repetitions, median reported (default 5)");
  bench_cmd->add_option("--threads", bench_params.threads, "worker threads (default 1)");
  bench_cmd->add_option("--seed", bench_params.gen.seed, "generator seed (default 1)");
  bench_cmd->add_option("--csv", bench_csv, "append rows to this CSV file");

  CLI11_PARSE(app, argc, argv);

  if (load_cmd->parsed()) return run_load(load_path);
  if (save_cmd->parsed()) return run_save(db_path, save_path);
  if (import_cmd->parsed()) return run_import_xml(db_path, import_file, root_class);
  if (export_cmd->parsed()) return run_export_xml(db_path, export_oid, export_out);
  if (query_cmd->parsed()) {
    odl_exec_options options;
    odl_exec_options_init(&options);
    if (!parse_strategy(strategy_text, options.strategy)) {
      return report_user("unknown strategy " + strategy_text + " (naive|fusion|auto)");
    }
    if (!parse_mode(query_mode_text, options.mode)) {
      return report_user("unknown mode " + query_mode_text + " (seq|bag)");
    }
    options.partitions = query_partitions;
    return run_query(db_path, query_text, options);
  }
  if (explain_cmd->parsed()) return run_explain(db_path, explain_text_arg);
  if (gen_cmd->parsed()) {
    if (!parse_kind(gen_kind_text, gen_params.kind)) {
      return report_user("unknown kind " + gen_kind_text + " (set|list|array)");
    }
    return run_gen(gen_params, gen_out);
  }
  if (bench_cmd->parsed()) {
    if (!parse_kind(bench_kind_text, bench_params.gen.kind)) {
      return report_user("unknown kind " + bench_kind_text + " (set|list|array)");
    }
    if (!parse_mode(bench_mode_text, bench_params.mode)) {
      return report_user("unknown mode " + bench_mode_text + " (seq|bag)");
    }
    return run_bench(bench_params, bench_csv);
  }
  return report_user("no subcommand given");
}
