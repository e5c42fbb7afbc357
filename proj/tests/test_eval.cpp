#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <functional>
#include <string>
#include <vector>

#include "eval.hpp"
#include "fixtures.hpp"
#include "query.hpp"
#include "store.hpp"

using namespace odralite;
using namespace odralite::eval;

namespace {

Store university() { return Store::load_snapshot_text(testsupport::kUniversitySnapshot); }
Store equijoin_store() { return Store::load_snapshot_text(testsupport::kEquijoinSnapshot); }

std::vector<std::string> run_lines(const Store& store, const std::string& text,
                                   const EvalOptions& options = {}) {
  query::NodePtr q = query::parse(text);
  ResultBag bag = execute(store, *q, options);
  std::vector<std::string> lines;
  lines.reserve(bag.size());
  for (const RuntimeResult& r : bag) lines.push_back(render_result(store, r));
  return lines;
}

std::vector<std::string> run_sorted(const Store& store, const std::string& text,
                                    const EvalOptions& options = {}) {
  auto lines = run_lines(store, text, options);
  std::sort(lines.begin(), lines.end());
  return lines;
}

struct Caught {
  Errc code = Errc::ok;
  std::string message;
};

Caught eval_error(const Store& store, const std::string& text, const EvalOptions& options = {}) {
  try {
    run_lines(store, text, options);
  } catch (const Error& e) {
    return {e.code(), e.what()};
  }
  return {};
}

using V = std::vector<std::string>;

}  // namespace

TEST_CASE("a class name yields its roots in insertion order") {
  Store s = university();
  CHECK(run_lines(s, "Student") == V{"#1", "#8", "#15"});
  CHECK(run_lines(s, "course") == V{"#19", "#22"});
  CHECK(run_lines(s, "Faculty") == V{"#25", "#27"});
}

TEST_CASE("dot maps attribute access over each element") {
  Store s = university();
  CHECK(run_lines(s, "Student.fName") == V{"\"Ali\"", "\"Sara\"", "\"Omar\""});
  CHECK(run_lines(s, "Student.marks") == V{"150", "250", "300"});
  // Reference children dereference to their targets.
  CHECK(run_lines(s, "Student.learns") == V{"#19", "#22", "#19"});
  CHECK(run_lines(s, "Student.learns.name") == V{"\"Databases\"", "\"Algorithms\"", "\"Databases\""});
  CHECK(run_lines(s, "Student.learns.faculty.name") ==
        V{"\"Computing\"", "\"Science\"", "\"Computing\""});
  // Complex children stay references to the child object.
  CHECK(run_lines(s, "(Student where fName == \"Ali\").address") == V{"#5"});
  CHECK(run_lines(s, "(Student where fName == \"Ali\").address.city") == V{"\"Jeddah\""});
}

TEST_CASE("where filters per element") {
  Store s = university();
  CHECK(run_lines(s, "Student where marks > 200") == V{"#8", "#15"});
  CHECK(run_lines(s, "Student where marks > 999").empty());
  CHECK(run_lines(s, "(Student where marks > 200).fName") == V{"\"Sara\"", "\"Omar\""});
  CHECK(run_lines(s, "Student where true") == V{"#1", "#8", "#15"});
  CHECK(run_lines(s, "Student where fName == \"Ali\" or marks == 300") == V{"#1", "#15"});
}

TEST_CASE("tuples pair components per element") {
  Store s = university();
  CHECK(run_lines(s, "Student.(fName, marks)") ==
        V{"\"Ali\"\t150", "\"Sara\"\t250", "\"Omar\"\t300"});
  CHECK(run_lines(s, "Student.(fName, (marks, learns))") ==
        V{"\"Ali\"\t(150, #19)", "\"Sara\"\t(250, #22)", "\"Omar\"\t(300, #19)"});
}

TEST_CASE("dot chains through complex children") {
  Store s = university();
  CHECK(run_lines(s, "(Student where marks < 200).address.(city, street)") ==
        V{"\"Jeddah\"\t\"King Rd\""});
}

TEST_CASE("navigational join pairs each element with its dependent bag") {
  Store s = university();
  CHECK(run_lines(s, "Student join learns") ==
        V{"#1\t#19", "#8\t#22", "#15\t#19"});
  CHECK(run_sorted(s, "(Student join course).(fName, name)") ==
        V{"\"Ali\"\t\"Algorithms\"", "\"Ali\"\t\"Databases\"", "\"Omar\"\t\"Algorithms\"",
          "\"Omar\"\t\"Databases\"", "\"Sara\"\t\"Algorithms\"", "\"Sara\"\t\"Databases\""});
  CHECK(run_lines(s, "((Student where marks > 200) join (learns.faculty)).(fName, name)") ==
        V{"\"Sara\"\t\"Science\"", "\"Omar\"\t\"Computing\""});
}

TEST_CASE("join with on filters the pairs") {
  Store s = university();
  CHECK(run_lines(s, "(Student join course on marks > 200 and name == \"Databases\").fName") ==
        V{"\"Sara\"", "\"Omar\""});
  CHECK(run_lines(s, "Student join course on false").empty());
}

TEST_CASE("arithmetic and comparisons") {
  Store s = university();
  CHECK(run_lines(s, "Student.(marks + 10)") == V{"160", "260", "310"});
  CHECK(run_lines(s, "Student.(marks * 2 - marks)") == V{"150", "250", "300"});
  CHECK(run_lines(s, "Student.(marks / 100)") == V{"1", "2", "3"});
  CHECK(run_lines(s, "Student.(marks / 100.0)") == V{"1.5", "2.5", "3.0"});
  CHECK(run_lines(s, "Student.(marks + 0.5)") == V{"150.5", "250.5", "300.5"});
  CHECK(run_lines(s, "3 + 4 * 2") == V{"11"});
  CHECK(run_lines(s, "7 / 2") == V{"3"});
  CHECK(run_lines(s, "1 == 1.0") == V{"true"});
  CHECK(run_lines(s, "\"abc\" < \"abd\"") == V{"true"});
  CHECK(run_lines(s, "\"a\" != \"b\"") == V{"true"});
  CHECK(run_lines(s, "true == true") == V{"true"});
  CHECK(run_lines(s, "true != false") == V{"true"});
}

TEST_CASE("boolean operators are strict") {
  Store s = university();
  CHECK(run_lines(s, "true or false") == V{"true"});
  CHECK(run_lines(s, "false and true") == V{"false"});
  // Both operands evaluate: the division does not hide behind short-circuit.
  CHECK(eval_error(s, "true or 1 / 0 == 1").code == Errc::division_by_zero);
  CHECK(eval_error(s, "false and 1 / 0 == 1").code == Errc::division_by_zero);
  CHECK(eval_error(s, "true and 5").code == Errc::type_mismatch);
}

TEST_CASE("evaluation errors carry precise codes and messages") {
  Store s = university();
  CHECK(eval_error(s, "nothing").code == Errc::unbound_name);
  CHECK(eval_error(s, "nothing").message == "unbound name: nothing");
  CHECK(eval_error(s, "Student where fName").code == Errc::non_boolean_predicate);
  CHECK(eval_error(s, "Student == Student").code == Errc::non_singleton);
  // Unparenthesized "Student.marks == 150" would parse as Student.(marks == 150)
  // because dot sits at pipeline level, below comparison.
  CHECK(eval_error(s, "(Student.marks) == 150").code == Errc::non_singleton);
  CHECK(eval_error(s, "(Student.marks) == 150").message ==
        "comparison operand must yield exactly one result, got 3");
  CHECK(run_sorted(s, "Student.marks == 150") == V{"false", "false", "true"});
  CHECK(eval_error(s, "1 / 0").code == Errc::division_by_zero);
  CHECK(eval_error(s, "1 / 0").message == "integer division by zero");
  CHECK(eval_error(s, "1 < \"a\"").code == Errc::type_mismatch);
  CHECK(eval_error(s, "true < false").code == Errc::type_mismatch);
  CHECK(eval_error(s, "1 + \"a\"").code == Errc::type_mismatch);
  CHECK(eval_error(s, "(Student where fName == \"Ali\").address == 1").code ==
        Errc::type_mismatch);
  CHECK(eval_error(s, "(Student where fName == \"Ali\").(fName, marks) == 1").code ==
        Errc::type_mismatch);
}

TEST_CASE("float division by zero follows ieee semantics") {
  Store s = university();
  CHECK(run_lines(s, "1.0 / 0.0") == V{"inf"});
  // NaN sign depends on the platform's default quiet NaN.
  auto lines = run_lines(s, "0.0 / 0.0");
  REQUIRE(lines.size() == 1);
  CHECK((lines[0] == "nan" || lines[0] == "-nan"));
}

TEST_CASE("collections compare by canonical key under the active mode") {
  Store s;
  Oid a = s.insert_object(Oid{}, "A", Complex{});
  s.insert_object(a, "xs", Collection{CollectionKind::list, {std::int64_t{1}, std::int64_t{2}}, {}});
  s.insert_object(a, "ys", Collection{CollectionKind::list, {std::int64_t{2}, std::int64_t{1}}, {}});
  s.insert_object(a, "s1", Collection{CollectionKind::set, {std::int64_t{2}, std::int64_t{1}}, {}});
  s.insert_object(a, "s2", Collection{CollectionKind::set, {std::int64_t{1}, std::int64_t{2}}, {}});
  EvalOptions seq;
  EvalOptions bag;
  bag.mode = fusion::Mode::bag;
  CHECK(run_lines(s, "A.(xs == ys)", seq) == V{"false"});
  CHECK(run_lines(s, "A.(xs == ys)", bag) == V{"true"});
  CHECK(run_lines(s, "A.(s1 == s2)", seq) == V{"true"});
  CHECK(run_lines(s, "A.(xs != ys)", seq) == V{"true"});
  // Ordering comparisons on collections are rejected either way.
  CHECK(eval_error(s, "A.(xs < ys)", seq).code == Errc::type_mismatch);
  // Floats inside compared collections surface float_join_key.
  Oid b = s.insert_object(Oid{}, "B", Complex{});
  s.insert_object(b, "f1", Collection{CollectionKind::list, {1.5}, {}});
  s.insert_object(b, "f2", Collection{CollectionKind::list, {1.5}, {}});
  CHECK(eval_error(s, "B.(f1 == f2)", seq).code == Errc::float_join_key);
}

TEST_CASE("reference chains resolve through intermediate references") {
  Store s;
  Oid t = s.insert_object(Oid{}, "T", Complex{});
  s.insert_object(t, "v", std::int64_t{7});
  Oid a = s.insert_object(Oid{}, "A", Complex{});
  Oid r1 = s.insert_object(Oid{}, "Hop", Reference{t});
  s.insert_object(a, "r", Reference{r1});  // A.r -> Hop -> T
  CHECK(run_lines(s, "A.r.v") == V{"7"});
  CHECK(run_lines(s, "A.r") == V{"#" + std::to_string(t.value)});
}

TEST_CASE("reference cycles are reported, not looped") {
  // Two root references pointing at each other can only come from a
  // hand-written snapshot; build one.
  Store s = Store::load_snapshot_text(
      "ODRALITE 1\n"
      "OBJ 1 - A CPLX\n"
      "OBJ 2 1 r REF 3\n"
      "OBJ 3 - Knot REF 4\n"
      "OBJ 4 - Knot2 REF 3\n");
  Caught c = eval_error(s, "A.r");
  CHECK(c.code == Errc::type_mismatch);
  CHECK(c.message.find("reference cycle") != std::string::npos);
}

TEST_CASE("attribute scope shadows class scope") {
  Store s;
  Oid x = s.insert_object(Oid{}, "X", Complex{});
  s.insert_object(x, "Y", std::int64_t{99});
  Oid y = s.insert_object(Oid{}, "Y", Complex{});
  s.insert_object(y, "v", std::int64_t{1});
  // Inside X's scope the attribute wins over the class.
  CHECK(run_lines(s, "X.Y") == V{"99"});
  // At top level the class is the only binding.
  CHECK(run_lines(s, "Y") == V{"#" + std::to_string(y.value)});
  // A navigational join against the shadowed name pairs with the attribute.
  CHECK(run_lines(s, "X join Y") == V{"#" + std::to_string(x.value) + "\t99"});
}

TEST_CASE("same-name children all contribute binders") {
  Store s;
  Oid p = s.insert_object(Oid{}, "P", Complex{});
  s.insert_object(p, "kid", std::int64_t{1});
  s.insert_object(p, "kid", std::int64_t{2});
  CHECK(run_lines(s, "P.kid") == V{"1", "2"});
  CHECK(run_lines(s, "P join kid") ==
        V{"#" + std::to_string(p.value) + "\t1", "#" + std::to_string(p.value) + "\t2"});
}

TEST_CASE("environment stack depth is restored around every evaluation") {
  Store s = university();
  reset_depth_counters();
  const char* corpus[] = {
      "Student",
      "Student.fName",
      "Student where marks > 200",
      "(Student join course).(fName, name)",
      "((Student where marks > 200) join (learns.faculty)).(fName, name)",
      "Student.(fName, (marks, learns))",
      "Student join learns",
  };
  for (const char* text : corpus) run_lines(s, text);
  CHECK(depth_checks() > 0);
  CHECK(depth_violations() == 0);
  // Errors unwind cleanly too; later evaluations still balance.
  (void)eval_error(s, "Student.(1 / 0)");
  run_lines(s, "Student.fName");
  CHECK(depth_violations() == 0);
}

TEST_CASE("detector accepts the plain equi-join") {
  Store s = equijoin_store();
  query::NodePtr q = query::parse("(Student join Course on codes == prereq).(fName, name)");
  Detection det = detect_equi_join(s, *q);
  REQUIRE(det.plan.has_value());
  CHECK(det.reason.empty());
  CHECK(det.plan->left_class == "Student");
  CHECK(det.plan->right_class == "Course");
  CHECK(det.plan->left_path == std::vector<std::string>{"codes"});
  CHECK(det.plan->right_path == std::vector<std::string>{"prereq"});
  CHECK(det.plan->left_filter == nullptr);
  CHECK(det.plan->right_filter == nullptr);
  CHECK(det.plan->projections.size() == 1);
}

TEST_CASE("detector accepts filtered sides and stacked projections") {
  Store s = equijoin_store();
  query::NodePtr q = query::parse(
      "((Student where fName != \"Zed\") join (Course where name != \"x\") "
      "on codes == prereq).(fName, name).(fName)");
  // The trailing single-name projection parses as Dot(.., Name), still a dot
  // spine over the join.
  Detection det = detect_equi_join(s, *q);
  REQUIRE(det.plan.has_value());
  CHECK(det.plan->left_filter != nullptr);
  CHECK(det.plan->right_filter != nullptr);
  CHECK(det.plan->projections.size() == 2);
}

TEST_CASE("detector declines non-candidates with specific reasons") {
  Store s = equijoin_store();
  auto reason_for = [&](const std::string& text) {
    query::NodePtr q = query::parse(text);
    Detection det = detect_equi_join(s, *q);
    CHECK_FALSE(det.plan.has_value());
    return det.reason;
  };
  CHECK(reason_for("Student") == "query is not a join");
  CHECK(reason_for("Student join Course") == "join has no on clause (navigational join)");
  CHECK(reason_for("Student join Course on codes != prereq") ==
        "on clause is not a single equality");
  CHECK(reason_for("Student join Course on codes == prereq and true") ==
        "on clause is not a single equality");
  CHECK(reason_for("(Student where true).fName join Course on codes == prereq") ==
        "left join operand is not a class or filtered class");
  CHECK(reason_for("Student join (Course, Course) on codes == prereq") ==
        "right join operand is not a class or filtered class");
  CHECK(reason_for("Ghost join Course on codes == prereq") == "unknown class Ghost");
  CHECK(reason_for("Student join Ghost on codes == prereq") == "unknown class Ghost");
  CHECK(reason_for("Student join Course on codes + 1 == prereq") ==
        "left side of on clause is not an attribute path");
  CHECK(reason_for("Student join Course on codes == 3") ==
        "right side of on clause is not an attribute path");
  CHECK(reason_for("Student join Course on missing == prereq") ==
        "attribute path missing does not resolve uniquely on every Student");
  CHECK(reason_for("Student join Course on fName == prereq") ==
        "attribute path fName does not end in a collection on every Student");
  CHECK(reason_for("Student join Course on codes == name") ==
        "attribute path name does not end in a collection on every Course");
}

TEST_CASE("detector declines cross-side name capture") {
  // Both sides expose "k": the left key head would be ambiguous at runtime.
  Store s;
  Oid a = s.insert_object(Oid{}, "A", Complex{});
  s.insert_object(a, "k", Collection{CollectionKind::set, {std::int64_t{1}}, {}});
  Oid b = s.insert_object(Oid{}, "B", Complex{});
  s.insert_object(b, "k", Collection{CollectionKind::set, {std::int64_t{1}}, {}});
  query::NodePtr q = query::parse("A join B on k == k");
  Detection det = detect_equi_join(s, *q);
  REQUIRE_FALSE(det.plan.has_value());
  CHECK(det.reason == "key attribute k is ambiguous between join sides");
  EvalOptions fusion_only;
  fusion_only.strategy = Strategy::fusion;
  Caught c;
  try {
    execute(s, *q, fusion_only);
  } catch (const Error& e) {
    c = {e.code(), e.what()};
  }
  CHECK(c.code == Errc::no_fusion_plan);
}

TEST_CASE("detector declines when a left attribute shadows the right class") {
  Store s;
  Oid a = s.insert_object(Oid{}, "A", Complex{});
  s.insert_object(a, "k", Collection{CollectionKind::set, {std::int64_t{1}}, {}});
  s.insert_object(a, "B", std::int64_t{0});  // shadows class B inside A's scope
  Oid b = s.insert_object(Oid{}, "B", Complex{});
  s.insert_object(b, "p", Collection{CollectionKind::set, {std::int64_t{1}}, {}});
  query::NodePtr q = query::parse("A join B on k == p");
  Detection det = detect_equi_join(s, *q);
  REQUIRE_FALSE(det.plan.has_value());
  CHECK(det.reason == "class name B is shadowed by a left attribute");
}

TEST_CASE("detector declines filters that may bind across sides") {
  Store s;
  Oid a1 = s.insert_object(Oid{}, "A", Complex{});
  s.insert_object(a1, "k", Collection{CollectionKind::set, {std::int64_t{1}}, {}});
  s.insert_object(a1, "t", std::int64_t{1});
  Oid a2 = s.insert_object(Oid{}, "A", Complex{});
  s.insert_object(a2, "k", Collection{CollectionKind::set, {std::int64_t{1}}, {}});
  // a2 has no t; some B offers t, so "t" could capture the B binding.
  Oid b = s.insert_object(Oid{}, "B", Complex{});
  s.insert_object(b, "p", Collection{CollectionKind::set, {std::int64_t{1}}, {}});
  s.insert_object(b, "t", std::int64_t{2});
  query::NodePtr q = query::parse("(A where t == 1) join B on k == p");
  Detection det = detect_equi_join(s, *q);
  REQUIRE_FALSE(det.plan.has_value());
  CHECK(det.reason == "filter name t may bind across join sides");
  // With t on every A the filter is self-contained and the plan goes through.
  s.insert_object(a2, "t", std::int64_t{3});
  Detection ok = detect_equi_join(s, *q);
  CHECK(ok.plan.has_value());
}

TEST_CASE("detector handles multi-step paths through references") {
  Store s;
  Oid deck = s.insert_object(Oid{}, "Deck", Complex{});
  s.insert_object(deck, "cards", Collection{CollectionKind::set, {std::int64_t{1}}, {}});
  Oid a = s.insert_object(Oid{}, "A", Complex{});
  s.insert_object(a, "deck", Reference{deck});
  Oid b = s.insert_object(Oid{}, "B", Complex{});
  Oid hand = s.insert_object(b, "hand", Complex{});
  s.insert_object(hand, "cards2", Collection{CollectionKind::set, {std::int64_t{1}}, {}});
  // The paths need parentheses: a bare "on deck.cards == ..." would continue
  // the outer pipeline, since "on" binds only one disjunction.
  query::NodePtr q = query::parse("A join B on (deck.cards) == (hand.cards2)");
  Detection det = detect_equi_join(s, *q);
  REQUIRE(det.plan.has_value());
  CHECK(det.plan->left_path == std::vector<std::string>{"deck", "cards"});
  CHECK(det.plan->right_path == std::vector<std::string>{"hand", "cards2"});
  ResultBag bag = execute(s, *q, {});
  CHECK(bag.size() == 1);
  // Through an atomic intermediate the path is declined.
  query::NodePtr q2 = query::parse("A join B on (deck.cards) == (hand.cards2.nope)");
  Detection det2 = detect_equi_join(s, *q2);
  CHECK_FALSE(det2.plan.has_value());
  CHECK(det2.reason == "attribute path hand.cards2.nope crosses an atomic attribute on B");
}

TEST_CASE("all strategies produce the same multiset on the equi-join fixture") {
  Store s = equijoin_store();
  const std::string q = "(Student join Course on codes == prereq).(fName, name)";
  EvalOptions naive;
  naive.strategy = Strategy::naive;
  EvalOptions fused;
  fused.strategy = Strategy::fusion;
  EvalOptions auto_opt;
  auto_opt.strategy = Strategy::auto_;
  const V want{"\"Ali\"\t\"Databases\"", "\"Omar\"\t\"Databases\"", "\"Sara\"\t\"Algorithms\""};
  CHECK(run_sorted(s, q, naive) == want);
  CHECK(run_sorted(s, q, fused) == want);
  CHECK(run_sorted(s, q, auto_opt) == want);
}

TEST_CASE("fusion strategy demands a plan, auto falls back") {
  Store s = university();
  const std::string q = "(Student join course).(fName, name)";
  EvalOptions fused;
  fused.strategy = Strategy::fusion;
  Caught c = eval_error(s, q, fused);
  CHECK(c.code == Errc::no_fusion_plan);
  CHECK(c.message == "no fusion plan: join has no on clause (navigational join)");
  EvalOptions auto_opt;
  auto_opt.strategy = Strategy::auto_;
  CHECK(run_sorted(s, q, auto_opt).size() == 6);
}

TEST_CASE("fusion path applies filters and projections like the naive path") {
  Store s = equijoin_store();
  const std::string q =
      "((Student where fName != \"Omar\") join Course on codes == prereq).(fName, name)";
  EvalOptions naive;
  naive.strategy = Strategy::naive;
  EvalOptions fused;
  fused.strategy = Strategy::fusion;
  const V want{"\"Ali\"\t\"Databases\"", "\"Sara\"\t\"Algorithms\""};
  CHECK(run_sorted(s, q, naive) == want);
  CHECK(run_sorted(s, q, fused) == want);
}

TEST_CASE("bare equi-join returns tuples of references") {
  Store s = equijoin_store();
  const std::string q = "Student join Course on codes == prereq";
  EvalOptions fused;
  fused.strategy = Strategy::fusion;
  CHECK(run_sorted(s, q, fused) == V{"#1\t#10", "#4\t#13", "#7\t#10"});
  EvalOptions naive;
  naive.strategy = Strategy::naive;
  CHECK(run_sorted(s, q, naive) == V{"#1\t#10", "#4\t#13", "#7\t#10"});
}

TEST_CASE("explain reports plan and options") {
  Store s = equijoin_store();
  query::NodePtr q = query::parse("(Student join Course on codes == prereq).(fName, name)");
  EvalOptions options;
  CHECK(explain_text(s, *q, options) ==
        "query: ((Student join Course on (codes == prereq)) . (fName, name))\n"
        "fusion: yes\n"
        "reason: -\n"
        "left_class: Student\n"
        "left_filter: -\n"
        "left_path: codes\n"
        "right_class: Course\n"
        "right_filter: -\n"
        "right_path: prereq\n"
        "mode: seq\n"
        "partitions: 16\n");
  query::NodePtr nav = query::parse("Student join Course");
  EvalOptions bag_opts;
  bag_opts.mode = fusion::Mode::bag;
  bag_opts.partitions = 8;
  CHECK(explain_text(s, *nav, bag_opts) ==
        "query: (Student join Course)\n"
        "fusion: no\n"
        "reason: join has no on clause (navigational join)\n"
        "left_class: -\n"
        "left_filter: -\n"
        "left_path: -\n"
        "right_class: -\n"
        "right_filter: -\n"
        "right_path: -\n"
        "mode: bag\n"
        "partitions: 8\n");
}

TEST_CASE("strategy names round-trip") {
  CHECK(strategy_name(Strategy::naive) == std::string("naive"));
  CHECK(strategy_name(Strategy::fusion) == std::string("fusion"));
  CHECK(strategy_name(Strategy::auto_) == std::string("auto"));
  CHECK(strategy_from_name("naive") == Strategy::naive);
  CHECK(strategy_from_name("fusion") == Strategy::fusion);
  CHECK(strategy_from_name("auto") == Strategy::auto_);
  CHECK_FALSE(strategy_from_name("nope").has_value());
}

TEST_CASE("nested opens scopes only for complex references and tuples") {
  Store s = university();
  EnvFrame f = nested(s, ref_result(Oid{1}));  // Ali
  REQUIRE(f.binders.size() == 4);
  CHECK(f.binders[0].name == "fName");
  CHECK(std::get<std::string>(std::get<AtomValue>(f.binders[0].value.value)) == "Ali");
  CHECK(f.binders[1].name == "marks");
  CHECK(f.binders[2].name == "learns");
  // The learns binder is the resolved course reference.
  CHECK(std::get<RefResult>(f.binders[2].value.value).target == Oid{19});
  CHECK(f.binders[3].name == "address");
  CHECK(std::get<RefResult>(f.binders[3].value.value).target == Oid{5});

  CHECK(nested(s, atom_result(AtomValue{std::int64_t{5}})).binders.empty());

  TupleResult pair;
  pair.push_back(ref_result(Oid{1}));
  pair.push_back(ref_result(Oid{19}));
  EnvFrame tf = nested(s, tuple_result(std::move(pair)));
  CHECK(tf.binders.size() == 6);  // 4 from Ali, 2 from the course
}

TEST_CASE("lookup takes all matches from the topmost frame that has any") {
  EnvStack envs;
  EnvFrame bottom;
  bottom.binders.push_back({"x", atom_result(AtomValue{std::int64_t{1}})});
  bottom.binders.push_back({"y", atom_result(AtomValue{std::int64_t{9}})});
  EnvFrame top;
  top.binders.push_back({"x", atom_result(AtomValue{std::int64_t{2}})});
  top.binders.push_back({"x", atom_result(AtomValue{std::int64_t{3}})});
  envs.push(std::move(bottom));
  envs.push(std::move(top));
  auto xs = envs.lookup("x");
  REQUIRE(xs.has_value());
  REQUIRE(xs->size() == 2);
  CHECK(std::get<std::int64_t>(std::get<AtomValue>((*xs)[0].value)) == 2);
  CHECK(std::get<std::int64_t>(std::get<AtomValue>((*xs)[1].value)) == 3);
  auto ys = envs.lookup("y");
  REQUIRE(ys.has_value());
  CHECK(ys->size() == 1);
  CHECK_FALSE(envs.lookup("z").has_value());
}
