#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "error.hpp"

namespace odralite::query {

// Grammar (loosest to tightest; pipeline operators are left-associative):
//
//   query    := pipeline ("," pipeline)*              comma builds a tuple
//   pipeline := disj (("where" disj) | ("join" disj ("on" disj)?) | ("." disj))*
//   disj     := conj ("or" conj)*
//   conj     := rel ("and" rel)*
//   rel      := sum (("=="|"="|"!="|"<"|"<="|">"|">=") sum)?
//   sum      := term (("+"|"-") term)*
//   term     := factor (("*"|"/") factor)*
//   factor   := NAME | INT | FLOAT | STRING | "true" | "false" | "(" query ")"
//
// Keywords: where join on and or true false. Both "=" and "==" mean equality.

enum class CompareOp { eq, ne, lt, le, gt, ge };
enum class ArithOp { add, sub, mul, div };

struct QueryNode;
using NodePtr = std::unique_ptr<QueryNode>;

struct Name {
  std::string ident;
};
struct LitInt {
  std::int64_t value;
};
struct LitFloat {
  double value;
};
struct LitStr {
  std::string value;
};
struct LitBool {
  bool value;
};
struct Compare {
  CompareOp op;
  NodePtr lhs, rhs;
};
struct Arith {
  ArithOp op;
  NodePtr lhs, rhs;
};
struct And {
  NodePtr lhs, rhs;
};
struct Or {
  NodePtr lhs, rhs;
};
struct Where {
  NodePtr source, predicate;
};
struct Dot {
  NodePtr source, expr;
};
struct Join {
  NodePtr source, expr;
  NodePtr on_pred;  // null when no "on" clause
};
struct Tuple {
  std::vector<NodePtr> items;  // always >= 2
};

struct QueryNode {
  std::variant<Name, LitInt, LitFloat, LitStr, LitBool, Compare, Arith, And, Or, Where, Dot,
               Join, Tuple>
      node;
};

class ParseError : public Error {
 public:
  ParseError(std::string message, std::size_t offset, std::size_t line, std::size_t column)
      : Error(Errc::parse_error, std::move(message)), offset(offset), line(line), column(column) {}

  std::size_t offset;  // byte offset into the source, <= source length
  std::size_t line;    // 1-based
  std::size_t column;  // 1-based
};

NodePtr parse(std::string_view source);

// Fully parenthesized text; parse(unparse(n)) is structurally equal to n.
std::string unparse(const QueryNode& node);

bool ast_equal(const QueryNode& a, const QueryNode& b);
NodePtr clone(const QueryNode& node);

// Builders, mostly for tests and programmatic query construction.
NodePtr name(std::string ident);
NodePtr lit(std::int64_t value);
NodePtr lit(double value);
NodePtr lit(std::string value);
NodePtr lit(const char* value);
NodePtr lit(bool value);
NodePtr compare(CompareOp op, NodePtr lhs, NodePtr rhs);
NodePtr arith(ArithOp op, NodePtr lhs, NodePtr rhs);
NodePtr logic_and(NodePtr lhs, NodePtr rhs);
NodePtr logic_or(NodePtr lhs, NodePtr rhs);
NodePtr where(NodePtr source, NodePtr predicate);
NodePtr dot(NodePtr source, NodePtr expr);
NodePtr join(NodePtr source, NodePtr expr, NodePtr on_pred = nullptr);
NodePtr tuple(std::vector<NodePtr> items);

}  // namespace odralite::query
