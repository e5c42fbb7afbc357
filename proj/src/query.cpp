#include "query.hpp"

#include <array>
#include <cctype>
#include <charconv>

#include "format.hpp"

namespace odralite::query {

namespace {

enum class Tok {
  name,
  int_lit,
  float_lit,
  str_lit,
  kw_where,
  kw_join,
  kw_on,
  kw_and,
  kw_or,
  kw_true,
  kw_false,
  lparen,
  rparen,
  comma,
  dot,
  eq,
  ne,
  lt,
  le,
  gt,
  ge,
  plus,
  minus,
  star,
  slash,
  end,
};

const char* tok_name(Tok t) {
  switch (t) {
    case Tok::name: return "NAME";
    case Tok::int_lit: return "INT";
    case Tok::float_lit: return "FLOAT";
    case Tok::str_lit: return "STRING";
    case Tok::kw_where: return "'where'";
    case Tok::kw_join: return "'join'";
    case Tok::kw_on: return "'on'";
    case Tok::kw_and: return "'and'";
    case Tok::kw_or: return "'or'";
    case Tok::kw_true: return "'true'";
    case Tok::kw_false: return "'false'";
    case Tok::lparen: return "'('";
    case Tok::rparen: return "')'";
    case Tok::comma: return "','";
    case Tok::dot: return "'.'";
    case Tok::eq: return "'=='";
    case Tok::ne: return "'!='";
    case Tok::lt: return "'<'";
    case Tok::le: return "'<='";
    case Tok::gt: return "'>'";
    case Tok::ge: return "'>='";
    case Tok::plus: return "'+'";
    case Tok::minus: return "'-'";
    case Tok::star: return "'*'";
    case Tok::slash: return "'/'";
    case Tok::end: return "end of input";
  }
  return "?";
}

struct Token {
  Tok kind = Tok::end;
  std::string text;        // identifier or string body
  std::int64_t int_value = 0;
  double float_value = 0.0;
  std::size_t offset = 0;  // start offset in source
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Token next() {
    skip_spaces();
    Token tok;
    tok.offset = pos_;
    if (pos_ >= src_.size()) {
      tok.kind = Tok::end;
      return tok;
    }
    char c = src_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return lex_word(tok);
    if (std::isdigit(static_cast<unsigned char>(c))) return lex_number(tok);
    if (c == '"') return lex_string(tok);
    ++pos_;
    switch (c) {
      case '(': tok.kind = Tok::lparen; return tok;
      case ')': tok.kind = Tok::rparen; return tok;
      case ',': tok.kind = Tok::comma; return tok;
      case '.': tok.kind = Tok::dot; return tok;
      case '+': tok.kind = Tok::plus; return tok;
      case '-': tok.kind = Tok::minus; return tok;
      case '*': tok.kind = Tok::star; return tok;
      case '/': tok.kind = Tok::slash; return tok;
      case '=':
        if (peek() == '=') ++pos_;
        tok.kind = Tok::eq;
        return tok;
      case '!':
        if (peek() == '=') {
          ++pos_;
          tok.kind = Tok::ne;
          return tok;
        }
        error(tok.offset, "unexpected character '!'");
      case '<':
        if (peek() == '=') {
          ++pos_;
          tok.kind = Tok::le;
        } else {
          tok.kind = Tok::lt;
        }
        return tok;
      case '>':
        if (peek() == '=') {
          ++pos_;
          tok.kind = Tok::ge;
        } else {
          tok.kind = Tok::gt;
        }
        return tok;
      default: error(tok.offset, std::string("unexpected character '") + c + "'");
    }
  }

  [[noreturn]] void error(std::size_t offset, const std::string& what) const {
    offset = std::min(offset, src_.size());
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < offset; ++i) {
      if (src_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(
        "parse error at " + std::to_string(line) + ":" + std::to_string(col) + ": " + what,
        offset, line, col);
  }

 private:
  char peek() const { return pos_ < src_.size() ? src_[pos_] : '\0'; }

  void skip_spaces() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  Token lex_word(Token tok) {
    std::size_t start = pos_;
    while (pos_ < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
      ++pos_;
    }
    auto word = src_.substr(start, pos_ - start);
    if (word == "where") tok.kind = Tok::kw_where;
    else if (word == "join") tok.kind = Tok::kw_join;
    else if (word == "on") tok.kind = Tok::kw_on;
    else if (word == "and") tok.kind = Tok::kw_and;
    else if (word == "or") tok.kind = Tok::kw_or;
    else if (word == "true") tok.kind = Tok::kw_true;
    else if (word == "false") tok.kind = Tok::kw_false;
    else {
      tok.kind = Tok::name;
      tok.text = std::string(word);
    }
    return tok;
  }

  Token lex_number(Token tok) {
    std::size_t start = pos_;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    bool is_float = false;
    // Fraction: '.' only when followed by a digit, so "a.1" style pipelines
    // and "(x).(y)" keep their dot token.
    if (pos_ + 1 < src_.size() && src_[pos_] == '.' &&
        std::isdigit(static_cast<unsigned char>(src_[pos_ + 1]))) {
      is_float = true;
      ++pos_;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }
    // Exponent: 'e' only when a (signed) digit follows.
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      std::size_t exp = pos_ + 1;
      if (exp < src_.size() && (src_[exp] == '+' || src_[exp] == '-')) ++exp;
      if (exp < src_.size() && std::isdigit(static_cast<unsigned char>(src_[exp]))) {
        is_float = true;
        pos_ = exp;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      }
    }
    auto text = src_.substr(start, pos_ - start);
    if (is_float) {
      tok.kind = Tok::float_lit;
      auto res = std::from_chars(text.data(), text.data() + text.size(), tok.float_value);
      if (res.ec != std::errc{}) error(start, "bad float literal");
    } else {
      tok.kind = Tok::int_lit;
      auto res = std::from_chars(text.data(), text.data() + text.size(), tok.int_value);
      if (res.ec != std::errc{}) error(start, "integer literal out of range");
    }
    return tok;
  }

  Token lex_string(Token tok) {
    std::size_t start = pos_;
    ++pos_;  // opening quote
    std::string body;
    while (true) {
      if (pos_ >= src_.size()) error(start, "unterminated string literal");
      char c = src_[pos_++];
      if (c == '"') break;
      if (c == '\\') {
        if (pos_ >= src_.size()) error(start, "unterminated string literal");
        char e = src_[pos_++];
        switch (e) {
          case '\\': body += '\\'; break;
          case '"': body += '"'; break;
          case 'n': body += '\n'; break;
          case 't': body += '\t'; break;
          default: error(pos_ - 2, std::string("unknown escape '\\") + e + "'");
        }
      } else {
        body += c;
      }
    }
    tok.kind = Tok::str_lit;
    tok.text = std::move(body);
    return tok;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

NodePtr make(QueryNode&& n) { return std::make_unique<QueryNode>(std::move(n)); }

class Parser {
 public:
  explicit Parser(std::string_view src) : lexer_(src) { advance(); }

  NodePtr parse_all() {
    auto node = parse_query();
    expect(Tok::end);
    return node;
  }

 private:
  void advance() { cur_ = lexer_.next(); }

  bool accept(Tok t) {
    if (cur_.kind != t) return false;
    advance();
    return true;
  }

  void expect(Tok t) {
    if (cur_.kind != t) {
      lexer_.error(cur_.offset, std::string("expected ") + tok_name(t) + ", got " +
                                    tok_name(cur_.kind));
    }
    advance();
  }

  NodePtr parse_query() {
    auto first = parse_pipeline();
    if (cur_.kind != Tok::comma) return first;
    std::vector<NodePtr> items;
    items.push_back(std::move(first));
    while (accept(Tok::comma)) items.push_back(parse_pipeline());
    return make({Tuple{std::move(items)}});
  }

  NodePtr parse_pipeline() {
    auto node = parse_disj();
    while (true) {
      if (accept(Tok::kw_where)) {
        auto pred = parse_disj();
        node = make({Where{std::move(node), std::move(pred)}});
      } else if (accept(Tok::kw_join)) {
        auto rhs = parse_disj();
        NodePtr on_pred;
        if (accept(Tok::kw_on)) on_pred = parse_disj();
        node = make({Join{std::move(node), std::move(rhs), std::move(on_pred)}});
      } else if (accept(Tok::dot)) {
        auto rhs = parse_disj();
        node = make({Dot{std::move(node), std::move(rhs)}});
      } else {
        return node;
      }
    }
  }

  NodePtr parse_disj() {
    auto node = parse_conj();
    while (accept(Tok::kw_or)) {
      auto rhs = parse_conj();
      node = make({Or{std::move(node), std::move(rhs)}});
    }
    return node;
  }

  NodePtr parse_conj() {
    auto node = parse_rel();
    while (accept(Tok::kw_and)) {
      auto rhs = parse_rel();
      node = make({And{std::move(node), std::move(rhs)}});
    }
    return node;
  }

  NodePtr parse_rel() {
    auto node = parse_sum();
    CompareOp op;
    switch (cur_.kind) {
      case Tok::eq: op = CompareOp::eq; break;
      case Tok::ne: op = CompareOp::ne; break;
      case Tok::lt: op = CompareOp::lt; break;
      case Tok::le: op = CompareOp::le; break;
      case Tok::gt: op = CompareOp::gt; break;
      case Tok::ge: op = CompareOp::ge; break;
      default: return node;
    }
    advance();
    auto rhs = parse_sum();
    return make({Compare{op, std::move(node), std::move(rhs)}});
  }

  NodePtr parse_sum() {
    auto node = parse_term();
    while (cur_.kind == Tok::plus || cur_.kind == Tok::minus) {
      ArithOp op = cur_.kind == Tok::plus ? ArithOp::add : ArithOp::sub;
      advance();
      auto rhs = parse_term();
      node = make({Arith{op, std::move(node), std::move(rhs)}});
    }
    return node;
  }

  NodePtr parse_term() {
    auto node = parse_factor();
    while (cur_.kind == Tok::star || cur_.kind == Tok::slash) {
      ArithOp op = cur_.kind == Tok::star ? ArithOp::mul : ArithOp::div;
      advance();
      auto rhs = parse_factor();
      node = make({Arith{op, std::move(node), std::move(rhs)}});
    }
    return node;
  }

  NodePtr parse_factor() {
    switch (cur_.kind) {
      case Tok::name: {
        auto node = make({Name{std::move(cur_.text)}});
        advance();
        return node;
      }
      case Tok::int_lit: {
        auto node = make({LitInt{cur_.int_value}});
        advance();
        return node;
      }
      case Tok::float_lit: {
        auto node = make({LitFloat{cur_.float_value}});
        advance();
        return node;
      }
      case Tok::str_lit: {
        auto node = make({LitStr{std::move(cur_.text)}});
        advance();
        return node;
      }
      case Tok::kw_true: advance(); return make({LitBool{true}});
      case Tok::kw_false: advance(); return make({LitBool{false}});
      case Tok::lparen: {
        advance();
        auto node = parse_query();
        expect(Tok::rparen);
        return node;
      }
      default:
        lexer_.error(cur_.offset,
                     std::string("expected NAME, INT, FLOAT, STRING, 'true', 'false' or '(', got ") +
                         tok_name(cur_.kind));
    }
  }

  Lexer lexer_;
  Token cur_;
};

const char* compare_op_text(CompareOp op) {
  switch (op) {
    case CompareOp::eq: return "==";
    case CompareOp::ne: return "!=";
    case CompareOp::lt: return "<";
    case CompareOp::le: return "<=";
    case CompareOp::gt: return ">";
    case CompareOp::ge: return ">=";
  }
  return "?";
}

const char* arith_op_text(ArithOp op) {
  switch (op) {
    case ArithOp::add: return "+";
    case ArithOp::sub: return "-";
    case ArithOp::mul: return "*";
    case ArithOp::div: return "/";
  }
  return "?";
}

void unparse_into(std::string& out, const QueryNode& node) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Name>) {
          out += n.ident;
        } else if constexpr (std::is_same_v<T, LitInt>) {
          out += std::to_string(n.value);
        } else if constexpr (std::is_same_v<T, LitFloat>) {
          out += float_text(n.value);
        } else if constexpr (std::is_same_v<T, LitStr>) {
          out += quote_string(n.value);
        } else if constexpr (std::is_same_v<T, LitBool>) {
          out += n.value ? "true" : "false";
        } else if constexpr (std::is_same_v<T, Compare>) {
          out += '(';
          unparse_into(out, *n.lhs);
          out += ' ';
          out += compare_op_text(n.op);
          out += ' ';
          unparse_into(out, *n.rhs);
          out += ')';
        } else if constexpr (std::is_same_v<T, Arith>) {
          out += '(';
          unparse_into(out, *n.lhs);
          out += ' ';
          out += arith_op_text(n.op);
          out += ' ';
          unparse_into(out, *n.rhs);
          out += ')';
        } else if constexpr (std::is_same_v<T, And>) {
          out += '(';
          unparse_into(out, *n.lhs);
          out += " and ";
          unparse_into(out, *n.rhs);
          out += ')';
        } else if constexpr (std::is_same_v<T, Or>) {
          out += '(';
          unparse_into(out, *n.lhs);
          out += " or ";
          unparse_into(out, *n.rhs);
          out += ')';
        } else if constexpr (std::is_same_v<T, Where>) {
          out += '(';
          unparse_into(out, *n.source);
          out += " where ";
          unparse_into(out, *n.predicate);
          out += ')';
        } else if constexpr (std::is_same_v<T, Dot>) {
          out += '(';
          unparse_into(out, *n.source);
          out += " . ";
          unparse_into(out, *n.expr);
          out += ')';
        } else if constexpr (std::is_same_v<T, Join>) {
          out += '(';
          unparse_into(out, *n.source);
          out += " join ";
          unparse_into(out, *n.expr);
          if (n.on_pred) {
            out += " on ";
            unparse_into(out, *n.on_pred);
          }
          out += ')';
        } else if constexpr (std::is_same_v<T, Tuple>) {
          out += '(';
          for (std::size_t i = 0; i < n.items.size(); ++i) {
            if (i > 0) out += ", ";
            unparse_into(out, *n.items[i]);
          }
          out += ')';
        }
      },
      node.node);
}

bool float_bits_equal(double a, double b) {
  return float_bits_hex(a) == float_bits_hex(b);
}

}  // namespace

NodePtr parse(std::string_view source) { return Parser(source).parse_all(); }

std::string unparse(const QueryNode& node) {
  std::string out;
  unparse_into(out, node);
  return out;
}

bool ast_equal(const QueryNode& a, const QueryNode& b) {
  if (a.node.index() != b.node.index()) return false;
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        const auto& y = std::get<T>(b.node);
        if constexpr (std::is_same_v<T, Name>) {
          return x.ident == y.ident;
        } else if constexpr (std::is_same_v<T, LitInt>) {
          return x.value == y.value;
        } else if constexpr (std::is_same_v<T, LitFloat>) {
          return float_bits_equal(x.value, y.value);
        } else if constexpr (std::is_same_v<T, LitStr>) {
          return x.value == y.value;
        } else if constexpr (std::is_same_v<T, LitBool>) {
          return x.value == y.value;
        } else if constexpr (std::is_same_v<T, Compare>) {
          return x.op == y.op && ast_equal(*x.lhs, *y.lhs) && ast_equal(*x.rhs, *y.rhs);
        } else if constexpr (std::is_same_v<T, Arith>) {
          return x.op == y.op && ast_equal(*x.lhs, *y.lhs) && ast_equal(*x.rhs, *y.rhs);
        } else if constexpr (std::is_same_v<T, And> || std::is_same_v<T, Or>) {
          return ast_equal(*x.lhs, *y.lhs) && ast_equal(*x.rhs, *y.rhs);
        } else if constexpr (std::is_same_v<T, Where>) {
          return ast_equal(*x.source, *y.source) && ast_equal(*x.predicate, *y.predicate);
        } else if constexpr (std::is_same_v<T, Dot>) {
          return ast_equal(*x.source, *y.source) && ast_equal(*x.expr, *y.expr);
        } else if constexpr (std::is_same_v<T, Join>) {
          if (static_cast<bool>(x.on_pred) != static_cast<bool>(y.on_pred)) return false;
          if (x.on_pred && !ast_equal(*x.on_pred, *y.on_pred)) return false;
          return ast_equal(*x.source, *y.source) && ast_equal(*x.expr, *y.expr);
        } else {
          static_assert(std::is_same_v<T, Tuple>);
          if (x.items.size() != y.items.size()) return false;
          for (std::size_t i = 0; i < x.items.size(); ++i) {
            if (!ast_equal(*x.items[i], *y.items[i])) return false;
          }
          return true;
        }
      },
      a.node);
}

NodePtr clone(const QueryNode& node) {
  return std::visit(
      [&](const auto& n) -> NodePtr {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Name>) {
          return make({Name{n.ident}});
        } else if constexpr (std::is_same_v<T, LitInt> || std::is_same_v<T, LitFloat> ||
                             std::is_same_v<T, LitStr> || std::is_same_v<T, LitBool>) {
          return make({T{n}});
        } else if constexpr (std::is_same_v<T, Compare>) {
          return make({Compare{n.op, clone(*n.lhs), clone(*n.rhs)}});
        } else if constexpr (std::is_same_v<T, Arith>) {
          return make({Arith{n.op, clone(*n.lhs), clone(*n.rhs)}});
        } else if constexpr (std::is_same_v<T, And>) {
          return make({And{clone(*n.lhs), clone(*n.rhs)}});
        } else if constexpr (std::is_same_v<T, Or>) {
          return make({Or{clone(*n.lhs), clone(*n.rhs)}});
        } else if constexpr (std::is_same_v<T, Where>) {
          return make({Where{clone(*n.source), clone(*n.predicate)}});
        } else if constexpr (std::is_same_v<T, Dot>) {
          return make({Dot{clone(*n.source), clone(*n.expr)}});
        } else if constexpr (std::is_same_v<T, Join>) {
          return make({Join{clone(*n.source), clone(*n.expr),
                            n.on_pred ? clone(*n.on_pred) : nullptr}});
        } else {
          static_assert(std::is_same_v<T, Tuple>);
          std::vector<NodePtr> items;
          items.reserve(n.items.size());
          for (const auto& item : n.items) items.push_back(clone(*item));
          return make({Tuple{std::move(items)}});
        }
      },
      node.node);
}

NodePtr name(std::string ident) { return make({Name{std::move(ident)}}); }
NodePtr lit(std::int64_t value) { return make({LitInt{value}}); }
NodePtr lit(double value) { return make({LitFloat{value}}); }
NodePtr lit(std::string value) { return make({LitStr{std::move(value)}}); }
NodePtr lit(const char* value) { return make({LitStr{value}}); }
NodePtr lit(bool value) { return make({LitBool{value}}); }
NodePtr compare(CompareOp op, NodePtr lhs, NodePtr rhs) {
  return make({Compare{op, std::move(lhs), std::move(rhs)}});
}
NodePtr arith(ArithOp op, NodePtr lhs, NodePtr rhs) {
  return make({Arith{op, std::move(lhs), std::move(rhs)}});
}
NodePtr logic_and(NodePtr lhs, NodePtr rhs) { return make({And{std::move(lhs), std::move(rhs)}}); }
NodePtr logic_or(NodePtr lhs, NodePtr rhs) { return make({Or{std::move(lhs), std::move(rhs)}}); }
NodePtr where(NodePtr source, NodePtr predicate) {
  return make({Where{std::move(source), std::move(predicate)}});
}
NodePtr dot(NodePtr source, NodePtr expr) {
  return make({Dot{std::move(source), std::move(expr)}});
}
NodePtr join(NodePtr source, NodePtr expr, NodePtr on_pred) {
  return make({Join{std::move(source), std::move(expr), std::move(on_pred)}});
}
NodePtr tuple(std::vector<NodePtr> items) { return make({Tuple{std::move(items)}}); }

}  // namespace odralite::query
