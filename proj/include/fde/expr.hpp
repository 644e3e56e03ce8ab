#pragma once

// Small arithmetic language for right-hand sides, deviations and exact
// solutions. Precedence, tightest first: unary minus, ^ (right-assoc), * /, + -.

#include "fde/error.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <memory>
#include <numbers>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace fde {

/// Parse failure that knows where it happened.
class ExprError : public Error {
 public:
  ExprError(Errc code, std::size_t offset, std::vector<std::string> expected, std::string name, const std::string& what)
      : Error(code, what + " at offset " + std::to_string(offset)),
        offset_(offset),
        expected_(std::move(expected)),
        name_(std::move(name)) {}

  std::size_t offset() const { return offset_; }
  const std::vector<std::string>& expected() const { return expected_; }
  const std::string& name() const { return name_; }

 private:
  std::size_t offset_;
  std::vector<std::string> expected_;
  std::string name_;
};

enum class Var { T, U, V };

struct ExprNode {
  enum class Kind { Number, Constant, Variable, Negate, Binary, Call };
  Kind kind;
  double value = 0.0;  // Number, Constant
  Var var = Var::T;    // Variable
  char op = 0;         // Binary: + - * / ^
  std::string name;    // Constant, Call
  std::vector<std::shared_ptr<const ExprNode>> args;
};

using ExprPtr = std::shared_ptr<const ExprNode>;

namespace detail {

inline bool node_equal(const ExprNode& a, const ExprNode& b) {
  if (a.kind != b.kind || a.op != b.op || a.name != b.name || a.args.size() != b.args.size()) return false;
  if (a.kind == ExprNode::Kind::Number && a.value != b.value) return false;
  if (a.kind == ExprNode::Kind::Variable && a.var != b.var) return false;
  for (std::size_t i = 0; i < a.args.size(); ++i)
    if (!node_equal(*a.args[i], *b.args[i])) return false;
  return true;
}

inline int arity(std::string_view fn) {
  if (fn == "pow") return 2;
  if (fn == "exp" || fn == "log" || fn == "sqrt" || fn == "sin" || fn == "cos" || fn == "abs") return 1;
  return -1;
}

inline char var_letter(Var v) { return v == Var::T ? 't' : v == Var::U ? 'u' : 'v'; }

class Parser {
 public:
  Parser(std::string_view src, std::set<Var> allowed) : src_(src), allowed_(std::move(allowed)) {}

  ExprPtr parse() {
    skip();
    auto e = sum();
    skip();
    if (pos_ != src_.size()) fail({"operator", "end of input"});
    return e;
  }

 private:
  ExprPtr sum() {
    auto lhs = product();
    for (;;) {
      skip();
      if (peek() != '+' && peek() != '-') return lhs;
      const char op = src_[pos_++];
      lhs = binary(op, lhs, product());
    }
  }

  ExprPtr product() {
    auto lhs = power();
    for (;;) {
      skip();
      if (peek() != '*' && peek() != '/') return lhs;
      const char op = src_[pos_++];
      lhs = binary(op, lhs, power());
    }
  }

  ExprPtr power() {
    auto base = unary();
    skip();
    if (peek() != '^') return base;
    ++pos_;
    return binary('^', base, power());
  }

  ExprPtr unary() {
    skip();
    if (peek() == '-') {
      ++pos_;
      auto n = std::make_shared<ExprNode>(ExprNode{ExprNode::Kind::Negate});
      n->args.push_back(unary());
      return n;
    }
    return primary();
  }

  ExprPtr primary() {
    skip();
    const char c = peek();
    if (c == '(') {
      ++pos_;
      auto e = sum();
      expect(')');
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    fail({"number", "identifier", "(", "-"});
  }

  ExprPtr number() {
    const std::size_t start = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (peek() == '.') {
      ++pos_;
      while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    }
    // Exponent only when digits follow, so that a trailing e is never eaten.
    if (peek() == 'e' || peek() == 'E') {
      std::size_t q = pos_ + 1;
      if (q < src_.size() && (src_[q] == '+' || src_[q] == '-')) ++q;
      if (q < src_.size() && std::isdigit(static_cast<unsigned char>(src_[q]))) {
        pos_ = q;
        while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
      }
    }
    double v = 0.0;
    const auto res = std::from_chars(src_.data() + start, src_.data() + pos_, v);
    if (res.ec != std::errc() || res.ptr != src_.data() + pos_) {
      pos_ = start;
      fail({"number"});
    }
    return std::make_shared<ExprNode>(ExprNode{ExprNode::Kind::Number, v});
  }

  ExprPtr identifier() {
    const std::size_t start = pos_;
    while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') ++pos_;
    const std::string name(src_.substr(start, pos_ - start));
    if (const int n = arity(name); n >= 0) {
      skip();
      if (peek() != '(') fail({"("});
      ++pos_;
      auto call = std::make_shared<ExprNode>(ExprNode{ExprNode::Kind::Call});
      call->name = name;
      call->args.push_back(sum());
      for (int i = 1; i < n; ++i) {
        expect(',');
        call->args.push_back(sum());
      }
      expect(')');
      return call;
    }
    if (name == "e" || name == "pi") {
      auto k = std::make_shared<ExprNode>(ExprNode{ExprNode::Kind::Constant});
      k->name = name;
      k->value = name == "e" ? std::numbers::e : std::numbers::pi;
      return k;
    }
    if (name.size() == 1) {
      const char c = name[0];
      const std::optional<Var> v = c == 't' ? Var::T : c == 'u' ? Var::U : c == 'v' ? std::optional(Var::V) : std::nullopt;
      if (v && allowed_.count(*v)) {
        auto n = std::make_shared<ExprNode>(ExprNode{ExprNode::Kind::Variable});
        n->var = *v;
        return n;
      }
    }
    throw ExprError(Errc::UnknownIdentifier, start, {}, name, "unknown identifier '" + name + "'");
  }

  ExprPtr binary(char op, ExprPtr lhs, ExprPtr rhs) {
    auto n = std::make_shared<ExprNode>(ExprNode{ExprNode::Kind::Binary});
    n->op = op;
    n->args = {std::move(lhs), std::move(rhs)};
    return n;
  }

  void expect(char c) {
    skip();
    if (peek() != c) fail({std::string(1, c)});
    ++pos_;
  }

  [[noreturn]] void fail(std::vector<std::string> expected) {
    std::string msg = "syntax error, expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) msg += (i ? " or " : "") + expected[i];
    throw ExprError(Errc::SyntaxError, pos_, std::move(expected), {}, msg);
  }

  char peek() const { return pos_ < src_.size() ? src_[pos_] : '\0'; }
  void skip() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  std::string_view src_;
  std::set<Var> allowed_;
  std::size_t pos_ = 0;
};

inline double eval_node(const ExprNode& n, double t, const std::optional<double>& u, const std::optional<double>& v) {
  using K = ExprNode::Kind;
  switch (n.kind) {
    case K::Number:
    case K::Constant: return n.value;
    case K::Variable: {
      if (n.var == Var::T) return t;
      const auto& val = n.var == Var::U ? u : v;
      if (!val) throw Error(Errc::MissingVariable, std::string("no value for variable ") + var_letter(n.var));
      return *val;
    }
    case K::Negate: return -eval_node(*n.args[0], t, u, v);
    case K::Binary: {
      const double x = eval_node(*n.args[0], t, u, v);
      const double y = eval_node(*n.args[1], t, u, v);
      switch (n.op) {
        case '+': return x + y;
        case '-': return x - y;
        case '*': return x * y;
        case '/':
          if (y == 0.0) throw Error(Errc::DomainError, "division by zero");
          return x / y;
        case '^':
          if (x < 0.0 && y != std::trunc(y))
            throw Error(Errc::DomainError, "fractional power of negative number " + std::to_string(x));
          if (x == 0.0 && y < 0.0) throw Error(Errc::DomainError, "negative power of zero");
          return std::pow(x, y);
      }
      break;
    }
    case K::Call: {
      const double x = eval_node(*n.args[0], t, u, v);
      const std::string& f = n.name;
      if (f == "exp") return std::exp(x);
      if (f == "sin") return std::sin(x);
      if (f == "cos") return std::cos(x);
      if (f == "abs") return std::abs(x);
      if (f == "log") {
        if (!(x > 0.0)) throw Error(Errc::DomainError, "log(" + std::to_string(x) + ")");
        return std::log(x);
      }
      if (f == "sqrt") {
        if (x < 0.0) throw Error(Errc::DomainError, "sqrt(" + std::to_string(x) + ")");
        return std::sqrt(x);
      }
      if (f == "pow") {
        const double y = eval_node(*n.args[1], t, u, v);
        if (x < 0.0 && y != std::trunc(y))
          throw Error(Errc::DomainError, "pow of negative number " + std::to_string(x) + " to fractional power");
        if (x == 0.0 && y < 0.0) throw Error(Errc::DomainError, "negative power of zero");
        return std::pow(x, y);
      }
      break;
    }
  }
  throw Error(Errc::SyntaxError, "malformed expression tree");
}

// Binding strength used by the printer.
inline int precedence(const ExprNode& n) {
  using K = ExprNode::Kind;
  if (n.kind == K::Binary) return n.op == '^' ? 3 : (n.op == '*' || n.op == '/') ? 2 : 1;
  if (n.kind == K::Negate) return 4;
  return 5;
}

inline std::string format_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  std::string s(buf, res.ptr);
  return v < 0 ? "(" + s + ")" : s;
}

inline void print_node(const ExprNode& n, std::string& out) {
  using K = ExprNode::Kind;
  auto child = [&out](const ExprNode& c, bool parens) {
    if (parens) out += '(';
    print_node(c, out);
    if (parens) out += ')';
  };
  switch (n.kind) {
    case K::Number: out += format_number(n.value); return;
    case K::Constant: out += n.name; return;
    case K::Variable: out += var_letter(n.var); return;
    case K::Negate:
      out += '-';
      child(*n.args[0], precedence(*n.args[0]) < 4);
      return;
    case K::Binary: {
      const int p = precedence(n);
      const int pl = precedence(*n.args[0]);
      const int pr = precedence(*n.args[1]);
      if (n.op == '^') {
        child(*n.args[0], pl <= p);
        out += '^';
        child(*n.args[1], pr < p);
      } else {
        child(*n.args[0], pl < p);
        out += ' ';
        out += n.op;
        out += ' ';
        child(*n.args[1], pr <= p);
      }
      return;
    }
    case K::Call:
      out += n.name;
      out += '(';
      for (std::size_t i = 0; i < n.args.size(); ++i) {
        if (i) out += ", ";
        print_node(*n.args[i], out);
      }
      out += ')';
      return;
  }
}

inline void collect_vars(const ExprNode& n, std::set<Var>& out) {
  if (n.kind == ExprNode::Kind::Variable) out.insert(n.var);
  for (const auto& a : n.args) collect_vars(*a, out);
}

}  // namespace detail

class Expr {
 public:
  Expr() = default;
  explicit Expr(ExprPtr root) : root_(std::move(root)) {}

  double operator()(double t, std::optional<double> u = std::nullopt, std::optional<double> v = std::nullopt) const {
    return detail::eval_node(*root_, t, u, v);
  }

  std::set<Var> variables() const {
    std::set<Var> out;
    detail::collect_vars(*root_, out);
    return out;
  }

  std::string to_string() const {
    std::string out;
    detail::print_node(*root_, out);
    return out;
  }

  const ExprNode& root() const { return *root_; }
  bool empty() const { return !root_; }

  friend bool operator==(const Expr& a, const Expr& b) {
    if (!a.root_ || !b.root_) return a.root_ == b.root_;
    return detail::node_equal(*a.root_, *b.root_);
  }

 private:
  ExprPtr root_;
};

inline Expr parse_expr(std::string_view source, std::set<Var> allowed = {Var::T, Var::U, Var::V}) {
  return Expr(detail::Parser(source, std::move(allowed)).parse());
}

inline double eval_expr(const Expr& e, double t, std::optional<double> u = std::nullopt,
                        std::optional<double> v = std::nullopt) {
  return e(t, u, v);
}

}  // namespace fde
