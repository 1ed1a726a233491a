#include "dindex/expr.hpp"

#include "dindex/error.hpp"

#include <cctype>

namespace dindex::expr {

namespace {

constexpr unsigned kMaxExponent = 100000;

class Parser {
 public:
  explicit Parser(const std::string& text) : s_(text) {}

  NodePtr run() {
    skip_ws();
    if (at_end()) fail("empty expression");
    NodePtr n = parse_expr();
    skip_ws();
    if (!at_end()) fail(std::string("unexpected '") + s_[i_] + "'");
    return n;
  }

 private:
  [[noreturn]] void fail(const std::string& what, Errc code = Errc::SyntaxError) const {
    throw Error(code, "at position " + std::to_string(i_) + ": " + what + " in \"" + s_ + "\"");
  }

  bool at_end() const { return i_ >= s_.size(); }
  char peek() const { return at_end() ? '\0' : s_[i_]; }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }

  static NodePtr make(Kind k, std::size_t pos) {
    auto n = std::make_unique<Node>();
    n->kind = k;
    n->pos = pos;
    return n;
  }

  static NodePtr binary(Kind k, std::size_t pos, NodePtr a, NodePtr b) {
    NodePtr n = make(k, pos);
    n->lhs = std::move(a);
    n->rhs = std::move(b);
    return n;
  }

  NodePtr parse_expr() {
    NodePtr lhs = parse_term();
    while (true) {
      skip_ws();
      const char c = peek();
      if (c != '+' && c != '-') return lhs;
      const std::size_t pos = i_++;
      NodePtr rhs = parse_term();
      lhs = binary(c == '+' ? Kind::Add : Kind::Sub, pos, std::move(lhs), std::move(rhs));
    }
  }

  NodePtr parse_term() {
    NodePtr lhs = parse_factor();
    while (true) {
      skip_ws();
      const char c = peek();
      if (c != '*' && c != '/') return lhs;
      const std::size_t pos = i_++;
      NodePtr rhs = parse_factor();
      lhs = binary(c == '*' ? Kind::Mul : Kind::Div, pos, std::move(lhs), std::move(rhs));
    }
  }

  NodePtr parse_factor() {
    skip_ws();
    if (peek() == '-') {
      const std::size_t pos = i_++;
      NodePtr n = make(Kind::Neg, pos);
      n->lhs = parse_factor();
      return n;
    }
    NodePtr base = parse_atom();
    skip_ws();
    if (peek() != '^') return base;
    const std::size_t pos = i_++;
    skip_ws();
    if (peek() == '-') fail("negative exponent", Errc::NegativeExponent);
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected exponent after '^'");
    const unsigned e = read_nat();
    NodePtr n = make(Kind::Pow, pos);
    n->exponent = e;
    n->lhs = std::move(base);
    return n;
  }

  unsigned read_nat() {
    unsigned long long v = 0;
    const std::size_t start = i_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      v = v * 10 + static_cast<unsigned>(s_[i_] - '0');
      ++i_;
      if (v > kMaxExponent) {
        i_ = start;
        fail("integer too large");
      }
    }
    return static_cast<unsigned>(v);
  }

  std::string read_digits() {
    const std::size_t start = i_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++i_;
    return s_.substr(start, i_ - start);
  }

  NodePtr parse_atom() {
    skip_ws();
    const std::size_t pos = i_;
    const char c = peek();
    if (c == '(') {
      ++i_;
      NodePtr inner = parse_expr();
      skip_ws();
      if (peek() != ')') fail("expected ')'");
      ++i_;
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      NodePtr n = make(Kind::Number, pos);
      Integer num(read_digits());
      Integer den(1);
      // int/nat without spaces is a single rational literal
      if (peek() == '/' && i_ + 1 < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_ + 1]))) {
        ++i_;
        den = Integer(read_digits());
        if (den == 0) fail("zero denominator in rational literal", Errc::DivisionByZero);
      }
      n->value = Rational(num, den);
      n->value.canonicalize();
      return n;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      NodePtr n = make(Kind::Name, pos);
      while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') n->name += s_[i_++];
      if (peek() == '@') {
        ++i_;
        if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected transform order after '@'");
        n->order = read_nat();
      }
      return n;
    }
    if (at_end()) fail("unexpected end of expression");
    fail(std::string("unexpected '") + c + "'");
  }

  const std::string& s_;
  std::size_t i_ = 0;
};

}  // namespace

NodePtr parse(const std::string& text) {
  return Parser(text).run();
}

}  // namespace dindex::expr
