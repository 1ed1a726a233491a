#include "dindex/sigma_poly.hpp"

#include "dindex/error.hpp"
#include "dindex/expr.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace dindex {

unsigned Monomial::degree() const {
  unsigned d = 0;
  for (const auto& [v, e] : factors) d += e;
  return d;
}

unsigned Monomial::exponent_of(VarRef v) const {
  for (const auto& [w, e] : factors) {
    if (w == v) return e;
  }
  return 0;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial out;
  out.factors.reserve(a.factors.size() + b.factors.size());
  std::size_t i = 0, j = 0;
  while (i < a.factors.size() || j < b.factors.size()) {
    if (j == b.factors.size() || (i < a.factors.size() && a.factors[i].first > b.factors[j].first)) {
      out.factors.push_back(a.factors[i++]);
    } else if (i == a.factors.size() || b.factors[j].first > a.factors[i].first) {
      out.factors.push_back(b.factors[j++]);
    } else {
      out.factors.emplace_back(a.factors[i].first, a.factors[i].second + b.factors[j].second);
      ++i;
      ++j;
    }
  }
  return out;
}

bool MonomialGreater::operator()(const Monomial& a, const Monomial& b) const {
  const unsigned da = a.degree();
  const unsigned db = b.degree();
  if (da != db) return da > db;
  const std::size_t n = std::min(a.factors.size(), b.factors.size());
  for (std::size_t i = 0; i < n; ++i) {
    const auto& [va, ea] = a.factors[i];
    const auto& [vb, eb] = b.factors[i];
    if (va != vb) return va > vb;
    if (ea != eb) return ea > eb;
  }
  return a.factors.size() > b.factors.size();
}

// ---------------------------------------------------------------------------

SigmaPolynomial SigmaPolynomial::constant(const FieldElement& c) {
  SigmaPolynomial p(c.nvars());
  p.add_term(Monomial{}, c);
  return p;
}

SigmaPolynomial SigmaPolynomial::variable(std::size_t coeff_nvars, VarRef v) {
  SigmaPolynomial p(coeff_nvars);
  p.add_term(Monomial{{{v, 1u}}}, FieldElement::constant(coeff_nvars, 1));
  return p;
}

bool SigmaPolynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.factors.empty());
}

FieldElement SigmaPolynomial::constant_term() const {
  auto it = terms_.find(Monomial{});
  return it == terms_.end() ? FieldElement(coeff_nvars_) : it->second;
}

std::optional<unsigned> SigmaPolynomial::order_in(unsigned var) const {
  std::optional<unsigned> best;
  for (const auto& [m, c] : terms_) {
    for (const auto& [v, e] : m.factors) {
      if (v.var == var && (!best || v.order > *best)) best = v.order;
    }
  }
  return best;
}

std::optional<unsigned> SigmaPolynomial::max_order() const {
  std::optional<unsigned> best;
  for (const auto& [m, c] : terms_) {
    for (const auto& [v, e] : m.factors) {
      if (!best || v.order > *best) best = v.order;
    }
  }
  return best;
}

unsigned SigmaPolynomial::total_degree() const {
  return terms_.empty() ? 0 : terms_.begin()->first.degree();
}

void SigmaPolynomial::add_term(const Monomial& m, const FieldElement& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second = it->second + c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

SigmaPolynomial SigmaPolynomial::operator-() const {
  SigmaPolynomial out = *this;
  for (auto& [m, c] : out.terms_) c = -c;
  return out;
}

SigmaPolynomial operator+(const SigmaPolynomial& a, const SigmaPolynomial& b) {
  SigmaPolynomial out = a;
  for (const auto& [m, c] : b.terms_) out.add_term(m, c);
  return out;
}

SigmaPolynomial operator-(const SigmaPolynomial& a, const SigmaPolynomial& b) {
  SigmaPolynomial out = a;
  for (const auto& [m, c] : b.terms_) out.add_term(m, -c);
  return out;
}

SigmaPolynomial operator*(const SigmaPolynomial& a, const SigmaPolynomial& b) {
  SigmaPolynomial out(a.coeff_nvars_);
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) out.add_term(ma * mb, ca * cb);
  }
  return out;
}

SigmaPolynomial operator*(const SigmaPolynomial& a, const FieldElement& c) {
  SigmaPolynomial out(a.coeff_nvars_);
  if (c.is_zero()) return out;
  for (const auto& [m, k] : a.terms_) out.terms_.emplace(m, k * c);
  return out;
}

SigmaPolynomial SigmaPolynomial::pow(unsigned e) const {
  SigmaPolynomial result = constant(FieldElement::constant(coeff_nvars_, 1));
  for (unsigned i = 0; i < e; ++i) result = result * *this;
  return result;
}

namespace {

bool is_plain_name(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  std::size_t i = 0;
  while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
  if (i == s.size()) return true;
  if (s[i] != '^') return false;
  ++i;
  if (i == s.size()) return false;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
  return i == s.size();
}

}  // namespace

std::string SigmaPolynomial::to_string(const std::vector<std::string>& var_names,
                                       const std::vector<std::string>& coeff_names) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    std::ostringstream mono;
    for (auto it = m.factors.rbegin(); it != m.factors.rend(); ++it) {
      if (it != m.factors.rbegin()) mono << '*';
      mono << var_names[it->first.var];
      if (it->first.order > 0) mono << '@' << it->first.order;
      if (it->second > 1) mono << '^' << it->second;
    }
    const std::string ms = mono.str();
    if (c.is_constant()) {
      const Rational q = c.constant_value();
      if (q < 0) {
        os << '-';
      } else if (!first) {
        os << '+';
      }
      const Rational mag = abs(q);
      if (ms.empty()) {
        os << rational_to_string(mag);
      } else if (mag == 1) {
        os << ms;
      } else {
        os << rational_to_string(mag) << '*' << ms;
      }
    } else {
      if (!first) os << '+';
      const std::string cs = c.to_string(coeff_names);
      if (is_plain_name(cs)) {
        os << cs;
      } else {
        os << '(' << cs << ')';
      }
      if (!ms.empty()) os << '*' << ms;
    }
    first = false;
  }
  return os.str();
}

// ---------------------------------------------------------------------------

namespace {

struct EquationContext {
  const std::vector<std::string>& variables;
  const DifferenceField& field;
};

SigmaPolynomial to_sigma(const expr::Node& node, const EquationContext& ctx) {
  const std::size_t nk = ctx.field.nvars();
  switch (node.kind) {
    case expr::Kind::Number:
      return SigmaPolynomial::constant(FieldElement::constant(nk, node.value));
    case expr::Kind::Name: {
      for (std::size_t j = 0; j < ctx.variables.size(); ++j) {
        if (ctx.variables[j] == node.name) {
          return SigmaPolynomial::variable(nk, VarRef{static_cast<unsigned>(j), node.order.value_or(0)});
        }
      }
      if (auto g = ctx.field.index_of(node.name)) {
        if (node.order) {
          throw Error(Errc::MalformedExpression, "transform marker '@' on coefficient generator '" + node.name +
                                                     "' at position " + std::to_string(node.pos));
        }
        return SigmaPolynomial::constant(FieldElement::generator(nk, *g));
      }
      throw Error(Errc::UnknownIdentifier,
                  "'" + node.name + "' at position " + std::to_string(node.pos) + " is neither a variable nor a generator");
    }
    case expr::Kind::Add:
      return to_sigma(*node.lhs, ctx) + to_sigma(*node.rhs, ctx);
    case expr::Kind::Sub:
      return to_sigma(*node.lhs, ctx) - to_sigma(*node.rhs, ctx);
    case expr::Kind::Mul:
      return to_sigma(*node.lhs, ctx) * to_sigma(*node.rhs, ctx);
    case expr::Kind::Div: {
      const SigmaPolynomial divisor = to_sigma(*node.rhs, ctx);
      if (!divisor.is_constant()) {
        throw Error(Errc::DivisionInEquation, "division by an expression in the system variables at position " +
                                                  std::to_string(node.pos));
      }
      const FieldElement c = divisor.constant_term();
      if (c.is_zero()) throw Error(Errc::DivisionByZero, "division by zero at position " + std::to_string(node.pos));
      return to_sigma(*node.lhs, ctx) * c.inv();
    }
    case expr::Kind::Neg:
      return -to_sigma(*node.lhs, ctx);
    case expr::Kind::Pow:
      return to_sigma(*node.lhs, ctx).pow(node.exponent);
  }
  throw Error(Errc::MalformedExpression, "unknown node");
}

}  // namespace

SigmaPolynomial parse_sigma_polynomial(const std::string& text, const std::vector<std::string>& variables,
                                       const DifferenceField& field) {
  const expr::NodePtr tree = expr::parse(text);
  return to_sigma(*tree, EquationContext{variables, field});
}

SigmaPolynomial transform(const SigmaPolynomial& p, const DifferenceField& field, unsigned m) {
  if (m == 0) return p;
  SigmaPolynomial out(p.coeff_nvars());
  for (const auto& [mono, c] : p.terms()) {
    Monomial shifted = mono;
    for (auto& [v, e] : shifted.factors) v.order += m;
    out.add_term(shifted, sigma_apply(c, field, m));
  }
  return out;
}

SigmaPolynomial partial_derivative(const SigmaPolynomial& p, VarRef v) {
  SigmaPolynomial out(p.coeff_nvars());
  for (const auto& [mono, c] : p.terms()) {
    const unsigned e = mono.exponent_of(v);
    if (e == 0) continue;
    Monomial reduced;
    for (const auto& [w, k] : mono.factors) {
      if (w != v) {
        reduced.factors.emplace_back(w, k);
      } else if (k > 1) {
        reduced.factors.emplace_back(w, k - 1);
      }
    }
    out.add_term(reduced, c * FieldElement::constant(p.coeff_nvars(), e));
  }
  return out;
}

Orders orders(const std::vector<SigmaPolynomial>& system, std::size_t n) {
  if (system.empty()) throw Error(Errc::InvalidArgument, "empty system");
  Orders out;
  out.eps.assign(system.size(), std::vector<std::optional<unsigned>>(n));
  for (std::size_t i = 0; i < system.size(); ++i) {
    if (system[i].is_zero()) throw Error(Errc::InvalidArgument, "equation f" + std::to_string(i + 1) + " is zero");
    for (std::size_t j = 0; j < n; ++j) {
      out.eps[i][j] = system[i].order_in(static_cast<unsigned>(j));
      if (out.eps[i][j]) out.e = std::max(out.e, *out.eps[i][j]);
    }
  }
  if (out.e == 0) {
    throw Error(Errc::SystemNotDifference, "the system involves no transforms (maximal order e = 0)");
  }
  return out;
}

SystemSpec make_system(DifferenceField field, std::vector<std::string> variables,
                       const std::vector<std::string>& equations) {
  std::set<std::string> seen;
  if (variables.empty()) throw Error(Errc::InvalidArgument, "no variables declared");
  for (const auto& v : variables) {
    if (!seen.insert(v).second) throw Error(Errc::InvalidArgument, "duplicate variable name '" + v + "'");
    if (field.index_of(v)) throw Error(Errc::InvalidArgument, "variable '" + v + "' clashes with a generator");
  }
  SystemSpec s{std::move(field), std::move(variables), {}, {}, 0};
  for (const auto& text : equations) s.equations.push_back(parse_sigma_polynomial(text, s.variables, s.field));
  Orders o = orders(s.equations, s.n());
  s.eps = std::move(o.eps);
  s.e = o.e;
  return s;
}

}  // namespace dindex
