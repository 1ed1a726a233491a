#include "dindex/poly.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace dindex {

namespace {

unsigned degree_of(const Poly::Exponents& e) {
  return std::accumulate(e.begin(), e.end(), 0u);
}

bool divides(const Poly::Exponents& a, const Poly::Exponents& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) return false;
  }
  return true;
}

}  // namespace

bool Poly::GrlexGreater::operator()(const Exponents& a, const Exponents& b) const {
  const unsigned da = degree_of(a);
  const unsigned db = degree_of(b);
  if (da != db) return da > db;
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

Poly Poly::constant(std::size_t nvars, const Rational& c) {
  Poly p(nvars);
  if (c != 0) p.terms_.emplace(Exponents(nvars, 0), c);
  return p;
}

Poly Poly::variable(std::size_t nvars, std::size_t v) {
  assert(v < nvars);
  Exponents e(nvars, 0);
  e[v] = 1;
  Poly p(nvars);
  p.terms_.emplace(std::move(e), Rational(1));
  return p;
}

Poly Poly::monomial(Exponents exps, const Rational& c) {
  Poly p(exps.size());
  if (c != 0) p.terms_.emplace(std::move(exps), c);
  return p;
}

bool Poly::is_one() const {
  return terms_.size() == 1 && degree_of(terms_.begin()->first) == 0 && terms_.begin()->second == 1;
}

bool Poly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && degree_of(terms_.begin()->first) == 0);
}

Rational Poly::constant_value() const {
  for (const auto& [e, c] : terms_) {
    if (degree_of(e) == 0) return c;
  }
  return 0;
}

unsigned Poly::total_degree() const {
  return terms_.empty() ? 0 : degree_of(terms_.begin()->first);
}

unsigned Poly::degree_in(std::size_t v) const {
  unsigned d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e[v]);
  return d;
}

std::size_t Poly::main_variable() const {
  std::size_t best = nvars_;
  for (const auto& [e, c] : terms_) {
    for (std::size_t v = nvars_; v-- > 0;) {
      if (e[v] > 0) {
        if (best == nvars_ || v > best) best = v;
        break;
      }
    }
  }
  return best;
}

Poly Poly::coefficient_in(std::size_t v, unsigned d) const {
  Poly out(nvars_);
  for (const auto& [e, c] : terms_) {
    if (e[v] != d) continue;
    Exponents f = e;
    f[v] = 0;
    out.terms_.emplace(std::move(f), c);
  }
  return out;
}

Poly Poly::derivative(std::size_t v) const {
  Poly out(nvars_);
  for (const auto& [e, c] : terms_) {
    if (e[v] == 0) continue;
    Exponents f = e;
    Rational k = c * e[v];
    --f[v];
    out.add_term(f, k);
  }
  return out;
}

Rational Poly::evaluate(std::span<const Rational> point) const {
  assert(point.size() == nvars_);
  Rational acc = 0;
  for (const auto& [e, c] : terms_) {
    Rational t = c;
    for (std::size_t v = 0; v < nvars_; ++v) {
      for (unsigned k = 0; k < e[v]; ++k) t *= point[v];
    }
    acc += t;
  }
  return acc;
}

Poly Poly::remap(std::span<const std::size_t> target, std::size_t new_nvars) const {
  Poly out(new_nvars);
  for (const auto& [e, c] : terms_) {
    Exponents f(new_nvars, 0);
    for (std::size_t v = 0; v < nvars_; ++v) f[target[v]] += e[v];
    out.add_term(f, c);
  }
  return out;
}

Poly Poly::monic() const {
  if (is_zero() || leading_coefficient() == 1) return *this;
  Poly out = *this;
  const Rational inv = 1 / leading_coefficient();
  for (auto& [e, c] : out.terms_) c *= inv;
  return out;
}

void Poly::add_term(const Exponents& e, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Poly Poly::operator-() const {
  Poly out = *this;
  for (auto& [e, c] : out.terms_) c = -c;
  return out;
}

Poly& Poly::operator+=(const Poly& o) {
  assert(nvars_ == o.nvars_);
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  assert(nvars_ == o.nvars_);
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

Poly& Poly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
  } else if (c != 1) {
    for (auto& [e, k] : terms_) k *= c;
  }
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  assert(a.nvars_ == b.nvars_);
  Poly out(a.nvars_);
  if (a.is_zero() || b.is_zero()) return out;
  Poly::Exponents e(a.nvars_);
  Rational prod;
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t v = 0; v < e.size(); ++v) e[v] = ea[v] + eb[v];
      prod = ca * cb;
      out.add_term(e, prod);
    }
  }
  return out;
}

bool operator==(const Poly& a, const Poly& b) {
  return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
}

Poly Poly::pow(unsigned e) const {
  Poly result = Poly::constant(nvars_, 1);
  Poly base = *this;
  while (e > 0) {
    if (e & 1u) result = result * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

std::string rational_to_string(const Rational& q) {
  return q.get_str();
}

std::string Poly::to_string(std::span<const std::string> names) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    const bool negative = c < 0;
    const Rational mag = abs(c);
    if (negative) {
      os << '-';
    } else if (!first) {
      os << '+';
    }
    first = false;
    std::ostringstream mono;
    bool any = false;
    for (std::size_t v = 0; v < nvars_; ++v) {
      if (e[v] == 0) continue;
      if (any) mono << '*';
      mono << names[v];
      if (e[v] > 1) mono << '^' << e[v];
      any = true;
    }
    if (!any) {
      os << rational_to_string(mag);
    } else if (mag == 1) {
      os << mono.str();
    } else {
      os << rational_to_string(mag) << '*' << mono.str();
    }
  }
  return os.str();
}

Poly divexact(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw std::logic_error("divexact: division by zero polynomial");
  Poly q(a.nvars());
  if (a.is_zero()) return q;
  if (b.is_constant()) return a * Rational(1 / b.constant_value());
  Poly r = a;
  const auto& lb = b.leading_exponents();
  const Rational inv_lc = 1 / b.leading_coefficient();
  Poly::Exponents e(a.nvars());
  while (!r.is_zero()) {
    const auto& lr = r.leading_exponents();
    if (!divides(lb, lr)) throw std::logic_error("divexact: inexact division");
    for (std::size_t v = 0; v < e.size(); ++v) e[v] = lr[v] - lb[v];
    const Rational c = r.leading_coefficient() * inv_lc;
    const Poly t = Poly::monomial(e, c);
    q += t;
    r -= t * b;
  }
  return q;
}

Poly pseudo_remainder(const Poly& a, const Poly& b, std::size_t v) {
  const unsigned db = b.degree_in(v);
  const Poly lb = b.coefficient_in(v, db);
  Poly r = a;
  while (!r.is_zero()) {
    const unsigned dr = r.degree_in(v);
    if (dr < db) break;
    const Poly lr = r.coefficient_in(v, dr);
    Poly::Exponents shift(a.nvars(), 0);
    shift[v] = dr - db;
    r = lb * r - lr * Poly::monomial(shift, 1) * b;
  }
  return r;
}

namespace {

Poly content_in(const Poly& p, std::size_t v) {
  Poly g(p.nvars());
  const unsigned d = p.degree_in(v);
  for (unsigned k = 0; k <= d; ++k) {
    const Poly c = p.coefficient_in(v, k);
    if (c.is_zero()) continue;
    g = gcd(g, c);
    if (g.is_one()) break;
  }
  return g;
}

Poly primitive_part_in(const Poly& p, std::size_t v) {
  if (p.is_zero()) return p;
  return divexact(p, content_in(p, v)).monic();
}

}  // namespace

Poly gcd(const Poly& a, const Poly& b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  const std::size_t n = a.nvars();
  if (a.is_constant() || b.is_constant()) return Poly::constant(n, 1);

  const std::size_t va = a.main_variable();
  const std::size_t vb = b.main_variable();
  const std::size_t v = std::max(va, vb);
  if (a.degree_in(v) == 0) return gcd(a, content_in(b, v));
  if (b.degree_in(v) == 0) return gcd(content_in(a, v), b);

  const Poly c = gcd(content_in(a, v), content_in(b, v));
  Poly p = primitive_part_in(a, v);
  Poly q = primitive_part_in(b, v);
  if (p.degree_in(v) < q.degree_in(v)) std::swap(p, q);

  Poly g(n);
  while (true) {
    Poly r = pseudo_remainder(p, q, v);
    if (r.is_zero()) {
      g = q;
      break;
    }
    if (r.degree_in(v) == 0) {
      g = Poly::constant(n, 1);
      break;
    }
    p = std::move(q);
    q = primitive_part_in(r, v);
  }
  return (c * primitive_part_in(g, v)).monic();
}

Poly lcm(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly(a.nvars());
  return divexact(a * b, gcd(a, b)).monic();
}

}  // namespace dindex
