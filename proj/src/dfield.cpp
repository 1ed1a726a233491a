#include "dindex/dfield.hpp"

#include "dindex/error.hpp"
#include "dindex/expr.hpp"

#include <cassert>
#include <sstream>

namespace dindex {

// ---------------------------------------------------------------------------
// FieldElement

FieldElement::FieldElement(Poly num, Poly den) {
  if (den.is_zero()) throw Error(Errc::DivisionByZero, "zero denominator");
  const std::size_t n = den.nvars();
  if (num.is_zero()) {
    num_ = Poly(n);
    den_ = Poly::constant(n, 1);
    return;
  }
  if (!den.is_constant() && !num.is_constant()) {
    const Poly g = gcd(num, den);
    if (!g.is_one()) {
      num = divexact(num, g);
      den = divexact(den, g);
    }
  }
  const Rational lc = den.leading_coefficient();
  if (lc != 1) {
    const Rational inv = 1 / lc;
    num *= inv;
    den *= inv;
  }
  num_ = std::move(num);
  den_ = std::move(den);
}

FieldElement FieldElement::constant(std::size_t nvars, const Rational& c) {
  return FieldElement(Poly::constant(nvars, c), Poly::constant(nvars, 1), true);
}

FieldElement FieldElement::from_poly(Poly p) {
  const std::size_t n = p.nvars();
  return FieldElement(std::move(p), Poly::constant(n, 1), true);
}

FieldElement FieldElement::generator(std::size_t nvars, std::size_t v) {
  return from_poly(Poly::variable(nvars, v));
}

FieldElement FieldElement::inv() const {
  if (is_zero()) throw Error(Errc::DivisionByZero, "inverse of zero");
  return FieldElement(den_, num_);
}

FieldElement FieldElement::pow(unsigned e) const {
  return FieldElement(num_.pow(e), den_.pow(e), true);
}

FieldElement FieldElement::operator-() const {
  return FieldElement(-num_, den_, true);
}

FieldElement operator+(const FieldElement& a, const FieldElement& b) {
  assert(a.nvars() == b.nvars());
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.den_ == b.den_) {
    if (a.den_.is_one()) return FieldElement(a.num_ + b.num_, a.den_, true);
    return FieldElement(a.num_ + b.num_, a.den_);
  }
  const Poly g = gcd(a.den_, b.den_);
  const Poly ad = divexact(a.den_, g);
  const Poly bd = divexact(b.den_, g);
  return FieldElement(a.num_ * bd + b.num_ * ad, a.den_ * bd);
}

FieldElement operator-(const FieldElement& a, const FieldElement& b) {
  return a + (-b);
}

FieldElement operator*(const FieldElement& a, const FieldElement& b) {
  assert(a.nvars() == b.nvars());
  if (a.is_zero() || b.is_zero()) return FieldElement(a.nvars());
  if (a.den_.is_one() && b.den_.is_one()) return FieldElement(a.num_ * b.num_, a.den_, true);
  // cross-cancel before multiplying keeps the gcd work on smaller inputs
  const Poly g1 = gcd(a.num_, b.den_);
  const Poly g2 = gcd(b.num_, a.den_);
  Poly num = divexact(a.num_, g1) * divexact(b.num_, g2);
  Poly den = divexact(a.den_, g2) * divexact(b.den_, g1);
  const Rational lc = den.leading_coefficient();
  if (lc != 1) {
    num *= Rational(1 / lc);
    den *= Rational(1 / lc);
  }
  return FieldElement(std::move(num), std::move(den), true);
}

FieldElement operator/(const FieldElement& a, const FieldElement& b) {
  return a * b.inv();
}

Rational FieldElement::evaluate(std::span<const Rational> point) const {
  const Rational d = den_.evaluate(point);
  if (d == 0) throw Error(Errc::DivisionByZero, "denominator vanishes at evaluation point");
  return num_.evaluate(point) / d;
}

FieldElement FieldElement::remap(std::span<const std::size_t> target, std::size_t new_nvars) const {
  return FieldElement(num_.remap(target, new_nvars), den_.remap(target, new_nvars), true);
}

namespace {

bool is_single_power(const Poly& p) {
  if (p.size() != 1 || p.leading_coefficient() != 1) return false;
  unsigned nonzero = 0;
  for (unsigned e : p.leading_exponents()) nonzero += e > 0 ? 1 : 0;
  return nonzero == 1;
}

}  // namespace

std::string FieldElement::to_string(std::span<const std::string> names) const {
  if (den_.is_one()) return num_.to_string(names);
  std::ostringstream os;
  if (num_.size() > 1) {
    os << '(' << num_.to_string(names) << ')';
  } else {
    os << num_.to_string(names);
  }
  os << '/';
  if (is_single_power(den_)) {
    os << den_.to_string(names);
  } else {
    os << '(' << den_.to_string(names) << ')';
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Substitution and sigma

FieldElement substitute(const FieldElement& x, std::span<const FieldElement> images) {
  const std::size_t n = x.nvars();
  assert(images.size() == n);
  if (x.is_constant()) return x;
  std::vector<std::vector<FieldElement>> powers(n);
  auto power = [&](std::size_t v, unsigned e) -> const FieldElement& {
    auto& cache = powers[v];
    if (cache.empty()) cache.push_back(FieldElement::constant(n, 1));
    while (cache.size() <= e) cache.push_back(cache.back() * images[v]);
    return cache[e];
  };
  auto eval_poly = [&](const Poly& p) {
    FieldElement acc(n);
    for (const auto& [exps, c] : p.terms()) {
      FieldElement t = FieldElement::constant(n, c);
      for (std::size_t v = 0; v < n; ++v) {
        if (exps[v] > 0) t = t * power(v, exps[v]);
      }
      acc = acc + t;
    }
    return acc;
  };
  const FieldElement num = eval_poly(x.numerator());
  if (x.denominator().is_one()) return num;
  return num / eval_poly(x.denominator());
}

namespace {

FieldElement derivative(const FieldElement& x, std::size_t v) {
  const Poly& a = x.numerator();
  const Poly& b = x.denominator();
  return FieldElement(a.derivative(v) * b - a * b.derivative(v), b * b);
}

std::size_t field_rank(std::vector<std::vector<FieldElement>> m) {
  std::size_t rank = 0;
  const std::size_t rows = m.size();
  const std::size_t cols = rows == 0 ? 0 : m[0].size();
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t p = rank;
    while (p < rows && m[p][c].is_zero()) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[rank]);
    const FieldElement inv = m[rank][c].inv();
    for (std::size_t r = rank + 1; r < rows; ++r) {
      if (m[r][c].is_zero()) continue;
      const FieldElement f = m[r][c] * inv;
      for (std::size_t j = c; j < cols; ++j) m[r][j] = m[r][j] - f * m[rank][j];
    }
    ++rank;
  }
  return rank;
}

}  // namespace

DifferenceField::DifferenceField(std::vector<std::string> generators, std::vector<FieldElement> images)
    : generators_(std::move(generators)), images_(std::move(images)) {
  const std::size_t m = generators_.size();
  if (images_.size() != m) throw Error(Errc::InvalidArgument, "one sigma image per generator required");
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      if (generators_[i] == generators_[j]) {
        throw Error(Errc::InvalidArgument, "duplicate generator name '" + generators_[i] + "'");
      }
    }
    if (images_[i].nvars() != m) throw Error(Errc::InvalidArgument, "sigma image over the wrong generators");
    if (images_[i].is_constant()) {
      throw Error(Errc::ConstantSigmaImage,
                  "sigma(" + generators_[i] + ") = " + images_[i].to_string(generators_) + " is constant");
    }
  }
  for (std::size_t i = 0; i < m; ++i) {
    identity_ = identity_ && images_[i] == FieldElement::generator(m, i);
  }
  if (m > 1 && !identity_) {
    std::vector<std::vector<FieldElement>> jac(m, std::vector<FieldElement>(m, FieldElement(m)));
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t v = 0; v < m; ++v) jac[i][v] = derivative(images_[i], v);
    }
    const std::size_t rank = field_rank(std::move(jac));
    if (rank < m) {
      throw Error(Errc::DependentSigmaImages, "Jacobian of the sigma images has rank " + std::to_string(rank) +
                                                  " < " + std::to_string(m));
    }
  }
}

std::optional<std::size_t> DifferenceField::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    if (generators_[i] == name) return i;
  }
  return std::nullopt;
}

FieldElement DifferenceField::apply_sigma(const FieldElement& x) const {
  if (x.is_constant()) return x;
  return substitute(x, images_);
}

FieldElement sigma_apply(const FieldElement& x, const DifferenceField& field, unsigned m) {
  if (field.sigma_is_identity()) return x;
  FieldElement y = x;
  for (unsigned i = 0; i < m && !y.is_constant(); ++i) y = field.apply_sigma(y);
  return y;
}

// ---------------------------------------------------------------------------
// Parsing of field elements

namespace {

FieldElement to_field_element(const expr::Node& node, const DifferenceField& field) {
  const std::size_t n = field.nvars();
  switch (node.kind) {
    case expr::Kind::Number:
      return FieldElement::constant(n, node.value);
    case expr::Kind::Name: {
      const auto idx = field.index_of(node.name);
      if (!idx) {
        throw Error(Errc::UnknownIdentifier,
                    "'" + node.name + "' at position " + std::to_string(node.pos) + " is not a field generator");
      }
      if (node.order) {
        throw Error(Errc::MalformedExpression, "transform marker '@' on field generator '" + node.name + "'");
      }
      return FieldElement::generator(n, *idx);
    }
    case expr::Kind::Add:
      return to_field_element(*node.lhs, field) + to_field_element(*node.rhs, field);
    case expr::Kind::Sub:
      return to_field_element(*node.lhs, field) - to_field_element(*node.rhs, field);
    case expr::Kind::Mul:
      return to_field_element(*node.lhs, field) * to_field_element(*node.rhs, field);
    case expr::Kind::Div:
      return to_field_element(*node.lhs, field) / to_field_element(*node.rhs, field);
    case expr::Kind::Neg:
      return -to_field_element(*node.lhs, field);
    case expr::Kind::Pow:
      return to_field_element(*node.lhs, field).pow(node.exponent);
  }
  throw Error(Errc::MalformedExpression, "unknown node");
}

}  // namespace

FieldElement parse_field_element(const std::string& text, const DifferenceField& field) {
  const expr::NodePtr tree = expr::parse(text);
  return to_field_element(*tree, field);
}

DifferenceField make_field(const std::vector<std::string>& generators,
                           const std::map<std::string, std::string>& sigma_images) {
  // parse the images against a provisional identity field over the same names
  std::vector<FieldElement> identity;
  for (std::size_t i = 0; i < generators.size(); ++i) {
    identity.push_back(FieldElement::generator(generators.size(), i));
  }
  for (const auto& [name, text] : sigma_images) {
    bool known = false;
    for (const auto& g : generators) known = known || g == name;
    if (!known) throw Error(Errc::UnknownIdentifier, "sigma image given for unknown generator '" + name + "'");
  }
  const DifferenceField names_only(generators, identity);
  std::vector<FieldElement> images = identity;
  for (std::size_t i = 0; i < generators.size(); ++i) {
    auto it = sigma_images.find(generators[i]);
    if (it != sigma_images.end()) images[i] = parse_field_element(it->second, names_only);
  }
  return DifferenceField(generators, std::move(images));
}

// ---------------------------------------------------------------------------
// Random points

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  return mix(mix(mix(seed) ^ a) ^ (b * 0x632be59bd9b4e019ULL));
}

std::vector<Rational> random_rational_point(const DifferenceField& field, Rng& rng, unsigned bound,
                                            std::span<const Poly> must_not_vanish, unsigned budget) {
  if (bound < 2) throw Error(Errc::InvalidArgument, "point bound must be at least 2");
  std::uniform_int_distribution<unsigned> dist(1, bound);
  std::vector<Rational> point(field.nvars());
  for (unsigned attempt = 0; attempt < budget; ++attempt) {
    for (auto& x : point) {
      const unsigned num = dist(rng);
      const unsigned den = dist(rng);
      x = Rational(num, den);
      x.canonicalize();
    }
    bool ok = true;
    for (const Poly& p : must_not_vanish) {
      if (p.evaluate(point) == 0) {
        ok = false;
        break;
      }
    }
    if (ok) return point;
  }
  throw Error(Errc::PointSearchExhausted,
              "no point avoiding all denominators after " + std::to_string(budget) + " attempts");
}

}  // namespace dindex
