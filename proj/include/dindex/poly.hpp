#ifndef DINDEX_POLY_HPP
#define DINDEX_POLY_HPP

#include <gmpxx.h>

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace dindex {

using Rational = mpq_class;
using Integer = mpz_class;

/// Sparse multivariate polynomial over Q in a fixed number of variables.
///
/// Terms are kept in a map ordered by graded lexicographic order, largest
/// first, with variable 0 the most significant. Zero coefficients are never
/// stored. This is the carrier for numerators and denominators of
/// rational functions and for fraction-free elimination.
class Poly {
 public:
  using Exponents = std::vector<unsigned>;

  struct GrlexGreater {
    bool operator()(const Exponents& a, const Exponents& b) const;
  };
  using TermMap = std::map<Exponents, Rational, GrlexGreater>;

  explicit Poly(std::size_t nvars = 0) : nvars_(nvars) {}

  static Poly constant(std::size_t nvars, const Rational& c);
  static Poly variable(std::size_t nvars, std::size_t v);
  static Poly monomial(Exponents exps, const Rational& c);

  std::size_t nvars() const { return nvars_; }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  bool is_zero() const { return terms_.empty(); }
  bool is_one() const;
  bool is_constant() const;
  /// Constant term value; meaningful when is_constant().
  Rational constant_value() const;

  const Exponents& leading_exponents() const { return terms_.begin()->first; }
  const Rational& leading_coefficient() const { return terms_.begin()->second; }

  unsigned total_degree() const;
  unsigned degree_in(std::size_t v) const;
  /// Largest variable index that occurs, or nvars() if none does.
  std::size_t main_variable() const;

  /// Coefficient of x_v^d viewed as a polynomial in the other variables.
  Poly coefficient_in(std::size_t v, unsigned d) const;

  Poly derivative(std::size_t v) const;
  Rational evaluate(std::span<const Rational> point) const;

  /// Re-index variables: variable v becomes target[v] in a ring of new_nvars.
  Poly remap(std::span<const std::size_t> target, std::size_t new_nvars) const;

  /// Scaled so that the leading coefficient is 1 (zero stays zero).
  Poly monic() const;

  void add_term(const Exponents& e, const Rational& c);

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Rational& c);

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const Rational& c) { return a *= c; }
  friend bool operator==(const Poly& a, const Poly& b);

  Poly pow(unsigned e) const;

  /// Human-readable form in the shared expression grammar, e.g. "t^2-1".
  std::string to_string(std::span<const std::string> names) const;

 private:
  std::size_t nvars_;
  TermMap terms_;
};

/// Exact quotient a / b; throws std::logic_error when b does not divide a.
Poly divexact(const Poly& a, const Poly& b);

/// A multiple of a reduced modulo b with respect to variable v, of
/// v-degree below deg_v(b).
Poly pseudo_remainder(const Poly& a, const Poly& b, std::size_t v);

/// Monic greatest common divisor, via recursive content / primitive part
/// pseudo-remainder sequences. gcd(0, 0) = 0.
Poly gcd(const Poly& a, const Poly& b);

Poly lcm(const Poly& a, const Poly& b);

std::string rational_to_string(const Rational& q);

}  // namespace dindex

#endif  // DINDEX_POLY_HPP
