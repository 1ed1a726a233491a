#ifndef DINDEX_SIGMA_POLY_HPP
#define DINDEX_SIGMA_POLY_HPP

#include "dindex/dfield.hpp"

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace dindex {

/// y_{var}^{(order)}, written `y@order` in the expression grammar. `var` is
/// 0-based here; names are attached by the enclosing system.
struct VarRef {
  unsigned var = 0;
  unsigned order = 0;

  // transform order is the more significant key
  friend auto operator<=>(const VarRef& a, const VarRef& b) {
    if (auto c = a.order <=> b.order; c != 0) return c;
    return a.var <=> b.var;
  }
  friend bool operator==(const VarRef&, const VarRef&) = default;
};

/// Power product of transform variables, factors sorted largest VarRef first.
struct Monomial {
  std::vector<std::pair<VarRef, unsigned>> factors;

  unsigned degree() const;
  unsigned exponent_of(VarRef v) const;
  friend bool operator==(const Monomial&, const Monomial&) = default;
};

Monomial operator*(const Monomial& a, const Monomial& b);

/// Graded lexicographic order on (transform order, variable index).
struct MonomialGreater {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

/// Element of K{y_1..y_n}: sparse map from monomials to nonzero
/// coefficients in K, largest monomial first.
class SigmaPolynomial {
 public:
  using TermMap = std::map<Monomial, FieldElement, MonomialGreater>;

  explicit SigmaPolynomial(std::size_t coeff_nvars = 0) : coeff_nvars_(coeff_nvars) {}

  static SigmaPolynomial constant(const FieldElement& c);
  static SigmaPolynomial variable(std::size_t coeff_nvars, VarRef v);

  std::size_t coeff_nvars() const { return coeff_nvars_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// True when no transform variable occurs.
  bool is_constant() const;
  FieldElement constant_term() const;

  /// Largest transform order of y_var, or nullopt when y_var is absent.
  std::optional<unsigned> order_in(unsigned var) const;
  std::optional<unsigned> max_order() const;
  unsigned total_degree() const;

  void add_term(const Monomial& m, const FieldElement& c);

  SigmaPolynomial operator-() const;
  friend SigmaPolynomial operator+(const SigmaPolynomial& a, const SigmaPolynomial& b);
  friend SigmaPolynomial operator-(const SigmaPolynomial& a, const SigmaPolynomial& b);
  friend SigmaPolynomial operator*(const SigmaPolynomial& a, const SigmaPolynomial& b);
  friend SigmaPolynomial operator*(const SigmaPolynomial& a, const FieldElement& c);
  friend bool operator==(const SigmaPolynomial& a, const SigmaPolynomial& b) { return a.terms_ == b.terms_; }
  SigmaPolynomial pow(unsigned e) const;

  /// Compact rendering in the expression grammar, e.g. "y1@2-y1".
  std::string to_string(const std::vector<std::string>& var_names,
                        const std::vector<std::string>& coeff_names) const;

 private:
  std::size_t coeff_nvars_;
  TermMap terms_;
};

/// The input system F over K with its order bookkeeping.
struct SystemSpec {
  DifferenceField field;
  std::vector<std::string> variables;
  std::vector<SigmaPolynomial> equations;
  /// eps[i][j] = ord_{y_j}(f_i), nullopt when y_j does not occur in f_i.
  std::vector<std::vector<std::optional<unsigned>>> eps;
  unsigned e = 0;

  std::size_t n() const { return variables.size(); }
  std::size_t r() const { return equations.size(); }
  std::string to_string(const SigmaPolynomial& p) const { return p.to_string(variables, field.generators()); }
};

/// Parses a difference polynomial. Names resolve to system variables
/// (optionally `name@k`) or to generators of K. Division is accepted only
/// by subexpressions free of system variables; anything else raises
/// DivisionInEquation.
SigmaPolynomial parse_sigma_polynomial(const std::string& text, const std::vector<std::string>& variables,
                                       const DifferenceField& field);

/// Shift every transform order by m and push coefficients through sigma^m.
SigmaPolynomial transform(const SigmaPolynomial& p, const DifferenceField& field, unsigned m);

/// Formal derivative treating each y_j@k as an independent indeterminate.
SigmaPolynomial partial_derivative(const SigmaPolynomial& p, VarRef v);

struct Orders {
  std::vector<std::vector<std::optional<unsigned>>> eps;
  unsigned e = 0;
};

/// Throws SystemNotDifference when the maximal order is 0.
Orders orders(const std::vector<SigmaPolynomial>& system, std::size_t n);

/// Parses and validates a full system: names distinct and disjoint from
/// the generators, at least one equation, no zero equation, e >= 1.
SystemSpec make_system(DifferenceField field, std::vector<std::string> variables,
                       const std::vector<std::string>& equations);

}  // namespace dindex

#endif  // DINDEX_SIGMA_POLY_HPP
