#ifndef DINDEX_DFIELD_HPP
#define DINDEX_DFIELD_HPP

#include "dindex/poly.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace dindex {

/// Element of Q(t_1, ..., t_m), kept as a reduced fraction num / den with
/// the denominator's leading coefficient equal to 1. Two elements are equal
/// iff their canonical forms coincide.
class FieldElement {
 public:
  explicit FieldElement(std::size_t nvars = 0) : num_(nvars), den_(Poly::constant(nvars, 1)) {}
  /// Throws Error(DivisionByZero) when den is zero.
  FieldElement(Poly num, Poly den);

  static FieldElement constant(std::size_t nvars, const Rational& c);
  static FieldElement from_poly(Poly p);
  static FieldElement generator(std::size_t nvars, std::size_t v);

  std::size_t nvars() const { return num_.nvars(); }
  const Poly& numerator() const { return num_; }
  const Poly& denominator() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  Rational constant_value() const { return num_.constant_value(); }

  FieldElement inv() const;
  FieldElement pow(unsigned e) const;

  FieldElement operator-() const;
  friend FieldElement operator+(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator-(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator*(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator/(const FieldElement& a, const FieldElement& b);
  friend bool operator==(const FieldElement& a, const FieldElement& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  /// Value at a rational point; throws Error(DivisionByZero) if the
  /// denominator vanishes there.
  Rational evaluate(std::span<const Rational> point) const;

  /// Embed into a field with more generators (see Poly::remap).
  FieldElement remap(std::span<const std::size_t> target, std::size_t new_nvars) const;

  std::string to_string(std::span<const std::string> names) const;

 private:
  FieldElement(Poly num, Poly den, bool /*already canonical*/) : num_(std::move(num)), den_(std::move(den)) {}

  Poly num_;
  Poly den_;
};

/// Q or Q(t_1..t_m) together with an injective endomorphism sigma given by
/// the images of the generators.
class DifferenceField {
 public:
  /// The field Q with sigma = id.
  DifferenceField() = default;

  /// Validates the images: nonconstant for a single generator, full-rank
  /// Jacobian for several. Throws ConstantSigmaImage / DependentSigmaImages.
  DifferenceField(std::vector<std::string> generators, std::vector<FieldElement> images);

  std::size_t nvars() const { return generators_.size(); }
  const std::vector<std::string>& generators() const { return generators_; }
  const std::vector<FieldElement>& images() const { return images_; }
  std::optional<std::size_t> index_of(const std::string& name) const;
  bool sigma_is_identity() const { return identity_; }

  FieldElement zero() const { return FieldElement(nvars()); }
  FieldElement one() const { return FieldElement::constant(nvars(), 1); }

  /// One application of sigma.
  FieldElement apply_sigma(const FieldElement& x) const;

  std::string to_string(const FieldElement& x) const { return x.to_string(generators_); }

 private:
  std::vector<std::string> generators_;
  std::vector<FieldElement> images_;
  bool identity_ = true;
};

/// Builds a field from generator names and textual sigma images. Omitted
/// images default to the identity. Throws MalformedExpression (or a more
/// specific parse error), ConstantSigmaImage, DependentSigmaImages.
DifferenceField make_field(const std::vector<std::string>& generators,
                           const std::map<std::string, std::string>& sigma_images);

/// Parses a rational function over the field's generators (division allowed).
FieldElement parse_field_element(const std::string& text, const DifferenceField& field);

/// sigma^m(x).
FieldElement sigma_apply(const FieldElement& x, const DifferenceField& field, unsigned m);

/// Substitute generator v by images[v] in x.
FieldElement substitute(const FieldElement& x, std::span<const FieldElement> images);

using Rng = std::mt19937_64;

/// Mixes a base seed with task coordinates so parallel tasks get
/// independent, schedule-independent streams.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0);

/// Draws a point with numerators and denominators uniform in [1, bound] at
/// which none of the polynomials in `must_not_vanish` is zero. Retries up
/// to `budget` times, then throws PointSearchExhausted.
std::vector<Rational> random_rational_point(const DifferenceField& field, Rng& rng, unsigned bound,
                                            std::span<const Poly> must_not_vanish = {},
                                            unsigned budget = 64);

}  // namespace dindex

#endif  // DINDEX_DFIELD_HPP
