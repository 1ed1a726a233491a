#ifndef DINDEX_TEST_SUPPORT_HPP
#define DINDEX_TEST_SUPPORT_HPP

#include "dindex/error.hpp"
#include "dindex/system_file.hpp"

#include <random>
#include <string>
#include <vector>

namespace testsupport {

using namespace dindex;

inline SystemFile worked_example() { return parse_system_json(example_system_json()); }

/// Q(t) with the given image of t.
inline DifferenceField qt(const std::string& image) { return make_field({"t"}, {{"t", image}}); }

inline FieldElement fe(const std::string& text, const DifferenceField& f) { return parse_field_element(text, f); }

/// Rank by plain Gaussian elimination with field division. Shares no code
/// with the fraction-free or pointwise engines.
inline std::size_t naive_rank(FieldMatrix m) {
  std::size_t rank = 0;
  for (std::size_t c = 0; c < m.cols() && rank < m.rows(); ++c) {
    std::size_t piv = rank;
    while (piv < m.rows() && m(piv, c).is_zero()) ++piv;
    if (piv == m.rows()) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(piv, j), m(rank, j));
    const FieldElement inv = m(rank, c).inv();
    for (std::size_t i = rank + 1; i < m.rows(); ++i) {
      if (m(i, c).is_zero()) continue;
      const FieldElement f = m(i, c) * inv;
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) = m(i, j) - f * m(rank, j);
    }
    ++rank;
  }
  return rank;
}

/// Entries zero with probability `zero_p`, otherwise (a + b t) / (c + t)
/// or a + b t with small integers; univariate fields only.
inline FieldMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, double zero_p,
                                 bool fractions) {
  std::uniform_real_distribution<double> u(0, 1);
  std::uniform_int_distribution<int> c(-3, 3);
  std::uniform_int_distribution<int> pos(1, 4);
  FieldMatrix m(rows, cols, 1);
  const Poly t = Poly::variable(1, 0);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      if (u(rng) < zero_p) continue;
      Poly num = Poly::constant(1, c(rng)) + t * Rational(c(rng));
      Poly den = Poly::constant(1, 1);
      if (fractions && u(rng) < 0.3) den = t + Poly::constant(1, pos(rng));
      m(i, j) = FieldElement(num, den);
    }
  }
  return m;
}

/// Rank-deficient product A*B with inner dimension `inner`.
inline FieldMatrix low_rank_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, std::size_t inner) {
  const FieldMatrix a = random_matrix(rng, rows, inner, 0.2, false);
  const FieldMatrix b = random_matrix(rng, inner, cols, 0.2, false);
  FieldMatrix out(rows, cols, 1);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      FieldElement s(1);
      for (std::size_t k = 0; k < inner; ++k) s = s + a(i, k) * b(k, j);
      out(i, j) = s;
    }
  }
  return out;
}

template <class F>
Errc error_code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  throw std::runtime_error("expected an Error");
}

}  // namespace testsupport

#endif  // DINDEX_TEST_SUPPORT_HPP
