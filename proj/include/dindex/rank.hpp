#ifndef DINDEX_RANK_HPP
#define DINDEX_RANK_HPP

#include "dindex/field_matrix.hpp"
#include "dindex/jacobi.hpp"
#include "dindex/sigma_poly.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace dindex {

/// A solution point of the system in a computable difference field L.
/// Generators of K map to the same-named generators of L.
struct Specialization {
  DifferenceField target;
  /// assign[j] is the value of y_j in L.
  std::vector<FieldElement> assign;
  /// Index in L of each generator of K.
  std::vector<std::size_t> embedding;
};

/// Resolves names and parses assignments. Throws EmbeddingMismatch when a
/// generator of K has no namesake in L, InvalidSystemFile when a variable
/// is unassigned, UnknownIdentifier for assignments to unknown names.
Specialization make_specialization(const SystemSpec& s, DifferenceField target,
                                   const std::map<std::string, std::string>& assign);

/// Checks sigma compatibility of the embedding and that every f_i vanishes.
/// Throws EmbeddingMismatch, or NotASolution listing every nonzero
/// residual ("f3 evaluates to t^2-1").
void validate_specialization(const SystemSpec& s, const Specialization& sp);

/// Substitutes the point into difference polynomials. Holds a cache of
/// sigma^k(assign[j]); not for concurrent use.
class Evaluator {
 public:
  Evaluator(const SystemSpec& s, const Specialization& sp);

  FieldElement embed(const FieldElement& c) const;
  FieldElement value(VarRef v);
  FieldElement evaluate(const SigmaPolynomial& p);
  EvaluatedMatrix evaluate(const SymbolicMatrix& m);

 private:
  const SystemSpec* system_;
  const Specialization* sp_;
  std::vector<std::vector<FieldElement>> shifts_;
};

/// Rank over Z by fraction-free elimination.
std::size_t rank_integer(std::vector<std::vector<Integer>> rows);

/// Rank over Q; rows are scaled to integers first.
std::size_t rank_rational(const std::vector<std::vector<Rational>>& rows);

/// Exact rank over L: rows are cleared of denominators, then fraction-free
/// (Bareiss) elimination with exact division by the previous pivot.
std::size_t rank_exact(const EvaluatedMatrix& m);

/// Exact rank for L = Q(t): the maximum of the Q-ranks at D+1 distinct
/// integer values of t, where D bounds the degree of every minor of the
/// cleared matrix. Falls back to rank_exact for more generators.
std::size_t rank_exact_pointwise(const EvaluatedMatrix& m);

/// Rank of the matrix at a rational point; throws DivisionByZero when an
/// entry's denominator vanishes there.
std::size_t rank_at_point(const EvaluatedMatrix& m, std::span<const Rational> point);

/// Coordinates bound for random points of the probabilistic engine.
inline constexpr unsigned kPointBound = 1000;

/// The point used by trial `trial` of rank_probabilistic(m, seed, ...).
std::vector<Rational> probabilistic_point(const EvaluatedMatrix& m, std::uint64_t seed, unsigned trial);

/// Max of rank_at_point over `trials` denominator-avoiding random points.
/// Never exceeds the exact rank. Throws InvalidArgument when trials == 0.
std::size_t rank_probabilistic(const EvaluatedMatrix& m, std::uint64_t seed, unsigned trials);

enum class Engine { Exact, Probabilistic };

const char* engine_name(Engine e);

struct RankOptions {
  Engine engine = Engine::Exact;
  unsigned trials = 3;
  std::uint64_t seed = 0;
  /// 0 = hardware concurrency.
  unsigned threads = 0;
};

/// Dispatches to the configured engine; `task` keys the derived seed.
std::size_t rank_with(const EvaluatedMatrix& m, const RankOptions& opt, std::uint64_t task);

}  // namespace dindex

#endif  // DINDEX_RANK_HPP
