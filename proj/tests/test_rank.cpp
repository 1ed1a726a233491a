#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "support/support.hpp"

#include <algorithm>
#include <numeric>
#include <random>

using namespace dindex;
using testsupport::error_code_of;
using testsupport::fe;
using testsupport::naive_rank;
using testsupport::qt;

namespace {

FieldMatrix random_bivariate(std::mt19937_64& rng, std::size_t rows, std::size_t cols) {
  std::uniform_int_distribution<int> c(-2, 2);
  std::uniform_int_distribution<int> z(0, 2);
  FieldMatrix m(rows, cols, 2);
  const Poly a = Poly::variable(2, 0), b = Poly::variable(2, 1);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      if (z(rng) == 0) continue;
      Poly num = Poly::constant(2, c(rng)) + a * Rational(c(rng)) + b * a * Rational(c(rng));
      Poly den = Poly::constant(2, 1);
      if (z(rng) == 0) den = b + Poly::constant(2, 3);
      m(i, j) = FieldElement(num, den);
    }
  return m;
}

// Row r3 = x * r1 + r2 for a field element x.
FieldMatrix with_dependent_row(FieldMatrix m, const FieldElement& x) {
  REQUIRE(m.rows() >= 3);
  for (std::size_t j = 0; j < m.cols(); ++j) m(2, j) = x * m(0, j) + m(1, j);
  return m;
}

}  // namespace

TEST_CASE("integer and rational ranks") {
  using V = std::vector<std::vector<Integer>>;
  CHECK(rank_integer(V{}) == 0);
  CHECK(rank_integer(V{{0, 0}, {0, 0}}) == 0);
  CHECK(rank_integer(V{{1, 2}, {2, 4}}) == 1);
  CHECK(rank_integer(V{{0, 1, 2}, {1, 0, 3}, {1, 1, 5}}) == 2);
  CHECK(rank_integer(V{{2, 0, 0}, {0, 3, 0}, {0, 0, 5}}) == 3);
  using Q = std::vector<std::vector<Rational>>;
  CHECK(rank_rational(Q{{Rational(1, 2), Rational(1, 3)}, {Rational(3), Rational(2)}}) == 1);
  CHECK(rank_rational(Q{{Rational(1, 2), Rational(1, 3)}, {Rational(3), Rational(1)}}) == 2);
}

TEST_CASE("exact engines agree with plain elimination") {
  std::mt19937_64 rng(20240601);
  for (int trial = 0; trial < 120; ++trial) {
    const std::size_t rows = 1 + trial % 6, cols = 1 + (trial / 6) % 6;
    FieldMatrix m = (trial % 3 == 0) ? testsupport::low_rank_matrix(rng, rows, cols, 1 + trial % 3)
                                     : testsupport::random_matrix(rng, rows, cols, 0.4, trial % 2 == 0);
    const std::size_t want = naive_rank(m);
    CAPTURE(trial);
    CHECK(rank_exact(m) == want);
    CHECK(rank_exact_pointwise(m) == want);
  }
  for (int trial = 0; trial < 30; ++trial) {
    FieldMatrix m = random_bivariate(rng, 4, 5);
    if (trial % 2) m = with_dependent_row(m, FieldElement(Poly::variable(2, 1), Poly::variable(2, 0) + Poly::constant(2, 1)));
    CHECK(rank_exact(m) == naive_rank(m));
    CHECK(rank_exact_pointwise(m) == naive_rank(m));
  }
}

TEST_CASE("rank is invariant under permutations, row scaling and sigma") {
  std::mt19937_64 rng(77);
  const auto shift = qt("t+1");
  const auto inv = qt("1/t");
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t rows = 2 + trial % 4, cols = 2 + (trial / 4) % 4;
    const FieldMatrix m = (trial % 2) ? testsupport::low_rank_matrix(rng, rows, cols, 1)
                                      : testsupport::random_matrix(rng, rows, cols, 0.3, true);
    const std::size_t r0 = rank_exact(m);
    std::vector<std::size_t> pr(rows), pc(cols);
    std::iota(pr.begin(), pr.end(), 0);
    std::iota(pc.begin(), pc.end(), 0);
    std::shuffle(pr.begin(), pr.end(), rng);
    std::shuffle(pc.begin(), pc.end(), rng);
    FieldMatrix p(rows, cols, 1);
    for (std::size_t i = 0; i < rows; ++i) {
      const FieldElement scale = fe(std::to_string(i + 2) + "*t^2 + 1", shift);
      for (std::size_t j = 0; j < cols; ++j) p(i, j) = m(pr[i], pc[j]) * scale;
    }
    CAPTURE(trial);
    CHECK(rank_exact(p) == r0);
    CHECK(rank_exact(sigma_apply(m, shift, 3)) == r0);
    CHECK(rank_exact(sigma_apply(m, inv, 1)) == r0);
  }
}

TEST_CASE("probabilistic rank never exceeds the exact rank") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 60; ++trial) {
    const FieldMatrix m = testsupport::random_matrix(rng, 4, 4, 0.5, true);
    const std::size_t exact = rank_exact(m);
    for (unsigned tr : {1u, 3u}) CHECK(rank_probabilistic(m, trial, tr) <= exact);
    CHECK(rank_probabilistic(m, trial, 3) == rank_probabilistic(m, trial, 3));
  }
  CHECK(error_code_of([] { rank_probabilistic(FieldMatrix(1, 1, 1), 0, 0); }) == Errc::InvalidArgument);
}

TEST_CASE("an unlucky point underestimates and more trials recover") {
  const std::uint64_t seed = 11;
  FieldMatrix probe(2, 2, 1);
  probe(0, 0) = FieldElement::generator(1, 0);
  probe(1, 1) = FieldElement::generator(1, 0);
  const Rational c = probabilistic_point(probe, seed, 0)[0];
  FieldMatrix m(2, 2, 1);
  const Poly t = Poly::variable(1, 0);
  m(0, 0) = FieldElement::from_poly(t - Poly::constant(1, c));
  m(1, 1) = FieldElement::from_poly(t - Poly::constant(1, c));
  REQUIRE(probabilistic_point(m, seed, 0)[0] == c);
  CHECK(rank_exact(m) == 2);
  CHECK(rank_probabilistic(m, seed, 1) == 0);
  CHECK(rank_probabilistic(m, seed, 3) == 2);
}

TEST_CASE("random points avoid denominators") {
  FieldMatrix m(1, 1, 1);
  m(0, 0) = fe("1/(t-1) + 1/(t-2)", qt("t"));
  for (unsigned tr = 0; tr < 20; ++tr) {
    const auto p = probabilistic_point(m, 5, tr);
    CHECK(p[0] != 1);
    CHECK(p[0] != 2);
    CHECK(rank_at_point(m, p) <= 1);
  }
  const Rational one[] = {Rational(1)};
  CHECK(error_code_of([&] { rank_at_point(m, one); }) == Errc::DivisionByZero);
}

TEST_CASE("worked example ranks") {
  const auto file = testsupport::worked_example();
  const auto& s = file.system;
  const auto& sp = *file.specialization;
  Evaluator ev(s, sp);
  for (unsigned k = 1; k <= 6; ++k) {
    const auto jk = ev.evaluate(build_Jk(s, k));
    CHECK(rank_exact(jk) == 2 * k + 1);
    CHECK(naive_rank(jk) == 2 * k + 1);
    const auto jki = ev.evaluate(build_Jki(s, k, 1));
    const std::size_t want = k == 1 ? 1 : 2 * k - 2;
    CHECK(rank_exact(jki) == want);
    CHECK(rank_exact_pointwise(jki) == want);
    RankOptions prob{Engine::Probabilistic, 3, 9, 1};
    CHECK(rank_with(jk, prob, k) == 2 * k + 1);
  }
  CHECK(ev.value(VarRef{0, 1}) == fe("1/t", sp.target));
  CHECK(ev.value(VarRef{1, 3}) == fe("t", sp.target));
}

TEST_CASE("specializations are validated") {
  const auto s = testsupport::worked_example().system;
  const auto inv = qt("1/t");
  const auto bad = make_specialization(s, inv, {{"y1", "t"}, {"y2", "t"}});
  try {
    validate_specialization(s, bad);
    FAIL("accepted a non-solution");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NotASolution);
    const std::string msg = e.what();
    CHECK(msg.find("f3 evaluates to t^2-1") != std::string::npos);
    CHECK(msg.find("f2 evaluates to (-t^2+1)/t") != std::string::npos);
    CHECK(msg.find("f1") == std::string::npos);
  }
  CHECK(error_code_of([&] { make_specialization(s, inv, {{"y1", "t"}}); }) == Errc::InvalidSystemFile);
  CHECK(error_code_of([&] { make_specialization(s, inv, {{"y1", "t"}, {"y2", "1/t"}, {"y9", "1"}}); }) ==
        Errc::UnknownIdentifier);
  CHECK(exit_code_for(Errc::NotASolution) == 2);
}

TEST_CASE("coefficients embed into a larger target field") {
  const auto k = qt("t+1");
  const auto s = make_system(k, {"y1"}, {"y1@1 - y1 - t"});
  const auto big = make_field({"u", "t"}, {{"u", "u"}, {"t", "t+1"}});
  // y1 = t(t-1)/2 + u solves y1(t+1) - y1(t) = t
  const auto sp = make_specialization(s, big, {{"y1", "t*(t-1)/2 + u"}});
  CHECK(sp.embedding == std::vector<std::size_t>{1});
  CHECK_NOTHROW(validate_specialization(s, sp));
  Evaluator ev(s, sp);
  CHECK(ev.embed(fe("t^2", k)) == fe("t^2", big));

  const auto missing = make_field({"u"}, {{"u", "u+1"}});
  CHECK(error_code_of([&] { make_specialization(s, missing, {{"y1", "u"}}); }) == Errc::EmbeddingMismatch);
  const auto twisted = make_field({"t"}, {{"t", "2*t"}});
  const auto sp2 = make_specialization(s, twisted, {{"y1", "t"}});
  CHECK(error_code_of([&] { validate_specialization(s, sp2); }) == Errc::EmbeddingMismatch);
  CHECK(exit_code_for(Errc::EmbeddingMismatch) == 2);
}
