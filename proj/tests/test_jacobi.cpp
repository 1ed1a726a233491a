#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "support/support.hpp"

#include "dindex/jacobi.hpp"

#include <random>

using namespace dindex;
using testsupport::error_code_of;
using testsupport::fe;
using testsupport::qt;

namespace {

SigmaPolynomial sp(const SystemSpec& s, const std::string& text) {
  return parse_sigma_polynomial(text, s.variables, s.field);
}

// J_k straight from its definition: derivatives of the transformed
// equations with respect to every transform variable up to order k+e-1.
SymbolicMatrix jk_by_differentiation(const SystemSpec& s, unsigned k) {
  const std::size_t n = s.n(), r = s.r();
  SymbolicMatrix m(k * r, (k + s.e) * n, s.field.nvars());
  for (unsigned b = 0; b < k; ++b)
    for (std::size_t l = 0; l < r; ++l) {
      const SigmaPolynomial g = transform(s.equations[l], s.field, b);
      for (unsigned c = 0; c < k + s.e; ++c)
        for (std::size_t j = 0; j < n; ++j)
          m(b * r + l, c * n + j) = partial_derivative(g, VarRef{static_cast<unsigned>(j), c});
    }
  return m;
}

// J_{k,i}: derivatives of sigma^{i-e+1+b} F with respect to Y^(i+1+c).
SymbolicMatrix jki_by_differentiation(const SystemSpec& s, unsigned k, unsigned i) {
  const std::size_t n = s.n(), r = s.r();
  SymbolicMatrix m(k * r, k * n, s.field.nvars());
  for (unsigned b = 0; b < k; ++b)
    for (std::size_t l = 0; l < r; ++l) {
      const SigmaPolynomial g = transform(s.equations[l], s.field, i + 1 + b - s.e);
      for (unsigned c = 0; c < k; ++c)
        for (std::size_t j = 0; j < n; ++j)
          m(b * r + l, c * n + j) = partial_derivative(g, VarRef{static_cast<unsigned>(j), i + 1 + c});
    }
  return m;
}

SystemSpec shift_system() {
  return make_system(qt("t+1"), {"y1", "y2"}, {"t*y1@2 - y2", "y1@1*y2 + 1/t", "y2@1 - (t^2+1)*y1"});
}

}  // namespace

TEST_CASE("parsing difference polynomials") {
  const auto s = testsupport::worked_example().system;
  CHECK(s.e == 2);
  CHECK(s.n() == 2);
  CHECK(s.r() == 3);
  CHECK(s.to_string(s.equations[0]) == "y1@2-y1");
  CHECK(s.to_string(s.equations[2]) == "y1*y2-1");
  CHECK(s.eps[0][0] == 2u);
  CHECK(!s.eps[0][1].has_value());
  CHECK(s.eps[1][1] == 0u);
  CHECK(sp(s, "(y1@1)^2*y2").total_degree() == 3);
  CHECK(sp(s, "y1 - y1").is_zero());
  CHECK(sp(s, "y1*y2 - y2*y1").is_zero());

  const auto f = qt("t+1");
  CHECK(error_code_of([&] { parse_sigma_polynomial("1/y1", {"y1"}, f); }) == Errc::DivisionInEquation);
  CHECK(error_code_of([&] { parse_sigma_polynomial("y1/(y1+1)", {"y1"}, f); }) == Errc::DivisionInEquation);
  CHECK_NOTHROW(parse_sigma_polynomial("y1@1/t - y1/(t+1)", {"y1"}, f));
  CHECK(error_code_of([&] { parse_sigma_polynomial("y3", {"y1"}, f); }) == Errc::UnknownIdentifier);
  CHECK(error_code_of([&] { parse_sigma_polynomial("t@1*y1", {"y1"}, f); }) == Errc::MalformedExpression);
}

TEST_CASE("system validation") {
  const auto f = qt("t+1");
  CHECK(error_code_of([&] { make_system(f, {"y1", "y2"}, {"y1*y2 - 1"}); }) == Errc::SystemNotDifference);
  CHECK(error_code_of([&] { make_system(f, {"y1", "y1"}, {"y1@1"}); }) == Errc::InvalidArgument);
  CHECK(error_code_of([&] { make_system(f, {"t"}, {"t@1"}); }) == Errc::InvalidArgument);
  CHECK(error_code_of([&] { make_system(f, {"y1"}, {}); }) == Errc::InvalidArgument);
  CHECK(error_code_of([&] { make_system(f, {"y1"}, {"y1@1", "y1 - y1"}); }) == Errc::InvalidArgument);
}

TEST_CASE("transform pushes coefficients through sigma") {
  const auto f = qt("t+1");
  const auto p = parse_sigma_polynomial("t*y1", {"y1"}, f);
  CHECK(transform(p, f, 2) == parse_sigma_polynomial("(t+2)*y1@2", {"y1"}, f));
  CHECK(transform(p, f, 0) == p);
  const auto q = parse_sigma_polynomial("y1@1*y1 - 1/t", {"y1"}, f);
  CHECK(transform(transform(q, f, 1), f, 2) == transform(q, f, 3));
  CHECK(partial_derivative(q, VarRef{0, 1}) == parse_sigma_polynomial("y1", {"y1"}, f));
  CHECK(partial_derivative(parse_sigma_polynomial("y1^3", {"y1"}, f), VarRef{0, 0}) ==
        parse_sigma_polynomial("3*y1^2", {"y1"}, f));
}

TEST_CASE("jacobian blocks of the worked example") {
  const auto s = testsupport::worked_example().system;
  const auto blocks = jacobian_blocks(s);
  REQUIRE(blocks.size() == 3);
  // dF/dY
  CHECK(s.to_string(blocks[0](0, 0)) == "-1");
  CHECK(blocks[0](0, 1).is_zero());
  CHECK(blocks[0](1, 0).is_zero());
  CHECK(s.to_string(blocks[0](1, 1)) == "-1");
  CHECK(s.to_string(blocks[0](2, 0)) == "y2");
  CHECK(s.to_string(blocks[0](2, 1)) == "y1");
  // dF/dY^(1)
  CHECK(s.to_string(blocks[1](1, 0)) == "1");
  // dF/dY^(2)
  CHECK(s.to_string(blocks[2](0, 0)) == "1");
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      if (i != 0 || j != 0) CHECK(blocks[2](i, j).is_zero());
}

TEST_CASE("J_k and J_{k,i} match their definitions") {
  const auto ex = testsupport::worked_example().system;
  const auto sh = shift_system();
  for (const SystemSpec* s : {&ex, &sh}) {
    for (unsigned k = 1; k <= 4; ++k) {
      const auto jk = build_Jk(*s, k);
      CHECK(jk.rows() == k * s->r());
      CHECK(jk.cols() == (k + s->e) * s->n());
      CHECK(jk == jk_by_differentiation(*s, k));
      for (unsigned i = s->e - 1; i <= s->e + 2; ++i) CHECK(build_Jki(*s, k, i) == jki_by_differentiation(*s, k, i));
    }
  }
  CHECK(build_Jk(ex, 3).rows() == 9);
  CHECK(build_Jk(ex, 3).cols() == 10);
  CHECK(error_code_of([&] { build_Jk(ex, 0); }) == Errc::InvalidArgument);
  CHECK(error_code_of([&] { build_Jki(ex, 2, 0); }) == Errc::IndexTooSmall);
}

TEST_CASE("shift coherence") {
  const auto s = shift_system();
  for (unsigned k = 1; k <= 4; ++k) {
    const auto big = build_Jk(s, k + 1);
    const auto small = build_Jk(s, k);
    for (std::size_t a = 0; a < small.rows(); ++a)
      for (std::size_t b = 0; b < small.cols(); ++b) CHECK(big(a, b) == small(a, b));
    // the last block row of J_{k+1} is the first block row shifted by k
    for (std::size_t l = 0; l < s.r(); ++l)
      for (std::size_t b = 0; b < (s.e + 1) * s.n(); ++b)
        CHECK(big(k * s.r() + l, k * s.n() + b) == transform(big(l, b), s.field, k));
    for (unsigned i = s.e - 1; i <= s.e + 1; ++i)
      CHECK(build_Jki(s, k, i + 1) == transform(build_Jki(s, k, i), s.field, 1));
  }
}

TEST_CASE("M_k and N_k layouts") {
  const auto f = qt("t+1");
  BlockFamily fam{f, {FieldMatrix(1, 1, 1), FieldMatrix(1, 1, 1)}};
  fam.blocks[0](0, 0) = fe("t", f);
  fam.blocks[1](0, 0) = fe("1", f);
  const auto m2 = build_Mk(fam, 2);
  REQUIRE(m2.rows() == 2);
  REQUIRE(m2.cols() == 3);
  CHECK(m2(0, 0) == fe("t", f));
  CHECK(m2(0, 1) == fe("1", f));
  CHECK(m2(0, 2).is_zero());
  CHECK(m2(1, 0).is_zero());
  CHECK(m2(1, 1) == fe("t+1", f));
  CHECK(m2(1, 2) == fe("1", f));
  const auto n2 = build_Nk(fam, 2);
  REQUIRE(n2.rows() == 2);
  REQUIRE(n2.cols() == 2);
  CHECK(n2(0, 0) == fe("t", f));
  CHECK(n2(0, 1).is_zero());
  CHECK(n2(1, 0) == fe("1", f));
  CHECK(n2(1, 1) == fe("t+1", f));
}

TEST_CASE("M_k and N_k random layouts") {
  std::mt19937_64 rng(5);
  const auto f = qt("2*t");
  for (int trial = 0; trial < 10; ++trial) {
    BlockFamily fam{f, {}};
    const unsigned t = 1 + trial % 3, p = 1 + trial % 2, q = 2;
    for (unsigned a = 0; a < t; ++a) fam.blocks.push_back(testsupport::random_matrix(rng, p, q, 0.3, true));
    const unsigned k = 3;
    const auto m = build_Mk(fam, k);
    const auto nk = build_Nk(fam, k);
    CHECK(m.rows() == k * p);
    CHECK(m.cols() == (k + t - 1) * q);
    CHECK(nk.cols() == k * q);
    for (unsigned b = 0; b < k; ++b)
      for (unsigned c = 0; c < k + t - 1; ++c)
        for (unsigned x = 0; x < p; ++x)
          for (unsigned y = 0; y < q; ++y) {
            const FieldElement want =
                (c >= b && c - b < t) ? sigma_apply(fam.blocks[c - b](x, y), f, b) : f.zero();
            CHECK(m(b * p + x, c * q + y) == want);
            if (c < k) {
              const FieldElement wn =
                  (b >= c && b - c < t) ? sigma_apply(fam.blocks[b - c](x, y), f, b) : f.zero();
              CHECK(nk(b * p + x, c * q + y) == wn);
            }
          }
  }
}
