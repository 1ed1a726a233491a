#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "support/support.hpp"

#include "dindex/expr.hpp"

using namespace dindex;
using testsupport::error_code_of;
using testsupport::fe;
using testsupport::qt;

namespace {

const std::vector<std::string> kT{"t"};
const std::vector<std::string> kXY{"x", "y"};

Poly P(const std::string& s, const std::vector<std::string>& names = kT) {
  const auto f = make_field(names, {});
  const FieldElement x = parse_field_element(s, f);
  REQUIRE(x.denominator().is_one());
  return x.numerator();
}

}  // namespace

TEST_CASE("poly arithmetic and printing") {
  const Poly t = Poly::variable(1, 0);
  const Poly one = Poly::constant(1, 1);
  CHECK((t * t - one).to_string(kT) == "t^2-1");
  CHECK((t * Rational(1, 2)).to_string(kT) == "1/2*t");
  CHECK((t - t).is_zero());
  CHECK(((t + one) * (t - one)) == t.pow(2) - one);
  CHECK(P("x^2*y - 3*y + 1", kXY).total_degree() == 3);
  CHECK(P("x^2*y - 3*y + 1", kXY).degree_in(0) == 2);
  const Rational pt[] = {Rational(2), Rational(-1)};
  CHECK(P("x^2*y - 3*y + 1", kXY).evaluate(pt) == Rational(0));
}

TEST_CASE("poly gcd, lcm and exact division") {
  const Poly a = P("t^3 - t");
  const Poly b = P("t^2 + 2*t + 1");
  CHECK(gcd(a, b) == P("t + 1"));
  CHECK(lcm(a, b) == P("(t^3 - t)*(t + 1)"));
  CHECK(divexact(a, P("t - 1")) == P("t^2 + t"));
  CHECK_THROWS_AS(divexact(a, P("t - 2")), std::logic_error);
  CHECK(gcd(Poly(1), Poly(1)).is_zero());
  CHECK(gcd(P("x^2 - y^2", kXY), P("x^2 + 2*x*y + y^2", kXY)) == P("x + y", kXY));
  CHECK(gcd(P("2*x*y", kXY), P("4*x", kXY)) == P("x", kXY));
}

TEST_CASE("field elements are kept canonical") {
  const auto f = qt("t");
  CHECK(fe("t/(t+1)", f) + fe("1/(t+1)", f) == f.one());
  CHECK(fe("(t^2-1)/(t-1)", f) == fe("t+1", f));
  CHECK(fe("(2*t)/(4*t^2)", f) == fe("1/(2*t)", f));
  CHECK(fe("1/t", f).inv() == fe("t", f));
  CHECK(fe("(t+1)/2", f).denominator().is_one());
  CHECK(fe("-(t^2-1)/t", f).to_string(kT) == "(-t^2+1)/t");
  CHECK(error_code_of([&] { fe("1/(t-t)", f); }) == Errc::DivisionByZero);
  CHECK(error_code_of([&] { f.zero().inv(); }) == Errc::DivisionByZero);
  const Rational one[] = {Rational(1)};
  CHECK(error_code_of([&] { fe("1/(t-1)", f).evaluate(one); }) == Errc::DivisionByZero);
}

TEST_CASE("sigma on Q(t)") {
  const auto inv = qt("1/t");
  CHECK(sigma_apply(fe("t", inv), inv, 2) == fe("t", inv));
  CHECK(sigma_apply(fe("t+1/t", inv), inv, 1) == fe("t+1/t", inv));
  const auto shift = qt("t+1");
  CHECK(sigma_apply(fe("t^2", shift), shift, 3) == fe("(t+3)^2", shift));
  CHECK(!shift.sigma_is_identity());
  CHECK(qt("t").sigma_is_identity());
  const auto two = make_field({"a", "b"}, {{"a", "b"}, {"b", "a+b"}});
  CHECK(sigma_apply(fe("a", two), two, 3) == fe("a+2*b", two));
  CHECK(make_field({"a", "b"}, {{"a", "a^2"}}).images()[1] == fe("b", two));
}

TEST_CASE("invalid sigma images are rejected") {
  CHECK(error_code_of([] { qt("3"); }) == Errc::ConstantSigmaImage);
  CHECK(error_code_of([] { make_field({"a", "b"}, {{"a", "b"}, {"b", "b^2"}}); }) == Errc::DependentSigmaImages);
  CHECK(error_code_of([] { make_field({"a", "b"}, {{"a", "a*b"}, {"b", "2*a*b"}}); }) == Errc::DependentSigmaImages);
  CHECK(error_code_of([] { make_field({"t"}, {{"s", "t"}}); }) == Errc::UnknownIdentifier);
  CHECK(error_code_of([] { qt("u+1"); }) == Errc::UnknownIdentifier);
}

TEST_CASE("expression parser errors carry positions") {
  try {
    expr::parse("t + * 2");
    FAIL("no error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::SyntaxError);
    CHECK(std::string(e.what()).find("position 4") != std::string::npos);
  }
  CHECK(error_code_of([] { expr::parse("t^-1"); }) == Errc::NegativeExponent);
  CHECK(error_code_of([] { expr::parse("(t+1"); }) == Errc::SyntaxError);
  CHECK(error_code_of([] { expr::parse(""); }) == Errc::SyntaxError);
  CHECK(error_code_of([] { expr::parse("3/0"); }) == Errc::DivisionByZero);
  CHECK_NOTHROW(expr::parse("-t^2 + 3/4*y1@2"));
}

TEST_CASE("unary minus binds looser than powers") {
  const auto f = qt("t");
  CHECK(fe("-t^2", f) == -(fe("t", f).pow(2)));
  CHECK(fe("(-t)^2", f) == fe("t", f).pow(2));
  CHECK(fe("2^3", f) == FieldElement::constant(1, 8));
}

TEST_CASE("seeded random points are deterministic and avoid denominators") {
  const auto f = make_field({"a", "b"}, {});
  const Poly avoid[] = {P("a - b", {"a", "b"})};
  Rng r1(derive_seed(7, 1)), r2(derive_seed(7, 1));
  const auto p1 = random_rational_point(f, r1, 2, avoid, 200);
  const auto p2 = random_rational_point(f, r2, 2, avoid, 200);
  CHECK(p1 == p2);
  CHECK(p1[0] != p1[1]);
  CHECK(derive_seed(7, 1) != derive_seed(7, 2));
  CHECK(derive_seed(7, 1, 0) != derive_seed(7, 0, 1));
  const auto g = qt("t");
  const Poly always[] = {Poly(1)};
  Rng r3(1);
  CHECK(error_code_of([&] { random_rational_point(g, r3, 5, always, 4); }) == Errc::PointSearchExhausted);
  CHECK(error_code_of([&] { random_rational_point(g, r3, 1); }) == Errc::InvalidArgument);
}
