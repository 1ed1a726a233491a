#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "support/support.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>

using namespace dindex;
using testsupport::error_code_of;

namespace {

const DifferenceField kQ;

SystemSpec sys(const std::vector<std::string>& vars, const std::vector<std::string>& eqs) {
  return make_system(kQ, vars, eqs);
}

std::set<std::string> strings(const SystemSpec& s, const std::vector<SigmaPolynomial>& basis) {
  std::set<std::string> out;
  for (const auto& g : basis) out.insert(s.to_string(g));
  return out;
}

SigmaPolynomial P(const SystemSpec& s, const std::string& text) {
  return parse_sigma_polynomial(text, s.variables, s.field);
}

}  // namespace

TEST_CASE("reduced bases are unique") {
  const auto s = sys({"y1", "y2", "y3"}, {"y1@1"});
  const MonomialOrder dr;
  const std::vector<SigmaPolynomial> a = {P(s, "y1^2 - y2"), P(s, "y1*y2 - y3"), P(s, "y2^2 - y1*y3")};
  const std::vector<SigmaPolynomial> b = {P(s, "y1*y2 - y3"), P(s, "y1^2 - y2 + 3*(y1*y2 - y3)"),
                                          P(s, "y2^2 - y1*y3 + y1*(y1^2 - y2)"), P(s, "y2*(y1^2-y2)")};
  const auto ga = groebner_basis(a, 3, 0, dr);
  const auto gb = groebner_basis(b, 3, 0, dr);
  CHECK(ga == gb);
  for (const auto& g : a) CHECK(normal_form(g, ga, 3, 0, dr).is_zero());
  CHECK(normal_form(P(s, "y1^3 - y3"), ga, 3, 0, dr).is_zero());
  CHECK(!normal_form(P(s, "y1 - y3"), ga, 3, 0, dr).is_zero());
  const std::vector<SigmaPolynomial> scaled = {P(s, "5*y1^2 - 5*y2"), P(s, "-y1*y2 + y3"), P(s, "y2^2/7 - y1*y3/7")};
  CHECK(groebner_basis(scaled, 3, 0, dr) == ga);
}

TEST_CASE("elimination order projects onto low orders") {
  const auto s = sys({"y1"}, {"y1@1"});
  const MonomialOrder elim{OrderKind::Elimination, 0};
  const auto g = groebner_basis({P(s, "y1@1 - y1^2"), P(s, "y1@1 - 4")}, 1, 1, elim);
  bool found = false;
  for (const auto& p : g)
    if (!p.max_order().has_value() || *p.max_order() == 0) {
      CHECK(p == P(s, "y1^2 - 4"));
      found = true;
    }
  CHECK(found);
}

TEST_CASE("unit ideal") {
  const auto s = sys({"y1"}, {"y1@1 - 1", "y1@1"});
  const auto t = truncated_ideal(s, 1);
  CHECK(eliminate(t, 1).size() == 1);
  CHECK(eliminate(t, 1).front().is_constant());
  CHECK(trdeg_oracle(t) == -1);
  CHECK(membership_test(P(s, "y1@3 + 17"), t));
}

TEST_CASE("worked example ideals") {
  const auto s = testsupport::worked_example().system;
  CHECK(eliminate(truncated_ideal(s, 0), 1).empty());
  CHECK(strings(s, eliminate(truncated_ideal(s, 1), 1)) == std::set<std::string>{"y1@1-y2", "y1*y2-1"});
  const std::set<std::string> full{"y1@1-y2", "y2@1-y1", "y1*y2-1"};
  for (unsigned k = 2; k <= 4; ++k) CHECK(strings(s, eliminate(truncated_ideal(s, k), 1)) == full);
  for (unsigned k = 1; k <= 3; ++k) CHECK(trdeg_oracle(truncated_ideal(s, k)) == 3);
  CHECK(!membership_test(P(s, "y2@1 - y1"), truncated_ideal(s, 1)));
  CHECK(membership_test(P(s, "y2@1 - y1"), truncated_ideal(s, 2)));
  CHECK(membership_test(P(s, "y1@2*y2 - 1"), truncated_ideal(s, 2)));
  const auto scan = stabilization_scan(s, 1, 6);
  CHECK(scan.h == 2);
  CHECK(scan.levels.size() == 5);
}

TEST_CASE("stabilization scan") {
  const auto s = sys({"y1"}, {"y1@1 - y1"});
  CHECK(stabilization_scan(s, 0, 4).h == 0);
  const auto late = sys({"y1", "y2"}, {"y1@1 - y1 - y2", "y1 - 1"});
  const auto scan = stabilization_scan(late, 0, 6);
  CHECK(scan.h == 2);
  CHECK(strings(late, scan.levels[1]) == std::set<std::string>{"y1-1"});
  CHECK(strings(late, scan.levels[2]) == std::set<std::string>{"y1-1", "y2"});
  CHECK(error_code_of([&] { stabilization_scan(late, 0, 1); }) == Errc::NoStabilizationWithinBudget);
}

TEST_CASE("transcendence degree agrees with the dimension profile") {
  struct Item {
    SystemSpec s;
    Specialization sp;
  };
  std::vector<Item> items;
  {
    auto f = testsupport::worked_example();
    items.push_back({f.system, *f.specialization});
  }
  {
    auto s = sys({"y1", "y2"}, {"y1@1 - y2"});
    auto sp = make_specialization(s, kQ, {{"y1", "0"}, {"y2", "0"}});
    items.push_back({s, sp});
  }
  {
    auto s = sys({"y1"}, {"y1@2 - y1@1 - y1"});
    auto l = make_field({"a", "b"}, {{"a", "b"}, {"b", "a+b"}});
    auto sp = make_specialization(s, l, {{"y1", "a"}});
    items.push_back({s, sp});
  }
  for (const auto& it : items) {
    const auto psi = psi_profile(it.s, it.sp, {}).psi.values;
    for (unsigned k = 1; k <= 3; ++k) CHECK(trdeg_oracle(truncated_ideal(it.s, k)) == psi[k]);
  }
}

TEST_CASE("oracle limits") {
  const auto s = testsupport::worked_example().system;
  OracleOptions small;
  small.var_limit = 4;
  CHECK(error_code_of([&] { eliminate(truncated_ideal(s, 2), 1, small); }) == Errc::OracleTooLarge);
  small.force = true;
  CHECK_NOTHROW(eliminate(truncated_ideal(s, 2), 1, small));

  ::setenv("DINDEX_ORACLE_VAR_LIMIT", "5", 1);
  CHECK(oracle_var_limit() == 5);
  ::unsetenv("DINDEX_ORACLE_VAR_LIMIT");
  CHECK(oracle_var_limit() == kOracleVarLimit);

  const auto k = testsupport::qt("t+1");
  const auto withcoeff = make_system(k, {"y1"}, {"y1@1 - t*y1"});
  CHECK(error_code_of([&] { truncated_ideal(withcoeff, 1); }) == Errc::OracleUnsupported);
}
