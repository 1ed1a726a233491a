#include "dindex/error.hpp"
#include "dindex/index_core.hpp"

#include <algorithm>
#include <cmath>

namespace dindex {

namespace {

BoundValue bound_value(long N, unsigned e, std::size_t n, unsigned D, unsigned threshold) {
  BoundValue b;
  b.N = N;
  b.m = static_cast<unsigned long>(N + static_cast<long>(e) + 1) * n;
  const unsigned base = 2 * D;
  b.symbolic = "(2*" + std::to_string(D) + ")^(2^" + std::to_string(b.m) + ")";
  if (b.m < 1000) b.log10_value = std::ldexp(std::log10(static_cast<double>(base)), static_cast<int>(b.m));
  if (b.m <= threshold) {
    Integer v;
    mpz_ui_pow_ui(v.get_mpz_t(), base, 1UL << b.m);
    b.exact = v;
  }
  return b;
}

}  // namespace

MembershipBound membership_bounds(const SystemSpec& sys, const IndexReport& report, long ord_f,
                                  std::optional<unsigned> D, unsigned threshold) {
  if (ord_f < 0) throw Error(Errc::InvalidArgument, "ord(f) must be nonnegative");
  unsigned deg_f = 0;
  for (const auto& f : sys.equations) deg_f = std::max(deg_f, f.total_degree());
  if (D && *D < deg_f) {
    throw Error(Errc::InvalidArgument, "D = " + std::to_string(*D) + " is below the maximal degree " +
                                           std::to_string(deg_f) + " of the system");
  }
  MembershipBound out;
  out.D = D.value_or(deg_f);
  out.ord_f = ord_f;
  const long e = static_cast<long>(sys.e);
  const long omega = static_cast<long>(report.omega);
  const long rho = static_cast<long>(report.rho);
  const long lhs = omega + std::max(0L, ord_f - e + 1);
  out.hypothesis_met = lhs >= rho;
  out.hypothesis = "omega+max{0,ord(f)-e+1} = " + std::to_string(lhs) + (out.hypothesis_met ? " >= " : " < ") +
                   "rho = " + std::to_string(rho);
  const long tail = std::max(-1L, ord_f - e);
  if (out.hypothesis_met) out.main = bound_value(omega + tail, sys.e, sys.n(), out.D, threshold);
  out.fallback = bound_value(static_cast<long>(mu_bound(sys)) + tail, sys.e, sys.n(), out.D, threshold);
  return out;
}

}  // namespace dindex
