#ifndef DINDEX_ORACLE_HPP
#define DINDEX_ORACLE_HPP

#include "dindex/sigma_poly.hpp"

#include <optional>
#include <vector>

namespace dindex {

/// Default soft limit on the number of ring variables.
inline constexpr std::size_t kOracleVarLimit = 14;

/// kOracleVarLimit, or DINDEX_ORACLE_VAR_LIMIT when set to a positive integer.
std::size_t oracle_var_limit();

struct OracleOptions {
  bool force = false;  ///< ignore the soft limit
  std::optional<std::size_t> var_limit;  ///< overrides oracle_var_limit()
};

enum class OrderKind { DegRevLex, Elimination };

/// Monomial order on the ring Q[y_j@q : q <= top]. Variables are ranked by
/// (order, index). Elimination puts every variable of order > keep in a
/// first block compared before the rest, each block by degrevlex.
struct MonomialOrder {
  OrderKind kind = OrderKind::DegRevLex;
  unsigned keep = 0;
};

/// Reduced Groebner basis (Buchberger with the coprime and chain criteria)
/// of polynomials with rational coefficients in n variables up to order
/// `top`. Result sorted by increasing leading monomial, each monic.
/// Throws OracleUnsupported for non-rational coefficients, OracleTooLarge
/// past the variable limit.
std::vector<SigmaPolynomial> groebner_basis(const std::vector<SigmaPolynomial>& gens, std::size_t n, unsigned top,
                                            const MonomialOrder& order, const OracleOptions& opt = {});

/// Normal form of f modulo a Groebner basis for the same order and ring.
SigmaPolynomial normal_form(const SigmaPolynomial& f, const std::vector<SigmaPolynomial>& basis, std::size_t n,
                            unsigned top, const MonomialOrder& order);

/// Delta_k = (F, ..., F^(k-1)) in A_{k-1+e}; level 0 is the zero ideal in A_{e-1}.
struct TruncatedIdeal {
  unsigned level = 0;
  std::size_t n = 0;
  unsigned top = 0;  ///< k-1+e
  std::size_t coeff_nvars = 0;
  std::vector<SigmaPolynomial> generators;

  std::size_t ring_vars() const { return (top + 1) * n; }
};

/// Throws OracleUnsupported when F has non-rational coefficients.
TruncatedIdeal truncated_ideal(const SystemSpec& s, unsigned k);

/// Reduced basis of Delta_k cap A_i.
std::vector<SigmaPolynomial> eliminate(const TruncatedIdeal& t, unsigned i, const OracleOptions& opt = {});

struct ScanResult {
  unsigned h = 0;
  /// levels[k] = reduced basis of Delta_k cap A_i, k = 0..h+2
  std::vector<std::vector<SigmaPolynomial>> levels;
};

/// Least h with Delta_h, Delta_{h+1}, Delta_{h+2} all meeting A_i in the
/// same ideal. NoStabilizationWithinBudget when h would exceed h_max.
ScanResult stabilization_scan(const SystemSpec& s, unsigned i, unsigned h_max, const OracleOptions& opt = {});

/// True iff f lies in the ideal; the ring is widened to cover f.
bool membership_test(const SigmaPolynomial& f, const TruncatedIdeal& t, const OracleOptions& opt = {});

/// Krull dimension of A_{k-1+e}/Delta_k from a maximal independent set of
/// variables; -1 for the unit ideal.
long trdeg_oracle(const TruncatedIdeal& t, const OracleOptions& opt = {});

}  // namespace dindex

#endif  // DINDEX_ORACLE_HPP
