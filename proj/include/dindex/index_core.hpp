#ifndef DINDEX_INDEX_CORE_HPP
#define DINDEX_INDEX_CORE_HPP

#include "dindex/jacobi.hpp"
#include "dindex/rank.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace dindex {

struct TailFit {
  long slope = 0;
  long intercept = 0;
  /// Least k such that every value from k through kmax lies on the line.
  unsigned onset = 0;
};

/// Fits the eventual affine law of values[0..kmax]. The line is read off
/// the last two points and must agree with the difference before them;
/// otherwise TailNotLinear. Requires kmax >= max(2, bound + 1).
TailFit fit_tail(const std::vector<long>& values, unsigned bound);

struct RankProfile {
  std::vector<long> values;  ///< indexed by k = 0..kmax
  long slope = 0;
  long intercept = 0;
  unsigned onset = 0;
  unsigned kmax = 0;
};

/// e(min{r,n}+1): onset bound for psi.
unsigned psi_bound(const SystemSpec& s);
/// e(min{r,n}+2): onset bound for mu.
unsigned mu_bound(const SystemSpec& s);

struct PsiResult {
  RankProfile psi;
  std::vector<std::size_t> ranks;  ///< rank(J_k), k = 0..kmax (rank(J_0) = 0)
  long d = 0;
  long s = 0;
  unsigned rho = 0;
};

/// rank(J_k) for k = 0..kmax, rank(J_0) = 0.
std::vector<std::size_t> ranks_Jk(const SystemSpec& sys, const Specialization& sp, const RankOptions& opt,
                                  unsigned kmax);
/// rank(J_{k,i}) for k = 0..kmax. IndexTooSmall when i < e-1.
std::vector<std::size_t> ranks_Jki(const SystemSpec& sys, const Specialization& sp, const RankOptions& opt,
                                   unsigned i, unsigned kmax);

/// psi(0) = en, psi(k) = (k+e)n - rank(J_k). Default kmax = psi_bound + 2.
PsiResult psi_profile(const SystemSpec& sys, const Specialization& sp, const RankOptions& opt,
                      std::optional<unsigned> kmax = std::nullopt);

struct MuResult {
  std::vector<long> mu;            ///< k = 0..kmax, mu_0 = 0
  std::vector<std::size_t> ranks;  ///< rank(J_{k,i})
  unsigned i = 0;
};

/// mu_k = kr - rank(J_{k,i}). Default i = e-1, default kmax = mu_bound + 2.
MuResult mu_profile(const SystemSpec& sys, const Specialization& sp, const RankOptions& opt,
                    std::optional<unsigned> i = std::nullopt, std::optional<unsigned> kmax = std::nullopt);

struct IInvarianceReport {
  std::vector<unsigned> i_values;
  unsigned kmax = 0;
  std::map<unsigned, std::vector<long>> mu;  ///< i -> mu_{k,i}
  /// "k=3: mu_{k,1}=5 but mu_{k,2}=4" style findings.
  std::vector<std::string> mismatches;
};

/// Compares mu_{k,i} for the listed i and k <= kmax. IndexTooSmall when some
/// i < e-1.
IInvarianceReport check_i_invariance(const SystemSpec& sys, const Specialization& sp, const RankOptions& opt,
                                     unsigned kmax, const std::vector<unsigned>& i_values);

struct IndexReport {
  std::size_t n = 0, r = 0;
  unsigned e = 0;
  long d = 0;
  long s = 0;
  unsigned rho = 0;
  std::vector<long> psi;
  std::vector<long> mu;
  unsigned i = 0;
  unsigned omega = 0;
  long a = 0;
  long sigma_dim = 0;
  long ord_p = 0;
  unsigned regularity_bound = 0;
  std::vector<std::size_t> ranks_Jk;
  std::vector<std::size_t> ranks_Jki;
  long rank_slope = 0;
  long rank_intercept = 0;
  unsigned kmax_psi = 0;
  unsigned kmax_mu = 0;
  unsigned psi_onset_bound = 0;
  unsigned mu_onset_bound = 0;
  RankOptions options;
  std::optional<IInvarianceReport> i_invariance;
  std::vector<std::string> warnings;
  /// Failed structural invariants; nonempty means exit 3.
  std::vector<std::string> violations;
  std::vector<std::string> caveats;
};

struct AnalyzeOptions {
  RankOptions rank;
  std::optional<unsigned> kmax;  ///< applied to both profiles when set
  std::optional<unsigned> i;
  std::vector<unsigned> check_i;  ///< empty = skip the i-invariance check
};

/// Full pipeline. Throws TailNotLinear or SlopeMismatch when a tail law
/// fails; other invariant failures are recorded in `violations`.
IndexReport difference_index(const SystemSpec& sys, const Specialization& sp, const AnalyzeOptions& opt = {});

/// Threshold on m for materializing (2D)^(2^m) exactly.
inline constexpr unsigned kExactDegreeThreshold = 20;

struct BoundValue {
  long N = 0;
  unsigned long m = 0;  ///< (N+e+1)n
  std::string symbolic;  ///< "(2*D)^(2^m)"
  std::optional<Integer> exact;
  /// 2^m * log10(2D); absent when it overflows a double.
  std::optional<double> log10_value;
};

struct MembershipBound {
  unsigned D = 0;
  long ord_f = 0;
  bool hypothesis_met = false;
  std::string hypothesis;  ///< the inequality with values filled in
  std::optional<BoundValue> main;  ///< absent when the hypothesis fails
  BoundValue fallback;
};

/// N = omega + max{-1, ord_f - e} under omega + max{0, ord_f-e+1} >= rho,
/// and the omega-free N = e(min{r,n}+2) + max{-1, ord_f - e}. D defaults
/// to the maximal total degree of F; InvalidArgument if a given D is
/// smaller, or ord_f < 0.
MembershipBound membership_bounds(const SystemSpec& sys, const IndexReport& report, long ord_f,
                                  std::optional<unsigned> D = std::nullopt,
                                  unsigned threshold = kExactDegreeThreshold);

struct LemmaLabOptions {
  char kind = 'M';  ///< 'M' or 'N'
  unsigned t = 2, p = 2, q = 2;
  unsigned trials = 100;
  std::uint64_t seed = 42;
  DifferenceField field;
  unsigned threads = 0;
};

/// Q(t) with sigma(t) = t + 1.
DifferenceField default_lab_field();

/// (t-1)(min{p,q}+1) for M, (t-1)(min{p,q}+2) for N.
unsigned lemma_bound(char kind, unsigned t, unsigned p, unsigned q);

/// Blocks E_1..E_t with entries zero or a + b*x (x the first generator,
/// a, b in [-3, 3]), each entry zero with probability 1/2.
BlockFamily random_block_family(const DifferenceField& field, unsigned t, unsigned p, unsigned q, std::uint64_t seed);

struct LemmaTrial {
  unsigned trial = 0;
  std::vector<std::size_t> ranks;  ///< k = 0..kmax
  TailFit fit;
  bool ok = true;
  std::string counterexample;  ///< block dump when !ok
};

struct LemmaLabReport {
  LemmaLabOptions options;
  unsigned bound = 0;
  unsigned kmax = 0;
  std::vector<LemmaTrial> trials;
  std::map<unsigned, unsigned> onset_histogram;
  unsigned failures = 0;
};

/// Runs the randomized harness. Per-trial failures are recorded, not thrown.
LemmaLabReport lemma_lab(const LemmaLabOptions& opt);

/// Ranks of M_k or N_k for k = 0..kmax using the exact pointwise engine.
std::vector<std::size_t> family_ranks(const BlockFamily& family, char kind, unsigned kmax);

/// "2k+1", "k-2", "3".
std::string affine_text(long slope, long intercept);

/// Standing assumptions no computation here can certify.
const std::vector<std::string>& report_caveats();

}  // namespace dindex

#endif  // DINDEX_INDEX_CORE_HPP
