#include "dindex/index_core.hpp"

#include "dindex/error.hpp"
#include "dindex/parallel.hpp"

#include <algorithm>
#include <sstream>

namespace dindex {

std::string affine_text(long slope, long intercept) {
  std::ostringstream os;
  if (slope != 0) {
    if (slope == -1) os << "-";
    else if (slope != 1) os << slope;
    os << "k";
    if (intercept > 0) os << "+" << intercept;
    if (intercept < 0) os << intercept;
  } else {
    os << intercept;
  }
  return os.str();
}

TailFit fit_tail(const std::vector<long>& values, unsigned bound) {
  if (values.size() < 3) throw Error(Errc::InvalidArgument, "a tail fit needs values for k = 0, 1, 2 at least");
  const std::size_t kmax = values.size() - 1;
  if (kmax < static_cast<std::size_t>(bound) + 1) {
    throw Error(Errc::InvalidArgument, "kmax = " + std::to_string(kmax) + " must be at least onset bound + 1 = " +
                                           std::to_string(bound + 1));
  }
  TailFit fit;
  fit.slope = values[kmax] - values[kmax - 1];
  const long before = values[kmax - 1] - values[kmax - 2];
  if (before != fit.slope) {
    throw Error(Errc::TailNotLinear, "differences at k = " + std::to_string(kmax - 1) + ", " + std::to_string(kmax) +
                                         " are " + std::to_string(before) + " and " + std::to_string(fit.slope));
  }
  fit.intercept = values[kmax] - fit.slope * static_cast<long>(kmax);
  std::size_t k = kmax;
  while (k > 0 && values[k - 1] == fit.slope * static_cast<long>(k - 1) + fit.intercept) --k;
  fit.onset = static_cast<unsigned>(k);
  return fit;
}

unsigned psi_bound(const SystemSpec& s) { return s.e * static_cast<unsigned>(std::min(s.r(), s.n()) + 1); }
unsigned mu_bound(const SystemSpec& s) { return s.e * static_cast<unsigned>(std::min(s.r(), s.n()) + 2); }

namespace {

constexpr std::uint64_t kTaskJk = 1;
constexpr std::uint64_t kTaskJki = 2;

std::uint64_t task_id(std::uint64_t family, std::uint64_t i, std::uint64_t k) {
  return derive_seed(family, i, k);
}

std::vector<std::size_t> jk_ranks(const SystemSpec& sys, const Specialization& sp, const RankOptions& opt,
                                  const std::vector<SymbolicMatrix>& blocks, unsigned kmax) {
  auto ranks = parallel_map(kmax, opt.threads, [&](std::size_t idx) {
    const unsigned k = static_cast<unsigned>(idx + 1);
    Evaluator ev(sys, sp);
    return rank_with(ev.evaluate(build_Jk(sys, blocks, k)), opt, task_id(kTaskJk, 0, k));
  });
  ranks.insert(ranks.begin(), 0);
  return ranks;
}

std::vector<std::size_t> jki_ranks(const SystemSpec& sys, const Specialization& sp, const RankOptions& opt,
                                   const std::vector<SymbolicMatrix>& blocks, unsigned i, unsigned kmax) {
  auto ranks = parallel_map(kmax, opt.threads, [&](std::size_t idx) {
    const unsigned k = static_cast<unsigned>(idx + 1);
    Evaluator ev(sys, sp);
    return rank_with(ev.evaluate(build_Jki(sys, blocks, k, i)), opt, task_id(kTaskJki, i, k));
  });
  ranks.insert(ranks.begin(), 0);
  return ranks;
}

std::vector<long> mu_values(const SystemSpec& sys, const Specialization& sp, const RankOptions& opt,
                            const std::vector<SymbolicMatrix>& blocks, unsigned i, unsigned kmax,
                            std::vector<std::size_t>* ranks_out) {
  auto ranks = jki_ranks(sys, sp, opt, blocks, i, kmax);
  std::vector<long> mu(kmax + 1);
  for (unsigned k = 0; k <= kmax; ++k) mu[k] = static_cast<long>(k * sys.r()) - static_cast<long>(ranks[k]);
  if (ranks_out) *ranks_out = std::move(ranks);
  return mu;
}

void require_index(const SystemSpec& sys, unsigned i) {
  if (i + 1 < sys.e) {
    throw Error(Errc::IndexTooSmall, "i = " + std::to_string(i) + " is below e-1 = " + std::to_string(sys.e - 1));
  }
}

}  // namespace

PsiResult psi_profile(const SystemSpec& sys, const Specialization& sp, const RankOptions& opt,
                      std::optional<unsigned> kmax_opt) {
  const unsigned kmax = kmax_opt.value_or(psi_bound(sys) + 2);
  const auto blocks = jacobian_blocks(sys);
  PsiResult out;
  out.ranks = jk_ranks(sys, sp, opt, blocks, kmax);
  const long n = static_cast<long>(sys.n());
  auto& prof = out.psi;
  prof.kmax = kmax;
  prof.values.resize(kmax + 1);
  for (unsigned k = 0; k <= kmax; ++k) {
    prof.values[k] = (static_cast<long>(k) + static_cast<long>(sys.e)) * n - static_cast<long>(out.ranks[k]);
  }
  const TailFit fit = fit_tail(prof.values, psi_bound(sys));
  prof.slope = fit.slope;
  prof.intercept = fit.intercept;
  prof.onset = fit.onset;
  out.d = fit.slope;
  out.s = fit.intercept;
  out.rho = fit.onset;
  return out;
}

MuResult mu_profile(const SystemSpec& sys, const Specialization& sp, const RankOptions& opt,
                    std::optional<unsigned> i_opt, std::optional<unsigned> kmax_opt) {
  MuResult out;
  out.i = i_opt.value_or(sys.e - 1);
  require_index(sys, out.i);
  const unsigned kmax = kmax_opt.value_or(mu_bound(sys) + 2);
  out.mu = mu_values(sys, sp, opt, jacobian_blocks(sys), out.i, kmax, &out.ranks);
  return out;
}

IInvarianceReport check_i_invariance(const SystemSpec& sys, const Specialization& sp, const RankOptions& opt,
                                     unsigned kmax, const std::vector<unsigned>& i_values) {
  for (unsigned i : i_values) require_index(sys, i);
  IInvarianceReport rep;
  rep.i_values = i_values;
  rep.kmax = kmax;
  const auto blocks = jacobian_blocks(sys);
  for (unsigned i : i_values) rep.mu[i] = mu_values(sys, sp, opt, blocks, i, kmax, nullptr);
  if (i_values.empty()) return rep;
  const unsigned first = i_values.front();
  for (unsigned k = 0; k <= kmax; ++k) {
    for (unsigned i : i_values) {
      if (rep.mu[i][k] != rep.mu[first][k]) {
        rep.mismatches.push_back("k=" + std::to_string(k) + ": mu_{k," + std::to_string(first) + "}=" +
                                 std::to_string(rep.mu[first][k]) + " but mu_{k," + std::to_string(i) +
                                 "}=" + std::to_string(rep.mu[i][k]));
      }
    }
  }
  return rep;
}

std::vector<std::size_t> ranks_Jk(const SystemSpec& sys, const Specialization& sp, const RankOptions& opt,
                                  unsigned kmax) {
  return jk_ranks(sys, sp, opt, jacobian_blocks(sys), kmax);
}

std::vector<std::size_t> ranks_Jki(const SystemSpec& sys, const Specialization& sp, const RankOptions& opt,
                                   unsigned i, unsigned kmax) {
  require_index(sys, i);
  return jki_ranks(sys, sp, opt, jacobian_blocks(sys), i, kmax);
}

const std::vector<std::string>& report_caveats() {
  static const std::vector<std::string> caveats = {
      "ranks are taken at the supplied solution point; a non-generic point can only underestimate them",
      "quasi-primeness of the system and reflexivity of the ideal are assumed, not verified",
      "rank(J_{k,i}) is assumed independent of the truncation level it is read in",
  };
  return caveats;
}

IndexReport difference_index(const SystemSpec& sys, const Specialization& sp, const AnalyzeOptions& opt) {
  IndexReport rep;
  rep.n = sys.n();
  rep.r = sys.r();
  rep.e = sys.e;
  rep.options = opt.rank;
  rep.psi_onset_bound = psi_bound(sys);
  rep.mu_onset_bound = mu_bound(sys);
  rep.caveats = report_caveats();

  const PsiResult psi = psi_profile(sys, sp, opt.rank, opt.kmax);
  rep.psi = psi.psi.values;
  rep.ranks_Jk = psi.ranks;
  rep.kmax_psi = psi.psi.kmax;
  rep.d = psi.d;
  rep.s = psi.s;
  rep.rho = psi.rho;

  const long n = static_cast<long>(rep.n);
  const long r = static_cast<long>(rep.r);
  const long e = static_cast<long>(rep.e);
  rep.rank_slope = n - rep.d;
  rep.rank_intercept = e * n - rep.s;

  const MuResult mu = mu_profile(sys, sp, opt.rank, opt.i, opt.kmax);
  rep.i = mu.i;
  rep.mu = mu.mu;
  rep.ranks_Jki = mu.ranks;
  rep.kmax_mu = static_cast<unsigned>(mu.mu.size() - 1);

  const TailFit fit = fit_tail(rep.mu, rep.mu_onset_bound);
  if (fit.slope != rep.d + r - n) {
    throw Error(Errc::SlopeMismatch, "mu tail slope is " + std::to_string(fit.slope) + " but d+r-n = " +
                                         std::to_string(rep.d + r - n));
  }
  rep.a = fit.intercept;
  rep.omega = fit.onset;
  rep.sigma_dim = rep.d;
  rep.ord_p = rep.s - e * rep.d - rep.a;
  rep.regularity_bound = static_cast<unsigned>(e - 1 + std::max(0L, static_cast<long>(rep.rho) - rep.omega));

  auto violate = [&rep](std::string msg) { rep.violations.push_back(std::move(msg)); };
  for (std::size_t k = 0; k + 1 < rep.mu.size(); ++k) {
    if (rep.mu[k + 1] < rep.mu[k]) {
      violate("mu decreases from k=" + std::to_string(k) + " to k=" + std::to_string(k + 1));
    }
  }
  for (std::size_t k = 1; k + 1 < rep.psi.size(); ++k) {
    const long step = rep.psi[k + 1] - rep.psi[k];
    if (step < n - r || step > n) {
      violate("psi(" + std::to_string(k + 1) + ")-psi(" + std::to_string(k) + ") = " + std::to_string(step) +
              " is outside [n-r, n]");
    }
  }
  if (rep.d < std::max(0L, n - r) || rep.d > n) violate("d = " + std::to_string(rep.d) + " is outside [max{0,n-r}, n]");
  if (rep.a < 0) violate("a = " + std::to_string(rep.a) + " is negative");
  if (rep.omega > rep.mu_onset_bound) {
    violate("omega = " + std::to_string(rep.omega) + " exceeds e(min{r,n}+2) = " + std::to_string(rep.mu_onset_bound));
  }
  if (rep.omega > rep.rho + rep.e) {
    violate("omega = " + std::to_string(rep.omega) + " exceeds rho+e = " + std::to_string(rep.rho + rep.e));
  }
  {
    const std::size_t from = std::max(rep.rho, rep.omega);
    const std::size_t to = std::min(rep.psi.size(), rep.mu.size());
    std::optional<long> constant;
    for (std::size_t k = from; k < to; ++k) {
      const long v = rep.d * (static_cast<long>(rep.i) + 1) + (rep.d + r - n) * static_cast<long>(k) + rep.s -
                     e * rep.d - rep.mu[k];
      if (constant && *constant != v) {
        violate("d(i+1)+(d+r-n)k+s-ed-mu_k is not constant from k=" + std::to_string(from));
        break;
      }
      constant = v;
    }
  }
  if (!opt.check_i.empty()) {
    rep.i_invariance = check_i_invariance(sys, sp, opt.rank, rep.rho + rep.e, opt.check_i);
    for (const auto& m : rep.i_invariance->mismatches) violate("i-invariance fails at " + m);
  }

  if (rep.rank_slope != rep.d || rep.rank_intercept != rep.s) {
    rep.warnings.push_back("rank(J_k) = " + affine_text(rep.rank_slope, rep.rank_intercept) +
                           " for k >= rho is the rank polynomial, not the dimension polynomial; psi(k) = (k+e)n - rank(J_k) = " +
                           affine_text(rep.d, rep.s));
  }
  if (opt.rank.engine == Engine::Probabilistic) {
    rep.warnings.push_back("probabilistic ranks may underestimate; rerun without --probabilistic for exact values");
  }
  return rep;
}

}  // namespace dindex
