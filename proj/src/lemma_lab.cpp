#include "dindex/error.hpp"
#include "dindex/index_core.hpp"
#include "dindex/parallel.hpp"

#include <algorithm>
#include <sstream>

namespace dindex {

DifferenceField default_lab_field() { return make_field({"t"}, {{"t", "t+1"}}); }

unsigned lemma_bound(char kind, unsigned t, unsigned p, unsigned q) {
  const unsigned extra = kind == 'N' ? 2 : 1;
  return (t - 1) * (std::min(p, q) + extra);
}

BlockFamily random_block_family(const DifferenceField& field, unsigned t, unsigned p, unsigned q, std::uint64_t seed) {
  Rng rng(seed);
  std::uniform_int_distribution<int> coin(0, 1);
  std::uniform_int_distribution<int> coeff(-3, 3);
  const std::size_t nv = field.nvars();
  BlockFamily fam{field, {}};
  for (unsigned b = 0; b < t; ++b) {
    FieldMatrix m(p, q, nv);
    for (unsigned i = 0; i < p; ++i) {
      for (unsigned j = 0; j < q; ++j) {
        if (coin(rng) == 0) continue;
        Poly entry = Poly::constant(nv, coeff(rng));
        const int slope = coeff(rng);
        if (nv > 0) entry += Poly::variable(nv, 0) * Rational(slope);
        m(i, j) = FieldElement::from_poly(std::move(entry));
      }
    }
    fam.blocks.push_back(std::move(m));
  }
  return fam;
}

std::vector<std::size_t> family_ranks(const BlockFamily& family, char kind, unsigned kmax) {
  std::vector<std::size_t> ranks{0};
  for (unsigned k = 1; k <= kmax; ++k) {
    ranks.push_back(rank_exact_pointwise(kind == 'N' ? build_Nk(family, k) : build_Mk(family, k)));
  }
  return ranks;
}

namespace {

std::string dump(const BlockFamily& fam, const std::vector<std::size_t>& ranks, const std::string& why) {
  std::ostringstream os;
  os << why << "\n";
  for (std::size_t b = 0; b < fam.blocks.size(); ++b) {
    os << "E" << b + 1 << ":\n";
    for (const auto& row : entry_strings(fam.blocks[b], fam.field)) {
      os << " ";
      for (const auto& x : row) os << " " << x;
      os << "\n";
    }
  }
  os << "ranks:";
  for (auto r : ranks) os << " " << r;
  os << "\n";
  return os.str();
}

}  // namespace

LemmaLabReport lemma_lab(const LemmaLabOptions& opt) {
  if (opt.kind != 'M' && opt.kind != 'N') throw Error(Errc::InvalidArgument, "kind must be M or N");
  if (opt.t == 0 || opt.p == 0 || opt.q == 0) throw Error(Errc::InvalidArgument, "t, p, q must be at least 1");
  LemmaLabReport rep;
  rep.options = opt;
  rep.bound = lemma_bound(opt.kind, opt.t, opt.p, opt.q);
  rep.kmax = std::max(rep.bound + 3, 2u);
  rep.trials = parallel_map(opt.trials, opt.threads, [&](std::size_t idx) {
    LemmaTrial tr;
    tr.trial = static_cast<unsigned>(idx);
    const BlockFamily fam = random_block_family(opt.field, opt.t, opt.p, opt.q, derive_seed(opt.seed, idx));
    tr.ranks = family_ranks(fam, opt.kind, rep.kmax);
    std::vector<long> values(tr.ranks.begin(), tr.ranks.end());
    try {
      tr.fit = fit_tail(values, rep.bound);
      if (tr.fit.onset > rep.bound) {
        tr.ok = false;
        tr.counterexample = dump(fam, tr.ranks, "onset " + std::to_string(tr.fit.onset) + " exceeds bound " +
                                                    std::to_string(rep.bound));
      }
    } catch (const Error& err) {
      if (err.code() != Errc::TailNotLinear) throw;
      tr.ok = false;
      tr.counterexample = dump(fam, tr.ranks, err.what());
    }
    return tr;
  });
  for (const auto& tr : rep.trials) {
    if (tr.ok) ++rep.onset_histogram[tr.fit.onset];
    else ++rep.failures;
  }
  return rep;
}

}  // namespace dindex
