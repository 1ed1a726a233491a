#include "dindex/rank.hpp"

#include "dindex/error.hpp"

#include <algorithm>
#include <functional>
#include <utility>

namespace dindex {

Specialization make_specialization(const SystemSpec& s, DifferenceField target,
                                   const std::map<std::string, std::string>& assign) {
  Specialization sp;
  for (const auto& g : s.field.generators()) {
    auto idx = target.index_of(g);
    if (!idx) throw Error(Errc::EmbeddingMismatch, "coefficient generator " + g + " is not a generator of the target field");
    sp.embedding.push_back(*idx);
  }
  for (const auto& [name, text] : assign) {
    if (std::find(s.variables.begin(), s.variables.end(), name) == s.variables.end()) {
      throw Error(Errc::UnknownIdentifier, "assignment to unknown variable " + name);
    }
  }
  for (const auto& v : s.variables) {
    auto it = assign.find(v);
    if (it == assign.end()) throw Error(Errc::InvalidSystemFile, "variable " + v + " has no assignment");
    sp.assign.push_back(parse_field_element(it->second, target));
  }
  sp.target = std::move(target);
  return sp;
}

Evaluator::Evaluator(const SystemSpec& s, const Specialization& sp) : system_(&s), sp_(&sp) {
  for (const auto& a : sp.assign) shifts_.push_back({a});
}

FieldElement Evaluator::embed(const FieldElement& c) const {
  return c.remap(sp_->embedding, sp_->target.nvars());
}

FieldElement Evaluator::value(VarRef v) {
  auto& chain = shifts_.at(v.var);
  while (chain.size() <= v.order) chain.push_back(sp_->target.apply_sigma(chain.back()));
  return chain[v.order];
}

FieldElement Evaluator::evaluate(const SigmaPolynomial& p) {
  FieldElement sum = sp_->target.zero();
  for (const auto& [mono, coeff] : p.terms()) {
    FieldElement term = embed(coeff);
    for (const auto& [var, exp] : mono.factors) term = term * value(var).pow(exp);
    sum = sum + term;
  }
  return sum;
}

EvaluatedMatrix Evaluator::evaluate(const SymbolicMatrix& m) {
  EvaluatedMatrix out(m.rows(), m.cols(), sp_->target.nvars());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (!m(i, j).is_zero()) out(i, j) = evaluate(m(i, j));
    }
  }
  return out;
}

void validate_specialization(const SystemSpec& s, const Specialization& sp) {
  Evaluator ev(s, sp);
  const auto& gens = s.field.generators();
  for (std::size_t g = 0; g < gens.size(); ++g) {
    const FieldElement in_k = ev.embed(s.field.images()[g]);
    const FieldElement& in_l = sp.target.images()[sp.embedding[g]];
    if (!(in_k == in_l)) {
      throw Error(Errc::EmbeddingMismatch, "sigma(" + gens[g] + ") is " + sp.target.to_string(in_k) +
                                               " in the coefficient field but " + sp.target.to_string(in_l) +
                                               " in the target field");
    }
  }
  std::string residuals;
  for (std::size_t i = 0; i < s.r(); ++i) {
    const FieldElement res = ev.evaluate(s.equations[i]);
    if (res.is_zero()) continue;
    if (!residuals.empty()) residuals += "; ";
    residuals += "f" + std::to_string(i + 1) + " evaluates to " + sp.target.to_string(res);
  }
  if (!residuals.empty()) throw Error(Errc::NotASolution, residuals);
}

std::size_t rank_integer(std::vector<std::vector<Integer>> a) {
  if (a.empty()) return 0;
  const std::size_t rows = a.size();
  const std::size_t cols = a.front().size();
  Integer prev = 1;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t piv = rank;
    while (piv < rows && a[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[rank]);
    const Integer& p = a[rank][c];
    for (std::size_t i = rank + 1; i < rows; ++i) {
      const Integer lead = a[i][c];
      for (std::size_t j = c + 1; j < cols; ++j) {
        Integer next = p * a[i][j];
        if (lead != 0 && a[rank][j] != 0) next -= lead * a[rank][j];
        if (prev != 1) mpz_divexact(next.get_mpz_t(), next.get_mpz_t(), prev.get_mpz_t());
        a[i][j] = std::move(next);
      }
      a[i][c] = 0;
    }
    prev = p;
    ++rank;
  }
  return rank;
}

std::size_t rank_rational(const std::vector<std::vector<Rational>>& rows) {
  std::vector<std::vector<Integer>> ints(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    Integer l = 1;
    for (const auto& x : rows[i]) {
      if (x != 0) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    }
    ints[i].reserve(rows[i].size());
    for (const auto& x : rows[i]) ints[i].push_back(x == 0 ? Integer(0) : Integer(x.get_num() * (l / x.get_den())));
  }
  return rank_integer(std::move(ints));
}

namespace {

// Rows multiplied by the lcm of their denominators.
std::vector<std::vector<Poly>> cleared_rows(const EvaluatedMatrix& m) {
  std::vector<std::vector<Poly>> out(m.rows());
  const std::size_t nv = m.rows() * m.cols() == 0 ? 0 : m(0, 0).nvars();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Poly l = Poly::constant(nv, 1);
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (!m(i, j).is_zero()) l = lcm(l, m(i, j).denominator());
    }
    out[i].reserve(m.cols());
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const FieldElement& x = m(i, j);
      out[i].push_back(x.is_zero() ? Poly(nv) : x.numerator() * divexact(l, x.denominator()));
    }
  }
  return out;
}

bool better_pivot(const Poly& a, const Poly& b) {
  const unsigned da = a.total_degree();
  const unsigned db = b.total_degree();
  if (da != db) return da < db;
  return a.size() < b.size();
}

}  // namespace

std::size_t rank_exact(const EvaluatedMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  auto a = cleared_rows(m);
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  const std::size_t nv = m(0, 0).nvars();
  std::vector<std::size_t> colperm(cols);
  for (std::size_t j = 0; j < cols; ++j) colperm[j] = j;
  auto at = [&](std::size_t i, std::size_t j) -> Poly& { return a[i][colperm[j]]; };

  Poly prev = Poly::constant(nv, 1);
  std::size_t k = 0;
  for (; k < std::min(rows, cols); ++k) {
    std::size_t pi = rows;
    std::size_t pj = cols;
    for (std::size_t i = k; i < rows; ++i) {
      for (std::size_t j = k; j < cols; ++j) {
        const Poly& x = at(i, j);
        if (x.is_zero()) continue;
        if (pi == rows || better_pivot(x, at(pi, pj))) {
          pi = i;
          pj = j;
        }
      }
    }
    if (pi == rows) break;
    std::swap(a[pi], a[k]);
    std::swap(colperm[pj], colperm[k]);
    const Poly pivot = at(k, k);
    for (std::size_t i = k + 1; i < rows; ++i) {
      const Poly lead = at(i, k);
      for (std::size_t j = k + 1; j < cols; ++j) {
        Poly next = pivot * at(i, j);
        if (!lead.is_zero() && !at(k, j).is_zero()) next -= lead * at(k, j);
        at(i, j) = prev.is_one() ? std::move(next) : divexact(next, prev);
      }
      at(i, k) = Poly(nv);
    }
    prev = pivot;
  }
  return k;
}

std::size_t rank_exact_pointwise(const EvaluatedMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  const std::size_t nv = m(0, 0).nvars();
  if (nv > 1) return rank_exact(m);
  const auto a = cleared_rows(m);
  const std::size_t full = std::min(m.rows(), m.cols());

  std::vector<unsigned> row_deg(m.rows(), 0);
  std::vector<unsigned> col_deg(m.cols(), 0);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (a[i][j].is_zero()) continue;
      const unsigned d = a[i][j].total_degree();
      row_deg[i] = std::max(row_deg[i], d);
      col_deg[j] = std::max(col_deg[j], d);
    }
  }
  auto top_sum = [full](std::vector<unsigned> v) {
    std::sort(v.begin(), v.end(), std::greater<>());
    unsigned long s = 0;
    for (std::size_t i = 0; i < full; ++i) s += v[i];
    return s;
  };
  const unsigned long degree_bound = std::min(top_sum(row_deg), top_sum(col_deg));

  std::size_t best = 0;
  for (unsigned long x = 0; x <= degree_bound && best < full; ++x) {
    const Rational pt(static_cast<long>(x));
    std::vector<std::vector<Rational>> rows(m.rows(), std::vector<Rational>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i) {
      for (std::size_t j = 0; j < m.cols(); ++j) {
        if (!a[i][j].is_zero()) rows[i][j] = nv == 0 ? a[i][j].constant_value() : a[i][j].evaluate({&pt, 1});
      }
    }
    best = std::max(best, rank_rational(rows));
    if (nv == 0) break;
  }
  return best;
}

std::size_t rank_at_point(const EvaluatedMatrix& m, std::span<const Rational> point) {
  std::vector<std::vector<Rational>> rows(m.rows(), std::vector<Rational>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (!m(i, j).is_zero()) rows[i][j] = m(i, j).evaluate(point);
    }
  }
  return rank_rational(rows);
}

std::vector<Rational> probabilistic_point(const EvaluatedMatrix& m, std::uint64_t seed, unsigned trial) {
  const std::size_t nv = m.rows() * m.cols() == 0 ? 0 : m(0, 0).nvars();
  std::vector<Poly> dens;
  for (const auto& x : m.entries()) {
    if (!x.denominator().is_constant()) dens.push_back(x.denominator());
  }
  Rng rng(derive_seed(seed, trial));
  std::uniform_int_distribution<long> dist(1, kPointBound);
  for (unsigned attempt = 0; attempt < 64; ++attempt) {
    std::vector<Rational> pt;
    for (std::size_t v = 0; v < nv; ++v) {
      Rational q(dist(rng), dist(rng));
      q.canonicalize();
      if (dist(rng) % 2 == 0) q = -q;
      pt.push_back(q);
    }
    const bool ok = std::none_of(dens.begin(), dens.end(), [&](const Poly& d) { return d.evaluate(pt) == 0; });
    if (ok) return pt;
  }
  throw Error(Errc::PointSearchExhausted, "no point avoiding all denominators after 64 draws");
}

std::size_t rank_probabilistic(const EvaluatedMatrix& m, std::uint64_t seed, unsigned trials) {
  if (trials == 0) throw Error(Errc::InvalidArgument, "trials must be at least 1");
  const std::size_t full = std::min(m.rows(), m.cols());
  std::size_t best = 0;
  for (unsigned t = 0; t < trials && best < full; ++t) {
    best = std::max(best, rank_at_point(m, probabilistic_point(m, seed, t)));
  }
  return best;
}

const char* engine_name(Engine e) { return e == Engine::Exact ? "exact" : "probabilistic"; }

std::size_t rank_with(const EvaluatedMatrix& m, const RankOptions& opt, std::uint64_t task) {
  if (opt.engine == Engine::Probabilistic) return rank_probabilistic(m, derive_seed(opt.seed, task), opt.trials);
  return rank_exact(m);
}

}  // namespace dindex
