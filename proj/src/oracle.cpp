#include "dindex/oracle.hpp"

#include "dindex/error.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <set>
#include <string>

namespace dindex {

std::size_t oracle_var_limit() {
  if (const char* env = std::getenv("DINDEX_ORACLE_VAR_LIMIT")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return kOracleVarLimit;
}

namespace {

using Exps = std::vector<unsigned>;

// -1, 0, 1 for a < b, a = b, a > b under degrevlex on variables [lo, hi).
int drl(const Exps& a, const Exps& b, std::size_t lo, std::size_t hi) {
  unsigned da = 0, db = 0;
  for (std::size_t v = lo; v < hi; ++v) {
    da += a[v];
    db += b[v];
  }
  if (da != db) return da > db ? 1 : -1;
  for (std::size_t v = lo; v < hi; ++v) {
    if (a[v] != b[v]) return a[v] < b[v] ? 1 : -1;
  }
  return 0;
}

struct Ring {
  std::size_t n;
  unsigned top;
  MonomialOrder order;

  std::size_t nvars() const { return (top + 1) * n; }
  std::size_t index(VarRef v) const { return v.order * n + v.var; }

  bool greater(const Exps& a, const Exps& b) const {
    const std::size_t all = nvars();
    if (order.kind == OrderKind::DegRevLex) return drl(a, b, 0, all) > 0;
    const std::size_t split = std::min(all, (static_cast<std::size_t>(order.keep) + 1) * n);
    if (int c = drl(a, b, split, all); c != 0) return c > 0;
    return drl(a, b, 0, split) > 0;
  }
};

struct Greater {
  const Ring* ring;
  bool operator()(const Exps& a, const Exps& b) const { return ring->greater(a, b); }
};

using GPoly = std::map<Exps, Rational, Greater>;

bool divides(const Exps& a, const Exps& b) {
  for (std::size_t v = 0; v < a.size(); ++v) {
    if (a[v] > b[v]) return false;
  }
  return true;
}

Exps lcm_of(const Exps& a, const Exps& b) {
  Exps out(a.size());
  for (std::size_t v = 0; v < a.size(); ++v) out[v] = std::max(a[v], b[v]);
  return out;
}

Exps quotient(const Exps& a, const Exps& b) {
  Exps out(a.size());
  for (std::size_t v = 0; v < a.size(); ++v) out[v] = a[v] - b[v];
  return out;
}

bool coprime(const Exps& a, const Exps& b) {
  for (std::size_t v = 0; v < a.size(); ++v) {
    if (a[v] && b[v]) return false;
  }
  return true;
}

void make_monic(GPoly& p) {
  if (p.empty()) return;
  const Rational inv = 1 / p.begin()->second;
  for (auto& [m, c] : p) c *= inv;
}

// p -= c * x^shift * g
void sub_mul(GPoly& p, const Rational& c, const Exps& shift, const GPoly& g) {
  for (const auto& [m, gc] : g) {
    Exps e = m;
    for (std::size_t v = 0; v < e.size(); ++v) e[v] += shift[v];
    auto [it, inserted] = p.try_emplace(std::move(e), 0);
    it->second -= c * gc;
    if (it->second == 0) p.erase(it);
  }
}

// Full reduction modulo `basis` (all monic).
GPoly reduce(GPoly p, const std::vector<GPoly>& basis, const Ring& ring) {
  GPoly rem{Greater{&ring}};
  while (!p.empty()) {
    auto lead = p.begin();
    const GPoly* div = nullptr;
    for (const auto& g : basis) {
      if (divides(g.begin()->first, lead->first)) {
        div = &g;
        break;
      }
    }
    if (!div) {
      rem.insert(*lead);
      p.erase(lead);
      continue;
    }
    const Rational c = lead->second;
    const Exps shift = quotient(lead->first, div->begin()->first);
    sub_mul(p, c, shift, *div);
  }
  return rem;
}

GPoly spoly(const GPoly& f, const GPoly& g) {
  const Exps l = lcm_of(f.begin()->first, g.begin()->first);
  GPoly out = f;
  out.clear();
  sub_mul(out, -1, quotient(l, f.begin()->first), f);
  sub_mul(out, 1, quotient(l, g.begin()->first), g);
  return out;
}

GPoly to_gpoly(const SigmaPolynomial& p, const Ring& ring) {
  GPoly out{Greater{&ring}};
  for (const auto& [mono, coeff] : p.terms()) {
    if (!coeff.is_constant()) {
      throw Error(Errc::OracleUnsupported, "the oracle needs rational coefficients");
    }
    Exps e(ring.nvars(), 0);
    for (const auto& [v, k] : mono.factors) {
      if (v.order > ring.top) throw std::logic_error("variable order exceeds the oracle ring");
      e[ring.index(v)] += k;
    }
    out.emplace(std::move(e), coeff.constant_value());
  }
  return out;
}

SigmaPolynomial from_gpoly(const GPoly& p, const Ring& ring, std::size_t coeff_nvars) {
  SigmaPolynomial out(coeff_nvars);
  for (const auto& [e, c] : p) {
    Monomial m;
    for (std::size_t idx = e.size(); idx-- > 0;) {
      if (e[idx]) m.factors.push_back({VarRef{static_cast<unsigned>(idx % ring.n), static_cast<unsigned>(idx / ring.n)}, e[idx]});
    }
    out.add_term(m, FieldElement::constant(coeff_nvars, c));
  }
  return out;
}

void check_size(const Ring& ring, const OracleOptions& opt) {
  const std::size_t limit = opt.var_limit.value_or(oracle_var_limit());
  if (!opt.force && ring.nvars() > limit) {
    throw Error(Errc::OracleTooLarge, "ring has " + std::to_string(ring.nvars()) + " variables, above the limit " +
                                          std::to_string(limit) + "; use --force or DINDEX_ORACLE_VAR_LIMIT");
  }
}

std::vector<GPoly> buchberger(std::vector<GPoly> gens, const Ring& ring) {
  std::vector<GPoly> g;
  for (auto& p : gens) {
    if (p.empty()) continue;
    make_monic(p);
    g.push_back(std::move(p));
  }
  std::set<std::pair<std::size_t, std::size_t>> pending;
  for (std::size_t j = 0; j < g.size(); ++j) {
    for (std::size_t i = 0; i < j; ++i) pending.insert({i, j});
  }
  auto is_pending = [&](std::size_t a, std::size_t b) { return pending.count({std::min(a, b), std::max(a, b)}) > 0; };

  while (!pending.empty()) {
    // normal strategy: smallest lcm first
    auto best = pending.begin();
    Exps best_lcm = lcm_of(g[best->first].begin()->first, g[best->second].begin()->first);
    for (auto it = std::next(pending.begin()); it != pending.end(); ++it) {
      Exps l = lcm_of(g[it->first].begin()->first, g[it->second].begin()->first);
      if (ring.greater(best_lcm, l)) {
        best = it;
        best_lcm = std::move(l);
      }
    }
    const auto [i, j] = *best;
    pending.erase(best);
    const Exps& li = g[i].begin()->first;
    const Exps& lj = g[j].begin()->first;
    if (coprime(li, lj)) continue;
    bool chain = false;
    for (std::size_t k = 0; k < g.size() && !chain; ++k) {
      if (k == i || k == j) continue;
      chain = divides(g[k].begin()->first, best_lcm) && !is_pending(i, k) && !is_pending(j, k);
    }
    if (chain) continue;
    GPoly h = reduce(spoly(g[i], g[j]), g, ring);
    if (h.empty()) continue;
    make_monic(h);
    const std::size_t idx = g.size();
    g.push_back(std::move(h));
    for (std::size_t k = 0; k < idx; ++k) pending.insert({k, idx});
  }

  // minimal, then reduced
  std::vector<GPoly> minimal;
  for (std::size_t a = 0; a < g.size(); ++a) {
    bool redundant = false;
    for (std::size_t b = 0; b < g.size() && !redundant; ++b) {
      if (a == b || !divides(g[b].begin()->first, g[a].begin()->first)) continue;
      redundant = g[b].begin()->first != g[a].begin()->first || b < a;
    }
    if (!redundant) minimal.push_back(g[a]);
  }
  std::vector<GPoly> reduced;
  for (std::size_t a = 0; a < minimal.size(); ++a) {
    std::vector<GPoly> others;
    for (std::size_t b = 0; b < minimal.size(); ++b) {
      if (b != a) others.push_back(minimal[b]);
    }
    GPoly tail = minimal[a];
    tail.erase(tail.begin());
    GPoly r = reduce(std::move(tail), others, ring);
    r.insert(*minimal[a].begin());
    make_monic(r);
    reduced.push_back(std::move(r));
  }
  std::sort(reduced.begin(), reduced.end(),
            [&](const GPoly& a, const GPoly& b) { return ring.greater(b.begin()->first, a.begin()->first); });
  return reduced;
}

}  // namespace

namespace {

std::vector<GPoly> basis_of(const std::vector<SigmaPolynomial>& gens, const Ring& ring, const OracleOptions& opt) {
  check_size(ring, opt);
  std::vector<GPoly> gp;
  for (const auto& p : gens) gp.push_back(to_gpoly(p, ring));
  return buchberger(std::move(gp), ring);
}

}  // namespace

std::vector<SigmaPolynomial> groebner_basis(const std::vector<SigmaPolynomial>& gens, std::size_t n, unsigned top,
                                            const MonomialOrder& order, const OracleOptions& opt) {
  const Ring ring{n, top, order};
  const std::size_t coeff_nvars = gens.empty() ? 0 : gens.front().coeff_nvars();
  std::vector<SigmaPolynomial> out;
  for (const auto& p : basis_of(gens, ring, opt)) out.push_back(from_gpoly(p, ring, coeff_nvars));
  return out;
}

SigmaPolynomial normal_form(const SigmaPolynomial& f, const std::vector<SigmaPolynomial>& basis, std::size_t n,
                            unsigned top, const MonomialOrder& order) {
  const Ring ring{n, top, order};
  std::vector<GPoly> b;
  for (const auto& p : basis) b.push_back(to_gpoly(p, ring));
  return from_gpoly(reduce(to_gpoly(f, ring), b, ring), ring, f.coeff_nvars());
}

TruncatedIdeal truncated_ideal(const SystemSpec& s, unsigned k) {
  TruncatedIdeal t;
  t.level = k;
  t.n = s.n();
  t.top = k + s.e - 1;
  t.coeff_nvars = s.field.nvars();
  for (unsigned j = 0; j < k; ++j) {
    for (const auto& f : s.equations) {
      for (const auto& [m, c] : f.terms()) {
        if (!c.is_constant()) {
          throw Error(Errc::OracleUnsupported, "the oracle needs rational coefficients; " + s.to_string(f) +
                                                   " has coefficients outside Q");
        }
      }
      t.generators.push_back(transform(f, s.field, j));
    }
  }
  return t;
}

std::vector<SigmaPolynomial> eliminate(const TruncatedIdeal& t, unsigned i, const OracleOptions& opt) {
  const unsigned top = std::max(t.top, i);
  const auto gb = groebner_basis(t.generators, t.n, top, MonomialOrder{OrderKind::Elimination, i}, opt);
  std::vector<SigmaPolynomial> out;
  for (const auto& p : gb) {
    const auto mo = p.max_order();
    if (!mo || *mo <= i) out.push_back(p);
  }
  return out;
}

ScanResult stabilization_scan(const SystemSpec& s, unsigned i, unsigned h_max, const OracleOptions& opt) {
  ScanResult res;
  for (unsigned h = 0;; ++h) {
    while (res.levels.size() < h + 3) {
      const auto k = static_cast<unsigned>(res.levels.size());
      res.levels.push_back(eliminate(truncated_ideal(s, k), i, opt));
    }
    if (res.levels[h] == res.levels[h + 1] && res.levels[h + 1] == res.levels[h + 2]) {
      res.h = h;
      return res;
    }
    if (h >= h_max) {
      throw Error(Errc::NoStabilizationWithinBudget, "Delta_h cap A_" + std::to_string(i) +
                                                         " does not stabilize for h <= " + std::to_string(h_max));
    }
  }
}

bool membership_test(const SigmaPolynomial& f, const TruncatedIdeal& t, const OracleOptions& opt) {
  if (f.is_zero()) return true;
  const unsigned top = std::max(t.top, f.max_order().value_or(0));
  const MonomialOrder order{OrderKind::DegRevLex, 0};
  const auto gb = groebner_basis(t.generators, t.n, top, order, opt);
  return normal_form(f, gb, t.n, top, order).is_zero();
}

long trdeg_oracle(const TruncatedIdeal& t, const OracleOptions& opt) {
  const Ring ring{t.n, t.top, MonomialOrder{}};
  const std::size_t nv = ring.nvars();
  std::vector<std::vector<bool>> supports;
  for (const auto& p : basis_of(t.generators, ring, opt)) {
    const Exps& lead = p.begin()->first;
    std::vector<bool> s(nv, false);
    bool constant = true;
    for (std::size_t v = 0; v < nv; ++v) {
      s[v] = lead[v] > 0;
      constant = constant && !s[v];
    }
    if (constant) return -1;
    supports.push_back(std::move(s));
  }
  // largest U with no leading monomial supported inside U
  std::vector<bool> in(nv, false);
  long best = 0;
  auto admissible = [&] {
    for (const auto& s : supports) {
      bool inside = true;
      for (std::size_t v = 0; v < nv && inside; ++v) inside = !s[v] || in[v];
      if (inside) return false;
    }
    return true;
  };
  auto search = [&](auto&& self, std::size_t v, long size) -> void {
    if (size + static_cast<long>(nv - v) <= best) return;
    if (v == nv) {
      best = size;
      return;
    }
    in[v] = true;
    if (admissible()) self(self, v + 1, size + 1);
    in[v] = false;
    self(self, v + 1, size);
  };
  search(search, 0, 0);
  return best;
}

}  // namespace dindex
