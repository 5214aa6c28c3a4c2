#include "cis/involution.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace cis {

DivisionSpec DivisionSpec::janet(std::size_t nvars) {
  std::vector<std::size_t> id(nvars);
  std::iota(id.begin(), id.end(), 0);
  return DivisionSpec{id, MonomialOrdering::lex(nvars), false};
}

bool DivisionSpec::follows(const Exponent& u, const Exponent& v) const {
  int c = box.compare(u, v);
  return inverse ? c < 0 : c > 0;
}

VarSet nm_pair(const Exponent& u, const Exponent& v, const DivisionSpec& d) {
  if (u == v)
    throw std::invalid_argument("nm_pair: competitor equals the monomial");
  if (d.follows(u, v)) return {};
  if (v.divides(u)) return {};
  for (std::size_t j = 0; j < d.rho.size(); ++j) {
    std::size_t i = d.rho[j];
    if (u[i] < v[i]) return {i};
  }
  // v does not divide u, so some coordinate of u falls short of v
  throw std::logic_error("nm_pair: no deficient coordinate found");
}

VarSet nm_set(const Exponent& u, const std::vector<Exponent>& U,
              const DivisionSpec& d) {
  bool present = false;
  VarSet nm;
  for (const auto& v : U) {
    if (v == u) {
      present = true;
      continue;
    }
    auto s = nm_pair(u, v, d);
    nm.insert(s.begin(), s.end());
  }
  if (!present) throw std::invalid_argument("nm_set: monomial not in the set");
  return nm;
}

NMPartition partition(const std::vector<Exponent>& U, const DivisionSpec& d) {
  NMPartition p;
  p.monomials = U;
  p.nonmult.reserve(U.size());
  for (const auto& u : U) p.nonmult.push_back(nm_set(u, U, d));
  return p;
}

std::optional<std::size_t> inv_divisor(const Exponent& t,
                                       const std::vector<Exponent>& U,
                                       const DivisionSpec& d) {
  std::optional<std::size_t> best;
  for (std::size_t k = 0; k < U.size(); ++k) {
    auto q = U[k].quotient_of(t);
    if (!q) continue;
    VarSet nm = nm_set(U[k], U, d);
    bool ok = true;
    for (std::size_t i = 0; i < q->size() && ok; ++i)
      if ((*q)[i] != 0 && nm.count(i)) ok = false;
    if (!ok) continue;
    if (!best || d.box.greater(U[k], U[*best])) best = k;
  }
  return best;
}

namespace {

std::vector<Exponent> heads(const std::vector<RatPoly>& G) {
  std::vector<Exponent> U;
  U.reserve(G.size());
  for (const auto& g : G) U.push_back(g.leading_monomial());
  return U;
}

void cancel(RatPoly& h, const RatPoly& g, const Exponent& quot,
            std::size_t gi, std::vector<RatPoly>* cofactors) {
  Rational ratio = h.leading_coeff() / g.leading_coeff();
  h -= g.times_term(quot, ratio);
  if (cofactors) (*cofactors)[gi].add_term(quot, ratio);
}

}  // namespace

RatPoly inv_head_nf(const RatPoly& f, const std::vector<RatPoly>& G,
                    const DivisionSpec& d, std::vector<RatPoly>* cofactors) {
  if (cofactors)
    cofactors->assign(G.size(), RatPoly::zero(f.ordering()));
  if (G.empty()) return f;
  auto U = heads(G);
  RatPoly h = f;
  while (!h.is_zero()) {
    auto k = inv_divisor(h.leading_monomial(), U, d);
    if (!k) break;
    cancel(h, G[*k], *U[*k].quotient_of(h.leading_monomial()), *k, cofactors);
  }
  return h;
}

RatPoly inv_tail_nf(const RatPoly& f, const std::vector<RatPoly>& G,
                    const DivisionSpec& d, std::vector<RatPoly>* cofactors) {
  if (cofactors)
    cofactors->assign(G.size(), RatPoly::zero(f.ordering()));
  if (G.empty() || f.is_zero()) return f;
  auto U = heads(G);
  RatPoly out = RatPoly::zero(f.ordering());
  RatPoly work = f;
  while (!work.is_zero()) {
    auto k = inv_divisor(work.leading_monomial(), U, d);
    if (!k) {
      out.add_term(work.leading_monomial(), work.leading_coeff());
      work.add_term(work.leading_monomial(), -work.leading_coeff());
      continue;
    }
    cancel(work, G[*k], *U[*k].quotient_of(work.leading_monomial()), *k,
           cofactors);
  }
  return out;
}

bool criteria(const Exponent& lm_f, const Exponent& lm_anc_f,
              const Exponent& lm_anc_g) {
  if (lm_anc_f == lm_anc_g) return false;
  if (lm_anc_f.times(lm_anc_g) == lm_f) return true;
  Exponent l = Exponent::lcm(lm_anc_f, lm_anc_g);
  return l != lm_f && l.divides(lm_f);
}

namespace {

struct BTriple {
  RatPoly poly, anc;
  VarSet processed;  // nonmultiplicative variables already dispatched
  std::size_t seq;
  // seq of the triple whose poly is this one's ancestor; value-equal copies
  // of the same polynomial can coexist in the queue, so lineage must be
  // tracked by identity rather than by comparing ancestor polynomials
  std::size_t root;
};

// eligible: head has no proper divisor among the pool's heads; among those
// pick the smallest head, breaking ties by age
std::size_t select_index(const std::vector<BTriple>& pool,
                         const MonomialOrdering& ord) {
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < pool.size(); ++i) {
    const Exponent& mi = pool[i].poly.leading_monomial();
    bool eligible = true;
    for (std::size_t j = 0; j < pool.size() && eligible; ++j) {
      const Exponent& mj = pool[j].poly.leading_monomial();
      if (mj != mi && mj.divides(mi)) eligible = false;
    }
    if (!eligible) continue;
    if (!best) {
      best = i;
      continue;
    }
    int c = ord.compare(mi, pool[*best].poly.leading_monomial());
    if (c < 0 || (c == 0 && pool[i].seq < pool[*best].seq)) best = i;
  }
  return *best;  // a minimal head is always eligible
}

std::vector<RatPoly> polys_of(const std::vector<BTriple>& T) {
  std::vector<RatPoly> ps;
  ps.reserve(T.size());
  for (const auto& t : T) ps.push_back(t.poly);
  return ps;
}

// head-reduce every queued triple against T; criteria may discard
// prolongations, and a vanished original purges its pending prolongations
std::vector<BTriple> head_reduce(const std::vector<BTriple>& T,
                                 std::vector<BTriple> S, bool use_criteria,
                                 const DivisionSpec& d, std::size_t& seq) {
  auto Tp = polys_of(T);
  auto U = heads(Tp);
  std::vector<BTriple> out;
  std::size_t at = 0;
  while (at < S.size()) {
    BTriple p = std::move(S[at++]);
    RatPoly h = p.poly;
    auto k = inv_divisor(h.leading_monomial(), U, d);
    if (!k) {
      out.push_back(std::move(p));
      continue;
    }
    bool skipped = false;
    if (use_criteria && h.leading_monomial() != p.anc.leading_monomial() &&
        criteria(h.leading_monomial(), p.anc.leading_monomial(),
                 T[*k].anc.leading_monomial())) {
      h = RatPoly::zero(h.ordering());
      skipped = true;
    }
    while (!h.is_zero()) {
      auto kk = inv_divisor(h.leading_monomial(), U, d);
      if (!kk) break;
      cancel(h, Tp[*kk], *U[*kk].quotient_of(h.leading_monomial()), *kk,
             nullptr);
    }
    if (!h.is_zero()) {
      // the head moved, so the reduct starts a fresh lineage
      h = make_monic(h);
      out.push_back(BTriple{h, h, {}, seq, seq});
      ++seq;
    } else if (!skipped &&
               p.poly.leading_monomial() == p.anc.leading_monomial()) {
      // an original vanished: its queued prolongations are now pointless
      for (std::size_t j = S.size(); j-- > at;)
        if (S[j].root == p.root) S.erase(S.begin() + j);
    }
  }
  return out;
}

}  // namespace

std::vector<RatPoly> gbi(const std::vector<RatPoly>& F, const DivisionSpec& d,
                         bool use_criteria) {
  std::size_t seq = 0;
  std::vector<BTriple> Q;
  for (const auto& f : F) {
    if (f.is_zero()) continue;
    RatPoly m = make_monic(f);
    Q.push_back(BTriple{m, m, {}, seq, seq});
    ++seq;
  }
  if (Q.empty()) return {};
  const MonomialOrdering ord = Q.front().poly.ordering();
  if (d.nvars() != ord.nvars())
    throw std::invalid_argument("division and ring dimension mismatch");

  std::vector<BTriple> T;
  {
    std::size_t i = select_index(Q, ord);
    T.push_back(std::move(Q[i]));
    Q.erase(Q.begin() + i);
  }

  while (true) {
    // fresh prolongations of T not dispatched yet
    auto part = partition(heads(polys_of(T)), d);
    for (std::size_t i = 0; i < T.size(); ++i) {
      const VarSet& nm = part.nonmult[i];
      for (std::size_t x : nm)
        if (!T[i].processed.count(x))
          Q.push_back(BTriple{T[i].poly.times_var(x), T[i].anc, {}, seq++,
                              T[i].root});
      T[i].processed = nm;
    }
    if (Q.empty()) break;

    Q = head_reduce(T, std::move(Q), use_criteria, d, seq);
    if (Q.empty()) continue;

    std::size_t i = select_index(Q, ord);
    BTriple p = std::move(Q[i]);
    Q.erase(Q.begin() + i);

    if (p.poly == p.anc) {
      // a fresh generator displaces proper multiples back into the queue
      const Exponent& lm = p.poly.leading_monomial();
      for (std::size_t j = T.size(); j-- > 0;) {
        const Exponent& mj = T[j].poly.leading_monomial();
        if (mj != lm && lm.divides(mj)) {
          Q.push_back(std::move(T[j]));
          T.erase(T.begin() + j);
        }
      }
    }
    RatPoly h = inv_tail_nf(p.poly, polys_of(T), d);
    T.push_back(BTriple{std::move(h), std::move(p.anc),
                        std::move(p.processed), p.seq, p.root});
  }

  std::vector<RatPoly> out = polys_of(T);
  for (auto& g : out) {
    std::vector<RatPoly> others;
    for (const auto& h : out)
      if (&h != &g) others.push_back(h);
    g = make_monic(inv_tail_nf(g, others, d));
  }
  std::sort(out.begin(), out.end(), [&](const RatPoly& a, const RatPoly& b) {
    return ord.less(a.leading_monomial(), b.leading_monomial());
  });
  return out;
}

}  // namespace cis
