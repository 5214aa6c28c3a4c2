#include "cis/paramring.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <utility>

namespace cis {
namespace {

bool is_constant(const RatPoly& f) {
  return !f.is_zero() && f.leading_monomial().is_unit();
}

// Embed f into the ring with one extra variable appended at index m.
RatPoly lift(const RatPoly& f, const MonomialOrdering& ext) {
  std::size_t m = ext.nvars() - 1;
  if (f.nvars() != m)
    throw std::invalid_argument("ring extension dimension mismatch");
  RatPoly r(ext);
  for (const auto& [e, c] : f) {
    std::vector<std::uint32_t> v(m + 1, 0);
    for (std::size_t i = 0; i < m; ++i) v[i] = e[i];
    r.add_term(Exponent(std::move(v)), c);
  }
  return r;
}

// Inverse of lift for polynomials not involving the extra variable.
RatPoly contract(const RatPoly& f, const MonomialOrdering& base) {
  std::size_t m = base.nvars();
  RatPoly r(base);
  for (const auto& [e, c] : f) {
    if (e[m] != 0)
      throw std::invalid_argument("contract: extra variable present");
    std::vector<std::uint32_t> v(m);
    for (std::size_t i = 0; i < m; ++i) v[i] = e[i];
    r.add_term(Exponent(std::move(v)), c);
  }
  return r;
}

}  // namespace

std::optional<RatPoly> try_exact_divide(const RatPoly& f, const RatPoly& g) {
  if (g.is_zero()) return std::nullopt;
  std::vector<RatPoly> cofs;
  RatPoly r = reduce_by_set(f, {with_ordering(g, f.ordering())}, &cofs);
  if (!r.is_zero()) return std::nullopt;
  return cofs[0];
}

RatPoly exact_divide(const RatPoly& f, const RatPoly& g) {
  if (g.is_zero()) throw std::domain_error("exact_divide: division by zero");
  auto q = try_exact_divide(f, g);
  if (!q) throw std::domain_error("exact_divide: nonzero remainder");
  return *q;
}

std::vector<RatPoly> buchberger_reduced(const std::vector<RatPoly>& F,
                                        const MonomialOrdering& ord) {
  std::vector<RatPoly> G;
  for (const auto& f : F) {
    if (f.is_zero()) continue;
    G.push_back(make_monic(with_ordering(f, ord)));
  }

  struct Pending {
    std::size_t i, j;
    Exponent l;
  };
  std::vector<Pending> pending;
  std::set<std::pair<std::size_t, std::size_t>> treated;
  auto add_pairs_for = [&](std::size_t j) {
    for (std::size_t i = 0; i < j; ++i)
      pending.push_back(
          {i, j, Exponent::lcm(G[i].leading_monomial(), G[j].leading_monomial())});
  };
  for (std::size_t j = 0; j < G.size(); ++j) add_pairs_for(j);

  while (!pending.empty()) {
    // normal strategy: smallest lcm first, ties by creation order
    std::size_t best = 0;
    for (std::size_t k = 1; k < pending.size(); ++k) {
      int c = ord.compare(pending[k].l, pending[best].l);
      if (c < 0 || (c == 0 && std::pair(pending[k].i, pending[k].j) <
                                  std::pair(pending[best].i, pending[best].j)))
        best = k;
    }
    Pending pr = pending[best];
    pending.erase(pending.begin() + best);
    treated.insert({pr.i, pr.j});

    const Exponent& mi = G[pr.i].leading_monomial();
    const Exponent& mj = G[pr.j].leading_monomial();
    if (Exponent::gcd(mi, mj).is_unit()) continue;

    auto key = [](std::size_t a, std::size_t b) {
      return std::pair(std::min(a, b), std::max(a, b));
    };
    bool chained = false;
    for (std::size_t k = 0; k < G.size() && !chained; ++k) {
      if (k == pr.i || k == pr.j) continue;
      if (!G[k].leading_monomial().divides(pr.l)) continue;
      chained = treated.count(key(pr.i, k)) && treated.count(key(pr.j, k));
    }
    if (chained) continue;

    RatPoly s = G[pr.i].times_monomial(*mi.quotient_of(pr.l)) -
                G[pr.j].times_monomial(*mj.quotient_of(pr.l));
    RatPoly r = reduce_by_set(s, G);
    if (r.is_zero()) continue;
    if (is_constant(r)) {
      return {RatPoly::constant(ord, 1)};
    }
    G.push_back(make_monic(r));
    add_pairs_for(G.size() - 1);
  }

  // minimalize: ascending scan keeps only elements with no kept LM divisor
  std::sort(G.begin(), G.end(), [&](const RatPoly& a, const RatPoly& b) {
    return ord.less(a.leading_monomial(), b.leading_monomial());
  });
  std::vector<RatPoly> kept;
  for (const auto& g : G) {
    bool redundant = false;
    for (const auto& h : kept)
      if (h.leading_monomial().divides(g.leading_monomial())) {
        redundant = true;
        break;
      }
    if (!redundant) kept.push_back(g);
  }

  // interreduce tails; leading terms are already pairwise irreducible
  std::vector<RatPoly> out;
  for (std::size_t i = 0; i < kept.size(); ++i) {
    std::vector<RatPoly> others;
    for (std::size_t j = 0; j < kept.size(); ++j)
      if (j != i) others.push_back(kept[j]);
    out.push_back(make_monic(reduce_by_set(kept[i], others)));
  }
  std::sort(out.begin(), out.end(), [&](const RatPoly& a, const RatPoly& b) {
    return ord.less(a.leading_monomial(), b.leading_monomial());
  });
  return out;
}

bool ideal_member(const RatPoly& h, const std::vector<RatPoly>& G) {
  if (h.is_zero()) return true;
  if (G.empty()) return false;
  const MonomialOrdering& ord = G.front().ordering();
  return reduce_by_set(with_ordering(h, ord), G).is_zero();
}

bool radical_member(const RatPoly& h, const std::vector<RatPoly>& N) {
  if (h.is_zero()) return true;
  std::size_t m = h.nvars();
  std::vector<std::size_t> prec = h.ordering().precedence();
  prec.push_back(m);
  MonomialOrdering ext = MonomialOrdering::make(h.ordering().kind(), prec);

  std::vector<RatPoly> gens;
  for (const auto& n : N)
    if (!n.is_zero()) gens.push_back(lift(with_ordering(n, h.ordering()), ext));
  RatPoly th = lift(h, ext).times_var(m);
  gens.push_back(RatPoly::constant(ext, 1) - th);

  auto gb = buchberger_reduced(gens, ext);
  return gb.size() == 1 && is_constant(gb.front());
}

RatPoly gcd(const RatPoly& f, const RatPoly& g) {
  if (f.is_zero()) return primitive_normal(g);
  if (g.is_zero()) return primitive_normal(f);
  const MonomialOrdering& ord = f.ordering();
  RatPoly g2 = with_ordering(g, ord);
  if (is_constant(f) || is_constant(g2)) return RatPoly::constant(ord, 1);

  // lcm via elimination: the t-free part of a Groebner basis of
  // <t f, (1 - t) g> under lex with t most significant is {lcm(f, g)},
  // and f g / lcm is the gcd.
  std::size_t m = f.nvars();
  std::vector<std::size_t> prec;
  prec.push_back(m);
  for (std::size_t i = 0; i < m; ++i) prec.push_back(i);
  MonomialOrdering ext = MonomialOrdering::lex(std::move(prec));

  RatPoly fl = lift(f, ext), gl = lift(g2, ext);
  auto gb = buchberger_reduced({fl.times_var(m), gl - gl.times_var(m)}, ext);

  const RatPoly* lcm = nullptr;
  for (const auto& p : gb) {
    bool t_free = true;
    for (const auto& [e, c] : p)
      if (e[m] != 0) {
        t_free = false;
        break;
      }
    if (!t_free) continue;
    if (lcm) throw std::logic_error("gcd: eliminant is not unique");
    lcm = &p;
  }
  if (!lcm) throw std::logic_error("gcd: eliminant not found");
  return primitive_normal(exact_divide(f * g2, contract(*lcm, ord)));
}

std::vector<RatPoly> facvar(const RatPoly& p) {
  if (p.is_zero()) throw std::domain_error("facvar: zero polynomial");
  RatPoly q = primitive_normal(p);
  if (is_constant(q)) return {};
  const MonomialOrdering& ord = q.ordering();

  // Musser square-free decomposition; over several variables the first gcd
  // runs across all partial derivatives.
  RatPoly acc = RatPoly::zero(ord);
  for (std::size_t i = 0; i < q.nvars(); ++i) acc = gcd(acc, derivative(q, i));
  RatPoly c = gcd(q, acc);
  RatPoly w = exact_divide(q, c);

  std::vector<RatPoly> out;
  while (!is_constant(w)) {
    RatPoly y = gcd(w, c);
    RatPoly z = exact_divide(w, y);
    if (!is_constant(z)) out.push_back(make_monic(z));
    w = y;
    c = exact_divide(c, y);
  }
  std::sort(out.begin(), out.end(),
            [](const RatPoly& a, const RatPoly& b) { return poly_compare(a, b) < 0; });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<RatPoly> coprime_refine(std::vector<RatPoly> ps) {
  std::vector<RatPoly> xs;
  for (auto& p : ps)
    if (!p.is_zero() && !is_constant(p)) xs.push_back(make_monic(p));

  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < xs.size() && !changed; ++i)
      for (std::size_t j = i + 1; j < xs.size() && !changed; ++j) {
        RatPoly d = gcd(xs[i], xs[j]);
        if (is_constant(d)) continue;
        RatPoly qi = exact_divide(xs[i], d), qj = exact_divide(xs[j], d);
        xs.erase(xs.begin() + j);
        xs.erase(xs.begin() + i);
        xs.push_back(make_monic(d));
        if (!is_constant(qi)) xs.push_back(make_monic(qi));
        if (!is_constant(qj)) xs.push_back(make_monic(qj));
        changed = true;
      }
    if (changed) {
      std::sort(xs.begin(), xs.end(), [](const RatPoly& a, const RatPoly& b) {
        return poly_compare(a, b) < 0;
      });
      xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    }
  }
  std::sort(xs.begin(), xs.end(), [](const RatPoly& a, const RatPoly& b) {
    return poly_compare(a, b) < 0;
  });
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  return xs;
}

std::vector<RatPoly> facvar_set(const std::vector<RatPoly>& ps) {
  std::vector<RatPoly> out;
  for (const auto& p : ps) {
    if (p.is_zero()) continue;
    for (auto& f : facvar(p)) out.push_back(std::move(f));
  }
  return coprime_refine(std::move(out));
}

RatPoly squarefree_part(const RatPoly& p) {
  if (p.is_zero()) throw std::domain_error("squarefree_part: zero polynomial");
  RatPoly r = RatPoly::constant(p.ordering(), 1);
  for (const auto& f : facvar(p)) r = r * f;
  return r;
}

}  // namespace cis
