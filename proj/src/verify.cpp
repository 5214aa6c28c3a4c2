#include "cis/verify.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "cis/paramring.hpp"

namespace cis {

namespace {

// Fresh copy of the restricted-division machinery, kept local so the
// checks here do not lean on the code they are meant to judge.

VarSet pair_nonmult(const Exponent& u, const Exponent& v,
                    const DivisionSpec& d) {
  if (d.follows(u, v)) return {};
  if (v.divides(u)) return {};
  for (std::size_t i : d.rho)
    if (u[i] < v[i]) return {i};
  throw std::logic_error("incomparable distinct monomials");
}

VarSet set_nonmult(const Exponent& u, const std::vector<Exponent>& U,
                   const DivisionSpec& d) {
  VarSet nm;
  for (const auto& v : U) {
    if (v == u) continue;
    auto part = pair_nonmult(u, v, d);
    nm.insert(part.begin(), part.end());
  }
  return nm;
}

bool restricted_divides(const Exponent& lm, const VarSet& nm,
                        const Exponent& t) {
  auto q = lm.quotient_of(t);
  if (!q) return false;
  for (std::size_t i = 0; i < q->size(); ++i)
    if ((*q)[i] != 0 && nm.count(i)) return false;
  return true;
}

struct RestrictedReducer {
  std::vector<const RatPoly*> gens;
  std::vector<Exponent> lms;
  std::vector<VarSet> nm;

  RestrictedReducer(const std::vector<RatPoly>& G, const DivisionSpec& d,
                    std::size_t skip = static_cast<std::size_t>(-1)) {
    std::vector<Exponent> distinct;
    for (std::size_t i = 0; i < G.size(); ++i) {
      if (i == skip || G[i].is_zero()) continue;
      gens.push_back(&G[i]);
      const Exponent& e = G[i].leading_monomial();
      if (std::find(distinct.begin(), distinct.end(), e) == distinct.end())
        distinct.push_back(e);
    }
    for (const auto* g : gens) {
      lms.push_back(g->leading_monomial());
      nm.push_back(set_nonmult(g->leading_monomial(), distinct, d));
    }
  }

  const RatPoly* divisor(const Exponent& t) const {
    for (std::size_t i = 0; i < gens.size(); ++i)
      if (restricted_divides(lms[i], nm[i], t)) return gens[i];
    return nullptr;
  }

  RatPoly normal_form(const RatPoly& f) const {
    RatPoly out = RatPoly::zero(f.ordering());
    RatPoly work = f;
    while (!work.is_zero()) {
      const Exponent& t = work.leading_monomial();
      if (const RatPoly* g = divisor(t)) {
        Rational ratio = work.leading_coeff() / g->leading_coeff();
        work -= g->times_term(*g->leading_monomial().quotient_of(t), ratio);
      } else {
        out.add_term(t, work.leading_coeff());
        work.add_term(t, -work.leading_coeff());
      }
    }
    return out;
  }
};

}  // namespace

RatPoly specialize(const ParamPoly& f, const Point& point) {
  RatPoly out = RatPoly::zero(f.ordering());
  for (const auto& [m, c] : f) {
    Rational v = evaluate(c, point);
    if (!is_zero(v)) out.add_term(m, v);
  }
  return out;
}

bool satisfies_spec(const Point& point, const Specification& spec) {
  for (const auto& p : spec.null_conds)
    if (!is_zero(evaluate(p, point))) return false;
  for (const auto& q : spec.nonnull_conds)
    if (is_zero(evaluate(q, point))) return false;
  return true;
}

bool is_involutive_basis(const std::vector<RatPoly>& G,
                         const DivisionSpec& d) {
  std::vector<RatPoly> gens;
  for (const auto& g : G)
    if (!g.is_zero()) gens.push_back(g);
  if (gens.empty()) return true;
  RestrictedReducer red(gens, d);
  std::vector<Exponent> distinct;
  for (const auto& g : gens) {
    const Exponent& e = g.leading_monomial();
    if (std::find(distinct.begin(), distinct.end(), e) == distinct.end())
      distinct.push_back(e);
  }
  for (const auto& g : gens)
    for (std::size_t x : set_nonmult(g.leading_monomial(), distinct, d))
      if (!red.normal_form(g.times_var(x)).is_zero()) return false;
  return true;
}

bool is_groebner_basis(const std::vector<RatPoly>& G) {
  std::vector<RatPoly> gens;
  for (const auto& g : G)
    if (!g.is_zero()) gens.push_back(g);
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      Exponent l = Exponent::lcm(gens[i].leading_monomial(),
                                 gens[j].leading_monomial());
      RatPoly s =
          gens[i]
              .times_monomial(*gens[i].leading_monomial().quotient_of(l))
              .scaled(1 / gens[i].leading_coeff()) -
          gens[j]
              .times_monomial(*gens[j].leading_monomial().quotient_of(l))
              .scaled(1 / gens[j].leading_coeff());
      if (!reduce_by_set(s, gens).is_zero()) return false;
    }
  return true;
}

bool same_ideal(const std::vector<RatPoly>& F, const std::vector<RatPoly>& G) {
  auto nonzero = [](const std::vector<RatPoly>& S) {
    std::vector<RatPoly> out;
    for (const auto& f : S)
      if (!f.is_zero()) out.push_back(f);
    return out;
  };
  std::vector<RatPoly> f = nonzero(F), g = nonzero(G);
  if (f.empty() && g.empty()) return true;
  const MonomialOrdering& ord =
      f.empty() ? g.front().ordering() : f.front().ordering();
  auto gf = buchberger_reduced(f, ord);
  auto gg = buchberger_reduced(g, ord);
  for (const auto& p : f)
    if (!reduce_by_set(p, gg).is_zero()) return false;
  for (const auto& p : g)
    if (!reduce_by_set(p, gf).is_zero()) return false;
  return true;
}

Rational random_sample_value(std::mt19937& rng) {
  if (rng() % 3 == 0) return Rational(0);
  long den = 1 + static_cast<long>(rng() % 4);
  long num = static_cast<long>(rng() % (10 * den + 1)) - 5 * den;
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Point random_point(std::mt19937& rng, std::size_t nparams) {
  Point p;
  for (std::size_t i = 0; i < nparams; ++i)
    p.push_back(random_sample_value(rng));
  return p;
}

std::optional<Point> cell_sample(const Cell& cell, std::size_t nparams,
                                 std::mt19937& rng, int attempts) {
  const auto& N = cell.spec.null_conds;
  // Reduced basis with single-variable linear heads: the region is a graph
  // over the remaining parameters, so points can be built directly.
  bool linear = true;
  std::set<std::size_t> leads;
  for (const auto& g : N) {
    const Exponent& lm = g.leading_monomial();
    if (lm.total_degree() != 1) {
      linear = false;
      break;
    }
    for (std::size_t i = 0; i < nparams; ++i)
      if (lm[i] == 1) leads.insert(i);
  }
  for (int a = 0; a < attempts; ++a) {
    Point p;
    if (linear) {
      p = random_point(rng, nparams);
      for (const auto& g : N) {
        const Exponent& lm = g.leading_monomial();
        std::size_t lead = 0;
        for (std::size_t i = 0; i < nparams; ++i)
          if (lm[i] == 1) lead = i;
        RatPoly tail = g.scaled(1 / g.leading_coeff());
        tail.add_term(lm, Rational(-1));
        p[lead] = -evaluate(tail, p);
      }
    } else {
      p = random_point(rng, nparams);
    }
    if (satisfies_spec(p, cell.spec)) return p;
  }
  return std::nullopt;
}

std::vector<std::size_t> matching_cells(const std::vector<Cell>& cells,
                                        const Point& point) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < cells.size(); ++i)
    if (satisfies_spec(point, cells[i].spec)) out.push_back(i);
  return out;
}

PointAudit audit_point(const std::vector<ParamPoly>& F,
                       const std::vector<Cell>& cells, const DivisionSpec& d,
                       const Point& point) {
  PointAudit audit;
  audit.matches = matching_cells(cells, point);
  audit.partition_ok = audit.matches.size() == 1;
  if (!audit.partition_ok) return audit;
  const Cell& cell = cells[audit.matches.front()];

  std::vector<RatPoly> G;
  for (const auto& g : cell.basis) {
    RatPoly s = specialize(g, point);
    if (!s.is_zero()) G.push_back(make_monic(s));
  }
  std::vector<RatPoly> Fs;
  for (const auto& f : F) {
    RatPoly s = specialize(f, point);
    if (!s.is_zero()) Fs.push_back(s);
  }
  audit.sound_ok = is_involutive_basis(G, d) && same_ideal(Fs, G);
  if (!audit.sound_ok) return audit;

  audit.minimal_ok = true;
  for (std::size_t i = 0; i < G.size() && audit.minimal_ok; ++i) {
    RestrictedReducer others(G, d, i);
    if (others.normal_form(G[i]) != G[i]) audit.minimal_ok = false;
    std::vector<RatPoly> rest;
    for (std::size_t j = 0; j < G.size(); ++j)
      if (j != i) rest.push_back(G[j]);
    if (is_involutive_basis(rest, d) && same_ideal(rest, G))
      audit.minimal_ok = false;
  }
  return audit;
}

}  // namespace cis
