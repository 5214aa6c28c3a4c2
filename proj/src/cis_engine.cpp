#include "cis/cis_engine.hpp"

#include <algorithm>
#include <deque>
#include <optional>
#include <stdexcept>
#include <utility>

#include "cis/textio.hpp"

namespace cis {

namespace {

std::vector<std::string> stem_names(std::size_t n, const char* stem) {
  std::vector<std::string> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    out.push_back(stem + std::to_string(i + 1));
  return out;
}

// Text for trace payloads. Falls back to generated names whenever the
// context's name vectors do not match the ring at hand, so subroutines
// stay traceable even when driven directly from tests.
struct Renderer {
  const EngineContext& ctx;

  std::string poly(const ParamPoly& f) const {
    if (f.is_zero()) return "0";
    std::size_t nx = f.nvars();
    std::size_t na = f.begin()->second.nvars();
    const auto vn =
        ctx.var_names.size() == nx ? ctx.var_names : stem_names(nx, "x");
    const auto pn =
        ctx.param_names.size() == na ? ctx.param_names : stem_names(na, "a");
    return render(f, vn, pn);
  }

  std::string cond(const RatPoly& c) const {
    if (c.is_zero()) return "0";
    std::size_t na = c.nvars();
    const auto pn =
        ctx.param_names.size() == na ? ctx.param_names : stem_names(na, "a");
    return render(c, pn);
  }

  std::string conds(const std::vector<RatPoly>& v) const {
    std::string s = "{";
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) s += ", ";
      s += cond(v[i]);
    }
    return s + "}";
  }

  std::string spec(const Specification& s) const {
    return "N=" + conds(s.null_conds) + ", W=" + conds(s.nonnull_conds);
  }

  std::string vars(const VarSet& v, std::size_t nx) const {
    const auto vn =
        ctx.var_names.size() == nx ? ctx.var_names : stem_names(nx, "x");
    std::string s = "{";
    bool first = true;
    for (std::size_t i : v) {
      if (!first) s += ", ";
      first = false;
      s += i < vn.size() ? vn[i] : "x" + std::to_string(i + 1);
    }
    return s + "}";
  }

  std::string triple(const Triple& t) const {
    std::size_t nx = t.poly.nvars();
    return "[" + poly(t.poly) + ", " + poly(t.anc) + ", " +
           vars(t.nm_used, nx) + "]";
  }

  // paper-style listing: the empty basis prints as its sentinel
  std::string polyset(const std::vector<Triple>& T) const {
    if (T.empty()) return "{0}";
    std::string s = "{";
    for (std::size_t i = 0; i < T.size(); ++i) {
      if (i) s += ", ";
      s += poly(T[i].poly);
    }
    return s + "}";
  }
};

// Emits the call line on construction and the result line via done();
// nesting depth is restored either way.
struct Tracer {
  EngineContext& ctx;
  const char* name;
  int depth0;

  template <class F>
  Tracer(EngineContext& c, const char* n, F&& entry)
      : ctx(c), name(n), depth0(c.depth) {
    if (ctx.sink) ctx.sink(TraceEvent{depth0, name, true, entry()});
    ctx.depth = depth0 + 1;
  }
  template <class F>
  void done(F&& text) {
    ctx.depth = depth0;
    if (ctx.sink) ctx.sink(TraceEvent{depth0, name, false, text()});
  }
  ~Tracer() { ctx.depth = depth0; }
};

std::vector<Exponent> head_exps(const std::vector<Triple>& T) {
  std::vector<Exponent> u;
  u.reserve(T.size());
  for (const auto& t : T) u.push_back(t.poly.leading_monomial());
  return u;
}

void sort_conds(std::vector<RatPoly>& v) {
  std::sort(v.begin(), v.end(), [](const RatPoly& a, const RatPoly& b) {
    return poly_compare(a, b) < 0;
  });
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

bool is_constant(const RatPoly& p) {
  return !p.is_zero() && p.leading_monomial().is_unit();
}

// Cancels the term (m, c) of h against g, cross-multiplying by g's leading
// coefficient so the arithmetic never leaves the polynomial ring.
ParamPoly pseudo_cancel(const ParamPoly& h, const ParamPoly& g,
                        const Exponent& m, const RatPoly& c) {
  Exponent quot = *g.leading_monomial().quotient_of(m);
  return primitive_normal(h.scaled(g.leading_coeff()) - g.times_term(quot, c));
}

// Reduce the nonnull family modulo the null ideal. Nonzero constants are
// vacuous and dropped; a zero survivor is kept as the inconsistency marker
// for the next canspec.
std::vector<RatPoly> reduce_nonnull(const std::vector<RatPoly>& W,
                                    const std::vector<RatPoly>& N) {
  std::vector<RatPoly> out;
  for (const auto& w : W) {
    RatPoly r = reduce_by_set(w, N);
    if (r.is_zero())
      out.push_back(r);
    else if (!is_constant(r))
      out.push_back(make_monic(r));
  }
  sort_conds(out);
  return out;
}

const MonomialOrdering& param_ordering(const Specification& s,
                                       const EngineContext& ctx) {
  if (!s.null_conds.empty()) return s.null_conds.front().ordering();
  if (!s.nonnull_conds.empty()) return s.nonnull_conds.front().ordering();
  return ctx.ord_params;
}

std::size_t select_index(const std::vector<Triple>& pool,
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

// Any-term restricted normal form with exact cross-multiplied steps. The
// caller guarantees the head is irreducible whenever that matters.
ParamPoly tail_reduce(const ParamPoly& f, const std::vector<Triple>& T,
                      const DivisionSpec& d, EngineContext& ctx) {
  if (T.empty() || f.is_zero()) return f;
  auto U = head_exps(T);
  ParamPoly h = f;
  bool reduced = true;
  while (reduced && !h.is_zero()) {
    reduced = false;
    for (const auto& [m, c] : h) {  // descending, so the largest term first
      auto k = inv_divisor(m, U, d);
      if (!k) continue;
      h = pseudo_cancel(h, T[*k].poly, m, c);
      ctx.stats.reductions++;
      reduced = true;
      break;
    }
  }
  return h;
}

// Outcome of deciding the head coefficients of a triple list: surviving
// triples with refreshed ancestors, head-moved rewrites (optionally set
// aside), and on failure the condition-bearing triple plus the unprocessed
// remainder.
struct VetResult {
  bool ok = true;
  Triple offender;
  Specification spec;
  std::vector<Triple> kept;
  std::vector<Triple> moved;
  std::vector<Triple> rest;
};

VetResult vet_triples(std::vector<Triple> v, Specification spec,
                      bool set_aside_moved, const DivisionSpec& d,
                      EngineContext& ctx, long& seq) {
  (void)d;
  VetResult r;
  r.spec = std::move(spec);
  for (std::size_t i = 0; i < v.size(); ++i) {
    Triple& t = v[i];
    if (t.poly.is_zero()) continue;
    auto nc = newcond(t.poly, r.spec, ctx);
    if (!nc.cd.empty()) {
      r.ok = false;
      r.spec = std::move(nc.spec);
      r.offender = Triple{nc.poly, nc.poly, {}, t.seq};
      r.rest.assign(std::make_move_iterator(v.begin() + i + 1),
                    std::make_move_iterator(v.end()));
      return r;
    }
    r.spec = std::move(nc.spec);
    if (nc.poly.is_zero()) continue;
    ParamPoly q = primitive_normal(nc.poly);
    if (q.leading_monomial() == t.poly.leading_monomial()) {
      ParamPoly a = reduce_coeffs(t.anc, r.spec.null_conds);
      if (a.is_zero() || a.leading_monomial() != t.anc.leading_monomial())
        a = q;
      else
        a = primitive_normal(a);
      r.kept.push_back(
          Triple{std::move(q), std::move(a), t.nm_used, t.seq, root_of(t)});
    } else {
      Triple fresh{q, q, {}, ++seq};
      (set_aside_moved ? r.moved : r.kept).push_back(std::move(fresh));
    }
  }
  return r;
}

// Keeps a resumed basis head-autoreduced: any element whose head lies in
// another element's cone goes back to the queue, largest head first.
void demote_reducible(std::vector<Triple>& T, std::vector<Triple>& Q,
                      const DivisionSpec& d) {
  bool again = true;
  while (again && T.size() > 1) {
    again = false;
    auto U = head_exps(T);
    auto part = partition(U, d);
    const MonomialOrdering& ord = T.front().poly.ordering();
    std::optional<std::size_t> pick;
    for (std::size_t i = 0; i < T.size(); ++i) {
      bool reducible = false;
      for (std::size_t j = 0; j < T.size() && !reducible; ++j) {
        if (j == i || !U[j].divides(U[i]) || U[j] == U[i]) continue;
        Exponent quot = *U[j].quotient_of(U[i]);
        bool mult = true;
        for (std::size_t x = 0; x < quot.size() && mult; ++x)
          if (quot[x] > 0 && part.nonmult[j].count(x)) mult = false;
        reducible = mult;
      }
      if (reducible && (!pick || ord.compare(U[i], U[*pick]) > 0)) pick = i;
    }
    if (pick) {
      Q.push_back(std::move(T[*pick]));
      T.erase(T.begin() + static_cast<long>(*pick));
      again = true;
    }
  }
}

// Coefficient reduction of a whole triple list modulo the null ideal;
// beheaded polynomials restart their lineage, vanished ones stay as zero
// placeholders so later passes see the same shape the exploration reported.
std::vector<Triple> reduce_basis(std::vector<Triple> B,
                                 const std::vector<RatPoly>& N) {
  if (N.empty()) return B;
  for (auto& t : B) {
    if (t.poly.is_zero()) continue;
    ParamPoly q = reduce_coeffs(t.poly, N);
    if (q.is_zero()) {
      ParamPoly z = ParamPoly::zero(t.poly.ordering());
      t = Triple{z, z, {}, t.seq};
      continue;
    }
    q = primitive_normal(q);
    if (q.leading_monomial() != t.poly.leading_monomial()) {
      t = Triple{q, q, {}, t.seq};
      continue;
    }
    ParamPoly a = reduce_coeffs(t.anc, N);
    if (a.is_zero() || a.leading_monomial() != t.anc.leading_monomial())
      a = q;
    else
      a = primitive_normal(a);
    t = Triple{std::move(q), std::move(a), t.nm_used, t.seq, root_of(t)};
  }
  return B;
}

std::optional<Cell> finalize_cell(std::vector<Triple> T, Specification spec,
                                  const DivisionSpec& d, EngineContext& ctx) {
  auto cs = canspec(spec, ctx);
  if (!cs.compatible) return std::nullopt;  // region vanished entirely
  std::vector<ParamPoly> out;
  for (const auto& t : T) {
    ParamPoly q = reduce_coeffs(t.poly, cs.spec.null_conds);
    if (!q.is_zero()) out.push_back(primitive_normal(q));
  }
  // closing pass mirroring the scalar completion: reduce each element fully
  // against the others, then display-normalize
  for (std::size_t i = 0; i < out.size(); ++i) {
    std::vector<Triple> others;
    for (std::size_t j = 0; j < out.size(); ++j)
      if (j != i) others.push_back(Triple{out[j], out[j], {}, 0});
    ParamPoly g = tail_reduce(out[i], others, d, ctx);
    if (g.is_zero()) continue;
    g = reduce_coeffs(g, cs.spec.null_conds);
    if (!g.is_zero()) out[i] = primitive_normal(g);
  }
  out.erase(std::remove_if(out.begin(), out.end(),
                           [](const ParamPoly& p) { return p.is_zero(); }),
            out.end());
  if (!out.empty()) {
    const MonomialOrdering& ord = out.front().ordering();
    std::sort(out.begin(), out.end(), [&](const ParamPoly& a,
                                          const ParamPoly& b) {
      int c = ord.compare(a.leading_monomial(), b.leading_monomial());
      return c ? c < 0 : poly_compare(a, b) < 0;
    });
  }
  return Cell{std::move(out), std::move(cs.spec)};
}

}  // namespace

CanSpecResult canspec(const Specification& in, EngineContext& ctx) {
  Renderer rr{ctx};
  Tracer tr(ctx, "CanSpec", [&] { return "CanSpec(" + rr.spec(in) + ")"; });
  const MonomialOrdering& oa = param_ordering(in, ctx);
  auto unit = [&] { return RatPoly::constant(oa, Rational(1)); };

  std::vector<RatPoly> N = buchberger_reduced(in.null_conds, oa);
  std::vector<RatPoly> W = facvar_set(in.nonnull_conds);

  // the product of the nonnull conditions only matters modulo the null
  // ideal, so keep it normal-formed while it is built; otherwise its degree
  // grows with every accumulated condition
  RatPoly h = unit();
  for (const auto& w : W) {
    h = reduce_by_set(h * w, N);
    if (h.is_zero()) break;
  }
  if (h.is_zero() || radical_member(h, N)) {
    Specification out{{unit()}, W};
    tr.done([&] { return "(false, " + rr.spec(out) + ")"; });
    return {false, std::move(out)};
  }

  // fixpoint: square-free null generators with known-nonnull factors removed
  while (true) {
    bool changed = false;
    bool doomed = false;
    std::vector<RatPoly> N2;
    for (const auto& g : N) {
      RatPoly g1 = squarefree_part(g);
      if (g1 != g) changed = true;
      bool again = true;
      while (again && !is_constant(g1)) {
        again = false;
        for (const auto& w : W) {
          RatPoly c = gcd(g1, w);
          if (!is_constant(c)) {
            g1 = make_monic(exact_divide(g1, c));
            changed = true;
            again = true;
            break;
          }
        }
      }
      if (is_constant(g1)) doomed = true;  // unreachable after the radical
                                           // check; kept as a guard
      N2.push_back(std::move(g1));
    }
    if (doomed) {
      Specification out{{unit()}, W};
      tr.done([&] { return "(false, " + rr.spec(out) + ")"; });
      return {false, std::move(out)};
    }
    if (!changed) break;
    N = buchberger_reduced(N2, oa);
    std::vector<RatPoly> Wr;
    bool wzero = false;
    for (const auto& w : W) {
      RatPoly r = reduce_by_set(w, N);
      if (r.is_zero())
        wzero = true;
      else if (!is_constant(r))
        Wr.push_back(std::move(r));
    }
    if (wzero) {
      Specification out{{unit()}, W};
      tr.done([&] { return "(false, " + rr.spec(out) + ")"; });
      return {false, std::move(out)};
    }
    W = facvar_set(Wr);
  }
  Specification out{std::move(N), std::move(W)};
  tr.done([&] { return "(true, " + rr.spec(out) + ")"; });
  return {true, std::move(out)};
}

NewCondResult newcond(const ParamPoly& f, const Specification& in,
                      EngineContext& ctx) {
  Renderer rr{ctx};
  Tracer tr(ctx, "NewCond", [&] {
    return "NewCond(" + rr.poly(f) + ", " + rr.spec(in) + ")";
  });
  const MonomialOrdering& oa = param_ordering(in, ctx);

  ParamPoly g = f;
  std::vector<RatPoly> N = in.null_conds;
  while (!g.is_zero()) {
    const RatPoly& lc = g.leading_coeff();
    if (!radical_member(lc, N)) break;
    std::vector<RatPoly> N2 = N;
    N2.push_back(lc);
    N = buchberger_reduced(N2, oa);
    g -= ParamPoly::term(g.ordering(), g.leading_monomial(), lc);
  }
  // a coefficient is known nonnull when all of its factors are covered by
  // the nonnull family, so strip shared factors out by gcd instead of
  // testing for literal membership
  auto strip_known = [](RatPoly s, const std::vector<RatPoly>& known) {
    s = squarefree_part(s);
    bool stripped = true;
    while (stripped && !is_constant(s)) {
      stripped = false;
      for (const auto& w : known) {
        RatPoly c = gcd(s, w);
        if (!is_constant(c)) {
          s = make_monic(exact_divide(s, c));
          stripped = true;
          break;
        }
      }
    }
    return s;
  };

  // normal-forming modulo the null ideal can tear apart a head coefficient
  // that is visibly a product of known-nonnull factors, so judge it as
  // written before the coefficients are reduced
  bool head_known =
      !g.is_zero() && is_constant(strip_known(g.leading_coeff(),
                                              facvar_set(in.nonnull_conds)));
  if (!g.is_zero()) {
    g = reduce_coeffs(g, N);  // the head survives: its LC is not even in
                              // the radical
    g = primitive_normal(g);
  }
  std::vector<RatPoly> W = reduce_nonnull(in.nonnull_conds, N);

  std::vector<RatPoly> cd;
  if (!g.is_zero() && !head_known) {
    RatPoly s = strip_known(g.leading_coeff(), facvar_set(W));
    if (!is_constant(s)) {
      auto fs = facvar(s);
      cd.push_back(fs.front());  // ascending, so the smallest new factor
    }
  }
  NewCondResult out{std::move(cd), std::move(g),
                    Specification{std::move(N), std::move(W)}};
  tr.done([&] {
    return "(" + rr.conds(out.cd) + ", " + rr.poly(out.poly) + ", " +
           rr.spec(out.spec) + ")";
  });
  return out;
}

HeadNormalFormResult head_normal_form(const Triple& p,
                                      const std::vector<Triple>& B,
                                      const Specification& spec0,
                                      const DivisionSpec& d,
                                      EngineContext& ctx) {
  Renderer rr{ctx};
  Tracer tr(ctx, "HeadNormalForm", [&] {
    return "HeadNormalForm(" + rr.triple(p) + ", " + rr.spec(spec0) + ")";
  });
  Specification spec = spec0;
  ParamPoly h = p.poly;
  if (h.is_zero()) {
    tr.done([&] { return "(true, 0)"; });
    return {true, std::move(h), std::move(spec)};
  }
  auto U = head_exps(B);
  auto k0 = inv_divisor(h.leading_monomial(), U, d);
  if (!k0) {
    tr.done([&] { return "(true, " + rr.poly(h) + ")"; });
    return {true, std::move(h), std::move(spec)};
  }
  if (ctx.use_criteria && !p.anc.is_zero() &&
      h.leading_monomial() != p.anc.leading_monomial() &&
      !B[*k0].anc.is_zero() &&
      criteria(h.leading_monomial(), p.anc.leading_monomial(),
               B[*k0].anc.leading_monomial())) {
    ctx.stats.criteria_hits++;
    tr.done([&] { return "(true, 0)"; });
    return {true, ParamPoly::zero(h.ordering()), std::move(spec)};
  }
  while (!h.is_zero()) {
    auto k = inv_divisor(h.leading_monomial(), U, d);
    if (!k) break;
    h = pseudo_cancel(h, B[*k].poly, h.leading_monomial(), h.leading_coeff());
    ctx.stats.reductions++;
    if (h.is_zero()) break;
    auto nc = newcond(h, spec, ctx);
    if (!nc.cd.empty()) {
      tr.done([&] { return "(false, " + rr.poly(nc.poly) + ")"; });
      return {false, std::move(nc.poly), std::move(nc.spec)};
    }
    h = std::move(nc.poly);
    spec = std::move(nc.spec);
  }
  tr.done([&] {
    return h.is_zero() ? std::string("(true, 0)")
                       : "(true, " + rr.poly(h) + ")";
  });
  return {true, std::move(h), std::move(spec)};
}

HeadReduceResult head_reduce(const std::vector<Triple>& T,
                             const Specification& spec0,
                             std::vector<Triple> Q, const DivisionSpec& d,
                             EngineContext& ctx, long& seq) {
  Renderer rr{ctx};
  Tracer tr(ctx, "HeadReduce", [&] {
    return "HeadReduce(" + rr.spec(spec0) +
           ", |Q|=" + std::to_string(Q.size()) + ")";
  });
  Specification spec = spec0;
  std::deque<Triple> S(std::make_move_iterator(Q.begin()),
                       std::make_move_iterator(Q.end()));
  std::vector<Triple> out;
  while (!S.empty()) {
    Triple p = std::move(S.front());
    S.pop_front();
    auto hn = head_normal_form(p, T, spec, d, ctx);
    if (!hn.decided) {
      // the partially reduced polynomial carries the undecided coefficient;
      // its head has moved, so it restarts as its own ancestor
      Triple off{hn.h, hn.h, {}, p.seq};
      if (!p.poly.is_zero() && !hn.h.is_zero() &&
          hn.h.leading_monomial() == p.poly.leading_monomial())
        off = Triple{hn.h, p.anc, p.nm_used, p.seq, root_of(p)};
      std::vector<Triple> rest(std::make_move_iterator(S.begin()),
                               std::make_move_iterator(S.end()));
      for (auto& q : out) rest.push_back(std::move(q));
      tr.done([&] { return "(false, " + rr.poly(off.poly) + ")"; });
      return {false, std::move(off), std::move(hn.spec), std::move(rest)};
    }
    spec = std::move(hn.spec);
    if (!hn.h.is_zero()) {
      if (!p.poly.is_zero() &&
          hn.h.leading_monomial() == p.poly.leading_monomial()) {
        out.push_back(std::move(p));
      } else {
        ParamPoly w = primitive_normal(hn.h);
        out.push_back(Triple{w, w, {}, ++seq});
      }
    } else if (!p.poly.is_zero() && !p.anc.is_zero() &&
               p.poly.leading_monomial() == p.anc.leading_monomial()) {
      // an original vanished: its queued prolongations are now pointless
      for (std::size_t j = S.size(); j-- > 0;)
        if (root_of(S[j]) == root_of(p))
          S.erase(S.begin() + static_cast<long>(j));
    }
  }
  tr.done(
      [&] { return "(true, |Q|=" + std::to_string(out.size()) + ")"; });
  return {true, Triple{}, std::move(spec), std::move(out)};
}

GbiResult gbi_param(std::vector<Triple> B, Specification spec,
                    std::vector<Triple> P, const DivisionSpec& d,
                    EngineContext& ctx, long& seq) {
  Renderer rr{ctx};
  Tracer tr(ctx, "GBI", [&] {
    return "GBI(" + rr.spec(spec) + ", |B|=" + std::to_string(B.size()) +
           ", |P|=" + std::to_string(P.size()) + ")";
  });
  const bool resume = !P.empty();

  auto fail = [&](Triple off, Specification sp, std::vector<Triple> pend) {
    tr.done([&] { return "(false, " + rr.poly(off.poly) + ")"; });
    return GbiResult{false, std::move(off), {}, std::move(sp),
                     std::move(pend)};
  };

  auto bv = vet_triples(std::move(B), std::move(spec), resume, d, ctx, seq);
  if (!bv.ok) {
    std::vector<Triple> pend = std::move(bv.kept);
    for (auto& t : bv.moved) pend.push_back(std::move(t));
    for (auto& t : bv.rest) pend.push_back(std::move(t));
    for (auto& t : P) pend.push_back(std::move(t));
    return fail(std::move(bv.offender), std::move(bv.spec), std::move(pend));
  }
  spec = std::move(bv.spec);

  std::vector<Triple> T, Q;
  if (!resume) {
    Q = std::move(bv.kept);
    if (Q.empty()) {
      tr.done([&] { return "(true, {0}, " + rr.spec(spec) + ")"; });
      return {true, Triple{}, {}, std::move(spec), {}};
    }
    const MonomialOrdering& ord = Q.front().poly.ordering();
    std::size_t i = select_index(Q, ord);
    T.push_back(std::move(Q[i]));
    Q.erase(Q.begin() + static_cast<long>(i));
  } else {
    T = std::move(bv.kept);
    auto pv = vet_triples(std::move(P), std::move(spec), false, d, ctx, seq);
    if (!pv.ok) {
      std::vector<Triple> pend = std::move(T);
      for (auto& t : bv.moved) pend.push_back(std::move(t));
      for (auto& t : pv.kept) pend.push_back(std::move(t));
      for (auto& t : pv.rest) pend.push_back(std::move(t));
      return fail(std::move(pv.offender), std::move(pv.spec),
                  std::move(pend));
    }
    spec = std::move(pv.spec);
    Q = std::move(pv.kept);
    for (auto& t : bv.moved) Q.push_back(std::move(t));
    demote_reducible(T, Q, d);
    if (T.empty() && Q.empty()) {
      tr.done([&] { return "(true, {0}, " + rr.spec(spec) + ")"; });
      return {true, Triple{}, {}, std::move(spec), {}};
    }
  }
  const MonomialOrdering ord =
      (T.empty() ? Q.front() : T.front()).poly.ordering();

  while (true) {
    // dispatch prolongations not expanded yet
    if (!T.empty()) {
      auto part = partition(head_exps(T), d);
      for (std::size_t i = 0; i < T.size(); ++i) {
        for (std::size_t x : part.nonmult[i])
          if (!T[i].nm_used.count(x))
            Q.push_back(Triple{T[i].poly.times_var(x), T[i].anc, {},
                               ++seq, root_of(T[i])});
        T[i].nm_used = part.nonmult[i];
      }
    }
    if (Q.empty()) break;
    auto hr = head_reduce(T, spec, std::move(Q), d, ctx, seq);
    if (!hr.decided) {
      tr.done([&] { return "(false, " + rr.poly(hr.offender.poly) + ")"; });
      return {false, std::move(hr.offender), std::move(T),
              std::move(hr.spec), std::move(hr.queue)};
    }
    spec = std::move(hr.spec);
    Q = std::move(hr.queue);
    if (Q.empty()) continue;

    std::size_t i = select_index(Q, ord);
    Triple p = std::move(Q[i]);
    Q.erase(Q.begin() + static_cast<long>(i));

    if (p.poly == p.anc) {
      // a fresh generator displaces proper multiples back into the queue
      const Exponent& lm = p.poly.leading_monomial();
      for (std::size_t j = T.size(); j-- > 0;) {
        const Exponent& mj = T[j].poly.leading_monomial();
        if (mj != lm && lm.divides(mj)) {
          Q.push_back(std::move(T[j]));
          T.erase(T.begin() + static_cast<long>(j));
        }
      }
    }
    Tracer tn(ctx, "TailNormalForm",
              [&] { return "TailNormalForm(" + rr.poly(p.poly) + ")"; });
    ParamPoly h = primitive_normal(tail_reduce(p.poly, T, d, ctx));
    tn.done([&] { return rr.poly(h); });
    T.push_back(Triple{std::move(h), std::move(p.anc),
                       std::move(p.nm_used), p.seq, root_of(p)});
  }
  tr.done([&] {
    return "(true, " + rr.polyset(T) + ", " + rr.spec(spec) + ")";
  });
  return {true, Triple{}, std::move(T), std::move(spec), {}};
}

namespace {

void branch_rec(Triple p, BranchState s, bool last,
                std::vector<BranchState>& out_states,
                std::vector<Cell>& cells, const DivisionSpec& d,
                EngineContext& ctx, long& seq) {
  ctx.stats.branches++;
  Renderer rr{ctx};
  Tracer tr(ctx, "Branch", [&] {
    return "Branch(" + rr.triple(p) + ", " + rr.spec(s.spec) +
           ", |B|=" + std::to_string(s.basis.size()) +
           ", |P|=" + std::to_string(s.queue.size()) + ")";
  });

  auto cs = canspec(s.spec, ctx);
  if (!cs.compatible) {
    tr.done([&] { return std::string("stop"); });
    return;
  }
  auto nc = newcond(p.poly, cs.spec, ctx);

  // refresh the examined triple under the possibly enlarged null ideal
  if (nc.poly.is_zero() || p.poly.is_zero() ||
      nc.poly.leading_monomial() != p.poly.leading_monomial()) {
    p = Triple{nc.poly, nc.poly, {}, p.seq};
  } else {
    ParamPoly q = nc.poly;
    ParamPoly a = reduce_coeffs(p.anc, nc.spec.null_conds);
    if (a.is_zero() || a.leading_monomial() != p.anc.leading_monomial())
      a = q;
    else
      a = primitive_normal(a);
    p = Triple{std::move(q), std::move(a), p.nm_used, p.seq, root_of(p)};
  }

  if (!nc.cd.empty()) {
    Specification on = nc.spec;  // assume the factor nonzero first
    for (const auto& c : nc.cd) on.nonnull_conds.push_back(c);
    sort_conds(on.nonnull_conds);
    Specification off = nc.spec;  // then the vanishing alternative
    for (const auto& c : nc.cd) off.null_conds.push_back(c);
    sort_conds(off.null_conds);
    branch_rec(p, BranchState{p, s.basis, std::move(on), s.queue}, last,
               out_states, cells, d, ctx, seq);
    branch_rec(p,
               BranchState{p, std::move(s.basis), std::move(off),
                           std::move(s.queue)},
               last, out_states, cells, d, ctx, seq);
    tr.done([&] { return "split(" + rr.conds(nc.cd) + ")"; });
    return;
  }

  if (!last) {
    BranchState st{p, reduce_basis(std::move(s.basis), nc.spec.null_conds),
                   nc.spec, std::move(s.queue)};
    tr.done([&] { return "state(" + rr.spec(st.spec) + ")"; });
    out_states.push_back(std::move(st));
    return;
  }

  // completion layer: make sure the examined triple reaches the basis
  std::vector<Triple> P = std::move(s.queue);
  bool in_basis = false;
  for (const auto& t : s.basis)
    if (t.seq == p.seq) in_basis = true;
  if (!p.poly.is_zero() && !in_basis) P.insert(P.begin(), p);

  auto g = gbi_param(std::move(s.basis), nc.spec, std::move(P), d, ctx, seq);
  if (g.done) {
    if (auto cell = finalize_cell(std::move(g.basis), std::move(g.spec), d,
                                  ctx)) {
      tr.done([&] {
        std::string b = "{";
        for (std::size_t i = 0; i < cell->basis.size(); ++i) {
          if (i) b += ", ";
          b += rr.poly(cell->basis[i]);
        }
        b += cell->basis.empty() ? "0}" : "}";
        return "cell(" + b + ", " + rr.spec(cell->spec) + ")";
      });
      cells.push_back(std::move(*cell));
    } else {
      tr.done([&] { return std::string("stop"); });
    }
    return;
  }
  branch_rec(g.offender,
             BranchState{g.offender, std::move(g.basis), std::move(g.spec),
                         std::move(g.pending)},
             true, out_states, cells, d, ctx, seq);
  tr.done([&] { return std::string("resumed"); });
}

}  // namespace

std::vector<Cell> cominvsys(const std::vector<ParamPoly>& F,
                            const DivisionSpec& d,
                            const MonomialOrdering& ord_x,
                            const MonomialOrdering& ord_a,
                            EngineContext& ctx) {
  if (d.nvars() != ord_x.nvars())
    throw std::invalid_argument("division and ring dimension mismatch");
  ctx.ord_params = ord_a;

  std::vector<ParamPoly> gens;
  for (const auto& f : F) {
    if (f.nvars() != ord_x.nvars())
      throw std::invalid_argument("generator has wrong variable count");
    ParamPoly g(ord_x);
    for (const auto& [m, c] : f) {
      if (c.nvars() != ord_a.nvars())
        throw std::invalid_argument("coefficient has wrong parameter count");
      RatPoly cc = with_ordering(c, ord_a);
      if (!cc.is_zero()) g.add_term(m, cc);
    }
    if (!g.is_zero()) gens.push_back(primitive_normal(g));
  }

  Renderer rr{ctx};
  Tracer tr(ctx, "ComInvSys", [&] {
    std::string s = "ComInvSys({";
    for (std::size_t i = 0; i < gens.size(); ++i) {
      if (i) s += ", ";
      s += rr.poly(gens[i]);
    }
    return s + "})";
  });

  std::vector<Cell> cells;
  if (gens.empty()) {
    cells.push_back(Cell{{}, Specification{}});
    tr.done([&] { return std::string("1 cell"); });
    return cells;
  }

  long seq = 0;
  std::vector<Triple> B0;
  for (const auto& g : gens) B0.push_back(Triple{g, g, {}, ++seq});

  std::vector<BranchState> states;
  states.push_back(BranchState{Triple{}, std::move(B0), Specification{}, {}});

  for (std::size_t ind = 0; ind < gens.size(); ++ind) {
    const bool last = ind + 1 == gens.size();
    std::vector<BranchState> next;
    for (auto& s : states) {
      Triple seed{gens[ind], gens[ind], {}, static_cast<long>(ind) + 1};
      branch_rec(std::move(seed), std::move(s), last, next, cells, d, ctx,
                 seq);
    }
    states = std::move(next);
  }
  tr.done([&] {
    return std::to_string(cells.size()) +
           (cells.size() == 1 ? " cell" : " cells");
  });
  return cells;
}

}  // namespace cis
