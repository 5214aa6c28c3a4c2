#pragma once

#include <optional>
#include <set>
#include <vector>

#include "cis/poly.hpp"

namespace cis {

using VarSet = std::set<std::size_t>;

// Restricted-divisibility scheme driven by a scan permutation rho and a
// total comparison that is an admissible ordering or the inverse of one.
// The default instance reproduces the classic degree-group partition.
struct DivisionSpec {
  std::vector<std::size_t> rho;  // rho[j] is the variable scanned at step j
  MonomialOrdering box;          // admissible core of the comparison
  bool inverse = false;          // true: compare by the reversed core

  static DivisionSpec janet(std::size_t nvars);
  std::size_t nvars() const { return rho.size(); }
  bool follows(const Exponent& u, const Exponent& v) const;  // u after v
};

// Nonmultiplicative variables contributed by the single competitor v:
// empty when u follows v, or when u trails v and v divides u; otherwise the
// first scan position where u's degree falls short of v's.
VarSet nm_pair(const Exponent& u, const Exponent& v, const DivisionSpec& d);

// Union of nm_pair over every v in U distinct from u. u must occur in U.
VarSet nm_set(const Exponent& u, const std::vector<Exponent>& U,
              const DivisionSpec& d);

struct NMPartition {
  std::vector<Exponent> monomials;
  std::vector<VarSet> nonmult;  // aligned with monomials
};
NMPartition partition(const std::vector<Exponent>& U, const DivisionSpec& d);

// Index into U of a restricted divisor of t: an entry dividing t whose
// quotient uses only its multiplicative variables. When several qualify the
// one largest under the core ordering is returned (they are nested anyway
// for any division satisfying the cone axioms).
std::optional<std::size_t> inv_divisor(const Exponent& t,
                                       const std::vector<Exponent>& U,
                                       const DivisionSpec& d);

// Repeatedly cancels the leading term by restricted divisors from G until
// the head is irreducible or the polynomial vanishes. With cofactors
// requested, f == sum cofactors[i] * G[i] + result holds exactly.
RatPoly inv_head_nf(const RatPoly& f, const std::vector<RatPoly>& G,
                    const DivisionSpec& d,
                    std::vector<RatPoly>* cofactors = nullptr);

// Reduces every reducible term, not just the head; callers normally pass
// polynomials whose head is already irreducible, so that term survives.
RatPoly inv_tail_nf(const RatPoly& f, const std::vector<RatPoly>& G,
                    const DivisionSpec& d,
                    std::vector<RatPoly>* cofactors = nullptr);

// Both criteria that license discarding a prolongation with head lm_f
// without reducing it: the ancestor heads multiply to it exactly, or their
// lcm divides it properly. Equal ancestors never qualify: the discard is
// justified by the ancestors' S-polynomial, which is vacuous for a selfpair
// (and a basis element can transiently divide its own prolongation while
// the head set shrinks, so the degenerate case does occur).
bool criteria(const Exponent& lm_f, const Exponent& lm_anc_f,
              const Exponent& lm_anc_g);

// Minimal monic autoreduced involutive basis of <F> over the rationals,
// by ancestor-tracked completion. The criteria switch exists so the
// equivalence of both modes stays testable.
std::vector<RatPoly> gbi(const std::vector<RatPoly>& F, const DivisionSpec& d,
                         bool use_criteria = true);

// Direct completion of a minimal Groebner basis: every product m*g with m
// inside the degree box capped by the componentwise maxima of the leading
// monomials. Output grouped by generator, box monomials ascending, exact
// duplicates dropped. The division argument fixes the intended reading of
// the result; the box itself does not depend on it.
template <class C>
std::vector<SparsePoly<C>> prop1_completion(const std::vector<SparsePoly<C>>& G,
                                            const DivisionSpec& d) {
  std::vector<SparsePoly<C>> out;
  if (G.empty()) return out;
  std::size_t n = G.front().nvars();
  if (d.nvars() != n)
    throw std::invalid_argument("division and ring dimension mismatch");
  for (const auto& g : G)
    if (g.is_zero()) throw std::invalid_argument("zero generator");

  for (std::size_t i = 0; i < G.size(); ++i)
    for (std::size_t j = 0; j < G.size(); ++j)
      if (i != j && G[i].leading_monomial().divides(G[j].leading_monomial()))
        throw std::invalid_argument("not minimal");

  std::vector<std::uint32_t> h(n, 0);
  for (const auto& g : G)
    for (std::size_t i = 0; i < n; ++i)
      h[i] = std::max(h[i], g.leading_monomial()[i]);

  const MonomialOrdering& ord = G.front().ordering();
  for (const auto& g : G) {
    // enumerate the box degree-capped at h - deg(LM(g)), ascending
    std::vector<std::uint32_t> cap(n), cur(n, 0);
    for (std::size_t i = 0; i < n; ++i) cap[i] = h[i] - g.leading_monomial()[i];
    std::vector<Exponent> box;
    while (true) {
      box.push_back(Exponent(cur));
      std::size_t i = 0;
      while (i < n && cur[i] == cap[i]) cur[i++] = 0;
      if (i == n) break;
      ++cur[i];
    }
    std::sort(box.begin(), box.end(), [&](const Exponent& a, const Exponent& b) {
      return ord.less(a, b);
    });
    for (const auto& m : box) {
      SparsePoly<C> prod = g.times_monomial(m);
      bool dup = false;
      for (const auto& seen : out)
        if (seen == prod) {
          dup = true;
          break;
        }
      if (!dup) out.push_back(std::move(prod));
    }
  }
  return out;
}

}  // namespace cis
