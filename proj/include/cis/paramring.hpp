#pragma once

#include <optional>
#include <vector>

#include "cis/poly.hpp"

namespace cis {

// Groebner toolkit for the coefficient ring Q[a]. Everything here is a pure
// function; condition-set outputs come back monic, autoreduced and sorted
// ascending so set comparisons are plain equality.

// Quotient of f by g when the multivariate division leaves no remainder.
// Throws std::domain_error on g == 0 or a nonzero remainder.
RatPoly exact_divide(const RatPoly& f, const RatPoly& g);
std::optional<RatPoly> try_exact_divide(const RatPoly& f, const RatPoly& g);

// Reduced Groebner basis of <F> under ord: monic, autoreduced, unique for
// the ideal, sorted ascending by leading monomial. Zeros in F are ignored;
// the whole ring comes back as {1} and the zero ideal as {}.
std::vector<RatPoly> buchberger_reduced(const std::vector<RatPoly>& F,
                                        const MonomialOrdering& ord);

// Normal-form membership test. G must be a Groebner basis.
bool ideal_member(const RatPoly& h, const std::vector<RatPoly>& G);

// True iff h vanishes on every common zero of N, via the Rabinowitsch trick:
// h in rad<N> iff 1 in <N, 1 - t h> with t a fresh last variable.
bool radical_member(const RatPoly& h, const std::vector<RatPoly>& N);

// Multivariate gcd over Q[a], primitive over Z with positive leading
// coefficient. gcd(f, 0) = normalized f; gcd with a nonzero constant is 1.
RatPoly gcd(const RatPoly& f, const RatPoly& g);

// Square-free pairwise-coprime monic factors of p whose product has the same
// zero set as p, sorted ascending; constants yield {}. No irreducible
// factorization is attempted: a cell split only needs the zero set of a
// leading coefficient covered by the returned factors.
std::vector<RatPoly> facvar(const RatPoly& p);

// Gcd-free basis: splits the inputs until pairwise coprime, preserving the
// union of zero sets. Constants are dropped, output is monic and ascending.
std::vector<RatPoly> coprime_refine(std::vector<RatPoly> ps);

// Union of facvar over all nonzero members, refined to a pairwise-coprime
// family, deduplicated, sorted ascending.
std::vector<RatPoly> facvar_set(const std::vector<RatPoly>& ps);

// Monic product of facvar(p); 1 for nonzero constants.
RatPoly squarefree_part(const RatPoly& p);

}  // namespace cis
