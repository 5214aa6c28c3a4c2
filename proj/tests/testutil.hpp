#pragma once

#include <cstdint>
#include <numeric>
#include <random>
#include <utility>
#include <vector>

#include "cis/poly.hpp"

namespace testutil {

inline cis::RatPoly rp(
    const cis::MonomialOrdering& ord,
    std::vector<std::pair<cis::Exponent, cis::Rational>> terms) {
  cis::RatPoly p(ord);
  for (auto& [m, c] : terms) p.add_term(m, c);
  return p;
}

inline cis::Exponent random_exponent(std::mt19937& rng, std::size_t n,
                                     std::uint32_t maxdeg) {
  std::uniform_int_distribution<std::uint32_t> d(0, maxdeg);
  std::vector<std::uint32_t> e(n);
  for (auto& x : e) x = d(rng);
  return cis::Exponent(std::move(e));
}

inline cis::Rational random_rational(std::mt19937& rng) {
  std::uniform_int_distribution<int> num(-6, 6), den(1, 4);
  cis::Rational r(num(rng), den(rng));
  r.canonicalize();
  return r;
}

inline cis::RatPoly random_ratpoly(std::mt19937& rng,
                                   const cis::MonomialOrdering& ord,
                                   int max_terms, std::uint32_t maxdeg) {
  std::uniform_int_distribution<int> nterms(0, max_terms);
  cis::RatPoly p(ord);
  int k = nterms(rng);
  for (int i = 0; i < k; ++i)
    p.add_term(random_exponent(rng, ord.nvars(), maxdeg), random_rational(rng));
  return p;
}

inline cis::ParamPoly random_parampoly(std::mt19937& rng,
                                       const cis::MonomialOrdering& ox,
                                       const cis::MonomialOrdering& oa,
                                       int max_terms, std::uint32_t maxdeg_x,
                                       std::uint32_t maxdeg_a) {
  std::uniform_int_distribution<int> nterms(0, max_terms);
  cis::ParamPoly p(ox);
  int k = nterms(rng);
  for (int i = 0; i < k; ++i) {
    cis::RatPoly c = random_ratpoly(rng, oa, 2, maxdeg_a);
    if (c.is_zero()) continue;
    p.add_term(random_exponent(rng, ox.nvars(), maxdeg_x), c);
  }
  return p;
}

inline std::vector<std::size_t> random_permutation(std::mt19937& rng,
                                                   std::size_t n) {
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

}  // namespace testutil
